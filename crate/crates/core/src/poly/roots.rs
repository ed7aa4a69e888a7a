//! Root finding for univariate complex polynomials.
//!
//! Companion-matrix eigenvalues seed the roots, Newton steps polish them,
//! and nearby roots are merged into clusters that are reported as one root
//! with a multiplicity.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use num_traits::Zero;

use super::UniPoly;
use crate::linalg::hessenberg_eigenvalues;
use crate::{Error, Result, C64, EPS};

/// A root together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: C64,
    pub multiplicity: usize,
}

/// Knobs for [`roots_with`].
#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    /// Accepted residual `|p(root)| <= tol * sum |a_k| |root|^k`.
    pub tol: f64,
    /// Roots closer than this (relative to `max(1, |root|)`) are always merged.
    /// `None` selects `max(1e-7, 1e3 * EPS * scale)`.
    pub cluster_radius: Option<f64>,
    /// Relative size of Taylor coefficients below which a candidate cluster
    /// is accepted as a multiple root.
    pub multiple_root_tol: f64,
    /// Candidate clusters further apart than this (relative) are never merged.
    pub merge_window: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-9,
            cluster_radius: None,
            multiple_root_tol: 1e-10,
            merge_window: 1e-2,
        }
    }
}

/// Roots of `p` with multiplicities, using default clustering and residual
/// tolerance `tol`.
pub fn roots(p: &UniPoly, tol: f64) -> Result<Vec<Root>> {
    roots_with(p, RootOptions { tol, ..RootOptions::default() })
}

/// Roots of `p` with multiplicities. Multiplicities always sum to the degree.
pub fn roots_with(p: &UniPoly, opts: RootOptions) -> Result<Vec<Root>> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("roots of the zero polynomial".into()));
    }
    if p.degree() == 0 {
        return Err(Error::DegenerateInput("roots of a nonzero constant".into()));
    }
    let c = p.coeffs();
    let zero_mult = c.iter().take_while(|x| x.is_zero()).count();
    let q = UniPoly::new(c[zero_mult..].to_vec());
    let s = q.max_abs();
    let q = q.scale(C64::new(1.0 / s, 0.0));

    if q.degree() == 0 {
        return Ok(vec![Root { value: C64::zero(), multiplicity: zero_mult }]);
    }
    // Eigenvalues are clustered unpolished: the centroid of a multiple-root
    // cluster is accurate, while Newton steps on it are not.
    let approx = raw_roots(&q)?;

    let lead = q.leading().norm();
    let coeff_scale = q.coeffs().iter().map(|x| x.norm()).fold(0.0, f64::max) / lead;
    let radius = opts
        .cluster_radius
        .unwrap_or_else(|| (1e3 * EPS * coeff_scale).max(1e-7));
    let mut clusters = cluster(&q, &approx, radius, &opts);

    for cl in clusters.iter_mut() {
        // A simple root can still gain a few bits from the reduced polynomial.
        if cl.multiplicity == 1 {
            cl.value = newton_polish(&q, cl.value);
        }
        let resid = q.eval(cl.value).norm();
        let scale = q.eval_abs(cl.value).max(f64::MIN_POSITIVE);
        if resid > opts.tol * scale {
            return Err(Error::numeric(
                format!("root residual {resid:e} exceeds tolerance (scale {scale:e})"),
                Some(cl.value),
            ));
        }
    }
    if zero_mult > 0 {
        clusters.push(Root { value: C64::zero(), multiplicity: zero_mult });
    }
    clusters.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    Ok(clusters)
}

/// Unclustered approximate roots (companion eigenvalues), each listed once
/// per multiplicity.
pub fn raw_roots(p: &UniPoly) -> Result<Vec<C64>> {
    let n = p.degree();
    if p.is_zero() || n == 0 {
        return Err(Error::DegenerateInput("polynomial has no roots".into()));
    }
    let c = p.coeffs();
    if n == 1 {
        return Ok(vec![-c[0] / c[1]]);
    }
    let lead = c[n];
    let mut h = vec![C64::zero(); n * n];
    for i in 1..n {
        h[i * n + i - 1] = C64::new(1.0, 0.0);
    }
    for i in 0..n {
        h[i * n + n - 1] = -c[i] / lead;
    }
    hessenberg_eigenvalues(h, n)
}

/// A few guarded Newton steps; a step is kept only if the residual drops.
pub fn newton_polish(p: &UniPoly, mut z: C64) -> C64 {
    let dp = p.derivative();
    let mut fz = p.eval(z).norm();
    for _ in 0..8 {
        let d = dp.eval(z);
        if d.is_zero() || fz == 0.0 {
            break;
        }
        let cand = z - p.eval(z) / d;
        let fc = p.eval(cand).norm();
        if !(fc < fz) {
            break;
        }
        z = cand;
        fz = fc;
    }
    z
}

/// `p^{(j)}(c) / j!` is negligible for every `j < k` relative to its own
/// natural scale `sum_i |a_i| binom(i, j) |c|^(i-j)`.
fn is_multiple_root(p: &UniPoly, c: C64, k: usize, tol: f64) -> bool {
    let taylor = p.shift(c);
    let r = c.norm();
    let coeffs = p.coeffs();
    let total_scale: f64 = (0..coeffs.len())
        .map(|j| natural_scale(coeffs, j, r))
        .fold(0.0, f64::max);
    (0..k).all(|j| {
        let sc = natural_scale(coeffs, j, r).max(EPS * total_scale);
        taylor.coeff(j).norm() <= tol * sc
    })
}

fn natural_scale(coeffs: &[C64], j: usize, r: f64) -> f64 {
    let mut s = 0.0;
    for (i, a) in coeffs.iter().enumerate().skip(j) {
        s += a.norm() * binom(i, j) * r.powi((i - j) as i32);
    }
    s
}

fn binom(n: usize, k: usize) -> f64 {
    let mut b = 1.0;
    for i in 0..k {
        b = b * (n - i) as f64 / (i + 1) as f64;
    }
    b
}

struct Group {
    members: Vec<C64>,
}

impl Group {
    fn centroid(&self) -> C64 {
        let n = self.members.len() as f64;
        self.members.iter().fold(C64::zero(), |a, &b| a + b) / n
    }
}

fn cluster(p: &UniPoly, pts: &[C64], radius: f64, opts: &RootOptions) -> Vec<Root> {
    let mut groups: Vec<Group> = pts.iter().map(|&z| Group { members: vec![z] }).collect();

    // Unconditional merging inside the cluster radius.
    loop {
        let mut merged = false;
        'outer: for i in 0..groups.len() {
            for j in (i + 1)..groups.len() {
                let (a, b) = (groups[i].centroid(), groups[j].centroid());
                let rel = 1f64.max(a.norm()).max(b.norm());
                if (a - b).norm() < radius * rel {
                    let g = groups.swap_remove(j);
                    groups[i].members.extend(g.members);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            break;
        }
    }

    // Validated merging: a single-linkage component is accepted as one root
    // when its centroid is numerically a root of the combined multiplicity;
    // otherwise it is split again with a smaller window.
    let mut out = Vec::new();
    split(p, groups, opts.merge_window, radius, opts.multiple_root_tol, &mut out);
    out
}

fn split(p: &UniPoly, groups: Vec<Group>, window: f64, floor: f64, tol: f64, out: &mut Vec<Root>) {
    if groups.len() == 1 || window < floor {
        out.extend(groups.iter().map(|g| Root { value: g.centroid(), multiplicity: g.members.len() }));
        return;
    }
    let comps = components(&groups, window);
    if comps.len() > 1 {
        let mut groups: Vec<Option<Group>> = groups.into_iter().map(Some).collect();
        for comp in comps {
            let part: Vec<Group> = comp.iter().filter_map(|&i| groups[i].take()).collect();
            split(p, part, window, floor, tol, out);
        }
        return;
    }
    let all: Vec<C64> = groups.iter().flat_map(|g| g.members.iter().copied()).collect();
    let merged = Group { members: all };
    if is_multiple_root(p, merged.centroid(), merged.members.len(), tol) {
        out.push(Root { value: merged.centroid(), multiplicity: merged.members.len() });
    } else {
        split(p, groups, window / 10.0, floor, tol, out);
    }
}

fn components(groups: &[Group], window: f64) -> Vec<Vec<usize>> {
    let n = groups.len();
    let cents: Vec<C64> = groups.iter().map(Group::centroid).collect();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let rel = 1f64.max(cents[i].norm()).max(cents[j].norm());
            if (cents[i] - cents[j]).norm() < window * rel {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match roots.iter().position(|&x| x == r) {
            Some(k) => comps[k].push(i),
            None => {
                roots.push(r);
                comps.push(vec![i]);
            }
        }
    }
    comps
}
