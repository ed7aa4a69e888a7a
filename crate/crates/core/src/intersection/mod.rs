//! The curves `F = 0` and `G = 0` attached to a pair of Blaschke products
//! and their common points.
//!
//! `(λ, μ)` with `λ ≠ μ` solves `f(λ) = f(μ)`, `g(λ) = g(μ)` exactly when it
//! is a common zero of `F` and `G`; on the diagonal `F(λ, λ)` is a multiple
//! of `f'(λ)`.

mod eliminate;
mod grid;

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::blaschke::BlaschkeProduct;
use crate::poly::{roots, BiPoly};
use crate::{Error, Result, C64};

pub use eliminate::is_degenerate;
pub use grid::{solve_pair_grid, GridOptions};

/// `f` and `g`, each of degree at least two.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkePair {
    pub f: BlaschkeProduct,
    pub g: BlaschkeProduct,
}

impl BlaschkePair {
    pub fn new(f: BlaschkeProduct, g: BlaschkeProduct) -> Result<Self> {
        if f.degree() < 2 || g.degree() < 2 {
            return Err(Error::Domain(format!(
                "both products need degree at least 2, got {} and {}",
                f.degree(),
                g.degree()
            )));
        }
        Ok(BlaschkePair { f, g })
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.f.degree(), self.g.degree())
    }

    /// `(m - 1)(n - 1)`.
    pub fn expected_count(&self) -> usize {
        let (m, n) = self.degrees();
        (m - 1) * (n - 1)
    }
}

/// `F(z, w) = (p(z) p~(w) - p(w) p~(z)) / (z - w)` built from the zeros of
/// `f` (the front factor is left out; it does not change the zero set).
///
/// On the diagonal `F(λ, λ) = -p(λ)² f'(λ) / u` where `u` is the front factor.
#[allow(non_snake_case)]
pub fn build_F(f: &BlaschkeProduct) -> Result<BiPoly> {
    if f.degree() < 2 {
        return Err(Error::Domain("build_F needs degree at least 2".into()));
    }
    let p = f.p();
    let pt = f.p_tilde();
    let outer = |a: &crate::poly::UniPoly, b: &crate::poly::UniPoly| {
        BiPoly::new(
            a.coeffs()
                .iter()
                .map(|&ai| b.coeffs().iter().map(|&bj| ai * bj).collect())
                .collect(),
        )
    };
    let num = &outer(&p, &pt) - &outer(&pt, &p);
    let (q, rem) = num.div_z_minus_w();
    // The quotient has bidegree (m - 1, m - 1); anything beyond is rounding.
    let m = f.degree();
    let mut excess: f64 = 0.0;
    let mut rows = alloc::vec![alloc::vec![C64::zero(); m]; m];
    for (i, r) in q.rows().iter().enumerate() {
        for (j, &c) in r.iter().enumerate() {
            if i < m && j < m {
                rows[i][j] = c;
            } else {
                excess = excess.max(c.norm());
            }
        }
    }
    let rem = rem.max(excess);
    let q = BiPoly::new(rows);
    let scale = num.max_abs().max(1.0);
    if rem > 1e-10 * scale {
        return Err(Error::numeric(
            format!("division by z - w left remainder {rem:e}"),
            None,
        ));
    }
    Ok(q)
}

/// Coefficient of `z^(m-1) w^(m-1)` in `F`, equal to `-u conj(f'(0))` for
/// front factor `u`; nonzero exactly when `F` has total degree `2m - 2`.
pub fn top_coefficient(f: &BlaschkeProduct) -> Result<C64> {
    let m = f.degree();
    Ok(build_F(f)?.coeff(m - 1, m - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    /// Both coordinates in the open disk.
    Disk,
    /// Both coordinates on the circle.
    Torus,
    /// Both coordinates outside the closed disk.
    Exterior,
}

impl Region {
    pub fn label(self) -> &'static str {
        match self {
            Region::Disk => "DD",
            Region::Torus => "TT",
            Region::Exterior => "EE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Codim {
    Finite(usize),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectionPoint {
    pub lambda: C64,
    pub mu: C64,
    pub region: Region,
    pub multiplicity: usize,
    pub on_diagonal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionReport {
    pub degrees: (usize, usize),
    pub points: Vec<IntersectionPoint>,
    /// Points in the bidisk plus half the points on the torus, with
    /// multiplicity. Infinite for a degenerate pair.
    pub count: f64,
    /// Unordered off-diagonal pairs on the torus, each counted with its
    /// intersection multiplicity.
    pub r: usize,
    /// Unordered off-diagonal pairs on the torus, each counted once.
    pub r_distinct: usize,
    pub codim: Codim,
    /// `F` and `G` share a factor.
    pub degenerate: bool,
}

impl IntersectionReport {
    /// Sum of all affine multiplicities.
    pub fn affine_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    /// Multiplicity of the point `(0, 0)`, zero when it is not a solution.
    pub fn origin_multiplicity(&self) -> usize {
        self.points
            .iter()
            .filter(|p| p.lambda.norm() < 1e-7 && p.mu.norm() < 1e-7)
            .map(|p| p.multiplicity)
            .sum()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Residual tolerance for roots of the eliminant and fibers.
    pub tol: f64,
    /// Width of the band around the unit circle classified as the circle.
    pub boundary_tol: f64,
    pub seed: u64,
    /// Number of shears tried before giving up on the expected count.
    pub max_attempts: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: 1e-9, boundary_tol: 1e-7, seed: 0, max_attempts: 4 }
    }
}

/// All common zeros of `F` and `G` in `C²` with multiplicities, classified by
/// region, with the count, `r` and the codimension.
pub fn solve_pair(pair: &BlaschkePair, opts: &SolveOptions) -> Result<IntersectionReport> {
    if !(opts.tol > 0.0) {
        return Err(Error::Domain("tol must be positive".into()));
    }
    let f = build_F(&pair.f)?;
    let g = build_F(&pair.g)?;
    let degrees = pair.degrees();
    if is_degenerate(&f, &g)? {
        return Ok(IntersectionReport {
            degrees,
            points: Vec::new(),
            count: f64::INFINITY,
            r: 0,
            r_distinct: 0,
            codim: Codim::Infinite,
            degenerate: true,
        });
    }
    let expected = pair.expected_count() as f64;
    let mut last_err = None;
    for attempt in 0..opts.max_attempts.max(1) {
        let raw = match eliminate::solve_sheared(&f, &g, opts, attempt) {
            Ok(p) => p,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let report = match assemble(degrees, raw, opts.boundary_tol) {
            Ok(r) => r,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        if (report.count - expected).abs() <= 0.25 {
            return Ok(report);
        }
        last_err = Some(Error::numeric(
            format!("count {} differs from {expected}", report.count),
            None,
        ));
    }
    Err(last_err.unwrap_or_else(|| Error::numeric("no attempt succeeded", None)))
}

fn classify(z: C64, band: f64) -> Region {
    let d = z.norm() - 1.0;
    if d.abs() < band {
        Region::Torus
    } else if d < 0.0 {
        Region::Disk
    } else {
        Region::Exterior
    }
}

pub(crate) fn region_of(lambda: C64, mu: C64, band: f64) -> Result<Region> {
    let (a, b) = (classify(lambda, band), classify(mu, band));
    if a != b {
        return Err(Error::TheoryViolation(format!(
            "solution ({lambda}, {mu}) lies in a mixed region"
        )));
    }
    Ok(a)
}

/// Classified points -> report with count, `r` and codimension.
pub(crate) fn assemble(
    degrees: (usize, usize),
    raw: Vec<(C64, C64, usize)>,
    band: f64,
) -> Result<IntersectionReport> {
    let mut points = Vec::with_capacity(raw.len());
    for (lambda, mu, mult) in raw {
        let region = region_of(lambda, mu, band)?;
        let on_diagonal = (lambda - mu).norm() < 1e-7 * lambda.norm().max(1.0);
        if region == Region::Torus && on_diagonal {
            return Err(Error::TheoryViolation(format!(
                "diagonal solution {lambda} on the circle"
            )));
        }
        points.push(IntersectionPoint { lambda, mu, region, multiplicity: mult, on_diagonal });
    }
    points.sort_by(|a, b| {
        (a.lambda.re, a.lambda.im, a.mu.re, a.mu.im)
            .partial_cmp(&(b.lambda.re, b.lambda.im, b.mu.re, b.mu.im))
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let dd: usize = points.iter().filter(|p| p.region == Region::Disk).map(|p| p.multiplicity).sum();
    let tt: usize = points.iter().filter(|p| p.region == Region::Torus).map(|p| p.multiplicity).sum();
    let count = dd as f64 + 0.5 * tt as f64;
    let tt_points = points.iter().filter(|p| p.region == Region::Torus).count();
    if tt_points % 2 != 0 || tt % 2 != 0 {
        return Err(Error::Consistency(format!(
            "torus points ({tt_points}, total multiplicity {tt}) do not form unordered pairs"
        )));
    }
    let r = tt / 2;
    let base = (degrees.0 - 1) * (degrees.1 - 1);
    if r > base || (base - r) % 2 != 0 {
        return Err(Error::Consistency(format!(
            "({base} - {r}) / 2 is not a non-negative integer"
        )));
    }
    Ok(IntersectionReport {
        degrees,
        points,
        count,
        r,
        r_distinct: tt_points / 2,
        codim: Codim::Finite((base - r) / 2),
        degenerate: false,
    })
}

/// `((m - 1)(n - 1) - r) / 2`, or infinite for a degenerate pair.
pub fn codim_alg(pair: &BlaschkePair, opts: &SolveOptions) -> Result<Codim> {
    Ok(solve_pair(pair, opts)?.codim)
}

/// Unordered pairs `{λ, μ}` of distinct circle points with `f(λ) = f(μ)` and
/// `g(λ) = g(μ)`, counted with intersection multiplicity (a tangential
/// crossing counts twice); `None` for a degenerate pair.
pub fn separation_pairs_on_torus(pair: &BlaschkePair, opts: &SolveOptions) -> Result<Option<usize>> {
    let rep = solve_pair(pair, opts)?;
    Ok(if rep.degenerate { None } else { Some(rep.r) })
}

/// Every point with both coordinates nonzero has a partner within `tol` at
/// `(1/conj λ, 1/conj μ)` with the same multiplicity.
pub fn reflection_closure_check(report: &IntersectionReport, tol: f64) -> bool {
    report.points.iter().all(|p| {
        if p.lambda.norm() < tol || p.mu.norm() < tol {
            return true;
        }
        let target = (C64::new(1.0, 0.0) / p.lambda.conj(), C64::new(1.0, 0.0) / p.mu.conj());
        report.points.iter().any(|q| {
            let s = target.0.norm().max(target.1.norm()).max(1.0);
            (q.lambda - target.0).norm() <= tol * s
                && (q.mu - target.1).norm() <= tol * s
                && q.multiplicity == p.multiplicity
        })
    })
}

/// Every point `(λ, μ)` has a partner `(μ, λ)` with the same multiplicity.
pub fn swap_closure_check(report: &IntersectionReport, tol: f64) -> bool {
    report.points.iter().all(|p| {
        report.points.iter().any(|q| {
            let s = p.lambda.norm().max(p.mu.norm()).max(1.0);
            (q.lambda - p.mu).norm() <= tol * s
                && (q.mu - p.lambda).norm() <= tol * s
                && q.multiplicity == p.multiplicity
        })
    })
}

/// Intersection multiplicity of the closed curves at each of the two points
/// at infinity `(0:1:0)` and `(0:0:1)`: `(m-1)(n-1) + r0 + s/2`, where `r0`
/// counts `λ` in the punctured disk with `f(λ) = f(0)`, `g(λ) = g(0)`, and `s`
/// is the multiplicity at the origin.
///
/// Requires both `F` and `G` to have full total degree; otherwise precompose
/// both maps with a Möbius map `m_γ` at a point `γ` that is not critical.
pub fn infinity_multiplicity(pair: &BlaschkePair, opts: &SolveOptions) -> Result<f64> {
    for (name, h) in [("f", &pair.f), ("g", &pair.g)] {
        let f = build_F(h)?;
        let top = f.coeff(h.degree() - 1, h.degree() - 1).norm();
        if top <= 1e-10 * f.max_abs() {
            return Err(Error::Precondition(format!(
                "{name}'(0) = 0 so the curve has lower degree; precompose with a Möbius map at a non-critical point"
            )));
        }
    }
    let rep = solve_pair(pair, opts)?;
    if rep.degenerate {
        return Err(Error::Precondition("the curves share a component".into()));
    }
    let r0 = origin_level_points(pair, opts.tol)?;
    let s = rep.origin_multiplicity();
    Ok(pair.expected_count() as f64 + r0 as f64 + 0.5 * s as f64)
}

/// Points `λ` in the punctured disk with `f(λ) = f(0)` and `g(λ) = g(0)`.
fn origin_level_points(pair: &BlaschkePair, tol: f64) -> Result<usize> {
    let level = |h: &BlaschkeProduct| -> Result<Vec<C64>> {
        let (num, den) = h.num_den();
        let h0 = h.eval(C64::zero())?;
        let poly = &num - &den.scale(h0);
        Ok(roots(&poly, tol)?.into_iter().map(|r| r.value).collect())
    };
    let a = level(&pair.f)?;
    let b = level(&pair.g)?;
    Ok(a
        .iter()
        .filter(|z| z.norm() > 1e-7 && z.norm() < 1.0)
        .filter(|z| b.iter().any(|w| (*w - **z).norm() < 1e-7))
        .count())
}

/// Damped Newton iteration for `F = G = 0` from `(z, w)`. A step is halved
/// until the scaled residual decreases; the iteration stops when it cannot.
pub(crate) fn newton2(f: &Jet, g: &Jet, mut z: C64, mut w: C64, iters: usize) -> (C64, C64, f64) {
    let mut res = f.scaled(z, w).max(g.scaled(z, w));
    for _ in 0..iters {
        if res == 0.0 {
            break;
        }
        let (a, b) = (f.p.eval(z, w), g.p.eval(z, w));
        let [[fz, fw], [gz, gw]] = Jet::jacobian(f, g, z, w);
        let det = fz * gw - fw * gz;
        if det.is_zero() || !det.is_finite() {
            break;
        }
        let dz = (a * gw - fw * b) / det;
        let dw = (fz * b - a * gz) / det;
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..8 {
            let (nz, nw) = (z - dz * step, w - dw * step);
            let nres = f.scaled(nz, nw).max(g.scaled(nz, nw));
            if nres < res {
                z = nz;
                w = nw;
                res = nres;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (z, w, res)
}

/// A polynomial with its partial derivatives.
pub(crate) struct Jet {
    pub p: BiPoly,
    pub dz: BiPoly,
    pub dw: BiPoly,
}

impl Jet {
    pub fn new(p: &BiPoly) -> Self {
        Jet { p: p.clone(), dz: p.dz(), dw: p.dw() }
    }

    /// `|P(z, w)| / sum |a_ij| |z|^i |w|^j`.
    pub fn scaled(&self, z: C64, w: C64) -> f64 {
        let s = self.p.eval_abs(z, w);
        if s == 0.0 {
            return 0.0;
        }
        self.p.eval(z, w).norm() / s
    }

    /// Jacobian of `(F, G)` at a point as a 2×2 array.
    pub fn jacobian(f: &Jet, g: &Jet, z: C64, w: C64) -> [[C64; 2]; 2] {
        [[f.dz.eval(z, w), f.dw.eval(z, w)], [g.dz.eval(z, w), g.dw.eval(z, w)]]
    }
}

#[cfg(test)]
mod tests;
