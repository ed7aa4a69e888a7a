//! A second, elimination-free solver: Newton's method from a polar grid of
//! seeds, with multiplicities read off a small perturbation of the system.

use alloc::vec::Vec;
use core::f64::consts::PI;


#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::{assemble, build_F, is_degenerate, newton2, BlaschkePair, Codim, IntersectionReport, Jet};
use crate::linalg::singular_values;
use crate::poly::{raw_roots, BiPoly};
use crate::{Result, C64};

#[derive(Debug, Clone, Copy)]
pub struct GridOptions {
    /// Seed moduli are log-spaced between `r_min` and `r_max`.
    pub radii: usize,
    pub angles: usize,
    pub r_min: f64,
    pub r_max: f64,
    /// Scaled residual accepted as a solution.
    pub accept: f64,
    pub boundary_tol: f64,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            radii: 12,
            angles: 16,
            r_min: 0.05,
            r_max: 20.0,
            accept: 1e-12,
            boundary_tol: 1e-7,
        }
    }
}

/// Solve the same system as [`super::solve_pair`] without resultants.
pub fn solve_pair_grid(pair: &BlaschkePair, opts: &GridOptions) -> Result<IntersectionReport> {
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
    let (jf, jg) = (Jet::new(&f), Jet::new(&g));
    let mut found: Vec<(C64, C64)> = Vec::new();
    let mut queue: Vec<(C64, C64)> = Vec::new();
    queue.push((C64::new(0.0, 0.0), C64::new(0.0, 0.0)));
    for i in 0..opts.radii {
        let r = opts.r_min * (opts.r_max / opts.r_min).powf(i as f64 / (opts.radii - 1).max(1) as f64);
        for k in 0..opts.angles {
            let lambda = C64::from_polar(r, 2.0 * PI * (k as f64 + 0.5) / opts.angles as f64);
            if let Ok(mus) = raw_roots(&f.at_z(lambda)) {
                queue.extend(mus.into_iter().map(|mu| (lambda, mu)));
            }
        }
    }
    while let Some((z0, w0)) = queue.pop() {
        let (z, w, res) = newton2(&jf, &jg, z0, w0, 80);
        if !(res <= opts.accept) || !z.is_finite() || !w.is_finite() {
            continue;
        }
        if found.iter().any(|&(a, b)| near(a, z, 1e-5) && near(b, w, 1e-5)) {
            continue;
        }
        found.push((z, w));
        // images under the symmetries of the system are cheap extra seeds
        queue.push((w, z));
        if z.norm() > 1e-8 && w.norm() > 1e-8 {
            queue.push((C64::new(1.0, 0.0) / z.conj(), C64::new(1.0, 0.0) / w.conj()));
        }
    }
    let mut raw = Vec::with_capacity(found.len());
    for (z, w) in found {
        raw.push(local_multiplicity(&f, &g, z, w));
    }
    assemble(degrees, raw, opts.boundary_tol)
}

fn near(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() < tol * a.norm().max(1.0)
}

/// Multiplicity of the solution near `(z, w)` together with a refined
/// location. A regular Jacobian gives multiplicity one; otherwise the
/// system `F = e1`, `G = e2` is solved near the point and its (simple)
/// solutions are counted, and their centroid locates the point.
fn local_multiplicity(f: &BiPoly, g: &BiPoly, z: C64, w: C64) -> (C64, C64, usize) {
    let (jf, jg) = (Jet::new(f), Jet::new(g));
    let jac = Jet::jacobian(&jf, &jg, z, w);
    let m = crate::linalg::CMat::from_fn(2, 2, |i, j| jac[i][j]);
    let sv = singular_values(&m);
    if sv[1] > 1e-6 * sv[0] {
        return (z, w, 1);
    }
    let e1 = 1e-10 * f.eval_abs(z, w).max(1e-3) * C64::from_polar(1.0, 0.7);
    let e2 = 1e-10 * g.eval_abs(z, w).max(1e-3) * C64::from_polar(1.0, 2.1);
    let shift = |p: &BiPoly, e: C64| &BiPoly::from_terms(&[(0, 0, -e)]) + p;
    let (pf, pg) = (Jet::new(&shift(f, e1)), Jet::new(&shift(g, e2)));
    let ball = 0.05 * z.norm().max(w.norm()).max(1.0);
    let mut sols: Vec<(C64, C64)> = Vec::new();
    for delta in [1e-4, 1e-3, 1e-2] {
        for a in 0..8 {
            for b in 0..8 {
                let dz = C64::from_polar(delta, 2.0 * PI * a as f64 / 8.0);
                let dw = C64::from_polar(delta, 2.0 * PI * (b as f64 + 0.25) / 8.0);
                let (sz, sw, res) = newton2(&pf, &pg, z + dz, w + dw, 60);
                if res > 1e-13 || (sz - z).norm() > ball || (sw - w).norm() > ball {
                    continue;
                }
                if !sols.iter().any(|&(x, y)| near(x, sz, 1e-9) && near(y, sw, 1e-9)) {
                    sols.push((sz, sw));
                }
            }
        }
    }
    if sols.len() < 2 {
        return (z, w, 1);
    }
    let k = sols.len() as f64;
    let cz = sols.iter().fold(C64::new(0.0, 0.0), |a, s| a + s.0) / k;
    let cw = sols.iter().fold(C64::new(0.0, 0.0), |a, s| a + s.1) / k;
    (cz, cw, sols.len())
}
