//! Shear-then-resultant elimination.
//!
//! After a random shear `z = z' + t w` the points of `F = G = 0` have
//! distinct `z'` coordinates, so each root of `Res_w` is one point and its
//! multiplicity is the intersection multiplicity there.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{newton2, Jet, SolveOptions};
use crate::poly::{resultant_w_with, roots, BiPoly, ResultantOptions};
use crate::{Error, Result, C64};

const RADII: [f64; 4] = [1.0, 1.0, 1.5, 0.75];

pub(crate) fn attempt_rng(seed: u64, attempt: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (attempt as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// `F` and `G` share a nonconstant factor, detected as an identically
/// vanishing resultant.
pub fn is_degenerate(f: &BiPoly, g: &BiPoly) -> Result<bool> {
    Ok(resultant_w_with(f, g, ResultantOptions::default())?.0.is_zero())
}

/// Common zeros as `(λ, μ, multiplicity)` using the shear drawn for `attempt`.
pub(crate) fn solve_sheared(
    f: &BiPoly,
    g: &BiPoly,
    opts: &SolveOptions,
    attempt: usize,
) -> Result<Vec<(C64, C64, usize)>> {
    let mut rng = attempt_rng(opts.seed, attempt);
    let t = C64::from_polar(rng.random_range(0.3..0.7), rng.random_range(0.0..2.0 * PI));
    let fs = f.shear(t);
    let gs = g.shear(t);
    let ropts = ResultantOptions {
        radius: RADII[attempt % RADII.len()],
        trim_rel: 1e-12,
        degree_bound: Some(f.total_degree() * g.total_degree()),
    };
    let (res, _) = resultant_w_with(&fs, &gs, ropts)?;
    if res.is_zero() {
        return Err(Error::numeric("sheared resultant vanished for a reduced pair", None));
    }
    if res.degree() == 0 {
        return Ok(Vec::new());
    }
    let (jf, jg) = (Jet::new(f), Jet::new(g));
    let mut out: Vec<(C64, C64, usize)> = Vec::new();
    for root in roots(&res, opts.tol)? {
        let zp = root.value;
        if zp.norm() > 1e6 {
            continue;
        }
        let mu = common_fiber_root(&fs, &gs, zp, opts.tol)?;
        let lambda = zp + t * mu;
        let (l, m, resid) = newton2(&jf, &jg, lambda, mu, 20);
        if resid > 1e-8 {
            return Err(Error::numeric(
                format!("point ({l}, {m}) has scaled residual {resid:e}"),
                Some(l),
            ));
        }
        match out.iter_mut().find(|p| close(p.0, l) && close(p.1, m)) {
            Some(p) => p.2 += root.multiplicity,
            None => out.push((l, m, root.multiplicity)),
        }
    }
    Ok(out)
}

fn close(a: C64, b: C64) -> bool {
    (a - b).norm() < 1e-6 * a.norm().max(1.0)
}

/// The `w` shared by `F_s(z', .)` and `G_s(z', .)`. A second shared root
/// means the shear was not generic.
fn common_fiber_root(fs: &BiPoly, gs: &BiPoly, zp: C64, tol: f64) -> Result<C64> {
    let a = roots(&fs.at_z(zp), tol)?;
    let b = roots(&gs.at_z(zp), tol)?;
    let mut pairs: Vec<(f64, C64)> = Vec::new();
    for x in &a {
        for y in &b {
            let d = (x.value - y.value).norm() / x.value.norm().max(1.0);
            pairs.push((d, (x.value + y.value) * 0.5));
        }
    }
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap_or(core::cmp::Ordering::Equal));
    let Some(&(best, mu)) = pairs.first() else {
        return Err(Error::numeric("empty fiber", Some(zp)));
    };
    if best > 1e-4 {
        return Err(Error::numeric(format!("fiber over {zp} has no common root"), Some(zp)));
    }
    if pairs.get(1).is_some_and(|p| p.0 < 1e-4 && (p.1 - mu).norm() > 1e-4 * mu.norm().max(1.0)) {
        return Err(Error::numeric(format!("fiber over {zp} carries two solutions"), Some(zp)));
    }
    Ok(mu)
}
