use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use num_traits::Zero;

use super::{BiPoly, UniPoly};
use crate::linalg::{det, singular_values, CMat};
use crate::{Error, Result, C64};

/// Controls for the evaluation–interpolation resultant.
#[derive(Debug, Clone, Copy)]
pub struct ResultantOptions {
    /// Radius of the circle carrying the interpolation nodes.
    pub radius: f64,
    /// Coefficients below `trim_rel` times the largest sampled value of the
    /// resultant are set to zero.
    pub trim_rel: f64,
    /// Override for the z-degree bound; defaults to
    /// `zdeg(F) wdeg(G) + zdeg(G) wdeg(F)`.
    pub degree_bound: Option<usize>,
}

impl Default for ResultantOptions {
    fn default() -> Self {
        ResultantOptions { radius: 1.0, trim_rel: 1e-12, degree_bound: None }
    }
}

/// Sylvester matrix of `F(z, .)` and `G(z, .)` with the formal w-degrees
/// of `F` and `G`.
pub fn sylvester_at(f: &BiPoly, g: &BiPoly, z: C64) -> CMat {
    let a = f.wdeg();
    let b = g.wdeg();
    let fc = f.at_z_padded(z, a);
    let gc = g.at_z_padded(z, b);
    let n = a + b;
    let mut s = CMat::zeros(n, n);
    for i in 0..b {
        for k in 0..=a {
            s[(i, i + k)] = fc[a - k];
        }
    }
    for i in 0..a {
        for k in 0..=b {
            s[(b + i, i + k)] = gc[b - k];
        }
    }
    s
}

fn hadamard(s: &CMat) -> f64 {
    s.row_iter()
        .map(|r| r.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt())
        .product()
}

/// Sylvester matrices at three unrelated points of the circle all have
/// `sigma_min < 1e-10 sigma_max`.
fn rank_deficient(f: &BiPoly, g: &BiPoly, rho: f64) -> bool {
    [0.7, 2.8, 4.9].iter().all(|&theta| {
        let sv = singular_values(&sylvester_at(f, g, C64::from_polar(rho, theta)));
        sv.last().copied().unwrap_or(0.0) < 1e-10 * sv[0]
    })
}

/// `Res_w(F, G)` as a polynomial in `z` with default options.
pub fn resultant_w(f: &BiPoly, g: &BiPoly) -> Result<UniPoly> {
    resultant_w_with(f, g, ResultantOptions::default()).map(|(r, _)| r)
}

/// `Res_w(F, G)` by evaluating Sylvester determinants at roots of unity on
/// a circle and interpolating. Also returns the largest Hadamard bound of
/// the sampled Sylvester matrices.
///
/// The resultant is reported as identically zero when its samples are tiny
/// against that bound and the Sylvester matrix is rank deficient at three
/// further points.
pub fn resultant_w_with(f: &BiPoly, g: &BiPoly, opts: ResultantOptions) -> Result<(UniPoly, f64)> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::DegenerateInput("resultant with the zero polynomial".into()));
    }
    if f.wdeg() == 0 && g.wdeg() == 0 {
        return Err(Error::DegenerateInput("both polynomials are constant in w".into()));
    }
    let bound = opts
        .degree_bound
        .unwrap_or(f.zdeg() * g.wdeg() + g.zdeg() * f.wdeg());
    let n = bound + 1;
    let rho = opts.radius;
    let mut values = Vec::with_capacity(n);
    let mut scale: f64 = 0.0;
    for j in 0..n {
        let z = C64::from_polar(rho, 2.0 * PI * j as f64 / n as f64);
        let s = sylvester_at(f, g, z);
        scale = scale.max(hadamard(&s));
        values.push(det(&s));
    }
    let sup = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if sup < 1e-8 * scale && rank_deficient(f, g, rho) {
        return Ok((UniPoly::zero(), scale));
    }
    let mut coeffs = vec![C64::zero(); n];
    for (k, ck) in coeffs.iter_mut().enumerate() {
        let mut acc = C64::zero();
        for (j, v) in values.iter().enumerate() {
            // reduce the exponent first to keep the twiddle accurate
            let e = (j * k) % n;
            acc += v * C64::from_polar(1.0, -2.0 * PI * e as f64 / n as f64);
        }
        let c = acc / n as f64;
        *ck = if c.norm() < opts.trim_rel * sup {
            C64::zero()
        } else {
            c / rho.powi(k as i32)
        };
    }
    Ok((UniPoly::new(coeffs), scale))
}
