//! Rational functions stored as numerator/denominator pairs, with exact
//! Taylor coefficients.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use num_traits::Zero;

use crate::blaschke::{BlaschkeProduct, MoebiusMap};
use crate::poly::UniPoly;
use crate::{Error, Result, C64};

/// Relative size of the denominator below which a point counts as a pole.
const POLE_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct RationalFn {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFn {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DegenerateInput("zero denominator".into()));
        }
        Ok(RationalFn { num, den })
    }

    pub fn polynomial(p: UniPoly) -> Self {
        RationalFn { num: p, den: UniPoly::one() }
    }

    /// The identity map `z`.
    pub fn identity() -> Self {
        Self::polynomial(UniPoly::monomial(C64::new(1.0, 0.0), 1))
    }

    /// `m_a`.
    pub fn moebius(alpha: C64) -> Result<Self> {
        let (num, den) = MoebiusMap::new(alpha)?.num_den();
        Ok(RationalFn { num, den })
    }

    pub fn blaschke(f: &BlaschkeProduct) -> Self {
        let (num, den) = f.num_den();
        RationalFn { num, den }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        let d = self.den.eval(z);
        if d.norm() <= POLE_GUARD * self.den.eval_abs(z) {
            return Err(Error::Domain(format!("{z} is a pole")));
        }
        Ok(self.num.eval(z) / d)
    }

    /// Taylor coefficients `c_0, ..., c_k` at `z`.
    pub fn taylor(&self, z: C64, k: usize) -> Result<Vec<C64>> {
        let n = self.num.shift(z);
        let d = self.den.shift(z);
        let d0 = d.coeff(0);
        if d0.norm() <= POLE_GUARD * self.den.eval_abs(z) {
            return Err(Error::Domain(format!("{z} is a pole")));
        }
        let mut c: Vec<C64> = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let mut s = n.coeff(i);
            for j in 1..=i {
                s -= d.coeff(j) * c[i - j];
            }
            c.push(s / d0);
        }
        Ok(c)
    }

    /// `f^(k)(z)`.
    pub fn derivative(&self, z: C64, k: usize) -> Result<C64> {
        let c = self.taylor(z, k)?;
        Ok(c[k] * factorial(k))
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    pub fn powi(&self, k: usize) -> RationalFn {
        (0..k).fold(Self::polynomial(UniPoly::one()), |acc, _| acc.mul(self))
    }

    /// `z -> f(e^{i theta} z)`.
    pub fn rotate(&self, theta: f64) -> RationalFn {
        let rot = |p: &UniPoly| {
            UniPoly::new(
                p.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| c * C64::from_polar(1.0, theta * k as f64))
                    .collect(),
            )
        };
        RationalFn { num: rot(&self.num), den: rot(&self.den) }
    }

    /// `f o m_a`, cleared to a single fraction.
    pub fn compose_moebius(&self, alpha: C64) -> Result<RationalFn> {
        let (a, b) = MoebiusMap::new(alpha)?.num_den();
        let d = self.num.degree().max(self.den.degree());
        let homog = |p: &UniPoly| {
            let mut out = UniPoly::zero();
            for (k, &c) in p.coeffs().iter().enumerate() {
                let term = &power(&a, k) * &power(&b, d - k);
                out = &out + &term.scale(c);
            }
            out
        };
        RationalFn::new(homog(&self.num), homog(&self.den))
    }
}

fn power(p: &UniPoly, k: usize) -> UniPoly {
    (0..k).fold(UniPoly::one(), |acc, _| &acc * p)
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

/// `f^(k)(z)` for a function known only by its values, from the Cauchy
/// integral over the circle of radius `r` around `z` (trapezoidal rule with
/// `nodes` points). `f` must be analytic on a neighborhood of that disk.
pub fn cauchy_derivative(f: &dyn Fn(C64) -> C64, z: C64, k: usize, r: f64, nodes: usize) -> C64 {
    let mut s = C64::zero();
    for j in 0..nodes {
        let t = 2.0 * PI * j as f64 / nodes as f64;
        s += f(z + C64::from_polar(r, t)) * C64::from_polar(1.0, -(k as f64) * t);
    }
    s * factorial(k) / (nodes as f64 * r.powi(k as i32))
}

/// Default radius for [`cauchy_derivative`] at a point of the unit disk.
pub(crate) fn cauchy_radius(z: C64) -> f64 {
    (0.5 * (1.0 - z.norm())).min(0.1)
}
