//! Möbius maps and finite Blaschke products.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use num_traits::Zero;

use crate::poly::UniPoly;
use crate::{Error, Result, C64};

const POLE_GUARD: f64 = 1e-12;
const UNIMODULAR_TOL: f64 = 1e-8;

fn check_in_disk(a: C64, what: &str) -> Result<()> {
    if !(a.norm() < 1.0) {
        return Err(Error::Domain(format!("{what} = {a} is not in the open unit disk")));
    }
    Ok(())
}

/// Disk automorphism `m_a(z) = (a - z) / (1 - conj(a) z)`; an involution
/// swapping `a` and `0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    alpha: C64,
}

impl MoebiusMap {
    pub fn new(alpha: C64) -> Result<Self> {
        check_in_disk(alpha, "alpha")?;
        Ok(MoebiusMap { alpha })
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn eval(&self, z: C64) -> C64 {
        (self.alpha - z) / (C64::new(1.0, 0.0) - self.alpha.conj() * z)
    }

    pub fn derivative(&self, z: C64) -> C64 {
        let d = C64::new(1.0, 0.0) - self.alpha.conj() * z;
        -(1.0 - self.alpha.norm_sqr()) / (d * d)
    }

    /// Numerator `a - z` and denominator `1 - conj(a) z`.
    pub fn num_den(&self) -> (UniPoly, UniPoly) {
        (
            UniPoly::new(alloc::vec![self.alpha, C64::new(-1.0, 0.0)]),
            UniPoly::new(alloc::vec![C64::new(1.0, 0.0), -self.alpha.conj()]),
        )
    }
}

/// `u * prod (z - a_i) / (1 - conj(a_i) z)` with `|u| = 1`, `|a_i| < 1`.
/// Repeated zeros are listed repeatedly.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    zeros: Vec<C64>,
    unimodular: C64,
}

impl BlaschkeProduct {
    /// The unimodular factor is renormalized; it may deviate from modulus
    /// one by at most `1e-8`.
    pub fn new(zeros: Vec<C64>, unimodular: C64) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::Domain("a Blaschke product needs at least one zero".into()));
        }
        for &a in &zeros {
            check_in_disk(a, "zero")?;
        }
        let m = unimodular.norm();
        if !((m - 1.0).abs() <= UNIMODULAR_TOL) {
            return Err(Error::Domain(format!("front factor has modulus {m}, expected 1")));
        }
        Ok(BlaschkeProduct { zeros, unimodular: unimodular / m })
    }

    pub fn from_zeros(zeros: Vec<C64>) -> Result<Self> {
        Self::new(zeros, C64::new(1.0, 0.0))
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Result<Self> {
        Self::from_zeros(alloc::vec![C64::zero(); k])
    }

    pub fn zeros(&self) -> &[C64] {
        &self.zeros
    }

    pub fn unimodular(&self) -> C64 {
        self.unimodular
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    fn factor_den(a: C64, z: C64) -> Result<C64> {
        let d = C64::new(1.0, 0.0) - a.conj() * z;
        if d.norm() < POLE_GUARD * (1.0 + (a.conj() * z).norm()) {
            return Err(Error::numeric(format!("{z} is a pole of the Blaschke product"), Some(z)));
        }
        Ok(d)
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        let mut v = self.unimodular;
        for &a in &self.zeros {
            v *= (z - a) / Self::factor_den(a, z)?;
        }
        Ok(v)
    }

    /// `p~(z) = prod (z - a_i)`, without the front factor.
    pub fn p_tilde(&self) -> UniPoly {
        UniPoly::from_roots(&self.zeros)
    }

    /// `p(z) = prod (1 - conj(a_i) z)`.
    pub fn p(&self) -> UniPoly {
        self.zeros.iter().fold(UniPoly::one(), |acc, a| {
            &acc * &UniPoly::new(alloc::vec![C64::new(1.0, 0.0), -a.conj()])
        })
    }

    /// `(u p~, p)` with `f = u p~ / p`.
    pub fn num_den(&self) -> (UniPoly, UniPoly) {
        (self.p_tilde().scale(self.unimodular), self.p())
    }

    /// `f'(z)`; uses the logarithmic derivative away from the zeros and the
    /// product rule near them.
    pub fn derivative_at(&self, z: C64) -> Result<C64> {
        let near_zero = self.zeros.iter().any(|&a| (z - a).norm() < 1e-6);
        if !near_zero {
            let f = self.eval(z)?;
            let mut s = C64::zero();
            for &a in &self.zeros {
                s += C64::new(1.0, 0.0) / (z - a) + a.conj() / Self::factor_den(a, z)?;
            }
            return Ok(f * s);
        }
        let mut vals = Vec::with_capacity(self.zeros.len());
        let mut ders = Vec::with_capacity(self.zeros.len());
        for &a in &self.zeros {
            let d = Self::factor_den(a, z)?;
            vals.push((z - a) / d);
            ders.push(C64::new(1.0 - a.norm_sqr(), 0.0) / (d * d));
        }
        let mut s = C64::zero();
        for k in 0..vals.len() {
            let mut t = ders[k];
            for (j, v) in vals.iter().enumerate() {
                if j != k {
                    t *= v;
                }
            }
            s += t;
        }
        Ok(self.unimodular * s)
    }

    /// `f o m_gamma`, again a Blaschke product of the same degree with zeros
    /// `m_gamma(a_i)`.
    pub fn precompose_moebius(&self, gamma: C64) -> Result<Self> {
        let m = MoebiusMap::new(gamma)?;
        let zeros: Vec<C64> = self.zeros.iter().map(|&a| m.eval(a)).collect();
        let bare = BlaschkeProduct { zeros, unimodular: C64::new(1.0, 0.0) };
        // Fix the front factor by comparing at a boundary point, where both
        // sides have modulus one.
        let z0 = C64::new(1.0, 0.0);
        let u = self.eval(m.eval(z0))? / bare.eval(z0)?;
        Ok(BlaschkeProduct { zeros: bare.zeros, unimodular: u / u.norm() })
    }
}

/// `arctanh |m_a(b)|`, the hyperbolic distance on the disk.
pub fn hyperbolic_distance(a: C64, b: C64) -> Result<f64> {
    check_in_disk(a, "a")?;
    check_in_disk(b, "b")?;
    Ok(pseudo_hyperbolic(a, b).atanh())
}

/// `|m_a(b)|` without domain checks.
pub fn pseudo_hyperbolic(a: C64, b: C64) -> f64 {
    ((a - b) / (C64::new(1.0, 0.0) - a.conj() * b)).norm()
}
