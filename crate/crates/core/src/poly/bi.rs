use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{HomoPoly3, UniPoly};
use crate::{Error, Result, C64};

/// Dense bivariate polynomial `sum a[i][j] z^i w^j`.
///
/// The coefficient rectangle is trimmed so that its last row and last
/// column each contain a nonzero entry; the zero polynomial has no rows.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BiPoly {
    rows: Vec<Vec<C64>>,
}

impl BiPoly {
    /// Build from rows indexed by z-power; rows may have different lengths.
    pub fn new(rows: Vec<Vec<C64>>) -> Self {
        let width = rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut rows: Vec<Vec<C64>> = rows
            .into_iter()
            .map(|mut r| {
                r.resize(width, C64::zero());
                r
            })
            .collect();
        while rows.last().is_some_and(|r| r.iter().all(|c| c.is_zero())) {
            rows.pop();
        }
        let mut width = rows.first().map_or(0, Vec::len);
        while width > 0 && rows.iter().all(|r| r[width - 1].is_zero()) {
            width -= 1;
        }
        for r in rows.iter_mut() {
            r.truncate(width);
        }
        if width == 0 {
            rows.clear();
        }
        BiPoly { rows }
    }

    pub fn zero() -> Self {
        BiPoly { rows: Vec::new() }
    }

    /// Polynomial in `z` only.
    pub fn from_z(p: &UniPoly) -> Self {
        Self::new(p.coeffs().iter().map(|&c| vec![c]).collect())
    }

    /// Polynomial in `w` only.
    pub fn from_w(p: &UniPoly) -> Self {
        Self::new(vec![p.coeffs().to_vec()])
    }

    /// Sparse constructor from `(z_power, w_power, coefficient)` triples.
    pub fn from_terms(terms: &[(usize, usize, C64)]) -> Self {
        let zd = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let wd = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut rows = vec![vec![C64::zero(); wd + 1]; zd + 1];
        for &(i, j, c) in terms {
            rows[i][j] += c;
        }
        Self::new(rows)
    }

    pub fn rows(&self) -> &[Vec<C64>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Highest power of `z` (0 for the zero polynomial).
    pub fn zdeg(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    /// Highest power of `w` (0 for the zero polynomial).
    pub fn wdeg(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len().saturating_sub(1))
    }

    pub fn coeff(&self, i: usize, j: usize) -> C64 {
        self.rows
            .get(i)
            .and_then(|r| r.get(j))
            .copied()
            .unwrap_or_else(C64::zero)
    }

    pub fn total_degree(&self) -> usize {
        let mut d = 0;
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                if !c.is_zero() {
                    d = d.max(i + j);
                }
            }
        }
        d
    }

    pub fn max_abs(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, z: C64, w: C64) -> C64 {
        self.rows
            .iter()
            .rev()
            .fold(C64::zero(), |acc, row| {
                acc * z + row.iter().rev().fold(C64::zero(), |a, &c| a * w + c)
            })
    }

    /// `sum |a_ij| |z|^i |w|^j`.
    pub fn eval_abs(&self, z: C64, w: C64) -> f64 {
        let (rz, rw) = (z.norm(), w.norm());
        self.rows.iter().rev().fold(0.0, |acc, row| {
            acc * rz + row.iter().rev().fold(0.0, |a, c| a * rw + c.norm())
        })
    }

    /// The polynomial in `w` obtained by fixing `z`.
    pub fn at_z(&self, z: C64) -> UniPoly {
        let width = self.wdeg() + 1;
        if self.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::new(
            (0..width)
                .map(|j| {
                    self.rows
                        .iter()
                        .rev()
                        .fold(C64::zero(), |acc, r| acc * z + r[j])
                })
                .collect(),
        )
    }

    /// Coefficients of `w^0 .. w^wdeg` at fixed `z`, without trimming.
    pub fn at_z_padded(&self, z: C64, wdeg: usize) -> Vec<C64> {
        (0..=wdeg)
            .map(|j| {
                self.rows
                    .iter()
                    .rev()
                    .fold(C64::zero(), |acc, r| acc * z + r.get(j).copied().unwrap_or_else(C64::zero))
            })
            .collect()
    }

    /// The polynomial in `z` obtained by fixing `w`.
    pub fn at_w(&self, w: C64) -> UniPoly {
        UniPoly::new(
            self.rows
                .iter()
                .map(|r| r.iter().rev().fold(C64::zero(), |a, &c| a * w + c))
                .collect(),
        )
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(
            self.rows
                .iter()
                .map(|r| r.iter().map(|&c| c * s).collect())
                .collect(),
        )
    }

    /// `F(w, z)`.
    pub fn swap(&self) -> Self {
        let (zd, wd) = (self.zdeg(), self.wdeg());
        if self.is_zero() {
            return Self::zero();
        }
        Self::new(
            (0..=wd)
                .map(|j| (0..=zd).map(|i| self.rows[i][j]).collect())
                .collect(),
        )
    }

    pub fn dz(&self) -> Self {
        Self::new(
            self.rows
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, r)| r.iter().map(|&c| c * i as f64).collect())
                .collect(),
        )
    }

    pub fn dw(&self) -> Self {
        self.swap().dz().swap()
    }

    /// `F~(z, w) = z^k w^l conj(F(1/conj z, 1/conj w))` with `k = zdeg`, `l = wdeg`.
    pub fn reflect(&self) -> Self {
        let (k, l) = (self.zdeg(), self.wdeg());
        if self.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![vec![C64::zero(); l + 1]; k + 1];
        for i in 0..=k {
            for j in 0..=l {
                rows[k - i][l - j] = self.rows[i][j].conj();
            }
        }
        Self::new(rows)
    }

    /// `F(z + t w, w)`.
    pub fn shear(&self, t: C64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let zd = self.zdeg();
        let wd = self.wdeg();
        let mut out = vec![vec![C64::zero(); wd + zd + 1]; zd + 1];
        // powers of t
        let mut tp = vec![C64::new(1.0, 0.0); zd + 1];
        for k in 1..=zd {
            tp[k] = tp[k - 1] * t;
        }
        for i in 0..=zd {
            let mut binom = 1.0f64;
            for k in 0..=i {
                // (z + t w)^i contributes binom(i, k) z^k (t w)^(i - k)
                if k > 0 {
                    binom = binom * (i - k + 1) as f64 / k as f64;
                }
                let f = tp[i - k] * binom;
                for j in 0..=wd {
                    let a = self.rows[i][j];
                    if !a.is_zero() {
                        out[k][j + i - k] += a * f;
                    }
                }
            }
        }
        Self::new(out)
    }

    /// Exact division by `z - w`. Returns the quotient and the modulus of
    /// the largest remainder coefficient (zero when `F` vanishes on `z = w`).
    pub fn div_z_minus_w(&self) -> (BiPoly, f64) {
        if self.is_zero() {
            return (Self::zero(), 0.0);
        }
        // Treat F as a polynomial in z with coefficients in w: F = sum A_i(w) z^i.
        // Synthetic division by (z - w): Q_{i-1} = A_i + w Q_i.
        let zd = self.zdeg();
        let wd = self.wdeg();
        let width = wd + zd + 1;
        let a: Vec<Vec<C64>> = self
            .rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.resize(width, C64::zero());
                r
            })
            .collect();
        let mut q = vec![vec![C64::zero(); width]; zd.max(1)];
        let mut carry = vec![C64::zero(); width];
        for i in (1..=zd).rev() {
            // Q_{i-1} = A_i + w * Q_i  (carry holds Q_i)
            let mut next = a[i].clone();
            for j in 0..width - 1 {
                next[j + 1] += carry[j];
            }
            q[i - 1] = next.clone();
            carry = next;
        }
        // remainder R = A_0 + w Q_0
        let mut rem = a[0].clone();
        for j in 0..width - 1 {
            rem[j + 1] += carry[j];
        }
        let rem_norm = rem.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if zd == 0 {
            return (Self::zero(), rem_norm);
        }
        (Self::new(q), rem_norm)
    }

    /// Homogenize to `Ĥ(t, z, w)` of total degree `target`.
    pub fn homogenize(&self, target: usize) -> Result<HomoPoly3> {
        let d = self.total_degree();
        if !self.is_zero() && target < d {
            return Err(Error::Precondition(format!(
                "target degree {target} below total degree {d}"
            )));
        }
        let mut terms = BTreeMap::new();
        for (i, r) in self.rows.iter().enumerate() {
            for (j, &c) in r.iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((target - i - j, i, j), c);
                }
            }
        }
        Ok(HomoPoly3::from_terms(target, terms))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let zd = self.rows.len().max(rhs.rows.len());
        let wd = (self.wdeg().max(rhs.wdeg())) + 1;
        BiPoly::new(
            (0..zd)
                .map(|i| (0..wd).map(|j| self.coeff(i, j) + rhs.coeff(i, j)).collect())
                .collect(),
        )
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let zd = self.zdeg() + rhs.zdeg();
        let wd = self.wdeg() + rhs.wdeg();
        let mut out = vec![vec![C64::zero(); wd + 1]; zd + 1];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, &a) in r.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, s) in rhs.rows.iter().enumerate() {
                    for (l, &b) in s.iter().enumerate() {
                        out[i + k][j + l] += a * b;
                    }
                }
            }
        }
        BiPoly::new(out)
    }
}
