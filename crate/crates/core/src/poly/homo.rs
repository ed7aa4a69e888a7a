use alloc::collections::BTreeMap;

use num_traits::Zero;

use crate::C64;

/// Homogeneous polynomial in `(t, z, w)`; keys are exponent triples.
#[derive(Debug, Clone, PartialEq)]
pub struct HomoPoly3 {
    total_degree: usize,
    terms: BTreeMap<(usize, usize, usize), C64>,
}

impl HomoPoly3 {
    /// Zero coefficients are dropped. Panics if a monomial has the wrong
    /// total degree.
    pub fn from_terms(total_degree: usize, terms: BTreeMap<(usize, usize, usize), C64>) -> Self {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        for &(a, b, c) in terms.keys() {
            assert_eq!(a + b + c, total_degree, "non-homogeneous monomial");
        }
        HomoPoly3 { total_degree, terms }
    }

    pub fn total_degree(&self) -> usize {
        self.total_degree
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize, usize), C64> {
        &self.terms
    }

    pub fn eval(&self, t: C64, z: C64, w: C64) -> C64 {
        self.terms.iter().fold(C64::zero(), |acc, (&(a, b, c), &k)| {
            acc + k * t.powu(a as u32) * z.powu(b as u32) * w.powu(c as u32)
        })
    }
}
