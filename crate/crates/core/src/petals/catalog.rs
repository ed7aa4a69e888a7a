//! Explicit holizations of the codimension one and two petals, and the
//! invariants that classify them.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use num_traits::Zero;

use super::{cusp2_connection, distinct, Connection, Holization, LocalFunctional, RationalFn, Term};
use crate::blaschke::{hyperbolic_distance, BlaschkeProduct, MoebiusMap};
use crate::intersection::BlaschkePair;
use crate::linalg::{singular_values, CMat};
use crate::poly::UniPoly;
use crate::{Error, Result, C64};

/// `(2 - sqrt 2) / (3 (4 sqrt 2 - 5))`, the smallest `|c|` for which the
/// arc construction of a cusp of order two is asserted to exist.
pub const CUSP2_BOUND: f64 = 0.297_268_604_148_537_2;

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// `(m_a^2, m_a^3)`, which holizes `f'(a) = 0` onto the Neil parabola
/// `z^3 = w^2`.
pub fn neil_holization(alpha: C64) -> Result<Holization> {
    let m = RationalFn::moebius(alpha)?;
    Holization::new(vec![m.powi(2), m.powi(3)], Vec::new())
}

/// `(m_a1 m_a2, z m_a1 m_a2)`, identifying `a1` and `a2`.
pub fn single_crossing_holization(a1: C64, a2: C64) -> Result<Holization> {
    distinct(&[a1, a2])?;
    let f = RationalFn::moebius(a1)?.mul(&RationalFn::moebius(a2)?);
    let zf = RationalFn::identity().mul(&f);
    Holization::new(vec![f, zf], vec![vec![a1, a2]])
}

/// Complete isomorphism invariant of a single crossing: the hyperbolic
/// distance between the identified points.
pub fn single_crossing_invariant(a1: C64, a2: C64) -> Result<f64> {
    hyperbolic_distance(a1, a2)
}

pub fn single_crossing_isomorphic(a: (C64, C64), b: (C64, C64)) -> Result<bool> {
    let da = single_crossing_invariant(a.0, a.1)?;
    let db = single_crossing_invariant(b.0, b.1)?;
    Ok((da - db).abs() < 1e-10)
}

/// `(f, z f, z^2 f)` with `f = z m_a2 m_a3`, identifying `0, a2, a3`.
pub fn triple_point_embedding(a2: C64, a3: C64) -> Result<Holization> {
    distinct(&[C64::zero(), a2, a3])?;
    let z = RationalFn::identity();
    let f = z.mul(&RationalFn::moebius(a2)?).mul(&RationalFn::moebius(a3)?);
    let zf = z.mul(&f);
    let zzf = z.mul(&zf);
    Holization::new(vec![f, zf, zzf], vec![vec![C64::zero(), a2, a3]])
}

/// Triple point at arbitrary `a1, a2, a3`: the embedding for
/// `0, m_a1(a2), m_a1(a3)` precomposed with `m_a1`.
pub fn triple_point_holization(a1: C64, a2: C64, a3: C64) -> Result<Holization> {
    distinct(&[a1, a2, a3])?;
    let m = MoebiusMap::new(a1)?;
    let base = triple_point_embedding(m.eval(a2), m.eval(a3))?;
    let comps = base
        .components()
        .iter()
        .map(|c| c.compose_moebius(a1))
        .collect::<Result<Vec<_>>>()?;
    Holization::new(comps, vec![vec![a1, a2, a3]])
}

/// Rows `Dh(0), Dh(a2), Dh(a3)` of [`triple_point_embedding`] in closed
/// form.
pub fn triple_point_jacobian(a2: C64, a3: C64) -> Result<[[C64; 3]; 3]> {
    distinct(&[C64::zero(), a2, a3])?;
    let row = |a: C64, other: C64| -> Result<[C64; 3]> {
        let k = -a * MoebiusMap::new(other)?.eval(a) / (1.0 - a.norm_sqr());
        Ok([k, k * a, k * a * a])
    };
    Ok([[a2 * a3, C64::zero(), C64::zero()], row(a2, a3)?, row(a3, a2)?])
}

/// Whether a disk automorphism carries the triple `alphas` onto `betas` in
/// some order: some permuted matrix
/// `(1 - conj(b_i) b_j) / (1 - conj(a_i) a_j)` has rank one.
pub fn triple_point_isomorphic(alphas: [C64; 3], betas: [C64; 3]) -> Result<bool> {
    distinct(&alphas)?;
    distinct(&betas)?;
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    Ok(PERMS.iter().any(|s| {
        let b = [betas[s[0]], betas[s[1]], betas[s[2]]];
        let m = CMat::from_fn(3, 3, |i, j| {
            (one() - b[i].conj() * b[j]) / (one() - alphas[i].conj() * alphas[j])
        });
        let sv = singular_values(&m);
        sv[1] < 1e-8 * sv[0]
    }))
}

/// Point of the circle `|a - (1 + i)| = 1` at angle `phi` about its center.
pub fn cusp2_alpha(phi: f64) -> C64 {
    C64::new(1.0, 1.0) + C64::from_polar(1.0, phi)
}

/// `c = a / (3 (1 - |a|^2))`: `z^2 m_a` satisfies `f''(0) + c f'''(0) = 0`.
pub fn cusp2_c(alpha: C64) -> C64 {
    alpha / (3.0 * (1.0 - alpha.norm_sqr()))
}

/// Holization `(z^4, z^2 m_a)` of a cusp of order two with `|c| = cmod`,
/// with `a` on the arc of `|a - (1 + i)| = 1` inside the disk, found by
/// bisection. Returns the realized `c`.
pub fn cusp2_holization(cmod: f64) -> Result<(Holization, C64)> {
    if !(cmod >= CUSP2_BOUND) {
        return Err(Error::OutOfRange { value: cmod, bound: CUSP2_BOUND });
    }
    // |c| grows monotonically along the arc from its point nearest the
    // origin (phi = 5pi/4) to the boundary point 1 (phi = 3pi/2)
    let target = |phi: f64| cusp2_c(cusp2_alpha(phi)).norm() - cmod;
    let mut lo = 1.25 * PI;
    let mut hi;
    let mut gap = 1e-3;
    loop {
        let phi = 1.5 * PI - gap;
        if cusp2_alpha(phi).norm() < 1.0 && target(phi) >= 0.0 {
            hi = phi;
            break;
        }
        gap *= 0.5;
        if gap < 1e-15 {
            return Err(Error::numeric("no arc point reaches the requested |c|", None));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if target(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha = cusp2_alpha(hi);
    let c = cusp2_c(alpha);
    let z = RationalFn::identity();
    let f = RationalFn::polynomial(UniPoly::monomial(one(), 4));
    let g = z.powi(2).mul(&RationalFn::moebius(alpha)?);
    let i = C64::new(0.0, 1.0);
    let gap = (g.eval(one())? - g.eval(i)?).norm();
    if gap > 1e-12 {
        return Err(Error::Consistency(alloc::format!("g(1) and g(i) differ by {gap:e}")));
    }
    let conn = cusp2_connection(c)?;
    let h = Holization::new(vec![f, g], vec![vec![one(), i]])?;
    for m in h.verify(&conn, 1e-10)? {
        if !m.holds {
            return Err(Error::Consistency(alloc::format!(
                "component violates the cusp functionals: residuals {:?}",
                m.residuals
            )));
        }
    }
    Ok((h, c))
}

/// Cusp algebras are isomorphic exactly when `|c|` agrees.
pub fn cusp2_isomorphic(c1: C64, c2: C64) -> bool {
    (c1.norm() - c2.norm()).abs() < 1e-10
}

/// Minimum of `|c(a)|` over the admissible arc, by a scan followed by
/// golden-section refinement. Returns the minimizing `a` and `|c|`.
pub fn cusp2_min_modulus() -> (C64, f64) {
    let h = |phi: f64| {
        let a = cusp2_alpha(phi);
        if a.norm() < 1.0 {
            cusp2_c(a).norm()
        } else {
            f64::INFINITY
        }
    };
    let n = 2000;
    let step = 0.5 * PI / n as f64;
    let (mut best, mut best_v) = (PI, f64::INFINITY);
    for k in 1..n {
        let phi = PI + step * k as f64;
        let v = h(phi);
        if v < best_v {
            best = phi;
            best_v = v;
        }
    }
    let (phi, v) = golden_min(h, best - step, best + step, 1e-14);
    (cusp2_alpha(phi), v)
}

pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `m_a1 m_a2 (b1) = m_a1 m_a2 (b2)`, the condition for two crossings to be
/// holized by Blaschke products that are one-to-one on the circle.
pub fn two_crossing_condition(a1: C64, a2: C64, b1: C64, b2: C64) -> Result<bool> {
    distinct(&[a1, a2, b1, b2])?;
    let side = |b: C64| (a1 - b) * (a2 - b) / ((one() - a1.conj() * b) * (one() - a2.conj() * b));
    Ok((side(b1) - side(b2)).norm() <= 1e-10)
}

/// The pair `(m_a1 m_a2, z m_a1 m_a2 m_b1 m_b2)` as Blaschke products.
pub fn two_crossing_pair(a1: C64, a2: C64, b1: C64, b2: C64) -> Result<BlaschkePair> {
    if !two_crossing_condition(a1, a2, b1, b2)? {
        return Err(Error::Precondition(
            "m_a1 m_a2 takes different values at b1 and b2".into(),
        ));
    }
    // an even number of factors m_a = -(z - a)/(1 - conj(a) z), so the
    // front factor is one
    let f = BlaschkeProduct::from_zeros(vec![a1, a2])?;
    let g = BlaschkeProduct::from_zeros(vec![C64::zero(), a1, a2, b1, b2])?;
    BlaschkePair::new(f, g)
}

pub fn two_crossing_holization(a1: C64, a2: C64, b1: C64, b2: C64) -> Result<Holization> {
    let pair = two_crossing_pair(a1, a2, b1, b2)?;
    Holization::new(
        vec![RationalFn::blaschke(&pair.f), RationalFn::blaschke(&pair.g)],
        vec![vec![a1, a2], vec![b1, b2]],
    )
}

/// `(sqrt2 (z - 2 z^3), 1 - 2 z^2)`, a disk crossing itself once on the
/// nodal cubic `z^2 = w^2 (1 - w)`.
pub fn nodal_cubic_fixture() -> Holization {
    let x = RationalFn::polynomial(UniPoly::from_real(&[0.0, SQRT_2, 0.0, -2.0 * SQRT_2]));
    let y = RationalFn::polynomial(UniPoly::from_real(&[1.0, 0.0, -2.0]));
    let pts = vec![C64::new(FRAC_1_SQRT_2, 0.0), C64::new(-FRAC_1_SQRT_2, 0.0)];
    Holization::new(vec![x, y], vec![pts]).expect("two components")
}

/// `z^2 - w^2 (1 - w)`.
pub fn nodal_cubic_residual(z: C64, w: C64) -> C64 {
    z * z - w * w * (one() - w)
}

/// `(z b, z^2 b)` with `b = (z^2 - 1/4)/(1 - z^2/4)`, which holizes `A^3`
/// in two dimensions.
pub fn a3_fixture() -> Holization {
    let b = RationalFn::new(UniPoly::from_real(&[-0.25, 0.0, 1.0]), UniPoly::from_real(&[1.0, 0.0, -0.25]))
        .expect("nonzero denominator");
    let z = RationalFn::identity();
    let first = z.mul(&b);
    let second = z.mul(&first);
    let pts = vec![C64::zero(), C64::new(0.5, 0.0), C64::new(-0.5, 0.0)];
    Holization::new(vec![first, second], vec![pts]).expect("two components")
}

/// `f(0) = f(1/2) = f(-1/2)` and `f'(0) = -(15/64)(f'(1/2) + f'(-1/2))`.
pub fn a3_connection() -> Connection {
    let (z, h, mh) = (C64::zero(), C64::new(0.5, 0.0), C64::new(-0.5, 0.0));
    let k = C64::new(15.0 / 64.0, 0.0);
    let build = || -> Result<Connection> {
        Connection::new(vec![
            LocalFunctional::difference(z, h)?,
            LocalFunctional::difference(h, mh)?,
            LocalFunctional::new(vec![
                Term { point: z, order: 1, coeff: one() },
                Term { point: h, order: 1, coeff: k },
                Term { point: mh, order: 1, coeff: k },
            ])?,
        ])
    };
    build().expect("independent functionals")
}
