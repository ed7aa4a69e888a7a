//! Codimension one and two petals: the connections that define them, the
//! explicit holizations, and the invariants that classify them.
//!
//! A connection is a finite set of local functionals
//! `L(f) = sum a_ij f^(j)(alpha_i)`; the petal's algebra is their common
//! kernel. A holization is a tuple of rational functions on the disk whose
//! pullbacks generate that algebra.

mod catalog;
mod rational;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use num_traits::Zero;

pub use catalog::{
    a3_connection, a3_fixture, cusp2_alpha, cusp2_c, cusp2_holization, cusp2_isomorphic,
    cusp2_min_modulus, neil_holization, nodal_cubic_fixture, nodal_cubic_residual,
    single_crossing_holization, single_crossing_invariant, single_crossing_isomorphic,
    triple_point_embedding, triple_point_holization, triple_point_isomorphic,
    triple_point_jacobian, two_crossing_condition, two_crossing_holization, two_crossing_pair,
    CUSP2_BOUND,
};
pub use rational::{cauchy_derivative, RationalFn};
pub(crate) use catalog::golden_min;

use crate::linalg::{rank, CMat};
use crate::{Error, Result, C64};
use rational::cauchy_radius;

/// One term `coeff * f^(order)(point)` of a local functional.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub point: C64,
    pub order: usize,
    pub coeff: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalFunctional {
    terms: Vec<Term>,
}

impl LocalFunctional {
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if terms.iter().all(|t| t.coeff.is_zero()) {
            return Err(Error::DegenerateInput("local functional with no nonzero coefficient".into()));
        }
        for t in &terms {
            if !(t.point.norm() < 1.0) {
                return Err(Error::Domain(format!("support point {} is not in the open disk", t.point)));
            }
        }
        Ok(LocalFunctional { terms })
    }

    /// `f(a) - f(b)`.
    pub fn difference(a: C64, b: C64) -> Result<Self> {
        let one = C64::new(1.0, 0.0);
        Self::new(vec![
            Term { point: a, order: 0, coeff: one },
            Term { point: b, order: 0, coeff: -one },
        ])
    }

    /// `f^(k)(a)`.
    pub fn derivative(a: C64, k: usize) -> Result<Self> {
        Self::new(vec![Term { point: a, order: k, coeff: C64::new(1.0, 0.0) }])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn max_order(&self) -> usize {
        self.terms.iter().map(|t| t.order).max().unwrap_or(0)
    }

    /// `(L(f), scale)` where `scale = max(1, sum |a_ij f^(j)(alpha_i)|)`.
    pub fn apply(&self, f: &RationalFn) -> Result<(C64, f64)> {
        self.apply_with(|z, k| f.derivative(z, k))
    }

    /// As [`apply`](Self::apply) for a function known only by its values on
    /// the disk; derivatives come from Cauchy integrals.
    pub fn apply_fn(&self, f: &dyn Fn(C64) -> C64) -> Result<(C64, f64)> {
        self.apply_with(|z, k| Ok(cauchy_derivative(f, z, k, cauchy_radius(z), 96)))
    }

    fn apply_with(&self, mut d: impl FnMut(C64, usize) -> Result<C64>) -> Result<(C64, f64)> {
        let mut sum = C64::zero();
        let mut scale: f64 = 0.0;
        for t in &self.terms {
            let v = t.coeff * d(t.point, t.order)?;
            sum += v;
            scale += v.norm();
        }
        Ok((sum, scale.max(1.0)))
    }

    /// `(point, order) -> coefficient` with points merged within `1e-12`.
    fn coordinates(&self, keys: &mut Vec<(C64, usize)>) -> Vec<(usize, C64)> {
        let mut out = Vec::new();
        for t in &self.terms {
            let idx = match keys
                .iter()
                .position(|&(p, k)| k == t.order && (p - t.point).norm() < 1e-12)
            {
                Some(i) => i,
                None => {
                    keys.push((t.point, t.order));
                    keys.len() - 1
                }
            };
            out.push((idx, t.coeff));
        }
        out
    }

    /// `Some((a, b))` when this is a multiple of `f(a) - f(b)`.
    pub fn as_double_point(&self) -> Option<(C64, C64)> {
        match self.terms.as_slice() {
            [s, t] if s.order == 0 && t.order == 0 && (s.coeff + t.coeff).norm() <= 1e-12 * s.coeff.norm() => {
                Some((s.point, t.point))
            }
            _ => None,
        }
    }
}

/// Linearly independent local functionals.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection {
    functionals: Vec<LocalFunctional>,
}

impl Connection {
    pub fn new(functionals: Vec<LocalFunctional>) -> Result<Self> {
        if functionals.is_empty() {
            return Err(Error::DegenerateInput("empty connection".into()));
        }
        let mut keys = Vec::new();
        let coords: Vec<_> = functionals.iter().map(|f| f.coordinates(&mut keys)).collect();
        let mut m = CMat::zeros(functionals.len(), keys.len());
        for (i, row) in coords.iter().enumerate() {
            for &(j, c) in row {
                m[(i, j)] += c;
            }
        }
        if rank(&m, 1e-10) < functionals.len() {
            return Err(Error::DegenerateInput("functionals are linearly dependent".into()));
        }
        Ok(Connection { functionals })
    }

    pub fn functionals(&self) -> &[LocalFunctional] {
        &self.functionals
    }

    /// Codimension of the algebra the connection defines.
    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }

    /// Distinct support points in order of first appearance.
    pub fn support(&self) -> Vec<C64> {
        let mut pts: Vec<C64> = Vec::new();
        for t in self.functionals.iter().flat_map(|f| f.terms.iter()) {
            if !pts.iter().any(|p| (p - t.point).norm() < 1e-12) {
                pts.push(t.point);
            }
        }
        pts
    }

    /// Each functional as a pair `(a, b)` for `f(a) = f(b)`; `None` if some
    /// functional involves derivatives or more than two points.
    pub fn double_points(&self) -> Option<Vec<(C64, C64)>> {
        self.functionals.iter().map(|f| f.as_double_point()).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    /// `|L(f)| / scale` per functional.
    pub residuals: Vec<f64>,
    pub holds: bool,
}

/// Whether `f` lies in the algebra cut out by `conn`, using exact
/// derivatives of the stored fraction.
pub fn verify_membership(f: &RationalFn, conn: &Connection, tol: f64) -> Result<Membership> {
    let mut residuals = Vec::with_capacity(conn.len());
    for l in conn.functionals() {
        let (v, s) = l.apply(f)?;
        residuals.push(v.norm() / s);
    }
    let holds = residuals.iter().all(|&r| r <= tol);
    Ok(Membership { residuals, holds })
}

/// [`verify_membership`] for a function given by values only.
pub fn verify_membership_fn(f: &dyn Fn(C64) -> C64, conn: &Connection, tol: f64) -> Result<Membership> {
    let mut residuals = Vec::with_capacity(conn.len());
    for l in conn.functionals() {
        let (v, s) = l.apply_fn(f)?;
        residuals.push(v.norm() / s);
    }
    let holds = residuals.iter().all(|&r| r <= tol);
    Ok(Membership { residuals, holds })
}

/// Polar sample grid: `radii` circles with radii `r_max * i / radii`,
/// `angles` points on each.
pub fn disk_grid(radii: usize, angles: usize, r_max: f64) -> Vec<C64> {
    let mut out = Vec::with_capacity(radii * angles);
    for i in 1..=radii {
        let r = r_max * i as f64 / radii as f64;
        for k in 0..angles {
            // offset the angles so no grid point lies on the real axis
            out.push(C64::from_polar(r, 2.0 * PI * (k as f64 + 0.37) / angles as f64));
        }
    }
    out
}

/// The 400-point grid used for injectivity and boundedness checks.
pub fn default_grid() -> Vec<C64> {
    disk_grid(20, 20, 0.95)
}

/// A proper map of the disk given by rational components, together with
/// the sets of points it is meant to identify.
#[derive(Debug, Clone, PartialEq)]
pub struct Holization {
    components: Vec<RationalFn>,
    identified: Vec<Vec<C64>>,
}

impl Holization {
    pub fn new(components: Vec<RationalFn>, identified: Vec<Vec<C64>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::DegenerateInput("holization needs at least one component".into()));
        }
        Ok(Holization { components, identified })
    }

    pub fn components(&self) -> &[RationalFn] {
        &self.components
    }

    pub fn ambient_dim(&self) -> usize {
        self.components.len()
    }

    /// Declared identification sets (points may lie on the boundary).
    pub fn identified(&self) -> &[Vec<C64>] {
        &self.identified
    }

    pub fn eval(&self, z: C64) -> Result<Vec<C64>> {
        self.components.iter().map(|c| c.eval(z)).collect()
    }

    pub fn derivative(&self, z: C64) -> Result<Vec<C64>> {
        self.components.iter().map(|c| c.derivative(z, 1)).collect()
    }

    /// Largest component modulus over `grid`.
    pub fn sup_on(&self, grid: &[C64]) -> Result<f64> {
        let mut m: f64 = 0.0;
        for &z in grid {
            for v in self.eval(z)? {
                m = m.max(v.norm());
            }
        }
        Ok(m)
    }

    /// Smallest `|Dh|` over `grid`.
    pub fn min_derivative_on(&self, grid: &[C64]) -> Result<f64> {
        let mut m = f64::INFINITY;
        for &z in grid {
            m = m.min(norm(&self.derivative(z)?));
        }
        Ok(m)
    }

    /// Pairs of distinct points of `grid` together with the declared
    /// interior identification points whose images lie within `tol`,
    /// excluding pairs inside one declared set.
    pub fn collisions(&self, grid: &[C64], tol: f64) -> Result<Vec<(C64, C64)>> {
        let mut pts: Vec<C64> = grid.to_vec();
        for set in &self.identified {
            pts.extend(set.iter().copied().filter(|z| z.norm() < 1.0));
        }
        let images: Vec<Vec<C64>> = pts.iter().map(|&z| self.eval(z)).collect::<Result<_>>()?;
        let mut out = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if (pts[i] - pts[j]).norm() < 1e-12 || self.declared_together(pts[i], pts[j]) {
                    continue;
                }
                let d: f64 = images[i].iter().zip(&images[j]).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
                if d < tol {
                    out.push((pts[i], pts[j]));
                }
            }
        }
        Ok(out)
    }

    fn declared_together(&self, a: C64, b: C64) -> bool {
        let has = |s: &Vec<C64>, z: C64| s.iter().any(|p| (p - z).norm() < 1e-12);
        self.identified.iter().any(|s| has(s, a) && has(s, b))
    }

    /// Largest image spread inside a declared identification set, over sets
    /// lying in the closed disk.
    pub fn identification_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for set in &self.identified {
            let Some(&first) = set.first() else { continue };
            let base = self.eval(first)?;
            for &z in &set[1..] {
                let v = self.eval(z)?;
                let d: f64 = base.iter().zip(&v).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
                worst = worst.max(d);
            }
        }
        Ok(worst)
    }

    /// Membership of every component in the algebra of `conn`.
    pub fn verify(&self, conn: &Connection, tol: f64) -> Result<Vec<Membership>> {
        self.components.iter().map(|c| verify_membership(c, conn, tol)).collect()
    }
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// The petal kinds with explicit holizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PetalKind {
    /// `f'(alpha) = 0`.
    Cusp1 { alpha: C64 },
    /// `f(a1) = f(a2)`.
    SingleCrossing { a1: C64, a2: C64 },
    /// `f(a1) = f(a2) = f(a3)`.
    TriplePoint { a1: C64, a2: C64, a3: C64 },
    /// `f'(0) = 0`, `f''(0) + c f'''(0) = 0`.
    Cusp2 { c: C64 },
    /// `f(a1) = f(a2)`, `f(b1) = f(b2)`.
    TwoCrossings { a1: C64, a2: C64, b1: C64, b2: C64 },
}

impl PetalKind {
    pub fn name(&self) -> &'static str {
        match self {
            PetalKind::Cusp1 { .. } => "cusp1",
            PetalKind::SingleCrossing { .. } => "single_crossing",
            PetalKind::TriplePoint { .. } => "triple_point",
            PetalKind::Cusp2 { .. } => "cusp2",
            PetalKind::TwoCrossings { .. } => "two_crossings",
        }
    }

    pub fn codimension(&self) -> usize {
        match self {
            PetalKind::Cusp1 { .. } | PetalKind::SingleCrossing { .. } => 1,
            _ => 2,
        }
    }

    /// Smallest ambient dimension of a holization. Three derivative vectors
    /// at a triple point are dependent in two dimensions, so that kind needs
    /// three.
    pub fn min_ambient_dim(&self) -> usize {
        match self {
            PetalKind::TriplePoint { .. } => 3,
            _ => 2,
        }
    }
}

/// Codimension two kinds that are classified but have no explicit
/// holization here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OtherCodim2 {
    TwoCusps,
    CrossingAndCusp,
    CuspAtCrossing,
}

impl OtherCodim2 {
    pub fn locally_holizable_in_two_dims(&self) -> bool {
        !matches!(self, OtherCodim2::CuspAtCrossing)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PetalSpec {
    kind: PetalKind,
    connection: Connection,
}

impl PetalSpec {
    pub fn new(kind: PetalKind) -> Result<Self> {
        let connection = match kind {
            PetalKind::Cusp1 { alpha } => Connection::new(vec![LocalFunctional::derivative(alpha, 1)?])?,
            PetalKind::SingleCrossing { a1, a2 } => {
                distinct(&[a1, a2])?;
                Connection::new(vec![LocalFunctional::difference(a1, a2)?])?
            }
            PetalKind::TriplePoint { a1, a2, a3 } => {
                distinct(&[a1, a2, a3])?;
                Connection::new(vec![
                    LocalFunctional::difference(a1, a2)?,
                    LocalFunctional::difference(a2, a3)?,
                ])?
            }
            PetalKind::Cusp2 { c } => cusp2_connection(c)?,
            PetalKind::TwoCrossings { a1, a2, b1, b2 } => {
                distinct(&[a1, a2, b1, b2])?;
                Connection::new(vec![
                    LocalFunctional::difference(a1, a2)?,
                    LocalFunctional::difference(b1, b2)?,
                ])?
            }
        };
        Ok(PetalSpec { kind, connection })
    }

    pub fn kind(&self) -> PetalKind {
        self.kind
    }

    pub fn connection(&self) -> &Connection {
        &self.connection
    }

    pub fn codimension(&self) -> usize {
        self.kind.codimension()
    }

    /// An explicit holization of exactly this algebra.
    ///
    /// For `Cusp2` the arc construction realizes some `c'` with
    /// `|c'| = |c|`; precomposing with the rotation by `arg c' - arg c`
    /// moves it to `c` itself.
    pub fn holize(&self) -> Result<Holization> {
        match self.kind {
            PetalKind::Cusp1 { alpha } => neil_holization(alpha),
            PetalKind::SingleCrossing { a1, a2 } => single_crossing_holization(a1, a2),
            PetalKind::TriplePoint { a1, a2, a3 } => triple_point_holization(a1, a2, a3),
            PetalKind::Cusp2 { c } => {
                let (h, realized) = cusp2_holization(c.norm())?;
                let theta = realized.arg() - c.arg();
                let rot = C64::from_polar(1.0, -theta);
                Holization::new(
                    h.components().iter().map(|f| f.rotate(theta)).collect(),
                    h.identified()
                        .iter()
                        .map(|s| s.iter().map(|&z| z * rot).collect())
                        .collect(),
                )
            }
            PetalKind::TwoCrossings { a1, a2, b1, b2 } => two_crossing_holization(a1, a2, b1, b2),
        }
    }
}

/// `f'(0) = 0` and `f''(0) + c f'''(0) = 0`.
pub fn cusp2_connection(c: C64) -> Result<Connection> {
    let z = C64::zero();
    Connection::new(vec![
        LocalFunctional::derivative(z, 1)?,
        LocalFunctional::new(vec![
            Term { point: z, order: 2, coeff: C64::new(1.0, 0.0) },
            Term { point: z, order: 3, coeff: c },
        ])?,
    ])
}

pub(crate) fn distinct(pts: &[C64]) -> Result<()> {
    for i in 0..pts.len() {
        if !(pts[i].norm() < 1.0) {
            return Err(Error::Domain(format!("{} is not in the open disk", pts[i])));
        }
        for j in i + 1..pts.len() {
            if (pts[i] - pts[j]).norm() < 1e-12 {
                return Err(Error::Domain(format!("points {} and {} coincide", pts[i], pts[j])));
            }
        }
    }
    Ok(())
}
