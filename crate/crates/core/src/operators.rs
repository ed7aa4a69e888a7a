//! Finite-dimensional checks for operator pairs on `V = {z^2 = w^2}` in the
//! bidisk and for the Neil parabola: the spectral-set criterion, the
//! numerical-radius reformulation, the Wold-type decomposition of commuting
//! unitaries, and Herglotz extreme points.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::linalg::{
    hermitian_eigen, hermitian_inv_sqrt, hermitian_max_eigenvalue, op_norm, orthogonal_complement,
    range_basis, solve3, CMat,
};
use crate::petals::golden_min;
use crate::{Error, Result, C64};

/// Default angular grid size.
pub const DEFAULT_GRID: usize = 721;
/// Distance from a threshold below which a verdict is flagged marginal.
pub const MARGINAL: f64 = 1e-6;

fn check_square(m: &CMat, what: &str) -> Result<usize> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::DegenerateInput(format!(
            "{what} is {}x{}, expected a nonempty square matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(m.nrows())
}

/// Commuting `T1`, `T2` with `T1^2 = T2^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPair {
    t1: CMat,
    t2: CMat,
}

impl OperatorPair {
    pub fn new(t1: CMat, t2: CMat) -> Result<Self> {
        let d = check_square(&t1, "T1")?;
        if check_square(&t2, "T2")? != d {
            return Err(Error::DegenerateInput("T1 and T2 differ in size".into()));
        }
        let scale = op_norm(&t1).max(op_norm(&t2)).max(1.0).powi(2);
        let comm = op_norm(&(&t1 * &t2 - &t2 * &t1));
        if comm > 1e-10 * scale {
            return Err(Error::Precondition(format!("T1 and T2 do not commute (|[T1,T2]| = {comm:e})")));
        }
        let rel = op_norm(&(&t1 * &t1 - &t2 * &t2));
        if rel > 1e-10 * scale {
            return Err(Error::Precondition(format!("T1^2 != T2^2 (residual {rel:e})")));
        }
        Ok(OperatorPair { t1, t2 })
    }

    pub fn t1(&self) -> &CMat {
        &self.t1
    }

    pub fn t2(&self) -> &CMat {
        &self.t2
    }

    pub fn dim(&self) -> usize {
        self.t1.nrows()
    }
}

fn wrap_angle(t: f64) -> f64 {
    let r = t % (2.0 * PI);
    if r < 0.0 {
        r + 2.0 * PI
    } else {
        r
    }
}

/// Maximum of `f` over `grid` equally spaced angles in `[0, 2 pi)`,
/// refined by golden-section search around the best grid point.
pub fn sweep_max(f: impl Fn(f64) -> f64, grid: usize) -> (f64, f64) {
    let n = grid.max(3);
    let step = 2.0 * PI / n as f64;
    let (mut best, mut best_v) = (0.0, f64::NEG_INFINITY);
    for k in 0..n {
        let t = step * k as f64;
        let v = f(t);
        if v > best_v {
            best = t;
            best_v = v;
        }
    }
    let (t, neg) = golden_min(|t| -f(t), best - step, best + step, 1e-12);
    if -neg > best_v {
        (wrap_angle(t), -neg)
    } else {
        (best, best_v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralReport {
    /// `sup_theta |T1 + T2 + e^{i theta}(T1 - T2)|`.
    pub sup_norm: f64,
    /// Maximizing angle.
    pub theta: f64,
    /// `sup_norm <= 2 + tol`: `V` is a spectral set for the pair.
    pub holds: bool,
    pub marginal: bool,
}

pub fn spectral_set_test(t: &OperatorPair, grid: usize, tol: f64) -> SpectralReport {
    let s = &t.t1 + &t.t2;
    let d = &t.t1 - &t.t2;
    let (theta, sup_norm) = sweep_max(|th| op_norm(&(&s + &d * C64::from_polar(1.0, th))), grid);
    SpectralReport {
        sup_norm,
        theta,
        holds: sup_norm <= 2.0 + tol,
        marginal: (sup_norm - 2.0).abs() <= MARGINAL,
    }
}

/// `max_phi lambda_max((e^{i phi} M + e^{-i phi} M*) / 2)`.
pub fn numerical_radius(m: &CMat, grid: usize) -> f64 {
    sweep_max(|phi| hermitian_max_eigenvalue(&(m * C64::from_polar(1.0, phi))), grid).1
}

/// `sup_theta |A + e^{i theta} B|` and whether it is at most `1 + tol`.
pub fn lemma_lhs(a: &CMat, b: &CMat, grid: usize, tol: f64) -> (bool, f64) {
    let (_, sup) = sweep_max(|th| op_norm(&(a + b * C64::from_polar(1.0, th))), grid);
    (sup <= 1.0 + tol, sup)
}

/// Numerical radius of `D^{-1/2} A* B D^{-1/2}` with `D = I - A*A - B*B`,
/// and whether it is at most `1/2 + tol`. A singular `D` is replaced by
/// `D + eps I` for `eps = 1e-4, 1e-6, 1e-8` and the radius extrapolated
/// linearly to `eps = 0`.
pub fn lemma_rhs(a: &CMat, b: &CMat, grid: usize, tol: f64) -> Result<(bool, f64)> {
    let n = check_square(a, "A")?;
    if check_square(b, "B")? != n {
        return Err(Error::DegenerateInput("A and B differ in size".into()));
    }
    let dm = CMat::identity(n, n) - a.adjoint() * a - b.adjoint() * b;
    let lo = hermitian_eigen(&dm).0[0];
    if lo < -tol {
        return Err(Error::Domain(format!(
            "I - A*A - B*B has eigenvalue {lo:e} < 0, so the numerical-radius side is undefined"
        )));
    }
    let ab = a.adjoint() * b;
    let radius_for = |m: &CMat| -> Result<f64> {
        let r = hermitian_inv_sqrt(m, 0.0).ok_or_else(|| Error::numeric("D is not positive definite", None))?;
        Ok(numerical_radius(&(&r * &ab * &r), grid))
    };
    let w = if lo > 1e-10 {
        radius_for(&dm)?
    } else {
        let eps = [1e-4, 1e-6, 1e-8];
        let mut ws = [0.0; 3];
        for (k, e) in eps.iter().enumerate() {
            ws[k] = radius_for(&(&dm + CMat::identity(n, n) * C64::new(*e, 0.0)))?;
        }
        ws[2] - (ws[1] - ws[2]) * eps[2] / (eps[1] - eps[2])
    };
    Ok((w <= 0.5 + tol, w))
}

/// Both sides of the equivalence between the norm bound
/// `|A + e^{i theta} B| <= 1` and the numerical-radius bound.
pub fn lemma_equivalence(a: &CMat, b: &CMat, grid: usize, tol: f64) -> Result<(bool, bool)> {
    let rhs = lemma_rhs(a, b, grid, tol)?.0;
    Ok((lemma_lhs(a, b, grid, tol).0, rhs))
}

/// Residuals of the block identities of a Wold-type decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WoldDefects {
    /// `|Q+* Q-|`.
    pub orthogonality: f64,
    /// `max |T_k - model_k|`.
    pub reconstruction: f64,
    /// `|E+* E+ + E-* E- - I|` on `K`.
    pub e_identity: f64,
    pub w_plus_e_plus: f64,
    pub w_minus_e_minus: f64,
    /// `max |W*W - I|` over `W+` and `W-`.
    pub isometry: f64,
    /// `max(|T1^2 - T2^2|, |[T1, T2]|)`.
    pub relation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WoldDecomposition {
    /// Orthonormal columns spanning `M+ = range(T1 + T2)`.
    pub basis_plus: CMat,
    /// Orthonormal columns spanning `M- = range(T1 - T2)`.
    pub basis_minus: CMat,
    /// Orthonormal columns spanning `K`, the rest.
    pub basis_k: CMat,
    pub w_plus: CMat,
    pub w_minus: CMat,
    pub e_plus: CMat,
    pub e_minus: CMat,
    pub defects: WoldDefects,
}

impl WoldDecomposition {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.basis_plus.ncols(), self.basis_minus.ncols(), self.basis_k.ncols())
    }
}

/// Decompose `H = M+ (+) M- (+) K` for commuting unitaries with
/// `T1^2 = T2^2`, where
/// `T1 = [[W+, 0, E+], [0, W-, E-], [0, 0, 0]]` and `T2` flips the signs of
/// the `M-` row. For unitaries `K = 0`.
pub fn wold_decompose(t: &OperatorPair) -> Result<WoldDecomposition> {
    let d = t.dim();
    let id = CMat::identity(d, d);
    for (name, m) in [("T1", &t.t1), ("T2", &t.t2)] {
        let r = op_norm(&(m.adjoint() * m - &id));
        if r > 1e-9 {
            return Err(Error::Unsupported(format!(
                "{name} is not unitary (|T*T - I| = {r:e}); use the defect report for non-unitary data"
            )));
        }
    }
    let w = wold_defect(&t.t1, &t.t2)?;
    if w.defects.orthogonality > 1e-10 {
        return Err(Error::TheoryViolation(format!(
            "range(T1 + T2) and range(T1 - T2) are not orthogonal ({:e})",
            w.defects.orthogonality
        )));
    }
    if w.defects.reconstruction > 1e-9 {
        return Err(Error::Consistency(format!(
            "block model reproduces T only to {:e}",
            w.defects.reconstruction
        )));
    }
    Ok(w)
}

/// The same construction for arbitrary square data (for example truncated
/// shifts), reporting how far each block identity is from holding instead
/// of rejecting the input.
pub fn wold_defect(t1: &CMat, t2: &CMat) -> Result<WoldDecomposition> {
    let d = check_square(t1, "T1")?;
    if check_square(t2, "T2")? != d {
        return Err(Error::DegenerateInput("T1 and T2 differ in size".into()));
    }
    let sum = t1 + t2;
    let diff = t1 - t2;
    let scale = op_norm(&sum).max(op_norm(&diff)).max(1.0);
    let qp = range_basis(&sum, 1e-9 * scale);
    let qm = range_basis(&diff, 1e-9 * scale);
    let (np, nm) = (qp.ncols(), qm.ncols());
    let orthogonality = if np == 0 || nm == 0 { 0.0 } else { op_norm(&(qp.adjoint() * &qm)) };
    let mut both = CMat::zeros(d, np + nm);
    both.view_mut((0, 0), (d, np)).copy_from(&qp);
    both.view_mut((0, np), (d, nm)).copy_from(&qm);
    let qk = if np + nm >= d { CMat::zeros(d, 0) } else { orthogonal_complement(&both, d) };
    let nk = qk.ncols();

    let w_plus = qp.adjoint() * t1 * &qp;
    let w_minus = qm.adjoint() * t1 * &qm;
    let e_plus = qp.adjoint() * t1 * &qk;
    let e_minus = qm.adjoint() * t1 * &qk;

    let mut u = CMat::zeros(d, d);
    u.view_mut((0, 0), (d, np + nm)).copy_from(&both);
    u.view_mut((0, np + nm), (d, nk)).copy_from(&qk);
    let model = |sign: f64| {
        let mut blk = CMat::zeros(d, d);
        blk.view_mut((0, 0), (np, np)).copy_from(&w_plus);
        blk.view_mut((np, np), (nm, nm)).copy_from(&(&w_minus * C64::new(sign, 0.0)));
        blk.view_mut((0, np + nm), (np, nk)).copy_from(&e_plus);
        blk.view_mut((np, np + nm), (nm, nk)).copy_from(&(&e_minus * C64::new(sign, 0.0)));
        &u * blk * u.adjoint()
    };
    let reconstruction = op_norm(&(t1 - model(1.0))).max(op_norm(&(t2 - model(-1.0))));
    let e_identity = if nk == 0 {
        0.0
    } else {
        op_norm(&(e_plus.adjoint() * &e_plus + e_minus.adjoint() * &e_minus - CMat::identity(nk, nk)))
    };
    let isometry = [&w_plus, &w_minus]
        .iter()
        .filter(|w| w.ncols() > 0)
        .map(|w| op_norm(&(w.adjoint() * *w - CMat::identity(w.ncols(), w.ncols()))))
        .fold(0.0, f64::max);
    let relation = op_norm(&(t1 * t1 - t2 * t2)).max(op_norm(&(t1 * t2 - t2 * t1)));
    let defects = WoldDefects {
        orthogonality,
        reconstruction,
        e_identity,
        w_plus_e_plus: op_norm(&(w_plus.adjoint() * &e_plus)),
        w_minus_e_minus: op_norm(&(w_minus.adjoint() * &e_minus)),
        isometry,
        relation,
    };
    Ok(WoldDecomposition {
        basis_plus: qp,
        basis_minus: qm,
        basis_k: qk,
        w_plus,
        w_minus,
        e_plus,
        e_minus,
        defects,
    })
}

/// Probability measure with finitely many atoms on the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct HerglotzMeasure {
    atoms: Vec<f64>,
    masses: Vec<f64>,
}

impl HerglotzMeasure {
    /// Angles are reduced to `[0, 2 pi)`; masses must be positive and sum
    /// to one within `1e-12`.
    pub fn new(atoms: Vec<f64>, masses: Vec<f64>) -> Result<Self> {
        if atoms.len() != masses.len() || atoms.is_empty() {
            return Err(Error::DegenerateInput("need one mass per atom".into()));
        }
        if masses.iter().any(|&m| !(m > 0.0)) {
            return Err(Error::Infeasible("masses must be positive".into()));
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Consistency(format!("masses sum to {total}")));
        }
        let atoms = atoms.into_iter().map(|t| wrap_angle(t)).collect();
        Ok(HerglotzMeasure { atoms, masses })
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// `int e^{-i theta} d mu`, which vanishes for the measures of
    /// functions on the Neil parabola.
    pub fn first_moment(&self) -> C64 {
        self.atoms
            .iter()
            .zip(&self.masses)
            .map(|(&t, &m)| C64::from_polar(m, -t))
            .sum()
    }

    /// `int (e^{i theta} + z) / (e^{i theta} - z) d mu`.
    pub fn cayley(&self, z: C64) -> C64 {
        self.atoms
            .iter()
            .zip(&self.masses)
            .map(|(&t, &m)| {
                let e = C64::from_polar(1.0, t);
                (e + z) / (e - z) * m
            })
            .sum()
    }
}

/// Extreme measures with vanishing first moment: two antipodal atoms of
/// mass 1/2, or three atoms around the origin with masses solving
/// `sum m = 1`, `sum m cos = 0`, `sum m sin = 0`.
pub fn herglotz_masses(atoms: &[f64]) -> Result<HerglotzMeasure> {
    match atoms {
        [a, b] => {
            let gap = (C64::from_polar(1.0, *a) + C64::from_polar(1.0, *b)).norm();
            if gap > 1e-12 {
                return Err(Error::Infeasible(format!("two atoms must be antipodal (|e^ia + e^ib| = {gap:e})")));
            }
            HerglotzMeasure::new(atoms.to_vec(), alloc::vec![0.5, 0.5])
        }
        [a, b, c] => {
            let m = solve3(
                [[1.0, 1.0, 1.0], [a.cos(), b.cos(), c.cos()], [a.sin(), b.sin(), c.sin()]],
                [1.0, 0.0, 0.0],
            )?;
            if m.iter().any(|&x| !(x > 0.0)) {
                return Err(Error::Infeasible(format!(
                    "the origin is not inside the triangle (masses {m:?})"
                )));
            }
            let mu = HerglotzMeasure::new(atoms.to_vec(), m.to_vec())?;
            let res = mu.first_moment().norm();
            if res > 1e-12 {
                return Err(Error::numeric(format!("moment residual {res:e}"), None));
            }
            Ok(mu)
        }
        _ => Err(Error::Unsupported(format!("extreme points have 2 or 3 atoms, got {}", atoms.len()))),
    }
}

/// Points `(a_i, a_i)` and `(b_j, -b_j)` of `V` minus the origin are the
/// zeros of a rational inner function iff `prod |a_i| = prod |b_j|`.
pub fn min_inner_zero_check(alphas: &[C64], betas: &[C64]) -> Result<bool> {
    if alphas.is_empty() || betas.is_empty() {
        return Err(Error::DegenerateInput("both zero lists must be nonempty".into()));
    }
    for &z in alphas.iter().chain(betas) {
        if !(z.norm() < 1.0) {
            return Err(Error::Domain(format!("{z} is not in the open disk")));
        }
        if z.norm() < 1e-14 {
            return Err(Error::Domain("zeros must avoid the origin".into()));
        }
    }
    let pa: f64 = alphas.iter().map(|z| z.norm()).product();
    let pb: f64 = betas.iter().map(|z| z.norm()).product();
    Ok((pa - pb).abs() <= 1e-10)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealPartReport {
    pub mean_plus: f64,
    pub mean_minus: f64,
    /// The boundary data is the real part of a function holomorphic on `V`.
    pub extends: bool,
}

/// Compares the normalized boundary averages of `u` over the two disks of
/// `V` (trapezoidal rule with `quad_points` nodes each).
pub fn real_part_extension_check(
    u_plus: &dyn Fn(f64) -> f64,
    u_minus: &dyn Fn(f64) -> f64,
    quad_points: usize,
) -> RealPartReport {
    let n = quad_points.max(1);
    let mean = |u: &dyn Fn(f64) -> f64| (0..n).map(|k| u(2.0 * PI * k as f64 / n as f64)).sum::<f64>() / n as f64;
    let (mean_plus, mean_minus) = (mean(u_plus), mean(u_minus));
    RealPartReport { mean_plus, mean_minus, extends: (mean_plus - mean_minus).abs() <= 1e-8 }
}

#[cfg(test)]
mod tests;
