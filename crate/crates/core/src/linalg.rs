//! Dense complex linear algebra used across the crate.
//!
//! SVD, Hermitian eigendecomposition and LU come from `nalgebra`. The
//! non-Hermitian eigenvalue solver used for companion matrices is local: a
//! complex single-shift QR iteration on upper Hessenberg form.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use num_traits::Zero;

use crate::{Error, Result, C64, EPS};

pub type CMat = DMatrix<C64>;

/// Iteration budget per eigenvalue for the Hessenberg QR sweep.
const QR_ITERS_PER_EIG: usize = 60;

/// Eigenvalues of an upper Hessenberg matrix given row-major in `h`
/// (`n * n` entries). Entries below the first subdiagonal are ignored.
///
/// The matrix is balanced first. On non-convergence the error carries the
/// last diagonal entry of the unconverged window.
pub fn hessenberg_eigenvalues(mut h: Vec<C64>, n: usize) -> Result<Vec<C64>> {
    assert_eq!(h.len(), n * n, "hessenberg_eigenvalues: bad buffer size");
    if n == 0 {
        return Ok(Vec::new());
    }
    balance(&mut h, n);
    let idx = |i: usize, j: usize| i * n + j;
    let mut eig = vec![C64::zero(); n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let budget = QR_ITERS_PER_EIG * n;
    let norm = h.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);

    while hi > 0 {
        // Deflation: find the start of the trailing unreduced block.
        let mut l = hi;
        while l > 0 {
            let s = h[idx(l - 1, l - 1)].norm() + h[idx(l, l)].norm();
            let s = if s == 0.0 { norm } else { s };
            if h[idx(l, l - 1)].norm() <= EPS * s {
                h[idx(l, l - 1)] = C64::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[idx(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > budget {
            return Err(Error::numeric(
                "Hessenberg QR did not converge",
                Some(h[idx(hi, hi)]),
            ));
        }

        let shift = if iter % 11 == 10 {
            // exceptional shift
            let sub = h[idx(hi, hi - 1)].norm()
                + if hi >= 2 { h[idx(hi - 1, hi - 2)].norm() } else { 0.0 };
            h[idx(hi, hi)] + C64::new(0.75 * sub, 0.4375 * sub)
        } else {
            wilkinson_shift(
                h[idx(hi - 1, hi - 1)],
                h[idx(hi - 1, hi)],
                h[idx(hi, hi - 1)],
                h[idx(hi, hi)],
            )
        };

        for k in l..=hi {
            h[idx(k, k)] -= shift;
        }
        let mut rots: Vec<(f64, C64)> = Vec::with_capacity(hi - l);
        for k in l..hi {
            let (c, s) = givens(h[idx(k, k)], h[idx(k + 1, k)]);
            for j in k..=hi {
                let x = h[idx(k, j)];
                let y = h[idx(k + 1, j)];
                h[idx(k, j)] = x * c + s * y;
                h[idx(k + 1, j)] = -s.conj() * x + y * c;
            }
            rots.push((c, s));
        }
        for (off, &(c, s)) in rots.iter().enumerate() {
            let k = l + off;
            let last = (k + 2).min(hi);
            for i in l..=last {
                let x = h[idx(i, k)];
                let y = h[idx(i, k + 1)];
                h[idx(i, k)] = x * c + y * s.conj();
                h[idx(i, k + 1)] = -x * s + y * c;
            }
        }
        for k in l..=hi {
            h[idx(k, k)] += shift;
        }
    }
    eig[0] = h[idx(0, 0)];
    Ok(eig)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let tr_half = (a + d) * 0.5;
    let disc = ((a - d) * 0.5) * ((a - d) * 0.5) + b * c;
    let root = disc.sqrt();
    let e1 = tr_half + root;
    let e2 = tr_half - root;
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

/// Complex Givens rotation `G = [[c, s], [-conj(s), c]]` with `G (a, b)^T = (r, 0)^T`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, C64::zero());
    }
    if na == 0.0 {
        return (0.0, C64::new(1.0, 0.0));
    }
    let r = na.hypot(nb);
    let c = na / r;
    let s = (a / na) * b.conj() / r;
    (c, s)
}

/// Diagonal similarity balancing (powers of two, Parlett–Reinsch).
fn balance(h: &mut [C64], n: usize) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    let mut sweeps = 0;
    while !done && sweeps < 100 {
        done = true;
        sweeps += 1;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += h[j * n + i].l1_norm();
                    r += h[i * n + j].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut g = r / RADIX;
            let mut f = 1.0;
            let mut cc = c;
            while cc < g {
                f *= RADIX;
                cc *= sqrdx;
            }
            g = r * RADIX;
            while cc > g {
                f /= RADIX;
                cc /= sqrdx;
            }
            if (cc + r / f) / f < 0.95 * s {
                done = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    h[i * n + j] *= inv;
                }
                for j in 0..n {
                    h[j * n + i] *= f;
                }
            }
        }
    }
}

/// Singular values, descending.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let sv = m.clone().svd(false, false).singular_values;
    let mut v: Vec<f64> = sv.iter().copied().collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    v
}

/// Operator 2-norm (largest singular value).
pub fn op_norm(m: &CMat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Eigenvalues (ascending) and matching orthonormal eigenvectors of the
/// Hermitian part `(M + M*)/2`.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let n = herm.nrows();
    if n == 0 {
        return (Vec::new(), herm);
    }
    let eig = herm.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMat::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

/// Largest eigenvalue of the Hermitian part of `m`.
pub fn hermitian_max_eigenvalue(m: &CMat) -> f64 {
    hermitian_eigen(m).0.last().copied().unwrap_or(0.0)
}

/// Determinant via partial-pivot LU.
pub fn det(m: &CMat) -> C64 {
    if m.nrows() == 0 {
        return C64::new(1.0, 0.0);
    }
    m.clone().lu().determinant()
}

/// Numerical rank: number of singular values above `rel_tol * sigma_max`.
pub fn rank(m: &CMat, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    let Some(&top) = sv.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Orthonormal basis (as columns) of the range of `m`, keeping singular
/// directions with `sigma > abs_tol`.
pub fn range_basis(m: &CMat, abs_tol: f64) -> CMat {
    let rows = m.nrows();
    if rows == 0 || m.ncols() == 0 {
        return CMat::zeros(rows, 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > abs_tol)
        .collect();
    CMat::from_fn(rows, keep.len(), |r, c| u[(r, keep[c])])
}

/// Orthonormal basis of the orthogonal complement of the column span of
/// `basis` (columns assumed orthonormal) inside `C^d`.
pub fn orthogonal_complement(basis: &CMat, d: usize) -> CMat {
    let k = basis.ncols();
    if k >= d {
        return CMat::zeros(d, 0);
    }
    let proj = if k == 0 {
        CMat::identity(d, d)
    } else {
        CMat::identity(d, d) - basis * basis.adjoint()
    };
    let q = range_basis(&proj, 0.5);
    debug_assert_eq!(q.ncols(), d - k);
    q
}

/// `(M)^{-1/2}` for Hermitian positive definite `m`; `None` if the smallest
/// eigenvalue is not above `min_eig`.
pub fn hermitian_inv_sqrt(m: &CMat, min_eig: f64) -> Option<CMat> {
    let (vals, vecs) = hermitian_eigen(m);
    if vals.first().copied().unwrap_or(1.0) <= min_eig {
        return None;
    }
    let n = vals.len();
    let d = CMat::from_fn(n, n, |i, j| {
        if i == j {
            C64::new(1.0 / vals[i].sqrt(), 0.0)
        } else {
            C64::zero()
        }
    });
    Some(&vecs * d * vecs.adjoint())
}

/// Frobenius norm.
pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Solve a real 3×3 system by Gaussian elimination with partial pivoting.
/// Fails when the pivot falls below `1e-12` times the matrix scale.
pub fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Result<[f64; 3]> {
    let mut m = [[0.0; 4]; 3];
    let mut scale: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = a[i][j];
            scale = scale.max(a[i][j].abs());
        }
        m[i][3] = b[i];
    }
    if scale == 0.0 {
        return Err(Error::Singular("zero matrix".into()));
    }
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&x, &y| m[x][col].abs().partial_cmp(&m[y][col].abs()).unwrap())
            .unwrap();
        if m[piv][col].abs() <= 1e-12 * scale {
            return Err(Error::Singular("pivot below threshold".into()));
        }
        m.swap(col, piv);
        for r in 0..3 {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..4 {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    Ok([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}
