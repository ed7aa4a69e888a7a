use super::*;
use crate::c64;
use crate::linalg::frobenius;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    CMat::from_fn(n, n, |_, _| c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    random_matrix(rng, n).qr().q()
}

fn diag(v: &[C64]) -> CMat {
    CMat::from_fn(v.len(), v.len(), |i, j| if i == j { v[i] } else { C64::zero() })
}

fn block_diag(a: &CMat, b: &CMat) -> CMat {
    let (p, q) = (a.nrows(), b.nrows());
    let mut m = CMat::zeros(p + q, p + q);
    m.view_mut((0, 0), (p, p)).copy_from(a);
    m.view_mut((p, p), (q, q)).copy_from(b);
    m
}

/// `T1 = V (U + W) V*`, `T2 = V (U + (-W)) V*`.
fn wold_pair(rng: &mut ChaCha8Rng, p: usize, q: usize) -> OperatorPair {
    let (u, w) = (random_unitary(rng, p), random_unitary(rng, q));
    let v = random_unitary(rng, p + q);
    let t1 = &v * block_diag(&u, &w) * v.adjoint();
    let t2 = &v * block_diag(&u, &(-&w)) * v.adjoint();
    OperatorPair::new(t1, t2).unwrap()
}

#[test]
fn unitary_pair_sits_on_the_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let u = random_unitary(&mut rng, 3);
    let r = spectral_set_test(&OperatorPair::new(u.clone(), u).unwrap(), DEFAULT_GRID, 1e-9);
    assert!((r.sup_norm - 2.0).abs() < 1e-12);
    assert!(r.holds && r.marginal);
}

#[test]
fn scalar_and_diagonal_pairs() {
    let lam = c64(0.3, -0.4);
    let t = CMat::identity(2, 2) * lam;
    let r = spectral_set_test(&OperatorPair::new(t.clone(), t).unwrap(), DEFAULT_GRID, 1e-9);
    assert!((r.sup_norm - 2.0 * lam.norm()).abs() < 1e-12);
    assert!(r.holds && !r.marginal);
    let (l, m) = (c64(0.2, 0.5), c64(-0.7, 0.1));
    let pair = OperatorPair::new(diag(&[l, m]), diag(&[l, -m])).unwrap();
    let r = spectral_set_test(&pair, DEFAULT_GRID, 1e-9);
    // T1 + T2 + e(T1 - T2) = diag(2l, 2e m)
    assert!((r.sup_norm - 2.0 * l.norm().max(m.norm())).abs() < 1e-12);
    assert!(r.holds);
}

#[test]
fn relation_is_enforced() {
    let a = diag(&[c64(0.5, 0.0), c64(0.1, 0.0)]);
    let b = diag(&[c64(0.2, 0.0), c64(0.1, 0.0)]);
    assert!(matches!(OperatorPair::new(a, b), Err(Error::Precondition(_))));
    let n = CMat::from_fn(2, 2, |i, j| if i == 0 && j == 1 { c64(1.0, 0.0) } else { C64::zero() });
    let m = n.transpose();
    assert!(matches!(OperatorPair::new(n, m), Err(Error::Precondition(_))));
}

#[test]
fn wold_blocks_are_spectral_boundary_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (p, q) in [(1, 1), (2, 1), (1, 3), (2, 2)] {
        let t = wold_pair(&mut rng, p, q);
        let r = spectral_set_test(&t, DEFAULT_GRID, 1e-9);
        assert!((r.sup_norm - 2.0).abs() < 1e-9, "{}", r.sup_norm);
        assert!(r.holds);
    }
}

#[test]
fn numerical_radius_classics() {
    assert!((numerical_radius(&CMat::identity(3, 3), DEFAULT_GRID) - 1.0).abs() < 1e-12);
    let j = CMat::from_fn(2, 2, |i, k| if i == 0 && k == 1 { c64(1.0, 0.0) } else { C64::zero() });
    assert!((numerical_radius(&j, DEFAULT_GRID) - 0.5).abs() < 1e-12);
    let normal = diag(&[c64(1.0, 0.0), c64(0.0, 1.0)]);
    assert!((numerical_radius(&normal, DEFAULT_GRID) - 1.0).abs() < 1e-12);
}

/// For 2x2 matrices the numerical range is the ellipse with foci at the
/// eigenvalues and minor axis `sqrt(tr M*M - |l1|^2 - |l2|^2)`.
fn ellipse_radius(m: &CMat) -> f64 {
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let tr = a + d;
    let disc = ((a - d) * (a - d) + 4.0 * b * c).sqrt();
    let (l1, l2) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
    let fro2: f64 = m.iter().map(|z| z.norm_sqr()).sum();
    let minor = 0.5 * (fro2 - l1.norm_sqr() - l2.norm_sqr()).max(0.0).sqrt();
    let major = (minor * minor + (l1 - l2).norm_sqr() / 4.0).sqrt();
    let center = (l1 + l2) / 2.0;
    let rot = if (l1 - l2).norm() > 0.0 { (l1 - l2) / (l1 - l2).norm() } else { c64(1.0, 0.0) };
    (0..200_000)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 200_000.0;
            (center + rot * c64(major * t.cos(), minor * t.sin())).norm()
        })
        .fold(0.0, f64::max)
}

#[test]
fn numerical_radius_matches_ellipse() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let m = random_matrix(&mut rng, 2);
        let w = numerical_radius(&m, DEFAULT_GRID);
        let oracle = ellipse_radius(&m);
        assert!((w - oracle).abs() < 1e-8 * (1.0 + oracle), "{w} vs {oracle}");
    }
}

#[test]
fn lemma_examples() {
    let n = 2;
    let half = CMat::identity(n, n) * c64(0.5, 0.0);
    let zero = CMat::zeros(n, n);
    assert_eq!(lemma_equivalence(&half, &zero, DEFAULT_GRID, 1e-9).unwrap(), (true, true));
    let big = CMat::identity(n, n) * c64(1.2, 0.0);
    assert!(!lemma_lhs(&zero, &big, DEFAULT_GRID, 1e-9).0);
    match lemma_rhs(&zero, &big, DEFAULT_GRID, 1e-9) {
        Err(Error::Domain(_)) => {}
        Ok((verdict, _)) => assert!(!verdict),
        Err(e) => panic!("{e}"),
    }
    // singular middle factor: A unitary, B = 0
    let id = CMat::identity(n, n);
    let (ok, w) = lemma_rhs(&id, &zero, DEFAULT_GRID, 1e-9).unwrap();
    assert!(ok && w.abs() < 1e-12);
}

fn scale_to(m: &CMat, target: f64) -> CMat {
    m * C64::new(target / op_norm(m), 0.0)
}

#[test]
fn lemma_sides_agree_on_contractive_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..40 {
        let n = rng.random_range(2..=4);
        let s = rng.random_range(0.05..0.9);
        let a = scale_to(&random_matrix(&mut rng, n), s * 0.95);
        let b = scale_to(&random_matrix(&mut rng, n), (1.0 - s) * 0.95);
        let (l, r) = lemma_equivalence(&a, &b, DEFAULT_GRID, 1e-9).unwrap();
        assert!(l && r);
    }
}

#[test]
fn lemma_sides_agree_near_the_boundary() {
    // |A|^2 + |B|^2 < 1 keeps the middle factor invertible while
    // |A| + |B| may exceed one, so both verdicts occur
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..60 {
        let n = rng.random_range(2..=3);
        let t: f64 = rng.random_range(0.1..1.4);
        let rho: f64 = rng.random_range(0.6..0.99);
        let (ca, cb) = (rho * t.cos(), rho * t.sin());
        let a = scale_to(&random_matrix(&mut rng, n), ca);
        let b = scale_to(&random_matrix(&mut rng, n), cb);
        let (lhs, sup) = lemma_lhs(&a, &b, DEFAULT_GRID, 1e-9);
        let (rhs, w) = lemma_rhs(&a, &b, DEFAULT_GRID, 1e-9).unwrap();
        if (sup - 1.0).abs() < 1e-6 || (w - 0.5).abs() < 1e-6 {
            continue;
        }
        assert_eq!(lhs, rhs, "sup {sup}, radius {w}");
        if lhs { yes += 1 } else { no += 1 }
    }
    assert!(yes > 0 && no > 0, "{yes} / {no}");
}

#[test]
fn wold_recovers_block_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (p, q) in [(1, 1), (2, 3), (3, 1), (2, 2)] {
        let t = wold_pair(&mut rng, p, q);
        let w = wold_decompose(&t).unwrap();
        assert_eq!(w.dims(), (p, q, 0));
        assert!(w.defects.orthogonality < 1e-10);
        assert!(w.defects.reconstruction < 1e-9);
        assert!(w.defects.isometry < 1e-9);
        // W+ is similar to U: same spectrum up to order, so same trace
        assert!((w.w_plus.trace() - (t.t1() + t.t2()).trace() / 2.0).norm() < 1e-9);
    }
}

#[test]
fn wold_degenerate_splittings() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let u = random_unitary(&mut rng, 3);
    let w = wold_decompose(&OperatorPair::new(u.clone(), u.clone()).unwrap()).unwrap();
    assert_eq!(w.dims(), (3, 0, 0));
    let w = wold_decompose(&OperatorPair::new(u.clone(), -&u).unwrap()).unwrap();
    assert_eq!(w.dims(), (0, 3, 0));
}

#[test]
fn wold_rejects_non_unitary_but_reports_defects() {
    // truncated shift S on C^4, paired with itself
    let s = CMat::from_fn(4, 4, |i, j| if i == j + 1 { c64(1.0, 0.0) } else { C64::zero() });
    let pair = OperatorPair::new(s.clone(), s.clone()).unwrap();
    assert!(matches!(wold_decompose(&pair), Err(Error::Unsupported(_))));
    let w = wold_defect(&s, &s).unwrap();
    let (p, m, k) = w.dims();
    assert_eq!(p + m + k, 4);
    assert_eq!((p, m, k), (3, 0, 1));
    assert!(w.defects.reconstruction < 1e-12);
    // the last basis vector of the range is not mapped isometrically
    assert!(w.defects.isometry > 0.5);
    assert!(frobenius(&w.basis_k) > 0.0);
}

#[test]
fn herglotz_symmetric_and_antipodal() {
    let mu = herglotz_masses(&[0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]).unwrap();
    for &m in mu.masses() {
        assert!((m - 1.0 / 3.0).abs() < 1e-14);
    }
    let mu = herglotz_masses(&[0.0, PI]).unwrap();
    assert_eq!(mu.masses(), &[0.5, 0.5]);
    assert!(mu.first_moment().norm() < 1e-15);
    assert!(matches!(herglotz_masses(&[0.0, 3.0]), Err(Error::Infeasible(_))));
}

#[test]
fn herglotz_general_triangle() {
    let atoms = [0.0, PI / 2.0, PI + 0.3];
    let mu = herglotz_masses(&atoms).unwrap();
    assert!(mu.masses().iter().all(|&m| m > 0.0));
    let mut re = 0.0;
    let mut im = 0.0;
    for (&t, &m) in atoms.iter().zip(mu.masses()) {
        re += m * t.cos();
        im += m * t.sin();
    }
    assert!(re.abs() < 1e-12 && im.abs() < 1e-12);
    // the Cayley transform has zero derivative at the origin
    let d = crate::petals::cauchy_derivative(&|z| mu.cayley(z), C64::zero(), 1, 0.5, 64);
    assert!(d.norm() < 1e-10, "{d}");
    assert!((mu.cayley(C64::zero()) - c64(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn herglotz_rejects_bad_triangles() {
    assert!(matches!(herglotz_masses(&[0.0, 0.5, 1.0]), Err(Error::Infeasible(_))));
    assert!(matches!(herglotz_masses(&[0.0, 0.0, 2.0]), Err(Error::Singular(_))));
    assert!(matches!(herglotz_masses(&[0.0]), Err(Error::Unsupported(_))));
}

#[test]
fn herglotz_random_triangles() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut count = 0;
    while count < 50 {
        let atoms: [f64; 3] = [rng.random_range(0.0..2.0 * PI), rng.random_range(0.0..2.0 * PI), rng.random_range(0.0..2.0 * PI)];
        // the origin is interior iff every arc between consecutive atoms is shorter than pi
        let mut s = atoms;
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let gaps = [s[1] - s[0], s[2] - s[1], 2.0 * PI - s[2] + s[0]];
        if gaps.iter().any(|&g| (g - PI).abs() < 1e-3 || g < 1e-3) {
            continue;
        }
        let interior = gaps.iter().all(|&g| g < PI);
        match herglotz_masses(&atoms) {
            Ok(mu) => {
                assert!(interior);
                assert!(mu.first_moment().norm() < 1e-12);
            }
            Err(Error::Infeasible(_)) => assert!(!interior),
            Err(e) => panic!("{e}"),
        }
        count += 1;
    }
}

#[test]
fn inner_zero_products() {
    let z = |r: f64, t: f64| C64::from_polar(r, t);
    assert!(min_inner_zero_check(&[z(0.5, 0.0)], &[z(0.5, PI / 2.0)]).unwrap());
    assert!(!min_inner_zero_check(&[z(0.5, 0.0)], &[z(0.6, 0.0)]).unwrap());
    assert!(min_inner_zero_check(&[z(0.4, 0.1), z(0.9, 2.0)], &[z(0.6, 0.0), z(0.6, 1.0)]).unwrap());
    assert!(matches!(min_inner_zero_check(&[C64::zero()], &[z(0.5, 0.0)]), Err(Error::Domain(_))));
}

#[test]
fn real_part_extension() {
    let c = |_t: f64| 0.7;
    assert!(real_part_extension_check(&c, &c, 64).extends);
    let re = |t: f64| t.cos();
    assert!(real_part_extension_check(&re, &re, 64).extends);
    let one = |_t: f64| 1.0;
    let zero = |_t: f64| 0.0;
    let r = real_part_extension_check(&one, &zero, 64);
    assert!(!r.extends);
    assert!((r.mean_plus - 1.0).abs() < 1e-15 && r.mean_minus.abs() < 1e-15);
}
