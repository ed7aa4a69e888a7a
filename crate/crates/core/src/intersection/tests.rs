use super::*;
use crate::blaschke::BlaschkeProduct;
use crate::c64;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bp(z: &[C64]) -> BlaschkeProduct {
    BlaschkeProduct::from_zeros(z.to_vec()).unwrap()
}

fn mono(k: usize) -> BlaschkeProduct {
    BlaschkeProduct::monomial(k).unwrap()
}

fn random_product(rng: &mut ChaCha8Rng, deg: usize, radius: f64) -> BlaschkeProduct {
    let zeros = (0..deg)
        .map(|_| C64::from_polar(radius * rng.random::<f64>().sqrt(), rng.random_range(0.0..2.0 * PI)))
        .collect();
    BlaschkeProduct::new(zeros, C64::from_polar(1.0, rng.random_range(0.0..2.0 * PI))).unwrap()
}

fn random_pair(seed: u64, m: usize, n: usize) -> BlaschkePair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BlaschkePair::new(random_product(&mut rng, m, 0.8), random_product(&mut rng, n, 0.8)).unwrap()
}

fn assert_bipoly_eq(a: &BiPoly, b: &BiPoly, tol: f64) {
    let zd = a.zdeg().max(b.zdeg());
    let wd = a.wdeg().max(b.wdeg());
    for i in 0..=zd {
        for j in 0..=wd {
            assert!((a.coeff(i, j) - b.coeff(i, j)).norm() <= tol, "({i},{j}): {} vs {}", a.coeff(i, j), b.coeff(i, j));
        }
    }
}

#[test]
fn f_of_z_squared_and_cubed() {
    let one = c64(1.0, 0.0);
    let f2 = build_F(&mono(2)).unwrap();
    assert_bipoly_eq(&f2, &BiPoly::from_terms(&[(1, 0, -one), (0, 1, -one)]), 0.0);
    let f3 = build_F(&mono(3)).unwrap();
    assert_bipoly_eq(&f3, &BiPoly::from_terms(&[(2, 0, -one), (1, 1, -one), (0, 2, -one)]), 0.0);
    assert!(build_F(&mono(1)).is_err());
}

#[test]
fn top_coefficient_matches_derivative_at_origin() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 2..=5 {
        let zeros: Vec<C64> = (0..m).map(|_| C64::from_polar(0.8 * rng.random::<f64>(), rng.random_range(0.0..6.3))).collect();
        // product of the factors m_a(z) = (a - z) / (1 - conj(a) z)
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let f = BlaschkeProduct::new(zeros.clone(), c64(sign, 0.0)).unwrap();
        let want = f.derivative_at(C64::zero()).unwrap().conj() * -sign;
        assert!((top_coefficient(&f).unwrap() - want).norm() < 1e-13, "m={m}");
        // any front factor u: the coefficient is -u conj(f'(0))
        let u = C64::from_polar(1.0, 0.4 * m as f64);
        let g = BlaschkeProduct::new(zeros, u).unwrap();
        let want = -u * g.derivative_at(C64::zero()).unwrap().conj();
        assert!((top_coefficient(&g).unwrap() - want).norm() < 1e-13, "m={m}");
    }
}

#[test]
fn diagonal_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = random_product(&mut rng, 4, 0.8);
    let big = build_F(&f).unwrap();
    let p = f.p();
    for k in 0..40 {
        let z = C64::from_polar(0.1 + 0.02 * k as f64, 0.37 * k as f64);
        let lhs = big.eval(z, z);
        let rhs = -(p.eval(z) * p.eval(z)) * f.derivative_at(z).unwrap() / f.unimodular();
        assert!((lhs - rhs).norm() < 1e-10, "{lhs} vs {rhs}");
    }
}

#[test]
fn f_is_self_reflective() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for m in 2..=4 {
        let f = random_product(&mut rng, m, 0.8);
        let big = build_F(&f).unwrap();
        let refl = big.reflect();
        // the scalar relating the two is read off the largest coefficient
        let (mut bi, mut bj, mut best) = (0, 0, 0.0);
        for i in 0..=big.zdeg() {
            for j in 0..=big.wdeg() {
                if big.coeff(i, j).norm() > best {
                    best = big.coeff(i, j).norm();
                    (bi, bj) = (i, j);
                }
            }
        }
        let u = refl.coeff(bi, bj) / big.coeff(bi, bj);
        assert!((u.norm() - 1.0).abs() < 1e-12);
        assert_bipoly_eq(&refl, &big.scale(u), 1e-12);
    }
    let f2 = build_F(&mono(2)).unwrap();
    assert_bipoly_eq(&f2.reflect(), &f2, 0.0);
}

#[test]
fn cusp_pair() {
    let pair = BlaschkePair::new(mono(2), mono(3)).unwrap();
    let rep = solve_pair(&pair, &SolveOptions::default()).unwrap();
    assert_eq!(rep.points.len(), 1);
    let p = rep.points[0];
    assert!(p.lambda.norm() < 1e-9 && p.mu.norm() < 1e-9);
    assert_eq!((p.region, p.multiplicity), (Region::Disk, 2));
    assert!(p.on_diagonal);
    assert_eq!(rep.count, 2.0);
    assert_eq!(rep.r, 0);
    assert_eq!(rep.codim, Codim::Finite(1));
    assert!(reflection_closure_check(&rep, 1e-7));
    assert_eq!(codim_alg(&pair, &SolveOptions::default()).unwrap(), Codim::Finite(1));
    assert_eq!(separation_pairs_on_torus(&pair, &SolveOptions::default()).unwrap(), Some(0));
}

#[test]
fn square_and_fourth_power_are_degenerate() {
    let pair = BlaschkePair::new(mono(2), mono(4)).unwrap();
    let rep = solve_pair(&pair, &SolveOptions::default()).unwrap();
    assert!(rep.degenerate);
    assert!(rep.points.is_empty());
    assert_eq!(rep.codim, Codim::Infinite);
    assert_eq!(separation_pairs_on_torus(&pair, &SolveOptions::default()).unwrap(), None);
}

#[test]
fn composed_pair_is_degenerate() {
    // g = f o f shares every level set of f
    let f = bp(&[c64(0.3, 0.1), c64(-0.2, -0.4)]);
    let mut zeros = Vec::new();
    for a in f.zeros() {
        // f(z) = a has two solutions: roots of p~(z) - a p(z)
        let (num, den) = f.num_den();
        let poly = &num - &den.scale(*a);
        for r in crate::poly::roots(&poly, 1e-12).unwrap() {
            for _ in 0..r.multiplicity {
                zeros.push(r.value);
            }
        }
    }
    let g = bp(&zeros);
    let pair = BlaschkePair::new(f, g).unwrap();
    assert!(solve_pair(&pair, &SolveOptions::default()).unwrap().degenerate);
}

#[test]
fn random_two_three_pair_has_count_two() {
    for seed in 0..5 {
        let pair = random_pair(100 + seed, 2, 3);
        let rep = solve_pair(&pair, &SolveOptions::default()).unwrap();
        assert_eq!(rep.count, 2.0, "seed {seed}");
        assert!(swap_closure_check(&rep, 1e-7));
    }
}

#[test]
fn reflection_pairs_disk_with_exterior() {
    let pair = random_pair(7, 3, 4);
    let rep = solve_pair(&pair, &SolveOptions::default()).unwrap();
    assert!(reflection_closure_check(&rep, 1e-7));
    let dd: usize = rep.points.iter().filter(|p| p.region == Region::Disk).map(|p| p.multiplicity).sum();
    let ee: usize = rep.points.iter().filter(|p| p.region == Region::Exterior).map(|p| p.multiplicity).sum();
    let zero_coord: usize = rep
        .points
        .iter()
        .filter(|p| p.lambda.norm() < 1e-7 || p.mu.norm() < 1e-7)
        .map(|p| p.multiplicity)
        .sum();
    assert_eq!(dd - zero_coord, ee);
}

#[test]
fn torus_points_reflect_to_themselves() {
    let alpha = c64(1.0 - 0.5f64.sqrt(), 1.0 - 0.5f64.sqrt());
    let rep = solve_pair(&cusp2_pair(alpha), &SolveOptions::default()).unwrap();
    for p in rep.points.iter().filter(|p| p.region == Region::Torus) {
        let r = C64::new(1.0, 0.0) / p.lambda.conj();
        assert!((r - p.lambda).norm() < 1e-7);
    }
    assert!(reflection_closure_check(&rep, 1e-7));
}

fn cusp2_pair(alpha: C64) -> BlaschkePair {
    BlaschkePair::new(mono(4), bp(&[C64::zero(), C64::zero(), alpha])).unwrap()
}

#[test]
fn cusp2_pair_has_two_torus_pairs() {
    for phi in [1.05 * PI * 1.25, 1.25 * PI, 1.4 * PI] {
        let alpha = c64(1.0, 1.0) + C64::from_polar(1.0, phi);
        assert!(alpha.norm() < 1.0);
        let pair = cusp2_pair(alpha);
        let opts = SolveOptions::default();
        let rep = solve_pair(&pair, &opts).unwrap();
        assert_eq!(rep.r, 2, "phi {phi}");
        // at the point of the arc nearest the origin the two circle pairs
        // merge into one tangential crossing at {1, i}
        let merged = (phi - 1.25 * PI).abs() < 1e-12;
        assert_eq!(rep.r_distinct, if merged { 1 } else { 2 }, "phi {phi}");
        assert_eq!(rep.codim, Codim::Finite(2));
        // the pair identifies 1 and i
        assert!(rep.points.iter().any(|p| (p.lambda - c64(1.0, 0.0)).norm() < 1e-8 && (p.mu - c64(0.0, 1.0)).norm() < 1e-8));
    }
}

#[test]
fn two_crossing_construction() {
    let (a1, a2, b1, b2) = (c64(0.5, 0.0), c64(-0.5, 0.0), c64(0.0, 1.0 / 3.0), c64(0.0, -1.0 / 3.0));
    let pair = BlaschkePair::new(bp(&[a1, a2]), bp(&[C64::zero(), a1, a2, b1, b2])).unwrap();
    let rep = solve_pair(&pair, &SolveOptions::default()).unwrap();
    assert_eq!(rep.r, 0);
    assert_eq!(rep.codim, Codim::Finite(2));
    let dd: Vec<_> = rep.points.iter().filter(|p| p.region == Region::Disk).collect();
    assert_eq!(dd.len(), 4);
    assert!(dd.iter().all(|p| p.multiplicity == 1));
}

#[test]
fn infinity_multiplicity_generic_and_bezout() {
    for (seed, m, n) in [(1u64, 2, 2), (2, 3, 2), (3, 3, 4)] {
        let pair = random_pair(seed, m, n);
        let opts = SolveOptions::default();
        let inf = infinity_multiplicity(&pair, &opts).unwrap();
        assert_eq!(inf, ((m - 1) * (n - 1)) as f64);
        let rep = solve_pair(&pair, &opts).unwrap();
        assert_eq!(rep.affine_multiplicity() as f64 + 2.0 * inf, (4 * (m - 1) * (n - 1)) as f64);
    }
}

#[test]
fn infinity_multiplicity_needs_full_degree() {
    let pair = BlaschkePair::new(mono(2), mono(3)).unwrap();
    assert!(matches!(infinity_multiplicity(&pair, &SolveOptions::default()), Err(Error::Precondition(_))));
    let g = pair.f.precompose_moebius(c64(0.3, 0.2)).unwrap();
    let h = pair.g.precompose_moebius(c64(0.3, 0.2)).unwrap();
    let moved = BlaschkePair::new(g, h).unwrap();
    let inf = infinity_multiplicity(&moved, &SolveOptions::default()).unwrap();
    let rep = solve_pair(&moved, &SolveOptions::default()).unwrap();
    assert_eq!(rep.affine_multiplicity() as f64 + 2.0 * inf, 8.0);
}

#[test]
fn degree_validation() {
    assert!(BlaschkePair::new(mono(1), mono(3)).is_err());
    let opts = SolveOptions { tol: 0.0, ..SolveOptions::default() };
    assert!(solve_pair(&BlaschkePair::new(mono(2), mono(3)).unwrap(), &opts).is_err());
}

fn same_points(a: &IntersectionReport, b: &IntersectionReport, tol: f64) -> bool {
    a.points.len() == b.points.len()
        && a.points.iter().all(|p| {
            b.points.iter().any(|q| {
                (p.lambda - q.lambda).norm() < tol * p.lambda.norm().max(1.0)
                    && (p.mu - q.mu).norm() < tol * p.mu.norm().max(1.0)
                    && p.multiplicity == q.multiplicity
            })
        })
}

#[test]
fn grid_solver_agrees() {
    let alpha = c64(1.0, 1.0) + C64::from_polar(1.0, 1.3 * PI);
    let mut pairs = vec![BlaschkePair::new(mono(2), mono(3)).unwrap(), cusp2_pair(alpha)];
    for seed in 0..4 {
        pairs.push(random_pair(40 + seed, 2 + (seed as usize % 2), 3));
    }
    for pair in &pairs {
        let a = solve_pair(pair, &SolveOptions::default()).unwrap();
        let b = solve_pair_grid(pair, &GridOptions::default()).unwrap();
        assert!(same_points(&a, &b, 1e-7), "{:?}\n{:?}", a.points, b.points);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn count_is_expected(seed in any::<u64>(), m in 2usize..=4, n in 2usize..=4) {
        let pair = random_pair(seed, m, n);
        let rep = solve_pair(&pair, &SolveOptions::default()).unwrap();
        prop_assert!(!rep.degenerate);
        prop_assert_eq!(rep.count, ((m - 1) * (n - 1)) as f64);
        prop_assert!(swap_closure_check(&rep, 1e-7));
        prop_assert!(reflection_closure_check(&rep, 1e-7));
    }
}
