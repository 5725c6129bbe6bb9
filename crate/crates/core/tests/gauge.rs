use homobraid::arith::Q;
use homobraid::gauge::*;
use homobraid::mpgrading::graded_dims;
use homobraid::rootsys::{CartanType, Family, RootSystem};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type M = TruncatedLoopMatrix;

const SHAPES: [(usize, usize); 5] = [(2, 1), (2, 3), (3, 1), (3, 2), (2, 5)];

fn random_matrix(n: usize, rng: &mut ChaCha8Rng, kmin: i64, kmax: i64) -> M {
    let mut m = M::zero(n);
    for a in 0..n {
        for b in 0..n {
            for k in kmin..=kmax {
                if rng.gen_bool(0.4) {
                    m.add_term(a, b, k, Q::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into()));
                }
            }
        }
    }
    m
}

fn random_homogeneous(n: usize, grade: i64, rng: &mut ChaCha8Rng) -> M {
    let mut m = M::zero(n);
    for a in 0..n {
        for b in 0..n {
            let r = grade - (b as i64 - a as i64);
            if r.rem_euclid(n as i64) == 0 && a != b {
                m.add_term(a, b, r / n as i64, Q::from_integer(rng.gen_range(-3i64..=3).into()));
            }
        }
    }
    m
}

#[test]
fn grading_matches_mpgrading_dimensions() {
    for n in 2..=5 {
        let rs = RootSystem::new(CartanType::new(Family::A, n - 1).unwrap()).unwrap();
        let g = graded_dims(&rs, n as u64);
        for i in 0..n {
            for shift in [-2, 0, 3] {
                assert_eq!(graded_dimension(n, i as i64 + shift * n as i64), g[i], "n={n} i={i}");
            }
        }
    }
}

#[test]
fn graded_components() {
    let p = M::psi(2, 1);
    assert_eq!(p.grades().into_iter().collect::<Vec<_>>(), vec![1]);
    assert_eq!(p.graded_component(1), p);
    let mut diag = M::zero(3);
    diag.add_term(0, 0, 0, Q::one());
    diag.add_term(2, 2, 0, -Q::one());
    assert_eq!(diag.grades().into_iter().collect::<Vec<_>>(), vec![0]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2, 3, 4] {
        let m = random_matrix(n, &mut rng, -3, 3);
        let sum = m.grades().into_iter().fold(M::zero(n), |acc, g| acc.add(&m.graded_component(g)));
        assert_eq!(sum, m);
    }
}

#[test]
fn solve_bracket_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, d) in SHAPES {
        let psi = M::psi(n, d);
        for g in -6..0 {
            let z = random_homogeneous(n, g, &mut rng);
            let x = z.bracket(&psi);
            let y = solve_bracket(&psi, &x).unwrap();
            assert_eq!(y.bracket(&psi), x);
            if !y.is_zero() {
                assert_eq!(y.homogeneous_grade(), Some(x.homogeneous_grade().unwrap() - d as i64));
            }
            // least norm: orthogonal to the centralizer of ψ in that grade
            for e in 1..n {
                let c = M::companion(n).pow(e);
                let shift = g - e as i64;
                if shift.rem_euclid(n as i64) != 0 {
                    continue;
                }
                let k = c.mul(&t_pow(n, shift / n as i64));
                let dot = y.terms().fold(Q::zero(), |acc, (&(a, b, kk), v)| acc + v * k.coefficient(a, b, kk));
                assert!(dot.is_zero(), "n={n} d={d} g={g} e={e}");
            }
        }
    }
}

/// `t^k · 1`.
fn t_pow(n: usize, k: i64) -> M {
    let mut m = M::zero(n);
    for a in 0..n {
        m.add_term(a, a, k, Q::one());
    }
    m
}

#[test]
fn centralizer_element_is_refused() {
    for (n, d) in SHAPES {
        let psi = M::psi(n, d);
        let x = M::companion(n).pow(n - 1).mul(&t_pow(n, -1));
        assert!(matches!(solve_bracket(&psi, &x), Err(GaugeError::InvariantMismatch { .. })), "n={n} d={d}");
    }
}

#[test]
fn perturbation_by_centralizer_fails_at_first_step() {
    for (n, d) in SHAPES {
        let psi = M::psi(n, d);
        let pert = M::companion(n).pow(n - 1).mul(&t_pow(n, -1));
        assert_eq!(pert.homogeneous_grade(), Some(-1));
        let err = gauge_to(&psi, &psi.add(&pert), 8).unwrap_err();
        assert!(matches!(err, GaugeError::InvariantMismatch { step: 1, grade: -1, .. }), "{err:?}");
    }
}

fn round_trip(n: usize, d: usize, depth: i64, seed: u64) {
    let psi = M::psi(n, d);
    let floor = -depth - d as i64;
    let h = random_pro_unipotent(n, 4, floor, seed);
    let target = h.act(&psi).truncate(-depth);
    let g = gauge_to(&psi, &target, depth).unwrap();
    assert!(residual(&psi, &target, &g, depth).is_zero(), "n={n} d={d} depth={depth} seed={seed}");
    for w in g.factors().windows(2) {
        assert!(w[1].grade < w[0].grade);
    }
}

#[test]
fn fifty_random_round_trips() {
    let shapes: Vec<(usize, usize)> = vec![(2, 1), (2, 3), (3, 1), (3, 2)];
    for i in 0..50u64 {
        let (n, d) = shapes[(i % 4) as usize];
        round_trip(n, d, 10 - (i % 3) as i64, 1000 + i);
    }
}

#[test]
fn identity_and_trivial_cases() {
    let psi = M::psi(2, 3);
    assert!(gauge_to(&psi, &psi, 8).unwrap().is_identity());
    assert!(matches!(gauge_to(&psi, &psi.add(&M::psi(2, 4)), 4), Err(GaugeError::InvalidInput(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn exp_and_inverse_cancel(seed in any::<u64>(), n in 2usize..4) {
        let h = random_pro_unipotent(n, 3, -9, seed);
        prop_assert_eq!(h.evaluate().mul(&h.evaluate_inverse()).truncate(-9), M::identity(n).truncate(-9));
    }

    #[test]
    fn round_trips(seed in any::<u64>(), shape in 0usize..4, depth in 0i64..8) {
        let (n, d) = [(2, 1), (2, 3), (3, 1), (3, 2)][shape];
        round_trip(n, d, depth, seed);
    }
}
