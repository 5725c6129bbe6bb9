use homobraid::arith::linalg;
use homobraid::arith::rational::q;
use homobraid::arith::{CyclotomicField, Field};
use homobraid::rootsys::*;
use proptest::prelude::*;

fn rs(s: &str) -> RootSystem {
    RootSystem::new(s.parse().unwrap()).unwrap()
}

const SMALL_TYPES: [&str; 13] =
    ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4", "C2"];

/// Characteristic polynomial of an integer matrix (Faddeev–LeVerrier),
/// lowest degree first, monic.
fn char_poly(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mut coeffs = vec![0i64; n + 1];
    coeffs[n] = 1;
    let mut mk = vec![vec![0i64; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| a[i][l] * mk[l][j]).sum::<i64>();
            }
            next[i][i] += coeffs[n - k + 1];
        }
        mk = next;
        let am: i64 = (0..n).map(|i| (0..n).map(|l| a[i][l] * mk[l][i]).sum::<i64>()).sum();
        coeffs[n - k] = -am / k as i64;
    }
    coeffs
}

fn div_exact(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return None;
    }
    let mut quo = vec![0i64; rem.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    rem.iter().all(|&c| c == 0).then_some(quo)
}

/// Degrees recovered from the eigenvalues of the Coxeter element.
fn degrees_from_coxeter(r: &RootSystem) -> Vec<u64> {
    let c = r.coxeter_element();
    let h = r.order(&c);
    let mut p = char_poly(&c.root_matrix());
    let mut exps = Vec::new();
    for k in (1..=h).filter(|k| h % k == 0) {
        let phi = homobraid::arith::cyclotomic::cyclotomic_polynomial(k as u32);
        while let Some(quo) = div_exact(&p, &phi) {
            p = quo;
            exps.extend((1..=h).filter(|j| h / num_integer::gcd(*j, h) == k));
        }
    }
    assert_eq!(p, vec![1]);
    let mut d: Vec<u64> = exps.iter().map(|e| e + 1).collect();
    d.sort_unstable();
    d
}

#[test]
fn degrees_match_coxeter_eigenvalues() {
    for t in SMALL_TYPES.iter().chain(&["E6", "E7", "E8", "D5", "A6"]) {
        let r = rs(t);
        assert_eq!(degrees_from_coxeter(&r), r.degrees(), "{t}");
    }
}

#[test]
fn structural_invariants() {
    for t in SMALL_TYPES {
        let r = rs(t);
        let exp: u64 = r.exponents().iter().sum();
        assert_eq!(exp as usize, r.positive_roots().len());
        assert_eq!(r.enumerate_weyl_group(10_000).unwrap().len() as u128, r.weyl_group_order(), "{t}");
        assert_eq!(r.coxeter_number(), *r.degrees().iter().max().unwrap());
        for a in r.roots() {
            assert!(is_positive(&a) || is_negative(&a));
        }
        for w in r.enumerate_weyl_group(10_000).unwrap().into_iter().take(50) {
            assert_eq!(w.determinant().abs(), 1);
            for a in r.roots() {
                assert!(r.is_root(&w.apply(&a)));
            }
        }
    }
}

/// `w` has a regular `ζ_m`-eigenvector: no root hyperplane contains the
/// eigenspace.
fn oracle_has_regular_eigenvector(r: &RootSystem, f: &CyclotomicField, w: &WeylElement) -> bool {
    let n = r.rank();
    let c = w.coweight_matrix();
    let zeta = f.zeta_pow(1);
    let base: Vec<Vec<Vec<homobraid::arith::Q>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = f.from_rational(q(c[i][j]));
                    if i == j { f.sub(&e, &zeta) } else { e }
                })
                .collect()
        })
        .collect();
    let dim = n - linalg::rank(f, &base, n);
    if dim == 0 {
        return false;
    }
    r.positive_roots().iter().all(|a| {
        let mut m = base.clone();
        m.push(a.iter().map(|&x| f.from_rational(q(x))).collect());
        n - linalg::rank(f, &m, n) < dim
    })
}

#[test]
fn regular_numbers_agree_with_enumeration_oracle() {
    for t in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "B4", "F4"] {
        let r = rs(t);
        let group = r.enumerate_weyl_group(2000).unwrap();
        let orders: Vec<u64> = group.iter().map(|w| r.order(w)).collect();
        let mut found = Vec::new();
        for m in 1..=2 * r.coxeter_number() {
            let f = CyclotomicField::new(m as u32);
            if group
                .iter()
                .zip(&orders)
                .any(|(w, &k)| k % m == 0 && oracle_has_regular_eigenvector(&r, &f, w))
            {
                found.push(m);
            }
        }
        assert_eq!(found, regular_numbers(&r), "{t}");
    }
}

#[test]
fn worked_examples() {
    let a2 = rs("A2");
    assert_eq!(a2.degrees(), &[2, 3]);
    assert_eq!(a2.positive_roots().len(), 3);
    let g2 = rs("G2");
    assert_eq!(g2.degrees(), &[2, 6]);
    assert_eq!(g2.positive_roots().len(), 6);
    assert!(regular_numbers(&g2).contains(&6));

    // A2, m = 3: a Coxeter element (3-cycle) with no fixed vector
    let sd = SlopeData::new(&a2, 1, 3, 0).unwrap();
    assert_eq!(a2.length(sd.w()), 2);
    assert_eq!(sd.fixed_space_dim(), 0);
    for a in a2.roots() {
        assert!(sd.root_value(&a).iter().any(|c| *c != q(0)));
    }

    // A3, m = 2: fixed space of dimension 1
    let a3 = rs("A3");
    let sd = SlopeData::new(&a3, 1, 2, 0).unwrap();
    assert_eq!(sd.fixed_space_dim(), 1);
    assert_eq!(a3.fixed_space_dim(sd.w()), 1);

    for t in SMALL_TYPES {
        let r = rs(t);
        let sd = SlopeData::new(&r, 1, 1, 0).unwrap();
        assert!(sd.w().is_identity());
        assert_eq!(sd.fixed_space_dim(), r.rank());
    }
}

#[test]
fn fixed_space_matches_kernel_for_all_regular_elements() {
    for t in SMALL_TYPES {
        let r = rs(t);
        for m in regular_numbers(&r) {
            for seed in 0..3 {
                let sd = SlopeData::new(&r, 1, m, seed).unwrap();
                assert_eq!(sd.fixed_space_dim(), r.fixed_space_dim(sd.w()), "{t} m={m}");
                assert!(sd.check_eigen_equation());
            }
        }
    }
}

fn arb_case() -> impl Strategy<Value = (&'static str, Vec<usize>, Vec<u32>)> {
    (
        prop::sample::select(vec!["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "D4", "G2", "F4"]),
        prop::collection::vec(0usize..4, 0..30),
        prop::collection::vec(1u32..1000, 4),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn chamber_of_recovers_u((t, word, coords) in arb_case()) {
        let r = rs(t);
        let word: Vec<usize> = word.into_iter().map(|i| i % r.rank()).collect();
        let u = r.from_word(&word);
        let dominant: Vec<f64> = coords[..r.rank()].iter().map(|&c| c as f64 / 7.0).collect();
        let p = u.act_on_point(&dominant);
        prop_assert_eq!(chamber_of(&r, &p).unwrap(), u);
    }

    #[test]
    fn reduced_word_is_reduced((t, word, _c) in arb_case()) {
        let r = rs(t);
        let word: Vec<usize> = word.into_iter().map(|i| i % r.rank()).collect();
        let w = r.from_word(&word);
        let red = r.reduced_word(&w);
        prop_assert_eq!(red.len(), r.length(&w));
        prop_assert_eq!(r.from_word(&red), w);
    }
}
