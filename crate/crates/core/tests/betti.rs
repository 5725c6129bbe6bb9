use homobraid::arith::interp::fit_and_check;
use homobraid::arith::{FiniteField, FqElem, Q};
use homobraid::betti::flags::canonical_flag;
use homobraid::betti::matrix::{self, FqMatrix};
use homobraid::betti::*;
use homobraid::braid::BraidWord;
use proptest::prelude::*;
use std::sync::OnceLock;

fn rank(f: &FiniteField, rows: &[Vec<FqElem>]) -> usize {
    let mut m = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let inv = f.i(m[r][c]);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let k = f.m(m[i][c], inv);
                for j in 0..ncols {
                    m[i][j] = f.s(m[i][j], f.m(k, m[r][j]));
                }
            }
        }
        r += 1;
    }
    r
}

fn cols(h: &FqMatrix, k: usize) -> Vec<Vec<FqElem>> {
    (0..k).map(|j| h.iter().map(|row| row[j]).collect()).collect()
}

/// `dim(F_i ∩ F'_j)` for the flags spanned by leading columns.
fn dim_table(f: &FiniteField, h1: &FqMatrix, h2: &FqMatrix) -> Vec<Vec<usize>> {
    let n = h1.len();
    (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    let mut v = cols(h1, i);
                    v.extend(cols(h2, j));
                    i + j - rank(f, &v)
                })
                .collect()
        })
        .collect()
}

fn simple_table(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(s, s + 1);
    (0..=n).map(|i| (0..=n).map(|j| (0..j).filter(|&k| perm[k] < i).count()).collect()).collect()
}

fn preserves(f: &FiniteField, g: &FqMatrix, h: &FqMatrix) -> bool {
    let n = h.len();
    (1..n).all(|k| {
        let mut v = cols(h, k);
        let gv = matrix::mul(f, g, h);
        let before = rank(f, &v);
        v.extend(cols(&gv, k));
        rank(f, &v) == before
    })
}

fn all_sl(f: &FiniteField, n: usize) -> Vec<FqMatrix> {
    let elems: Vec<FqElem> = f.elements().collect();
    let mut out: Vec<Vec<FqElem>> = vec![vec![]];
    for _ in 0..n * n {
        out = out.into_iter().flat_map(|v| elems.iter().map(move |&e| [v.clone(), vec![e]].concat())).collect();
    }
    out.into_iter()
        .map(|v| v.chunks(n).map(|r| r.to_vec()).collect::<FqMatrix>())
        .filter(|m| matrix::det(f, m) == 1)
        .collect()
}

struct Brute {
    msh: u128,
    m0bet: u128,
}

fn brute(n: usize, q: u32, letters: &[usize]) -> Brute {
    let f = FiniteField::new(q).unwrap();
    let flags = flags::all_flags(&f, n);
    let group = all_sl(&f, n);
    let tables: Vec<Vec<Vec<usize>>> = (0..n - 1).map(|s| simple_table(n, s)).collect();
    let mut tuples: Vec<Vec<usize>> = (0..flags.len()).map(|i| vec![i]).collect();
    for &l in letters {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                let last = *t.last().unwrap();
                (0..flags.len())
                    .filter(|&k| dim_table(&f, &flags[last], &flags[k]) == tables[l - 1])
                    .map(|k| [t.clone(), vec![k]].concat())
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out = Brute { msh: 0, m0bet: 0 };
    for t in &tuples {
        let h0 = &flags[t[0]];
        let hn = &flags[*t.last().unwrap()];
        for g in &group {
            // g carries the first flag to the last
            let gh0 = matrix::mul(&f, g, h0);
            let ok = (1..n).all(|k| {
                let mut v = cols(hn, k);
                let r = rank(&f, &v);
                v.extend(cols(&gh0, k));
                rank(&f, &v) == r
            });
            if !ok {
                continue;
            }
            out.msh += 1;
            if matrix::is_unipotent(&f, g) {
                out.m0bet += flags.iter().filter(|h| preserves(&f, g, h)).count() as u128;
            }
        }
    }
    out
}

fn word(real: &SlRealization, s: &str) -> BraidWord {
    BraidWord::parse(real.root_system(), s).unwrap()
}

#[test]
fn counts_match_brute_force() {
    let cases: &[(usize, u32, &str)] = &[
        (2, 2, ""),
        (2, 2, "1"),
        (2, 3, "1,1"),
        (2, 2, "1,1,1"),
        (2, 3, "1,1,1"),
        (2, 4, "1,1"),
        (3, 2, "1"),
        (3, 2, "1,2"),
        (3, 2, "1,2,1"),
        (3, 2, "2,1,1"),
    ];
    for &(n, q, w) in cases {
        let real = SlRealization::new(n, q).unwrap();
        let b = word(&real, w);
        let oracle = brute(n, q, b.letters());
        assert_eq!(count_msh(&real, &b, DEFAULT_BUDGET).unwrap().raw, oracle.msh, "n={n} q={q} {w}");
        assert_eq!(count_m0bet(&real, &b, DEFAULT_BUDGET).unwrap().raw, oracle.m0bet, "n={n} q={q} {w}");
    }
}

#[test]
fn worked_examples() {
    let real = SlRealization::new(2, 2).unwrap();
    let r = count_msh(&real, &word(&real, "1"), DEFAULT_BUDGET).unwrap();
    assert_eq!((r.raw, r.group_order), (12, 6));
    assert_eq!(r.stacky(), Q::from_integer(2.into()));
    let real = SlRealization::new(3, 2).unwrap();
    let r = count_msh(&real, &word(&real, "1,2,1"), DEFAULT_BUDGET).unwrap();
    assert_eq!(r.stacky(), Q::from_integer(8.into()));
    for q in [2, 3, 4, 5, 7] {
        let real = SlRealization::new(2, q).unwrap();
        let r = count_m0bet(&real, &word(&real, "1"), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.stacky(), Q::from_integer(1.into()), "q={q}");
    }
}

#[test]
fn free_monodromy_count_is_a_power_of_q() {
    for (n, qs) in [(2, vec![2, 3, 4, 5]), (3, vec![2, 3])] {
        for q in qs {
            let real = SlRealization::new(n, q).unwrap();
            for w in ["", "1", "1,1", "2,1", "1,2,1"] {
                let Ok(b) = BraidWord::parse(real.root_system(), w) else { continue };
                if n == 3 && q == 3 && b.len() > 2 {
                    continue;
                }
                let r = count_msh(&real, &b, DEFAULT_BUDGET).unwrap();
                assert_eq!(r.stacky(), Q::from_integer((q as i64).pow(b.len() as u32).into()));
            }
        }
    }
}

fn a2_words(max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        frontier = frontier
            .into_iter()
            .flat_map(|w: Vec<usize>| [1, 2].map(|l| [w.clone(), vec![l]].concat()))
            .collect();
        out.extend(frontier.clone());
    }
    out
}

/// Applies one braid relation `121 ↔ 212` wherever it occurs.
fn braid_moves(w: &[usize]) -> Vec<Vec<usize>> {
    (0..w.len().saturating_sub(2))
        .filter(|&i| w[i] == w[i + 2] && w[i] != w[i + 1])
        .map(|i| {
            let mut v = w.to_vec();
            let (a, b) = (w[i], w[i + 1]);
            v[i] = b;
            v[i + 1] = a;
            v[i + 2] = b;
            v
        })
        .collect()
}

#[test]
fn counts_are_braid_and_conjugation_invariant() {
    let real = SlRealization::new(3, 2).unwrap();
    let rs = real.root_system();
    let m0 = |w: &[usize]| {
        count_m0bet(&real, &BraidWord::new(rs, w.to_vec()).unwrap(), DEFAULT_BUDGET).unwrap().raw
    };
    for w in a2_words(4) {
        let base = m0(&w);
        for v in braid_moves(&w) {
            assert_eq!(m0(&v), base, "{w:?} vs {v:?}");
        }
        for k in 1..w.len() {
            let mut v = w.clone();
            v.rotate_left(k);
            assert_eq!(m0(&v), base, "{w:?} rotated by {k}");
        }
    }
}

#[test]
fn unipotent_counts_are_polynomial_in_q() {
    let pts: Vec<(i64, Q)> = [2u32, 3, 4, 5, 7]
        .iter()
        .map(|&q| {
            let real = SlRealization::new(2, q).unwrap();
            let r = count_m0bet(&real, &word(&real, "1,1,1"), DEFAULT_BUDGET).unwrap();
            (q as i64, r.stacky())
        })
        .collect();
    let fit = fit_and_check(&pts, 3);
    assert!(fit.consistent);
    assert_eq!(fit.poly.coefficient_strings(), FROZEN_TREFOIL);
}

const FROZEN_TREFOIL: [&str; 3] = ["1", "1", "1"];

fn frame_transport(f: &FiniteField, p: &BettiPoint) -> Vec<FqElem> {
    let mut frame = p.flags[0].clone();
    for k in 1..p.flags.len() {
        let x = matrix::mul(f, &matrix::inverse(f, &frame).unwrap(), &p.flags[k]);
        let (c, perm) = canonical_flag(f, &x);
        let pw = matrix::permutation_matrix(&perm);
        let u = matrix::mul(f, &c, &matrix::inverse(f, &pw).unwrap());
        frame = matrix::mul(f, &matrix::mul(f, &frame, &u), &permutation_lift(f, &perm));
    }
    let y = matrix::mul(f, &matrix::mul(f, &matrix::inverse(f, &frame).unwrap(), &p.g), &p.flags[0]);
    matrix::diagonal(&y)
}

fn total_lift(f: &FiniteField, n: usize, letters: &[usize]) -> FqMatrix {
    letters.iter().fold(matrix::identity(n), |acc, &l| matrix::mul(f, &acc, &matrix::simple_lift(f, n, l - 1)))
}

#[test]
fn formal_monodromy_agrees_with_frame_transport() {
    for (n, q, w) in [(2, 3, "1,1"), (2, 5, "1,1,1"), (3, 2, "1,2,1"), (3, 3, "1,2")] {
        let real = SlRealization::new(n, q).unwrap();
        let f = real.field();
        let b = word(&real, w);
        let total = total_lift(f, n, b.letters());
        for p in points(&real, &b, Constraint::None, DEFAULT_BUDGET).unwrap() {
            assert!(is_point_of(&real, &b, &p));
            let expected = canonical_twisted_class(f, &frame_transport(f, &p), &total, real.torus());
            assert_eq!(formal_monodromy(f, &p).unwrap(), expected);
        }
    }
}

fn sl3_points() -> &'static (SlRealization, BraidWord, Vec<BettiPoint>) {
    static CELL: OnceLock<(SlRealization, BraidWord, Vec<BettiPoint>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let real = SlRealization::new(3, 3).unwrap();
        let b = word(&real, "2,1,2");
        let pts = points(&real, &b, Constraint::None, DEFAULT_BUDGET).unwrap();
        (real, b, pts)
    })
}

fn sl3_group() -> &'static Vec<FqMatrix> {
    static CELL: OnceLock<Vec<FqMatrix>> = OnceLock::new();
    CELL.get_or_init(|| all_sl(&FiniteField::new(3).unwrap(), 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn formal_monodromy_ignores_borel_representatives(
        idx in 0usize..10_000,
        picks in proptest::collection::vec(0usize..10_000, 4),
    ) {
        let (real, b, pts) = sl3_points();
        let f = real.field();
        let p = &pts[idx % pts.len()];
        let borel = real.borel();
        let moved = BettiPoint {
            flags: p.flags.iter().zip(&picks).map(|(h, &k)| matrix::mul(f, h, &borel[k % borel.len()])).collect(),
            g: p.g.clone(),
            aux: None,
        };
        prop_assert!(is_point_of(real, b, &moved));
        prop_assert_eq!(formal_monodromy(f, &moved).unwrap(), formal_monodromy(f, p).unwrap());
        prop_assert_eq!(monodromy(f, &moved), monodromy(f, p));
    }

    #[test]
    fn monodromy_class_is_conjugation_invariant(
        g_idx in 0usize..100_000,
        h_idx in 0usize..100_000,
    ) {
        let f = FiniteField::new(3).unwrap();
        let group = sl3_group();
        let g = &group[g_idx % group.len()];
        let h = &group[h_idx % group.len()];
        let c = matrix::mul(&f, &matrix::mul(&f, h, g), &matrix::inverse(&f, h).unwrap());
        prop_assert_eq!(rational_canonical_class(&f, &c), rational_canonical_class(&f, g));
    }
}

#[test]
fn kappa_fibers_partition_the_count() {
    let real = SlRealization::new(3, 2).unwrap();
    for w in ["1,2,1", "1,2,1,2"] {
        let b = word(&real, w);
        for c in [Constraint::None, Constraint::Unipotent] {
            let by = fiber_count_by_kappa(&real, &b, c, DEFAULT_BUDGET).unwrap();
            let classes = twisted_classes(&real, &b).unwrap();
            assert!(by.keys().all(|k| classes.contains(k)));
            assert_eq!(by.values().sum::<u128>(), count(&real, &b, c, DEFAULT_BUDGET).unwrap().raw);
        }
    }
}

#[test]
fn rejects_bad_inputs() {
    assert!(matches!(SlRealization::new(4, 2), Err(BettiError::UnsupportedRank(4))));
    assert!(matches!(SlRealization::new(2, 6), Err(BettiError::Field(_))));
    let real = SlRealization::new(2, 2).unwrap();
    let other = homobraid::rootsys::RootSystem::new("A2".parse().unwrap()).unwrap();
    let b = BraidWord::parse(&other, "1,2").unwrap();
    assert!(matches!(count_msh(&real, &b, DEFAULT_BUDGET), Err(BettiError::TypeMismatch { .. })));
}
