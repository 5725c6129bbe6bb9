use std::collections::{HashMap, HashSet, VecDeque};

use crate::arith::linalg;
use crate::arith::rational::{q, Rationals};

use super::cartan::CartanType;
use super::weyl::WeylElement;
use super::RootSystemError;

/// Roots, degrees and Weyl group of an irreducible Cartan type.
///
/// Roots are integer vectors in the basis of simple roots. Simple-reflection
/// indices are 0-based here; braid words use 1-based letters.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: CartanType,
    gram: Vec<Vec<i64>>,
    /// `cartan_int[i][j] = ⟨α_i, α_j^∨⟩`.
    cartan_int: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
    degrees: Vec<u64>,
    simple_reflections: Vec<WeylElement>,
}

pub fn is_positive(root: &[i64]) -> bool {
    root.iter().all(|&c| c >= 0) && root.iter().any(|&c| c > 0)
}

pub fn is_negative(root: &[i64]) -> bool {
    root.iter().all(|&c| c <= 0) && root.iter().any(|&c| c < 0)
}

impl RootSystem {
    /// Builds the root system of `ct` and checks its structural invariants.
    pub fn new(ct: CartanType) -> Result<Self, RootSystemError> {
        let r = ct.rank();
        let gram = ct.gram_matrix();
        let cartan_int: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|j| 2 * gram[i][j] / gram[j][j]).collect()).collect();

        let simple_reflections: Vec<WeylElement> = (0..r)
            .map(|j| {
                // s_j(α_i) = α_i - ⟨α_i, α_j^∨⟩ α_j ; involution, so inv = mat
                let mut m = vec![0i64; r * r];
                for i in 0..r {
                    m[i * r + i] = 1;
                }
                for i in 0..r {
                    m[j * r + i] -= cartan_int[i][j];
                }
                WeylElement::from_parts(r, m.clone(), m)
            })
            .collect();

        let mut positive_roots: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for s in &simple_reflections {
                let c = s.apply(&b);
                if is_positive(&c) && seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
            positive_roots.push(b);
        }
        positive_roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let root_index = positive_roots.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let degrees = ct.degrees();

        let rs = RootSystem {
            cartan: ct,
            gram,
            cartan_int,
            positive_roots,
            root_index,
            degrees,
            simple_reflections,
        };
        let exp_sum: u64 = rs.degrees.iter().map(|d| d - 1).sum();
        if exp_sum as usize != rs.positive_roots.len() {
            return Err(RootSystemError::Internal(format!(
                "{}: {} positive roots but exponents sum to {exp_sum}",
                ct,
                rs.positive_roots.len()
            )));
        }
        Ok(rs)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn gram_matrix(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// `⟨α_i, α_j^∨⟩`.
    pub fn cartan_integer(&self, i: usize, j: usize) -> i64 {
        self.cartan_int[i][j]
    }

    /// Simple roots as unit vectors of the root lattice.
    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        (0..self.rank())
            .map(|i| {
                let mut e = vec![0; self.rank()];
                e[i] = 1;
                e
            })
            .collect()
    }

    /// Positive roots sorted by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// All roots: positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut v = self.positive_roots.clone();
        v.extend(self.positive_roots.iter().map(|a| a.iter().map(|x| -x).collect::<Vec<_>>()));
        v
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive_roots.len()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.root_index.contains_key(v)
            || self.root_index.contains_key(&v.iter().map(|x| -x).collect::<Vec<_>>())
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    /// `⟨β, α^∨⟩ = 2(β, α)/(α, α)` for lattice vectors in root coordinates.
    pub fn pairing(&self, beta: &[i64], alpha: &[i64]) -> i64 {
        let ip = |a: &[i64], b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..a.len() {
                for j in 0..b.len() {
                    s += a[i] * self.gram[i][j] * b[j];
                }
            }
            s
        };
        2 * ip(beta, alpha) / ip(alpha, alpha)
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Exponents `d_i − 1`.
    pub fn exponents(&self) -> Vec<u64> {
        self.degrees.iter().map(|d| d - 1).collect()
    }

    pub fn coxeter_number(&self) -> u64 {
        *self.degrees.last().unwrap()
    }

    /// `|W| = Π d_i`.
    pub fn weyl_group_order(&self) -> u128 {
        self.degrees.iter().map(|&d| d as u128).product()
    }

    pub fn lie_algebra_dim(&self) -> usize {
        self.num_roots() + self.rank()
    }

    /// Simple reflection `s_i`, 0-based.
    pub fn s(&self, i: usize) -> &WeylElement {
        &self.simple_reflections[i]
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.rank())
    }

    /// Product of simple reflections along a 0-based word.
    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        word.iter().fold(self.identity(), |acc, &i| acc.mul(self.s(i)))
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &WeylElement) -> usize {
        self.positive_roots.iter().filter(|a| is_negative(&w.apply(a))).count()
    }

    /// `s_i` with `ℓ(w s_i) < ℓ(w)`, i.e. `w(α_i) < 0`.
    pub fn right_descents(&self, w: &WeylElement) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.is_right_descent(w, i)).collect()
    }

    pub fn is_right_descent(&self, w: &WeylElement, i: usize) -> bool {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        is_negative(&w.apply(&e))
    }

    /// `s_i` with `ℓ(s_i w) < ℓ(w)`, i.e. `w⁻¹(α_i) < 0`.
    pub fn left_descents(&self, w: &WeylElement) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.is_left_descent(w, i)).collect()
    }

    pub fn is_left_descent(&self, w: &WeylElement, i: usize) -> bool {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        is_negative(&w.apply_inverse(&e))
    }

    /// Reduced word (0-based) obtained by repeatedly stripping the smallest
    /// left descent.
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while let Some(i) = (0..self.rank()).find(|&i| self.is_left_descent(&cur, i)) {
            word.push(i);
            cur = self.s(i).mul(&cur);
        }
        word
    }

    /// The longest element `w_0`.
    pub fn longest_element(&self) -> WeylElement {
        let mut w = self.identity();
        while let Some(i) = (0..self.rank()).find(|&i| !self.is_right_descent(&w, i)) {
            w = w.mul(self.s(i));
        }
        w
    }

    /// The Coxeter element `s_1 s_2 ⋯ s_r`.
    pub fn coxeter_element(&self) -> WeylElement {
        self.from_word(&(0..self.rank()).collect::<Vec<_>>())
    }

    /// Multiplicative order of `w`.
    pub fn order(&self, w: &WeylElement) -> u64 {
        let id = self.identity();
        let mut p = w.clone();
        let mut k = 1;
        while p != id {
            p = p.mul(w);
            k += 1;
        }
        k
    }

    /// `dim ker(w − 1)` on the reflection representation, computed by exact
    /// elimination.
    pub fn fixed_space_dim(&self, w: &WeylElement) -> usize {
        let r = self.rank();
        let m = w.root_matrix();
        let a: Vec<Vec<_>> = (0..r)
            .map(|i| (0..r).map(|j| q(m[i][j] - i64::from(i == j))).collect())
            .collect();
        r - linalg::rank(&Rationals, &a, r)
    }

    /// All elements of `W` by breadth-first search, refusing groups larger
    /// than `limit`.
    pub fn enumerate_weyl_group(&self, limit: usize) -> Result<Vec<WeylElement>, RootSystemError> {
        let order = self.weyl_group_order();
        if order > limit as u128 {
            return Err(RootSystemError::GroupTooLarge { order, limit });
        }
        let mut seen: HashSet<WeylElement> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(self.identity());
        queue.push_back(self.identity());
        while let Some(w) = queue.pop_front() {
            for s in &self.simple_reflections {
                let ws = w.mul(s);
                if seen.insert(ws.clone()) {
                    queue.push_back(ws);
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    /// Value `α(x)` of a root on a real point given in coweight coordinates.
    pub fn eval_root(root: &[i64], point: &[f64]) -> f64 {
        root.iter().zip(point).map(|(&a, &x)| a as f64 * x).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        for (t, n) in [
            ("A1", 1),
            ("A2", 3),
            ("A4", 10),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ] {
            assert_eq!(rs(t).positive_roots().len(), n, "{t}");
        }
    }

    #[test]
    fn examples_a2_a1_g2() {
        let a2 = rs("A2");
        assert_eq!(a2.degrees(), &[2, 3]);
        let a1 = rs("A1");
        assert_eq!(a1.degrees(), &[2]);
        assert_eq!(a1.positive_roots().len(), 1);
        let g2 = rs("G2");
        assert_eq!(g2.degrees(), &[2, 6]);
        assert_eq!(g2.coxeter_number(), 6);
    }

    #[test]
    fn longest_element_negates_positive_roots_count() {
        for t in ["A3", "B3", "D4", "G2", "F4"] {
            let r = rs(t);
            let w0 = r.longest_element();
            assert_eq!(r.length(&w0), r.positive_roots().len());
            assert_eq!(r.reduced_word(&w0).len(), r.positive_roots().len());
            assert_eq!(r.from_word(&r.reduced_word(&w0)), w0);
        }
    }

    #[test]
    fn coxeter_element_has_order_h() {
        for t in ["A4", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let r = rs(t);
            assert_eq!(r.order(&r.coxeter_element()), r.coxeter_number(), "{t}");
        }
    }

    #[test]
    fn determinant_is_sign_of_length() {
        let r = rs("B3");
        for w in r.enumerate_weyl_group(100).unwrap() {
            let sign = if r.length(&w) % 2 == 0 { 1 } else { -1 };
            assert_eq!(w.determinant(), sign);
        }
    }

    #[test]
    fn enumeration_refuses_large_groups() {
        assert!(matches!(
            rs("E8").enumerate_weyl_group(1_000_000),
            Err(RootSystemError::GroupTooLarge { .. })
        ));
    }
}
