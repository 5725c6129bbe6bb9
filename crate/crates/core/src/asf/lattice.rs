//! ψ-stable lattices inside a finite window, in valuation-echelon form.
//!
//! Coordinates: `k((t))^n` is identified with `k((s))`, `s^n = t`, by
//! `e_{n−1−k} ↔ s^k` for `0 ≤ k < n`. The companion matrix acts as `s`, so
//! `ψ = s^d`, the standard lattice `O^n` is `k[[s]]`, and the window
//! `t^A O^n ⊂ Λ ⊂ t^{−A} O^n` is `s^{nA} k[[s]] ⊂ Λ ⊂ s^{−nA} k[[s]]`.

use crate::arith::{linalg, FiniteField, FqElem};

use super::{AsfError, HomogeneousElement};

/// A lattice `s^{nA}k[[s]] ⊂ Λ ⊂ s^{−nA}k[[s]]`, recorded modulo
/// `s^{nA}` by one basis vector per valuation. The vector with valuation
/// `v` is `s^v` plus terms at higher non-valuation positions only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    n: usize,
    window: u32,
    valuations: Vec<i64>,
    basis: Vec<Vec<FqElem>>,
}

impl Lattice {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    fn lo(&self) -> i64 {
        -((self.n as i64) * self.window as i64)
    }

    fn hi(&self) -> i64 {
        (self.n as i64) * self.window as i64
    }

    /// Valuations of nonzero elements below `s^{nA}`, increasing.
    pub fn valuations(&self) -> &[i64] {
        &self.valuations
    }

    /// Coefficients of the basis vectors at positions `−nA, …, nA − 1`.
    pub fn basis(&self) -> &[Vec<FqElem>] {
        &self.basis
    }

    /// `dim Λ/(Λ ∩ k[[s]]) − dim k[[s]]/(Λ ∩ k[[s]])`.
    pub fn volume(&self) -> i64 {
        self.valuations.len() as i64 - self.hi()
    }

    fn has_valuation(&self, v: i64) -> bool {
        v >= self.hi() || self.valuations.binary_search(&v).is_ok()
    }

    /// Reduces `y` (indexed from `−nA`) in place; true when `y ∈ Λ`.
    fn reduce(&self, f: &FiniteField, y: &mut [FqElem]) -> bool {
        let lo = self.lo();
        for (v, x) in self.valuations.iter().zip(&self.basis) {
            let c = y[(v - lo) as usize];
            if c != 0 {
                for (a, &b) in y.iter_mut().zip(x) {
                    *a = f.s(*a, f.m(c, b));
                }
            }
        }
        y.iter().all(|&c| c == 0)
    }

    /// `s^a · y` truncated at `s^{nA}`.
    fn shift(&self, y: &[FqElem], a: usize) -> Vec<FqElem> {
        let mut out = vec![0; y.len()];
        for (i, &c) in y.iter().enumerate() {
            if i + a < y.len() {
                out[i + a] = c;
            }
        }
        out
    }

    /// `s^a · other ⊆ self`.
    pub fn contains_shifted(&self, f: &FiniteField, other: &Lattice, a: usize) -> bool {
        other.valuations.iter().all(|&v| self.has_valuation(v + a as i64))
            && other.basis.iter().all(|x| self.reduce(f, &mut self.shift(x, a)))
    }

    pub fn contains(&self, f: &FiniteField, other: &Lattice) -> bool {
        self.contains_shifted(f, other, 0)
    }

    /// Some lattice element lies within `n` of the bottom of the window,
    /// or the lattice misses part of the top `n` positions.
    pub fn touches_boundary(&self) -> bool {
        let n = self.n as i64;
        self.valuations.first().is_some_and(|&v| v < self.lo() + n)
            || (self.hi() - n..self.hi()).any(|v| !self.has_valuation(v))
    }
}

struct Search<'a> {
    f: &'a FiniteField,
    n: usize,
    d: usize,
    window: u32,
    lo: i64,
    hi: i64,
    min_size: usize,
    max_size: usize,
}

impl Search<'_> {
    fn idx(&self, v: i64) -> usize {
        (v - self.lo) as usize
    }

    fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    fn partial(&self, basis: &[(i64, Vec<FqElem>)]) -> Lattice {
        let mut pairs: Vec<(i64, Vec<FqElem>)> = basis.to_vec();
        pairs.sort_by_key(|p| p.0);
        Lattice {
            n: self.n,
            window: self.window,
            valuations: pairs.iter().map(|p| p.0).collect(),
            basis: pairs.into_iter().map(|p| p.1).collect(),
        }
    }

    /// All `x = s^v + Σ c_k s^k` (free `k` above `v` outside the current
    /// valuations) with `s^n x, s^d x ∈ span(basis)`.
    fn extensions(&self, v: i64, member: &[bool], basis: &[(i64, Vec<FqElem>)]) -> Vec<Vec<FqElem>> {
        let f = self.f;
        let lat = self.partial(basis);
        let free: Vec<i64> = (v + 1..self.hi).filter(|&k| !member[self.idx(k)]).collect();
        let nv = free.len();
        // component 0 is the constant part, component j + 1 the coefficient of c_j
        let mut comps: Vec<Vec<FqElem>> = vec![vec![0; self.len()]; nv + 1];
        comps[0][self.idx(v)] = 1;
        for (j, &k) in free.iter().enumerate() {
            comps[j + 1][self.idx(k)] = 1;
        }
        let mut rows: Vec<Vec<FqElem>> = Vec::new();
        let mut rhs: Vec<FqElem> = Vec::new();
        for a in [self.n, self.d] {
            let res: Vec<Vec<FqElem>> = comps
                .iter()
                .map(|c| {
                    let mut y = lat.shift(c, a);
                    lat.reduce(f, &mut y);
                    y
                })
                .collect();
            for p in 0..self.len() {
                if res.iter().any(|r| r[p] != 0) {
                    rows.push(res[1..].iter().map(|r| r[p]).collect());
                    rhs.push(f.n(res[0][p]));
                }
            }
        }
        let Some(part) = linalg::solve(f, &rows, &rhs, nv) else { return Vec::new() };
        let ker = linalg::kernel(f, &rows, nv);
        let elems: Vec<FqElem> = f.elements().collect();
        let mut sols = vec![part];
        for kv in &ker {
            sols = sols
                .into_iter()
                .flat_map(|s| {
                    elems.iter().map(move |&c| s.iter().zip(kv).map(|(&x, &y)| f.a(x, f.m(c, y))).collect())
                })
                .collect();
        }
        sols.into_iter()
            .map(|c: Vec<FqElem>| {
                let mut x = comps[0].clone();
                for (j, &k) in free.iter().enumerate() {
                    x[self.idx(k)] = c[j];
                }
                x
            })
            .collect()
    }

    fn dfs(
        &self,
        v: i64,
        member: &mut Vec<bool>,
        excluded: &mut Vec<u32>,
        basis: &mut Vec<(i64, Vec<FqElem>)>,
        out: &mut Vec<Lattice>,
    ) {
        let have = basis.len();
        if have > self.max_size {
            return;
        }
        let capacity = (self.lo..=v).filter(|&u| excluded[self.idx(u)] == 0).count();
        if have + capacity < self.min_size {
            return;
        }
        if v < self.lo {
            out.push(self.partial(basis));
            return;
        }
        let i = self.idx(v);
        let closed = |a: usize| v + a as i64 >= self.hi || member[self.idx(v + a as i64)];
        if excluded[i] == 0 && closed(self.n) && closed(self.d) {
            for x in self.extensions(v, member, basis) {
                member[i] = true;
                basis.push((v, x));
                self.dfs(v - 1, member, excluded, basis, out);
                basis.pop();
                member[i] = false;
            }
        }
        let below: Vec<usize> = [self.n, self.d]
            .iter()
            .filter(|&&a| v - a as i64 >= self.lo)
            .map(|&a| self.idx(v - a as i64))
            .collect();
        for &b in &below {
            excluded[b] += 1;
        }
        self.dfs(v - 1, member, excluded, basis, out);
        for &b in &below {
            excluded[b] -= 1;
        }
    }
}

/// All ψ-stable lattices inside the window with volume in
/// `[vol_min, vol_max]`, in a deterministic order.
pub fn stable_lattices(
    psi: &HomogeneousElement,
    f: &FiniteField,
    window: u32,
    vol_min: i64,
    vol_max: i64,
) -> Vec<Lattice> {
    let n = psi.n();
    let hi = (n as i64) * window as i64;
    let search = Search {
        f,
        n,
        d: psi.d(),
        window,
        lo: -hi,
        hi,
        min_size: (hi + vol_min).max(0) as usize,
        max_size: (hi + vol_max).max(0) as usize,
    };
    let len = search.len();
    let mut out = Vec::new();
    search.dfs(hi - 1, &mut vec![false; len], &mut vec![0; len], &mut Vec::new(), &mut out);
    out
}

/// Checks the window and enumerates ψ-stable lattices with
/// `|vol| ≤ n − 1`.
pub fn enumerate_fixed_lattices(
    psi: &HomogeneousElement,
    f: &FiniteField,
    window: u32,
) -> Result<Vec<Lattice>, AsfError> {
    psi.check_window(window)?;
    let r = psi.n() as i64 - 1;
    let lats = stable_lattices(psi, f, window, -r, r);
    if lats.iter().any(Lattice::touches_boundary) {
        return Err(AsfError::WindowTooSmall { window });
    }
    Ok(lats)
}

/// The monomial lattice spanned by `s^v`, `v ∈ vals`, in the given window.
pub(crate) fn monomial(n: usize, window: u32, vals: &[i64]) -> Lattice {
    let hi = (n as i64) * window as i64;
    let mut valuations: Vec<i64> = vals.iter().copied().filter(|&v| v < hi).collect();
    valuations.sort();
    let basis = valuations
        .iter()
        .map(|&v| {
            let mut x = vec![0; 2 * hi as usize];
            x[(v + hi) as usize] = 1;
            x
        })
        .collect();
    Lattice { n, window, valuations, basis }
}
