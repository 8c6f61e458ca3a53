//! Dimensions `h^q(Z, Omega^p_Z(k))` for a smooth hypersurface `Z` of degree
//! `d` in `P^N`, `n = N - 1`.
//!
//! `Omega^p_Z(k)` is replaced by a finite complex `T` of sums of line bundles
//! on `Z`:
//!
//! * the conormal sequences `0 -> Omega^{q-1}_Z(-d) -> Omega^q_P|Z -> Omega^q_Z -> 0`
//!   give a left resolution by `Omega^{p-j}_P(-jd)|Z`, `j = 0..=p`;
//! * each `Omega^{q}_P` is resolved on the right by the Euler–Koszul complex
//!   `wedge^w V (-w)`, `w = q, q-1, ..., 0`.
//!
//! The summand `(j, I)` with `|I| = w` is `O_Z(k - jd - w)`, basis element
//! `x^a dx_I`, sitting in degree `s = p - 2j - w`. The differential is
//! `iota_E + dF ^`, whose square is `deg(F) * F = 0` on `Z`.
//!
//! Line bundles on `Z` have cohomology only in degrees `0` and `n`:
//! `H^0(O_Z(m)) = A_m` and `H^n(O_Z(m)) = A_{d-N-1-m}^*` with `A = S/(F)`.
//! The hypercohomology spectral sequence therefore has two rows. A higher
//! differential from row `n` to row `0` spans `n + 1` columns, and the complex
//! has `2p + 1` columns, so for `2p <= n` the table is read off the two rows
//! directly. For `2p > n` Serre duality
//! `h^q(Omega^p(k)) = h^{n-q}(Omega^{n-p}(-k))` reduces to the first case.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::monomial::{mono_basis, Monomial};
use crate::exact::polynomial::Polynomial;
use crate::exact::rational::{binomial, binomial_poly, Rational};
use crate::exact::sparse::{Echelon, SparseVec};
use crate::grading::{Weight, WeightLattice};
use crate::jacobian::{Hypersurface, JacobianRing};
use crate::limits;

/// `h^q(P^N, Omega^p(k))` by Bott's formula; at most one nonzero `q`.
pub fn bott_formula(big_n: usize, p: usize, k: i64) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    if p > big_n {
        return out;
    }
    let (n, p_) = (big_n as u64, p as u64);
    if k == 0 {
        out.insert(p, 1);
    } else if k > p as i64 {
        let k = k as u64;
        out.insert(0, binomial(k + n - p_, k) * binomial(k - 1, p_));
    } else if k < p as i64 - big_n as i64 {
        let m = (-k) as u64;
        out.insert(big_n, binomial(m + p_, m) * binomial(m - 1, n - p_));
    }
    out
}

/// `chi(O_Z(m))` for a degree-`d` hypersurface in `P^N`.
fn chi_line_bundle(big_n: usize, d: u32, m: i64) -> i64 {
    binomial_poly(m, big_n as u32) - binomial_poly(m - d as i64, big_n as u32)
}

/// `dim A_m` for `A = S/(F)`.
fn coordinate_ring_dim(n_vars: usize, d: u32, m: i64) -> usize {
    let s = |m: i64| if m < 0 { 0 } else { binomial(m as u64 + n_vars as u64 - 1, n_vars as u64 - 1) as usize };
    s(m) - s(m - d as i64)
}

/// A summand `O_Z(twist)` of the complex, carrying the form `dx_subset`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Summand {
    j: usize,
    subset: Vec<usize>,
    twist: i64,
}

/// Summands of `T` by degree `s`, in a fixed order.
fn summands(n_vars: usize, d: u32, p: usize, k: i64) -> BTreeMap<i64, Vec<Summand>> {
    let mut out: BTreeMap<i64, Vec<Summand>> = BTreeMap::new();
    for j in 0..=p {
        for w in 0..=(p - j).min(n_vars) {
            let s = p as i64 - 2 * j as i64 - w as i64;
            let twist = k - (j as i64) * d as i64 - w as i64;
            for subset in subsets(n_vars, w) {
                out.entry(s).or_default().push(Summand { j, subset, twist });
            }
        }
    }
    out
}

fn subsets(n: usize, w: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, w: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == w {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, w, &mut Vec::new(), &mut out);
    out
}

/// Nonzero entries of `D: T^s -> T^{s+1}` as `(source, target, polynomial)`.
fn differential_entries(h: &Hypersurface, src: &[Summand], tgt: &[Summand]) -> Vec<(usize, usize, Polynomial)> {
    let n_vars = h.n_vars();
    let pos: HashMap<(usize, &[usize]), usize> =
        tgt.iter().enumerate().map(|(i, t)| ((t.j, t.subset.as_slice()), i)).collect();
    let mut out = Vec::new();
    for (a, s) in src.iter().enumerate() {
        // contraction with the Euler field
        for (r, &i) in s.subset.iter().enumerate() {
            let mut rest = s.subset.clone();
            rest.remove(r);
            if let Some(&b) = pos.get(&(s.j, rest.as_slice())) {
                let g = Polynomial::var(n_vars, i);
                out.push((a, b, if r % 2 == 0 { g } else { -&g }));
            }
        }
        // wedge with dF
        if s.j > 0 {
            for i in 0..n_vars {
                if s.subset.contains(&i) {
                    continue;
                }
                let before = s.subset.iter().filter(|&&x| x < i).count();
                let mut more = s.subset.clone();
                more.insert(before, i);
                let part = &h.partials()[i];
                if part.is_zero() {
                    continue;
                }
                if let Some(&b) = pos.get(&(s.j - 1, more.as_slice())) {
                    out.push((a, b, if before % 2 == 0 { part.clone() } else { -part }));
                }
            }
        }
    }
    out
}

/// Normal forms in `A = S/(F)`: monomials not divisible by the leading monomial
/// of `F` form a basis, and division by `F` is exact.
struct CoordinateRing {
    lead: Monomial,
    /// `F = lc * (lead - sum tail)`, so `lead == sum tail` in `A`.
    tail: Vec<(Monomial, Rational)>,
    memo: HashMap<Monomial, Arc<Vec<(Monomial, Rational)>>>,
}

impl CoordinateRing {
    fn new(f: &Polynomial) -> Self {
        let (lead, lc) = f.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let tail = f.terms().filter(|(m, _)| **m != lead).map(|(m, c)| (m.clone(), -(c / &lc))).collect();
        CoordinateRing { lead, tail, memo: HashMap::new() }
    }

    fn is_basis(&self, m: &Monomial) -> bool {
        !self.lead.divides(m)
    }

    fn nf(&mut self, m: &Monomial) -> Arc<Vec<(Monomial, Rational)>> {
        if let Some(r) = self.memo.get(m) {
            return r.clone();
        }
        let res = match self.lead.quotient_of(m) {
            None => vec![(m.clone(), Rational::one())],
            Some(q) => {
                let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
                for (t, c) in self.tail.clone() {
                    for (b, v) in self.nf(&t.mul(&q)).iter() {
                        *acc.entry(b.clone()).or_insert_with(Rational::zero) += &c * v;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            }
        };
        let res = Arc::new(res);
        self.memo.insert(m.clone(), res.clone());
        res
    }

    /// Normal form of `g * m`.
    fn mul_nf(&mut self, g: &Polynomial, m: &Monomial) -> BTreeMap<Monomial, Rational> {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (t, c) in g.terms() {
            for (b, v) in self.nf(&t.mul(m)).iter() {
                *acc.entry(b.clone()).or_insert_with(Rational::zero) += c * v;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        acc
    }

    fn basis(&self, n_vars: usize, m: i64) -> Vec<Monomial> {
        if m < 0 {
            return Vec::new();
        }
        mono_basis(n_vars, m as u32).into_iter().filter(|b| self.is_basis(b)).collect()
    }
}

/// Which cohomology row of the line bundles a rank computation is about.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Row {
    /// Global sections `A_m`.
    Sections,
    /// Top cohomology, handled through the dual spaces `A_{c-m}`.
    Top,
}

struct ComplexData<'a> {
    h: &'a Hypersurface,
    lattice: &'a WeightLattice,
    f_weight: Vec<i64>,
    canonical: i64,
    ring: CoordinateRing,
}

impl ComplexData<'_> {
    fn degree_of(&self, row: Row, s: &Summand) -> i64 {
        match row {
            Row::Sections => s.twist,
            Row::Top => self.canonical - s.twist,
        }
    }

    fn weight(&self, row: Row, s: &Summand, m: &Monomial) -> Weight {
        let sign = if row == Row::Sections { 1 } else { -1 };
        let mut v: Vec<i64> = m.exponents().iter().map(|&e| e as i64).collect();
        for &i in &s.subset {
            v[i] += sign;
        }
        for (x, fw) in v.iter_mut().zip(&self.f_weight) {
            *x += sign * s.j as i64 * fw;
        }
        self.lattice.reduce(&v)
    }

    fn space_dim(&self, row: Row, terms: &[Summand]) -> usize {
        terms.iter().map(|s| coordinate_ring_dim(self.h.n_vars(), self.h.degree(), self.degree_of(row, s))).sum()
    }

    /// Rank of the differential between `src` (degree `s`) and `tgt` (degree `s+1`)
    /// on the given row. On the top row the map computed is the multiplication
    /// map from the `tgt` side to the `src` side, whose transpose is the
    /// differential; the ranks agree.
    fn rank(&mut self, row: Row, src: &[Summand], tgt: &[Summand]) -> Result<usize> {
        let entries = differential_entries(self.h, src, tgt);
        if entries.is_empty() {
            return Ok(0);
        }
        let (from, to): (&[Summand], &[Summand]) = match row {
            Row::Sections => (src, tgt),
            Row::Top => (tgt, src),
        };
        let mut by_from: Vec<Vec<(usize, &Polynomial)>> = vec![Vec::new(); from.len()];
        for (a, b, g) in &entries {
            match row {
                Row::Sections => by_from[*a].push((*b, g)),
                Row::Top => by_from[*b].push((*a, g)),
            }
        }
        let n_vars = self.h.n_vars();
        limits::check("twisted complex term", self.space_dim(row, from).max(self.space_dim(row, to)))?;

        // group source basis elements by weight; target coordinates are indexed
        // lazily inside each block
        let mut blocks: BTreeMap<Weight, Vec<(usize, Monomial)>> = BTreeMap::new();
        for (i, s) in from.iter().enumerate() {
            if by_from[i].is_empty() {
                continue;
            }
            for m in self.ring.basis(n_vars, self.degree_of(row, s)) {
                blocks.entry(self.weight(row, s, &m)).or_default().push((i, m));
            }
        }
        let mut total = 0;
        for (_, elems) in blocks {
            let mut coords: HashMap<(usize, Monomial), usize> = HashMap::new();
            let mut rows: Vec<SparseVec> = Vec::with_capacity(elems.len());
            for (i, m) in elems {
                let mut v: BTreeMap<usize, Rational> = BTreeMap::new();
                for &(b, g) in &by_from[i] {
                    for (mono, c) in self.ring.mul_nf(g, &m) {
                        let next = coords.len();
                        let col = *coords.entry((b, mono)).or_insert(next);
                        *v.entry(col).or_insert_with(Rational::zero) += c;
                    }
                }
                rows.push(v.into_iter().filter(|(_, c)| !c.is_zero()).collect());
            }
            let mut ech = Echelon::new(coords.len(), false);
            for (r, row) in rows.iter().enumerate() {
                ech.insert(row, r);
                if ech.rank() == coords.len() {
                    break;
                }
            }
            total += ech.rank();
        }
        Ok(total)
    }
}

/// Cohomology of the two rows for `2p <= n`.
fn twisted_direct(h: &Hypersurface, p: usize, k: i64) -> Result<BTreeMap<usize, usize>> {
    let n = h.dim();
    debug_assert!(2 * p <= n);
    let terms = summands(h.n_vars(), h.degree(), p, k);
    let lattice = h.weights();
    let f_weight: Vec<i64> = h.polynomial().leading_term().unwrap().0.exponents().iter().map(|&e| e as i64).collect();
    let mut data = ComplexData {
        h,
        lattice,
        f_weight,
        canonical: h.canonical_twist(),
        ring: CoordinateRing::new(h.polynomial()),
    };
    let empty = Vec::new();
    let degrees: Vec<i64> = terms.keys().copied().collect();
    let mut out = BTreeMap::new();
    for row in [Row::Sections, Row::Top] {
        let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
        for &s in &degrees {
            let tgt = terms.get(&(s + 1)).unwrap_or(&empty);
            ranks.insert(s, data.rank(row, &terms[&s], tgt)?);
        }
        for &s in &degrees {
            let dim = data.space_dim(row, &terms[&s]);
            let hs = dim - ranks[&s] - ranks.get(&(s - 1)).copied().unwrap_or(0);
            if hs == 0 {
                continue;
            }
            let q = match row {
                Row::Sections => s,
                Row::Top => s + n as i64,
            };
            if q < 0 || q > n as i64 {
                return Err(Error::Precondition(format!("cohomology in degree {q} outside 0..={n}")));
            }
            *out.entry(q as usize).or_insert(0) += hs;
        }
    }
    Ok(out)
}

/// Nonzero `h^q(Omega^p_Z(k))`, keyed by `q`. Requires a smooth hypersurface.
pub fn twisted_hodge(ring: &JacobianRing, p: usize, k: i64) -> Result<BTreeMap<usize, usize>> {
    ring.require_smooth()?;
    let h = ring.hypersurface();
    let n = h.dim();
    if p > n {
        return Err(Error::Precondition(format!("p = {p} exceeds dim Z = {n}")));
    }
    if 2 * p <= n {
        twisted_direct(h, p, k)
    } else {
        Ok(twisted_direct(h, n - p, -k)?.into_iter().map(|(q, v)| (n - q, v)).collect())
    }
}

/// `chi(Omega^p_Z(k))` from the line-bundle complex, by binomial arithmetic only.
pub fn euler_characteristic(h: &Hypersurface, p: usize, k: i64) -> i64 {
    summands(h.n_vars(), h.degree(), p, k)
        .iter()
        .map(|(s, terms)| {
            let sign = if s.rem_euclid(2) == 0 { 1 } else { -1 };
            sign * terms.iter().map(|t| chi_line_bundle(h.ambient_dim(), h.degree(), t.twist)).sum::<i64>()
        })
        .sum()
}

/// One `(p, k)` column of the table, in the JSON layout `{"p","k","h","chi"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedCell {
    pub p: usize,
    pub k: i64,
    /// Nonzero dimensions keyed by `q`.
    pub h: BTreeMap<usize, usize>,
    pub chi: i64,
}

impl TwistedCell {
    pub fn get(&self, q: usize) -> usize {
        self.h.get(&q).copied().unwrap_or(0)
    }

    pub fn alternating_sum(&self) -> i64 {
        self.h.iter().map(|(q, v)| if q % 2 == 0 { *v as i64 } else { -(*v as i64) }).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedTable {
    pub n: usize,
    pub degree: u32,
    pub cells: Vec<TwistedCell>,
}

impl TwistedTable {
    /// Computes every `(p, k)` with `p` in `ps` and `k` in `ks`.
    pub fn compute(
        ring: &JacobianRing,
        ps: impl IntoIterator<Item = usize>,
        ks: impl IntoIterator<Item = i64> + Clone,
    ) -> Result<Self> {
        let h = ring.hypersurface();
        let mut cells = Vec::new();
        for p in ps {
            for k in ks.clone() {
                cells.push(TwistedCell { p, k, h: twisted_hodge(ring, p, k)?, chi: euler_characteristic(h, p, k) });
            }
        }
        Ok(TwistedTable { n: h.dim(), degree: h.degree(), cells })
    }

    /// All `p` and `k` in `-2d..=3d`.
    pub fn default_range(ring: &JacobianRing) -> Result<Self> {
        let h = ring.hypersurface();
        let d = h.degree() as i64;
        Self::compute(ring, 0..=h.dim(), -2 * d..=3 * d)
    }

    pub fn cell(&self, p: usize, k: i64) -> Option<&TwistedCell> {
        self.cells.iter().find(|c| c.p == p && c.k == k)
    }

    pub fn entry(&self, p: usize, q: usize, k: i64) -> Option<usize> {
        self.cell(p, k).map(|c| c.get(q))
    }

    /// Cells whose alternating sum differs from the Euler characteristic.
    pub fn euler_failures(&self) -> Vec<&TwistedCell> {
        self.cells.iter().filter(|c| c.alternating_sum() != c.chi).collect()
    }

    /// Pairs of computed cells violating `h^q(Omega^p(k)) = h^{n-q}(Omega^{n-p}(-k))`.
    pub fn serre_failures(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for c in &self.cells {
            let Some(dual) = self.cell(self.n - c.p, -c.k) else { continue };
            for q in 0..=self.n {
                if c.get(q) != dual.get(self.n - q) {
                    out.push((c.p, q, c.k));
                }
            }
        }
        out
    }

    /// Entries violating Akizuki–Nakano vanishing (`k > 0`, `p + q > n`).
    pub fn nakano_failures(&self) -> Vec<(usize, usize, i64)> {
        self.cells
            .iter()
            .filter(|c| c.k > 0)
            .flat_map(|c| c.h.iter().filter(|(q, v)| c.p + **q > self.n && **v > 0).map(|(q, _)| (c.p, *q, c.k)))
            .collect()
    }
}

/// Published nonzero `h^q(Omega^p_Z(k))` with `p, q > 0` and `k >= 0` for a
/// smooth cubic 5-fold, keyed by `(p, q, k)`. Everything else in that range is
/// claimed to vanish.
pub fn cubic_fivefold_reference() -> BTreeMap<(usize, usize, i64), usize> {
    let mut out = BTreeMap::new();
    for i in 1..=5 {
        out.insert((i, i, 0), 1);
    }
    for (k, v) in [21, 7, 1].into_iter().enumerate() {
        out.insert((2, 3, k as i64), v);
    }
    for (k, v) in [21, 35, 35, 21, 7, 1].into_iter().enumerate() {
        out.insert((3, 2, k as i64), v);
    }
    for k in 1..=8u64 {
        out.insert((4, 1, k as i64), binomial(7, k - 1) as usize);
    }
    out
}

/// Entries `(p, q, k, claimed, computed)` of the table (restricted to
/// `p, q > 0`, `k >= 0`) that disagree with `reference`.
pub fn compare_with_reference(
    table: &TwistedTable,
    reference: &BTreeMap<(usize, usize, i64), usize>,
) -> Vec<(usize, usize, i64, usize, usize)> {
    let mut out = Vec::new();
    for c in table.cells.iter().filter(|c| c.p > 0 && c.k >= 0) {
        for q in 1..=table.n {
            let claimed = reference.get(&(c.p, q, c.k)).copied().unwrap_or(0);
            if claimed != c.get(q) {
                out.push((c.p, q, c.k, claimed, c.get(q)));
            }
        }
    }
    out
}
