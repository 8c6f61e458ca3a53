//! Sparse exact Gaussian elimination.
//!
//! Columns are indexed by priority: a row's pivot is its lowest-index entry.
//! Callers that need a particular pivot preference (for instance "eliminate
//! the smallest monomials first") encode it in the column numbering.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;

/// Sparse vector as `(index, value)` pairs, strictly increasing indices, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_map(m: BTreeMap<usize, Rational>) -> SparseVec {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn axpy(acc: &mut BTreeMap<usize, Rational>, factor: &Rational, v: &[(usize, Rational)]) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(Rational::zero);
        *e += factor * x;
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

/// Row echelon form built incrementally. After [`Echelon::finish`] every pivot
/// row has leading coefficient one and no entries in other pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
    provenance: Option<Vec<SparseVec>>,
}

impl Echelon {
    pub fn new(ncols: usize, track_provenance: bool) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
            provenance: track_provenance.then(Vec::new),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    pub fn pivot_row_of(&self, col: usize) -> Option<&SparseVec> {
        self.pivot_row[col].map(|r| &self.rows[r])
    }

    /// Input-row combination that produced the pivot row of `col`.
    pub fn provenance_of(&self, col: usize) -> Option<&SparseVec> {
        let r = self.pivot_row[col]?;
        self.provenance.as_ref().map(|p| &p[r])
    }

    /// Adds `row` (tagged with `origin` for provenance). Returns whether the rank grew.
    pub fn insert(&mut self, row: &[(usize, Rational)], origin: usize) -> bool {
        let mut acc: BTreeMap<usize, Rational> = row.iter().filter(|(_, v)| !v.is_zero()).cloned().collect();
        let mut prov: BTreeMap<usize, Rational> = BTreeMap::new();
        if self.provenance.is_some() {
            prov.insert(origin, Rational::one());
        }
        loop {
            let Some((&col, _)) = acc.iter().next() else { return false };
            match self.pivot_row[col] {
                Some(r) => {
                    let factor = -acc[&col].clone();
                    axpy(&mut acc, &factor, &self.rows[r]);
                    if let Some(p) = &self.provenance {
                        axpy(&mut prov, &factor, &p[r]);
                    }
                }
                None => {
                    let inv = acc[&col].recip();
                    let new_row: SparseVec = acc.into_iter().map(|(i, v)| (i, v * &inv)).collect();
                    self.pivot_row[col] = Some(self.rows.len());
                    self.rows.push(new_row);
                    if let Some(p) = &mut self.provenance {
                        p.push(prov.into_iter().map(|(i, v)| (i, v * &inv)).collect());
                    }
                    return true;
                }
            }
        }
    }

    /// Back-substitution to reduced echelon form.
    pub fn finish(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r][0].0));
        for r in order {
            let mut acc: BTreeMap<usize, Rational> = self.rows[r].iter().cloned().collect();
            let mut prov: Option<BTreeMap<usize, Rational>> =
                self.provenance.as_ref().map(|p| p[r].iter().cloned().collect());
            let pivot = self.rows[r][0].0;
            let targets: Vec<usize> = acc
                .keys()
                .copied()
                .filter(|&c| c != pivot && self.pivot_row[c].is_some())
                .collect();
            for c in targets {
                let Some(v) = acc.get(&c).cloned() else { continue };
                let o = self.pivot_row[c].unwrap();
                let factor = -v;
                axpy(&mut acc, &factor, &self.rows[o]);
                if let (Some(pm), Some(p)) = (prov.as_mut(), &self.provenance) {
                    axpy(pm, &factor, &p[o]);
                }
            }
            self.rows[r] = acc.into_iter().collect();
            if let (Some(pm), Some(p)) = (prov, self.provenance.as_mut()) {
                p[r] = pm.into_iter().collect();
            }
        }
    }

    /// Remainder of `v` after eliminating all pivot columns (requires `finish`).
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = v.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        let pivots: Vec<usize> = acc.keys().copied().filter(|&c| self.pivot_row[c].is_some()).collect();
        for c in pivots {
            let Some(x) = acc.get(&c).cloned() else { continue };
            let r = self.pivot_row[c].unwrap();
            axpy(&mut acc, &(-x), &self.rows[r]);
        }
        acc.into_iter().collect()
    }
}

/// Rank of a set of sparse rows over `ncols` columns.
pub fn sparse_rank(rows: &[SparseVec], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols, false);
    for (i, r) in rows.iter().enumerate() {
        e.insert(r, i);
        if e.rank() == ncols {
            break;
        }
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn sv(v: &[(usize, i64)]) -> SparseVec {
        v.iter().map(|&(i, x)| (i, rat(x))).collect()
    }

    #[test]
    fn reduced_form_and_provenance() {
        let rows = [sv(&[(0, 1), (1, 2), (2, 3)]), sv(&[(1, 1), (2, 1)]), sv(&[(0, 1), (1, 3), (2, 4)])];
        let mut e = Echelon::new(3, true);
        for (i, r) in rows.iter().enumerate() {
            e.insert(r, i);
        }
        assert_eq!(e.rank(), 2);
        e.finish();
        let r0 = e.pivot_row_of(0).unwrap().clone();
        assert_eq!(r0, sv(&[(0, 1), (2, 1)]));
        let prov = e.provenance_of(0).unwrap();
        let mut combo = vec![rat(0); 3];
        for (g, c) in prov {
            for (i, x) in &rows[*g] {
                combo[*i] += c * x;
            }
        }
        assert_eq!(combo, vec![rat(1), rat(0), rat(1)]);
        assert_eq!(e.reduce(&sv(&[(0, 2), (2, 5)])), sv(&[(2, 3)]));
    }

    #[test]
    fn rank_matches_dense() {
        use crate::exact::matrix::ExactMatrix;
        let dense = ExactMatrix::from_i64(&[&[1, 2, 0, 1], &[0, 1, 1, 0], &[1, 3, 1, 1], &[2, 0, 0, 5]]);
        let rows: Vec<SparseVec> = (0..4)
            .map(|r| dense.row(r).iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        assert_eq!(sparse_rank(&rows, 4), dense.rank());
    }
}
