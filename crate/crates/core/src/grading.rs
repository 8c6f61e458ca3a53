//! Torus weights that a polynomial is homogeneous for.
//!
//! For a polynomial with support `A`, let `L` be the lattice spanned by the
//! differences `a - b` of exponent vectors in `A`. Every monomial `m` gets the
//! weight `m + L` in `Z^n / L`. Multiplying by the polynomial, by any of its
//! partial derivatives after re-adding the variable, or reducing modulo it all
//! preserve weights, so the linear algebra splits into independent blocks.

use crate::exact::polynomial::Polynomial;

/// Canonical representatives of `Z^n / L`.
#[derive(Clone, Debug)]
pub struct WeightLattice {
    n: usize,
    /// Hermite normal form rows: `(pivot column, row)`, pivots increasing.
    basis: Vec<(usize, Vec<i64>)>,
}

pub type Weight = Vec<i64>;

impl WeightLattice {
    pub fn trivial(n: usize) -> Self {
        WeightLattice { n, basis: Vec::new() }
    }

    pub fn from_generators(n: usize, gens: &[Vec<i64>]) -> Self {
        let mut rows: Vec<Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
        let mut basis = Vec::new();
        let mut col = 0;
        while col < n && !rows.is_empty() {
            loop {
                rows.retain(|r| r.iter().any(|&x| x != 0));
                let mut with: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
                if with.len() <= 1 {
                    break;
                }
                with.sort_by_key(|&i| rows[i][col].abs());
                let p = with[0];
                let pivot = rows[p].clone();
                for &i in &with[1..] {
                    let q = rows[i][col].div_euclid(pivot[col]);
                    for k in 0..n {
                        rows[i][k] -= q * pivot[k];
                    }
                }
            }
            if let Some(i) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
                let mut r = rows.remove(i);
                if r[col] < 0 {
                    r.iter_mut().for_each(|x| *x = -*x);
                }
                basis.push((col, r));
            }
            col += 1;
        }
        // reduce entries above each pivot into [0, pivot)
        for k in 0..basis.len() {
            let (c, ref piv) = basis[k].clone();
            for j in 0..k {
                let q = basis[j].1[c].div_euclid(piv[c]);
                if q != 0 {
                    for t in 0..n {
                        basis[j].1[t] -= q * piv[t];
                    }
                }
            }
        }
        WeightLattice { n, basis }
    }

    /// The lattice of exponent differences of `f`'s support.
    pub fn of_polynomial(f: &Polynomial) -> Self {
        let exps: Vec<Vec<i64>> = f.terms().map(|(m, _)| m.exponents().iter().map(|&e| e as i64).collect()).collect();
        let n = f.n_vars();
        let Some(base) = exps.first() else { return Self::trivial(n) };
        let gens: Vec<Vec<i64>> = exps[1..].iter().map(|e| e.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        Self::from_generators(n, &gens)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn reduce(&self, v: &[i64]) -> Weight {
        assert_eq!(v.len(), self.n);
        let mut v = v.to_vec();
        for (c, row) in &self.basis {
            let q = v[*c].div_euclid(row[*c]);
            if q != 0 {
                for k in 0..self.n {
                    v[k] -= q * row[k];
                }
            }
        }
        v
    }

    pub fn weight_of_exponents(&self, e: &[u32]) -> Weight {
        let v: Vec<i64> = e.iter().map(|&x| x as i64).collect();
        self.reduce(&v)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_polynomial;
    use crate::exact::polynomial::fermat;

    #[test]
    fn fermat_cubic_weights() {
        let l = WeightLattice::of_polynomial(&fermat(3, 3));
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&[3, -3, 0]));
        assert!(!l.contains(&[1, -1, 0]));
        assert_eq!(l.weight_of_exponents(&[4, 0, 0]), l.weight_of_exponents(&[1, 3, 0]));
        assert_ne!(l.weight_of_exponents(&[2, 0, 0]), l.weight_of_exponents(&[1, 1, 0]));
    }

    #[test]
    fn all_terms_share_a_weight() {
        let f = parse_polynomial("x0^3 + 2*x1^3 + x2^3 - 5*x0*x1*x2 + x3^3 + x1*x3^2", None).unwrap();
        let l = WeightLattice::of_polynomial(&f);
        let ws: Vec<_> = f.terms().map(|(m, _)| l.weight_of_exponents(m.exponents())).collect();
        assert!(ws.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn reduction_is_canonical() {
        let l = WeightLattice::from_generators(3, &[vec![2, -2, 0], vec![0, 4, -4], vec![6, 0, -6]]);
        let a = l.reduce(&[5, 1, 7]);
        let b = l.reduce(&[5 + 2 * 3, 1 - 2 * 3 + 4, 7 - 4]);
        assert_eq!(a, b);
    }
}
