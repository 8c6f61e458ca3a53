use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial in `x0..xN`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// `x0`, then `x1`, and so on. Listings produced by [`mono_basis`] start from
/// the largest monomial (`x0^d`) and end with the smallest (`xN^d`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    /// Lowers the exponent of `x_i` by one, if positive.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    /// Restriction to the first `n` variables; `None` if a dropped variable occurs.
    pub fn truncate(&self, n: usize) -> Option<Monomial> {
        if self.0[n..].iter().any(|&e| e > 0) {
            return None;
        }
        Some(Monomial(self.0[..n].to_vec()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All monomials of total degree `degree` in `n_vars` variables, largest first.
pub fn mono_basis(n_vars: usize, degree: u32) -> Vec<Monomial> {
    assert!(n_vars >= 1, "mono_basis needs at least one variable");
    let mut out = Vec::new();
    let mut current = vec![0u32; n_vars];
    fill(&mut current, 0, degree, &mut out);
    out
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::binomial;

    #[test]
    fn basis_counts() {
        assert_eq!(mono_basis(7, 2).len(), 28);
        assert_eq!(mono_basis(7, 5).len(), 462);
        assert_eq!(mono_basis(1, 9).len(), 1);
        assert_eq!(mono_basis(3, 0).len(), 1);
        for n in 1..6 {
            for d in 0..6 {
                assert_eq!(mono_basis(n, d).len() as u64, binomial(d as u64 + n as u64 - 1, n as u64 - 1));
            }
        }
    }

    #[test]
    fn basis_is_strictly_decreasing() {
        let b = mono_basis(4, 3);
        assert!(b.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(b[0].exponents(), &[3, 0, 0, 0]);
        assert_eq!(b.last().unwrap().exponents(), &[0, 0, 0, 3]);
    }

    #[test]
    fn degree_dominates_lex() {
        let a = Monomial::new(vec![0, 0, 2]);
        let b = Monomial::new(vec![1, 0, 0]);
        assert!(a > b);
    }
}
