use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::rational::{fmt_rational, rat, Rational};

/// Multivariate polynomial over the rationals in a fixed number of variables.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Self {
        Polynomial { n_vars, terms: BTreeMap::new() }
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, rat(1))
    }

    pub fn constant(n_vars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(n_vars), c)
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        Self::term(Monomial::var(n_vars, i), rat(1))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let n_vars = m.n_vars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { n_vars, terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, rat(1))
    }

    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(n_vars);
        for (m, c) in terms {
            assert_eq!(m.n_vars(), n_vars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the smallest monomial to the largest.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The common degree of all terms; `None` for the zero polynomial or a
    /// non-homogeneous one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n_vars);
        }
        Polynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.n_vars, "variable index {var} out of range");
        let mut out = Polynomial::zero(self.n_vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            out.add_term(m.div_var(var).unwrap(), c * rat(e as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.n_vars).map(|i| self.partial_derivative(i)).collect()
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.n_vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `x_i := images[i]` for every variable.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.n_vars);
        let target_vars = images.first().map_or(self.n_vars, Polynomial::n_vars);
        let mut out = Polynomial::zero(target_vars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target_vars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Sets `x_var := 0` and drops that variable, which must be the last one.
    pub fn restrict_last_to_zero(&self) -> Polynomial {
        let n = self.n_vars - 1;
        Polynomial::from_terms(
            n,
            self.terms
                .iter()
                .filter_map(|(m, c)| m.truncate(n).map(|t| (t, c.clone()))),
        )
    }

    /// Exact division by `x_var`; `None` unless every term contains it.
    pub fn divide_by_var(&self, var: usize) -> Option<Polynomial> {
        let mut out = Polynomial::zero(self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m.div_var(var)?, c.clone());
        }
        Some(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&rat(-1))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = Polynomial::zero(self.n_vars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `x0^d + ... + xN^d`.
pub fn fermat(n_vars: usize, degree: u32) -> Polynomial {
    Polynomial::from_terms(
        n_vars,
        (0..n_vars).map(|i| {
            let mut e = vec![0; n_vars];
            e[i] = degree;
            (Monomial::new(e), rat(1))
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, Some(3)).unwrap()
    }

    #[test]
    fn partials() {
        assert_eq!(p("x0^3").partial_derivative(0), p("3*x0^2"));
        assert!(p("x0^3").partial_derivative(1).is_zero());
        assert_eq!(p("x0*x1*x2").partial_derivative(1), p("x0*x2"));
    }

    #[test]
    fn euler_identity_on_fermat() {
        let f = fermat(4, 3);
        let mut acc = Polynomial::zero(4);
        for j in 0..4 {
            acc = &acc + &(&Polynomial::var(4, j) * &f.partial_derivative(j));
        }
        assert_eq!(acc, f.scale(&rat(3)));
    }

    #[test]
    fn homogeneity() {
        assert_eq!(p("x0^2*x1 - x2^3").homogeneous_degree(), Some(3));
        assert_eq!(p("x0^2 + x1").homogeneous_degree(), None);
        assert_eq!(Polynomial::zero(3).homogeneous_degree(), None);
    }

    #[test]
    fn display_round_trip() {
        let q = p("x0^3 + x1^3 - 3*x0*x1*x2 + 1/2*x2^3");
        assert_eq!(parse_polynomial(&q.to_string(), Some(3)).unwrap(), q);
    }

    #[test]
    fn restriction_and_division() {
        let q = p("x0^3 + x1^2*x2 + x0*x2^2");
        assert_eq!(q.restrict_last_to_zero(), parse_polynomial("x0^3", Some(2)).unwrap());
        assert_eq!(p("x2*x0 + x2^2").divide_by_var(2), Some(p("x0 + x2")));
        assert_eq!(p("x2*x0 + x1").divide_by_var(2), None);
    }
}
