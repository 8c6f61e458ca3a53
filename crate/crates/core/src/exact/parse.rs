//! Text grammar for polynomials: variables `x0`..`xN`, integer or `a/b`
//! coefficients, operators `+ - * ^` and parentheses. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use super::polynomial::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => { out.push((i, Tok::Plus)); i += 1 }
            b'-' => { out.push((i, Tok::Minus)); i += 1 }
            b'*' => { out.push((i, Tok::Star)); i += 1 }
            b'/' => { out.push((i, Tok::Slash)); i += 1 }
            b'^' => { out.push((i, Tok::Caret)); i += 1 }
            b'(' => { out.push((i, Tok::LParen)); i += 1 }
            b')' => { out.push((i, Tok::RParen)); i += 1 }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(s[start..i].parse().unwrap())));
            }
            b'x' => {
                let start = i;
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(err(start, "expected variable index after 'x'"));
                }
                let idx = s[ds..i].parse().map_err(|_| err(start, "variable index too large"))?;
                out.push((start, Tok::Var(idx)));
            }
            _ => return Err(err(i, format!("unexpected character {:?}", c as char))),
        }
    }
    Ok(out)
}

#[derive(Debug)]
enum Ast {
    Const(Rational),
    Var(usize),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.here();
            match self.toks.get(self.pos).map(|(_, t)| t.clone()) {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = u32::try_from(n).map_err(|_| err(at, "exponent too large"))?;
                    return Ok(Ast::Pow(Box::new(base), e));
                }
                _ => return Err(err(at, "expected a natural-number exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        let at = self.here();
        match self.toks.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let dat = self.here();
                    match self.toks.get(self.pos).map(|(_, t)| t.clone()) {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            Ok(Ast::Const(Rational::new(n, d)))
                        }
                        Some(Tok::Num(_)) => Err(err(dat, "zero denominator")),
                        _ => Err(err(dat, "expected a denominator")),
                    }
                } else {
                    Ok(Ast::Const(Rational::from_integer(n)))
                }
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(Ast::Var(i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(err(self.here(), "expected ')'")),
                }
            }
            Some(t) => Err(err(at, format!("unexpected token {t:?}"))),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

fn max_var(a: &Ast) -> Option<usize> {
    match a {
        Ast::Const(_) => None,
        Ast::Var(i) => Some(*i),
        Ast::Add(x, y) | Ast::Sub(x, y) | Ast::Mul(x, y) => max_var(x).max(max_var(y)),
        Ast::Neg(x) | Ast::Pow(x, _) => max_var(x),
    }
}

fn eval(a: &Ast, n: usize) -> Polynomial {
    match a {
        Ast::Const(c) => Polynomial::constant(n, c.clone()),
        Ast::Var(i) => Polynomial::var(n, *i),
        Ast::Add(x, y) => &eval(x, n) + &eval(y, n),
        Ast::Sub(x, y) => &eval(x, n) - &eval(y, n),
        Ast::Mul(x, y) => &eval(x, n) * &eval(y, n),
        Ast::Neg(x) => -&eval(x, n),
        Ast::Pow(x, e) => eval(x, n).pow(*e),
    }
}

/// Largest variable index mentioned in `s`, if any.
pub fn max_variable_index(s: &str) -> Result<Option<usize>> {
    let toks = tokenize(s)?;
    Ok(toks.iter().filter_map(|(_, t)| if let Tok::Var(i) = t { Some(*i) } else { None }).max())
}

/// Parses `s` as a polynomial in `n_vars` variables. Without `n_vars` the
/// variable count is one more than the largest index used.
pub fn parse_polynomial(s: &str, n_vars: Option<usize>) -> Result<Polynomial> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, end: s.len() };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.here(), "trailing input"));
    }
    let used = max_var(&ast).map_or(0, |i| i + 1);
    let n = match n_vars {
        Some(n) if used > n => {
            return Err(err(0, format!("variable x{} out of range for {n} variables", used - 1)))
        }
        Some(n) => n,
        None => used.max(1),
    };
    Ok(eval(&ast, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;

    #[test]
    fn grammar_example() {
        let f = parse_polynomial("x0^3 + x1^3 - 3*x0*x1*x2", None).unwrap();
        assert_eq!(f.n_vars(), 3);
        assert_eq!(f.len(), 3);
        assert_eq!(f.homogeneous_degree(), Some(3));
    }

    #[test]
    fn rationals_and_whitespace() {
        let f = parse_polynomial(" 1/2 * x0 ^ 2 -2/4*x1*x1 ", Some(2)).unwrap();
        let m = crate::exact::monomial::Monomial::new(vec![0, 2]);
        assert_eq!(f.coeff(&m), frac(-1, 2));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_polynomial("x0 + + ", None), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x0 $ x1", None), Err(Error::Parse { pos: 3, .. })));
        assert!(parse_polynomial("x5", Some(3)).is_err());
        assert!(parse_polynomial("1/0*x0", None).is_err());
        assert!(parse_polynomial("(x0 + x1", None).is_err());
    }

    #[test]
    fn parentheses_expand() {
        let a = parse_polynomial("(x0 + x1)^2", None).unwrap();
        let b = parse_polynomial("x0^2 + 2*x0*x1 + x1^2", None).unwrap();
        assert_eq!(a, b);
    }
}
