//! Griffiths–Dwork reduction and the Gauss–Manin connection on primitive
//! middle cohomology of hypersurfaces.
//!
//! A class is written `A * Omega / F^k` with `deg A = k*d - N - 1`. When
//! `A = sum_j A_j dF/dx_j` the identity
//! `A * Omega / F^k = (1/(k-1)) * (sum_j dA_j/dx_j) * Omega / F^(k-1)` (modulo
//! exact forms) lowers the pole order. The frame is the quotient basis of
//! `R_{k*d - N - 1}` at each pole order `k`; pole order `k` spans
//! `F^{n+1-k}` modulo `F^{n+2-k}`.

mod connection;
mod picard_fuchs;
mod symmetry;

pub use connection::{
    connection_matrix, flatness_certificate, ks_compatibility, ks_compatibility_against, ks_scalar, transversality_certificate,
    ConnectionMatrix,
};
pub use picard_fuchs::{discriminant, picard_fuchs, picard_fuchs_at, PicardFuchs};
pub use symmetry::{symmetry_certificate, symmetry_negative_control, symmetry_form, y_fixing};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::monomial::Monomial;
use crate::exact::polynomial::Polynomial;
use crate::exact::rational::{rat, Rational};
use crate::jacobian::JacobianRing;

/// `numerator * Omega / F^pole_order`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueClass {
    pub numerator: Polynomial,
    pub pole_order: u32,
}

impl ResidueClass {
    pub fn new(ring: &JacobianRing, numerator: Polynomial, pole_order: u32) -> Result<Self> {
        if pole_order == 0 {
            return Err(Error::Precondition("pole order must be at least 1".into()));
        }
        let want = numerator_degree(ring, pole_order);
        if !numerator.is_zero() && numerator.homogeneous_degree().map(i64::from) != Some(want) {
            return Err(Error::DegreeMismatch(format!(
                "numerator at pole order {pole_order} must have degree {want}"
            )));
        }
        Ok(ResidueClass { numerator, pole_order })
    }
}

/// `k*d - N - 1`.
pub fn numerator_degree(ring: &JacobianRing, k: u32) -> i64 {
    let h = ring.hypersurface();
    k as i64 * h.degree() as i64 - h.n_vars() as i64
}

/// `(1/(k-1)) * sum_j dC_j/dx_j`.
pub fn lower_pole(cofactors: &[Polynomial], k: u32) -> Polynomial {
    assert!(k >= 2, "no pole order below 1");
    let n = cofactors[0].n_vars();
    let mut out = Polynomial::zero(n);
    for (j, c) in cofactors.iter().enumerate() {
        out = &out + &c.partial_derivative(j);
    }
    out.scale(&Rational::new(1.into(), (k as i64 - 1).into()))
}

/// Lowers the pole order while the numerator lies in the Jacobian ideal.
pub fn reduce_pole(ring: &JacobianRing, class: &ResidueClass) -> Result<ResidueClass> {
    ring.require_smooth()?;
    let mut c = ResidueClass::new(ring, class.numerator.clone(), class.pole_order)?;
    loop {
        if c.numerator.is_zero() {
            return Ok(ResidueClass { numerator: c.numerator, pole_order: 1 });
        }
        let piece = ring.piece_with_cofactors(numerator_degree(ring, c.pole_order) as u32)?;
        let (coords, cof) = piece.decompose(&c.numerator)?;
        if coords.iter().any(|x| !x.is_zero()) || c.pole_order == 1 {
            return Ok(c);
        }
        c = ResidueClass { numerator: lower_pole(&cof, c.pole_order), pole_order: c.pole_order - 1 };
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameEntry {
    pub pole: u32,
    pub numerator: Monomial,
}

/// Ordered basis of primitive `H^n`, by increasing pole order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub entries: Vec<FrameEntry>,
}

impl Frame {
    /// Fails on singular input, where the ring dimensions leave the Hilbert oracle.
    pub fn standard(ring: &JacobianRing) -> Result<Self> {
        ring.require_smooth()?;
        let sigma = ring.hypersurface().socle_degree() as i64;
        let mut entries = Vec::new();
        for k in 1.. {
            let deg = numerator_degree(ring, k);
            if deg > sigma {
                break;
            }
            if deg < 0 {
                continue;
            }
            for m in ring.piece(deg as u32)?.basis_monomials() {
                entries.push(FrameEntry { pole: k, numerator: m });
            }
        }
        Ok(Frame { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn poles(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.entries.iter().map(|e| e.pole).collect();
        p.dedup();
        p
    }

    /// Index range of the entries with the given pole order.
    pub fn block(&self, pole: u32) -> std::ops::Range<usize> {
        let start = self.entries.iter().position(|e| e.pole == pole).unwrap_or(0);
        let len = self.entries.iter().filter(|e| e.pole == pole).count();
        start..start + len
    }
}

/// Reduces `(b0 + eps * b1) * Omega / (F + eps * H)^k` over `Q[eps]/(eps^2)` to
/// frame coordinates `(c0, c1)`. The frame at `F + eps * H` keeps the same
/// numerators. With `H = 0` and `b1 = 0` this is plain reduction.
pub(crate) fn reduce_dual(
    ring: &JacobianRing,
    frame: &Frame,
    b0: &Polynomial,
    b1: &Polynomial,
    k: u32,
    h: &Polynomial,
) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let dh: Vec<Polynomial> = if h.is_zero() { Vec::new() } else { h.gradient() };
    let mut c0 = vec![Rational::zero(); frame.dim()];
    let mut c1 = vec![Rational::zero(); frame.dim()];
    let (mut b0, mut b1, mut k) = (b0.clone(), b1.clone(), k);
    while k >= 1 && !(b0.is_zero() && b1.is_zero()) {
        let deg = numerator_degree(ring, k);
        if deg < 0 {
            return Err(Error::DegreeMismatch(format!("nonzero numerator at pole order {k}")));
        }
        let piece = ring.piece_with_cofactors(deg as u32)?;
        let (x0, cof0) = piece.decompose(&b0)?;
        let mut rest = b1;
        for (c, g) in cof0.iter().zip(&dh) {
            if !c.is_zero() {
                rest = &rest - &(c * g);
            }
        }
        let (x1, cof1) = piece.decompose(&rest)?;
        let block = frame.block(k);
        for (i, (a, b)) in block.zip(x0.into_iter().zip(x1)) {
            c0[i] += a;
            c1[i] += b;
        }
        if k == 1 {
            if cof0.iter().chain(&cof1).any(|c| !c.is_zero()) {
                return Err(Error::Precondition("Jacobian ideal part at pole order 1".into()));
            }
            break;
        }
        b0 = lower_pole(&cof0, k);
        b1 = lower_pole(&cof1, k);
        k -= 1;
    }
    Ok((c0, c1))
}

/// Frame coordinates of `b * Omega / F^k`.
pub fn reduce_to_frame(ring: &JacobianRing, frame: &Frame, b: &Polynomial, k: u32) -> Result<Vec<Rational>> {
    let zero = Polynomial::zero(b.n_vars());
    Ok(reduce_dual(ring, frame, b, &zero, k, &zero)?.0)
}

/// A base hypersurface with first-order directions `F + sum t_i G_i`.
#[derive(Debug)]
pub struct Family {
    ring: JacobianRing,
    directions: Vec<Polynomial>,
}

impl Family {
    /// Smoothness is certified at the base point only.
    pub fn new(base: Polynomial, directions: Vec<Polynomial>) -> Result<Self> {
        let ring = JacobianRing::from_polynomial(base)?;
        ring.require_smooth()?;
        let h = ring.hypersurface();
        for g in &directions {
            if g.n_vars() != h.n_vars() {
                return Err(Error::DegreeMismatch(format!("direction {g} has the wrong number of variables")));
            }
            if !g.is_zero() && g.homogeneous_degree() != Some(h.degree()) {
                return Err(Error::DegreeMismatch(format!("direction {g} must be a form of degree {}", h.degree())));
            }
        }
        Ok(Family { ring, directions })
    }

    pub fn ring(&self) -> &JacobianRing {
        &self.ring
    }

    pub fn base(&self) -> &Polynomial {
        self.ring.hypersurface().polynomial()
    }

    pub fn directions(&self) -> &[Polynomial] {
        &self.directions
    }

    pub fn direction(&self, i: usize) -> Result<&Polynomial> {
        self.directions
            .get(i)
            .ok_or_else(|| Error::Precondition(format!("family has {} directions, index {i} requested", self.directions.len())))
    }

    pub fn frame(&self) -> Result<Frame> {
        Frame::standard(&self.ring)
    }
}

/// `(a)_m = a (a+1) ... (a+m-1)`.
pub(crate) fn rising(a: u32, m: u32) -> Rational {
    (0..m).fold(rat(1), |acc, i| acc * rat((a + i) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::polynomial::fermat;

    #[test]
    fn frame_shapes() {
        let r = JacobianRing::from_polynomial(fermat(7, 3)).unwrap();
        let f = Frame::standard(&r).unwrap();
        assert_eq!(f.dim(), 42);
        assert_eq!(f.poles(), vec![3, 4]);
        assert_eq!(f.block(4), 21..42);
        let q = JacobianRing::from_polynomial(fermat(5, 5)).unwrap();
        assert_eq!(Frame::standard(&q).unwrap().dim(), 204);
        let c = JacobianRing::from_polynomial(fermat(3, 3)).unwrap();
        assert_eq!(Frame::standard(&c).unwrap().poles(), vec![1, 2]);
    }

    #[test]
    fn reduce_pole_examples() {
        let r = JacobianRing::from_polynomial(fermat(7, 3)).unwrap();
        let zero = ResidueClass::new(&r, Polynomial::zero(7), 4).unwrap();
        assert_eq!(reduce_pole(&r, &zero).unwrap().pole_order, 1);
        // x0 * dF/dx0 * (degree 2) at pole 4: numerator degree 5
        let x = |i| Polynomial::var(7, i);
        let a = &(&x(0) * &r.hypersurface().partials()[0]) * &(&x(1) * &x(2));
        let red = reduce_pole(&r, &ResidueClass::new(&r, a, 4).unwrap()).unwrap();
        assert_eq!(red.pole_order, 3);
        let live = Polynomial::monomial(r.piece(5).unwrap().basis_monomial(0).clone());
        let same = ResidueClass::new(&r, live, 4).unwrap();
        assert_eq!(reduce_pole(&r, &same).unwrap(), same);
        assert!(ResidueClass::new(&r, x(0), 4).is_err());
    }

    #[test]
    fn cofactor_syzygies_do_not_matter() {
        let f = crate::samples::random_smooth_cubic(4, 2);
        let r = JacobianRing::from_polynomial(f.clone()).unwrap();
        let frame = Frame::standard(&r).unwrap();
        // pole 3: numerator degree 5
        let piece = r.piece_with_cofactors(5).unwrap();
        let b = crate::exact::parse::parse_polynomial("x0^5 + 2*x1^2*x2^3 - x0*x1*x2*x3^2 + x3^5", Some(4)).unwrap();
        let (_, cof) = piece.decompose(&b).unwrap();
        let g = f.gradient();
        let a = crate::exact::parse::parse_polynomial("x1 - 3*x3", Some(4)).unwrap();
        let mut shifted = cof.clone();
        shifted[0] = &shifted[0] + &(&a * &g[2]);
        shifted[2] = &shifted[2] - &(&a * &g[0]);
        let lhs = reduce_to_frame(&r, &frame, &lower_pole(&cof, 3), 2).unwrap();
        let rhs = reduce_to_frame(&r, &frame, &lower_pole(&shifted, 3), 2).unwrap();
        assert_eq!(lhs, rhs);
    }
}
