//! Connection matrices, transversality, Kodaira–Spencer compatibility and flatness.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{numerator_degree, reduce_dual, reduce_to_frame, Family, Frame};
use crate::certificate::Certificate;
use crate::error::Result;
use crate::exact::matrix::ExactMatrix;
use crate::exact::polynomial::Polynomial;
use crate::exact::rational::{fmt_rational, rat, Rational};

/// `nabla_G` in a frame: column `i` holds the coordinates of the derivative of
/// frame element `i`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConnectionMatrix {
    pub direction: String,
    pub frame: Frame,
    pub matrix: ExactMatrix,
}

fn columns_to_matrix(cols: Vec<Vec<Rational>>, dim: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(dim, cols.len());
    for (c, col) in cols.into_iter().enumerate() {
        for (r, v) in col.into_iter().enumerate() {
            if !v.is_zero() {
                m.set(r, c, v);
            }
        }
    }
    m
}

/// Derivative of `A * Omega / F^k` along `G`: `-k * A * G * Omega / F^(k+1)`.
fn derivative_numerator(a: &Polynomial, g: &Polynomial, k: u32) -> Polynomial {
    (a * g).scale(&rat(-(k as i64)))
}

fn connection_for(fam: &Family, frame: &Frame, g: &Polynomial) -> Result<ExactMatrix> {
    let ring = fam.ring();
    let cols = frame
        .entries
        .iter()
        .map(|e| {
            let a = Polynomial::monomial(e.numerator.clone());
            reduce_to_frame(ring, frame, &derivative_numerator(&a, g, e.pole), e.pole + 1)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(columns_to_matrix(cols, frame.dim()))
}

pub fn connection_matrix(fam: &Family, direction: usize) -> Result<ConnectionMatrix> {
    let g = fam.direction(direction)?;
    let frame = fam.frame()?;
    let matrix = connection_for(fam, &frame, g)?;
    Ok(ConnectionMatrix { direction: g.to_string(), frame, matrix })
}

/// `nabla` raises the pole order by at most one: entries from pole `k` into
/// pole `> k + 1` vanish.
pub fn transversality_certificate(cm: &ConnectionMatrix) -> Certificate {
    let f = &cm.frame;
    let mut outside = ExactMatrix::zeros(f.dim(), f.dim());
    for (c, ec) in f.entries.iter().enumerate() {
        for (r, er) in f.entries.iter().enumerate() {
            if er.pole > ec.pole + 1 {
                outside.set(r, c, cm.matrix.get(r, c).clone());
            }
        }
    }
    let mut cert = Certificate::new("transversality");
    cert.zero("entries moving the Hodge filtration down by more than one step", "outside", outside);
    cert.note(format!("frame {}x{} with pole orders {:?}", f.dim(), f.dim(), f.poles()));
    cert
}

/// Graded pieces of `nabla_G` from pole `k` to `k + 1`, and multiplication by
/// `other` from `R_{a_k}` to `R_{a_{k+1}}`.
fn graded_blocks(fam: &Family, direction: usize, other: &Polynomial) -> Result<Vec<(u32, ExactMatrix, ExactMatrix)>> {
    let cm = connection_matrix(fam, direction)?;
    let f = &cm.frame;
    let ring = fam.ring();
    let mut out = Vec::new();
    for k in f.poles() {
        let (src, tgt) = (f.block(k), f.block(k + 1));
        if tgt.is_empty() {
            continue;
        }
        let mut block = ExactMatrix::zeros(tgt.len(), src.len());
        for (r, gr) in tgt.clone().enumerate() {
            for (c, gc) in src.clone().enumerate() {
                block.set(r, c, cm.matrix.get(gr, gc).clone());
            }
        }
        let mult = ring.mult_operator(other, numerator_degree(ring, k) as u32)?;
        out.push((k, block, mult));
    }
    Ok(out)
}

/// `block = lambda * mult`, if some scalar works.
fn proportionality(block: &ExactMatrix, mult: &ExactMatrix) -> Option<Rational> {
    let mut lambda: Option<Rational> = None;
    for r in 0..mult.rows() {
        for c in 0..mult.cols() {
            let m = mult.get(r, c);
            if !m.is_zero() && lambda.is_none() {
                lambda = Some(block.get(r, c) / m);
            }
        }
    }
    match lambda {
        Some(l) => (block == &mult.scale(&l)).then_some(l),
        None => block.is_zero().then(|| rat(0)),
    }
}

/// The graded piece `Gr_F nabla_G` equals `-k` times multiplication by `G`
/// on `R_{kd-N-1}`, for every pole order `k` with a next step.
pub fn ks_compatibility(fam: &Family, direction: usize) -> Result<Certificate> {
    let g = fam.direction(direction)?.clone();
    ks_compatibility_against(fam, direction, &g)
}

/// As [`ks_compatibility`] but compares with multiplication by `other`; used
/// as a negative control.
pub fn ks_compatibility_against(fam: &Family, direction: usize, other: &Polynomial) -> Result<Certificate> {
    let mut cert = Certificate::new("Kodaira-Spencer compatibility");
    for (k, block, mult) in graded_blocks(fam, direction, other)? {
        let expected = rat(-(k as i64));
        let scaled = mult.scale(&expected);
        match proportionality(&block, &mult) {
            Some(l) if !mult.is_zero() => {
                cert.note(format!("pole {k} -> {}: scalar {}", k + 1, fmt_rational(&l)));
            }
            Some(_) => {
                cert.note(format!("pole {k} -> {}: both maps vanish", k + 1));
            }
            None => {
                cert.note(format!("pole {k} -> {}: not proportional", k + 1));
            }
        }
        cert.matrices_equal(
            format!("Gr nabla from pole {k} equals {} * multiplication", -(k as i64)),
            (format!("gr_{k}"), block),
            (format!("mult_{k}"), scaled),
        );
    }
    Ok(cert)
}

/// The scalar relating the first graded piece to multiplication, if one exists.
pub fn ks_scalar(fam: &Family, direction: usize) -> Result<Option<Rational>> {
    let g = fam.direction(direction)?.clone();
    let blocks = graded_blocks(fam, direction, &g)?;
    Ok(blocks.into_iter().find(|b| !b.2.is_zero()).and_then(|(_, b, m)| proportionality(&b, &m)))
}

/// Zero curvature of the two-parameter family `F + s G_u + t G_v`:
/// `d_v M_u + M_v M_u = d_u M_v + M_u M_v`, and both equal the direct
/// reduction of the mixed second derivative
/// `k (k+1) A G_u G_v Omega / F^(k+2)`. The parameter derivatives of the
/// connection matrices are computed over the dual numbers.
pub fn flatness_certificate(fam: &Family, u: usize, v: usize) -> Result<Certificate> {
    let ring = fam.ring();
    let frame = fam.frame()?;
    let (gu, gv) = (fam.direction(u)?.clone(), fam.direction(v)?.clone());
    let zero = Polynomial::zero(gu.n_vars());
    let mut mu = Vec::new();
    let mut mv = Vec::new();
    let mut du_mv = Vec::new();
    let mut dv_mu = Vec::new();
    let mut direct = Vec::new();
    for e in &frame.entries {
        let a = Polynomial::monomial(e.numerator.clone());
        let (m0, m1) = reduce_dual(ring, &frame, &derivative_numerator(&a, &gu, e.pole), &zero, e.pole + 1, &gv)?;
        mu.push(m0);
        dv_mu.push(m1);
        let (n0, n1) = reduce_dual(ring, &frame, &derivative_numerator(&a, &gv, e.pole), &zero, e.pole + 1, &gu)?;
        mv.push(n0);
        du_mv.push(n1);
        let k = e.pole as i64;
        let second = (&(&a * &gu) * &gv).scale(&rat(k * (k + 1)));
        direct.push(reduce_to_frame(ring, &frame, &second, e.pole + 2)?);
    }
    let dim = frame.dim();
    let (mu, mv) = (columns_to_matrix(mu, dim), columns_to_matrix(mv, dim));
    let lhs = columns_to_matrix(dv_mu, dim).add(&mv.mul(&mu));
    let rhs = columns_to_matrix(du_mv, dim).add(&mu.mul(&mv));
    let direct = columns_to_matrix(direct, dim);
    let mut cert = Certificate::new("flatness");
    cert.matrices_equal("d_v M_u + M_v M_u = d_u M_v + M_u M_v", ("curvature_uv".into(), lhs.clone()), ("curvature_vu".into(), rhs));
    cert.matrices_equal("connection route equals direct second-derivative reduction", ("curvature_uv".into(), lhs), ("direct".into(), direct));
    Ok(cert)
}
