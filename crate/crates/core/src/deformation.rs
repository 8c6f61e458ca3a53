//! Jacobian-ring model of first-order deformations of a cubic pair `(Z, Y)`.
//!
//! Deformations of `Z` fixing `Y` are classified by `H^1(T_Z(-Y))`, and
//! `T_Z(-Y) = Omega^{n-1}_Z(N - 3)` for a cubic (so `Omega^4_Z(3)` for a cubic
//! 5-fold). In the ring model the tangent space is `R_2`, realised by the
//! cubic directions `x_N * Q`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::exact::matrix::ExactMatrix;
use crate::exact::monomial::mono_basis;
use crate::exact::polynomial::Polynomial;
use crate::exact::sparse::{sparse_rank, SparseVec};
use crate::mhs::HypersurfacePair;
use crate::twisted::twisted_hodge;

fn require_cubic(pair: &HypersurfacePair) -> Result<()> {
    if pair.degree() != 3 {
        return Err(Error::Precondition(format!(
            "tangent model specific to cubic pairs (degree {} given)",
            pair.degree()
        )));
    }
    Ok(())
}

/// `(p, k)` with `T_Z(-Y) = Omega^p_Z(k)`.
fn twisted_tangent(pair: &HypersurfacePair) -> (usize, i64) {
    let h = pair.z().hypersurface();
    (h.dim() - 1, -h.canonical_twist() - 1)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TangentModel {
    /// `dim R_2`.
    pub dim: usize,
    /// Quotient-basis monomials of `R_2`.
    pub basis: Vec<String>,
    /// The directions `x_N * Q` for `Q` in the basis.
    pub lift: Vec<String>,
    /// Rank of `x_N * S_2` modulo `x_N * span(dF/dx_j)`.
    pub lift_dim: usize,
    /// Rank of the composite `R_2 -> S_3 -> R_3`, `Q -> x_N * Q`.
    pub lift_rank_in_r3: usize,
    /// `h^1(T_Z(-Y))` from twisted cohomology.
    pub h1_twisted: usize,
}

pub fn tangent_space(pair: &HypersurfacePair) -> Result<TangentModel> {
    require_cubic(pair)?;
    let z = pair.z();
    let h = z.hypersurface();
    let n_vars = h.n_vars();
    let r2 = z.piece(2)?;
    let xn = Polynomial::var(n_vars, n_vars - 1);
    let basis = r2.basis_monomials();
    let lift: Vec<Polynomial> = basis.iter().map(|m| xn.mul_monomial(m)).collect();

    // x_N * S_2 against x_N * span(partials), directly in S_3
    let s3 = mono_basis(n_vars, 3);
    let col = |p: &Polynomial| -> SparseVec {
        let mut v: SparseVec = p.terms().map(|(m, c)| (s3.iter().position(|b| b == m).unwrap(), c.clone())).collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    };
    let redundancy: Vec<SparseVec> = h.partials().iter().map(|g| col(&(&xn * g))).collect();
    let mut all = redundancy.clone();
    all.extend(mono_basis(n_vars, 2).iter().map(|m| col(&xn.mul_monomial(m))));
    let lift_dim = sparse_rank(&all, s3.len()) - sparse_rank(&redundancy, s3.len());

    let lift_rank_in_r3 = z.mult_operator(&xn, 2)?.rank();
    let (p, k) = twisted_tangent(pair);
    let h1_twisted = twisted_hodge(z, p, k)?.get(&1).copied().unwrap_or(0);
    Ok(TangentModel {
        dim: r2.dim(),
        basis: basis.iter().map(ToString::to_string).collect(),
        lift: lift.iter().map(ToString::to_string).collect(),
        lift_dim,
        lift_rank_in_r3,
        h1_twisted,
    })
}

/// Certificate that `h^q(T_Z(-Y)) = 0`; the obstruction space is `q = 2`.
/// Other `q` exist for negative controls.
pub fn obstruction_certificate(pair: &HypersurfacePair, q: usize) -> Result<Certificate> {
    require_cubic(pair)?;
    let (p, k) = twisted_tangent(pair);
    let value = twisted_hodge(pair.z(), p, k)?.get(&q).copied().unwrap_or(0);
    let mut cert = Certificate::new("obstruction");
    cert.equal(format!("h^{q}(Omega^{p}_Z({k})) vanishes"), value, 0);
    Ok(cert)
}

pub fn obstruction_vanishes(pair: &HypersurfacePair) -> Result<Certificate> {
    obstruction_certificate(pair, 2)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KappaImage {
    pub degree: u32,
    pub dim: usize,
    /// Whether the span equals `J_degree` of the Jacobian ring.
    pub equals_jacobian_ideal: bool,
}

/// `span{m * dF/dx_j} + F * S_{degree-d}` inside `S_degree`, computed without
/// the Jacobian-ring machinery and compared with `J_degree`.
pub fn kappa_image(pair: &HypersurfacePair, degree: u32) -> Result<KappaImage> {
    let z = pair.z();
    let h = z.hypersurface();
    let n_vars = h.n_vars();
    let d = h.degree();
    let ambient = mono_basis(n_vars, degree);
    let index: std::collections::HashMap<_, _> = ambient.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let to_row = |p: &Polynomial| -> SparseVec {
        let mut v: SparseVec = p.terms().map(|(m, c)| (index[m], c.clone())).collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    };
    let mut rows = Vec::new();
    if degree + 1 >= d {
        for m in mono_basis(n_vars, degree + 1 - d) {
            for g in h.partials() {
                rows.push(to_row(&g.mul_monomial(&m)));
            }
        }
    }
    let mut f_multiples = Vec::new();
    if degree >= d {
        for m in mono_basis(n_vars, degree - d) {
            let p = h.polynomial().mul_monomial(&m);
            rows.push(to_row(&p));
            f_multiples.push(p);
        }
    }
    let dim = sparse_rank(&rows, ambient.len());
    let piece = z.piece(degree)?;
    let mut equal = dim == piece.ideal_rank();
    for p in &f_multiples {
        equal &= piece.reduce(p)?.iter().all(Zero::is_zero);
    }
    Ok(KappaImage { degree, dim, equals_jacobian_ideal: equal })
}

/// The product `R_0 x R_2 -> R_2` is the identity and the pairing
/// `R_2 x R_5 -> R_7` is nondegenerate (for a cubic 5-fold; in general
/// `R_2 x R_{sigma-2}`).
pub fn jb_certificate(pair: &HypersurfacePair) -> Result<Certificate> {
    require_cubic(pair)?;
    let z = pair.z();
    z.require_smooth()?;
    let n_vars = z.hypersurface().n_vars();
    let dim2 = z.dim(2)?;
    let product = z.mult_operator(&Polynomial::one(n_vars), 2)?;
    let pairing = z.socle_pairing(2)?;
    let mut cert = Certificate::new("contraction isomorphism");
    cert.matrices_equal(
        "R_0 x R_2 -> R_2 is multiplication by the unit",
        ("product".into(), product.clone()),
        ("identity".into(), ExactMatrix::identity(dim2)),
    );
    cert.equal("rank of the product map", product.rank(), dim2);
    cert.equal(
        format!("rank of the pairing R_2 x R_{}", z.hypersurface().socle_degree() - 2),
        pairing.rank(),
        dim2,
    );
    cert.witness("pairing", pairing.matrix);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::polynomial::fermat;

    #[test]
    fn cubic_threefold_pair() {
        // N = 4: T_Z(-Y) = Omega^2_Z(1), tangent space R_2 of dimension 10
        let pair = HypersurfacePair::new(fermat(5, 3)).unwrap();
        let t = tangent_space(&pair).unwrap();
        assert_eq!(t.dim, 10);
        assert_eq!(t.h1_twisted, 10);
        assert_eq!(t.lift_dim, 10);
        assert!(obstruction_vanishes(&pair).unwrap().passed);
        let jb = jb_certificate(&pair).unwrap();
        assert!(jb.passed, "{jb:?}");
    }

    #[test]
    fn kappa_small() {
        let pair = HypersurfacePair::new(fermat(5, 3)).unwrap();
        assert_eq!(kappa_image(&pair, 1).unwrap().dim, 0);
        assert_eq!(kappa_image(&pair, 2).unwrap().dim, 5);
        for d in 2..6 {
            assert!(kappa_image(&pair, d).unwrap().equals_jacobian_ideal);
        }
    }

    #[test]
    fn non_cubic_refused() {
        let pair = HypersurfacePair::new(fermat(5, 4)).unwrap();
        assert!(matches!(tangent_space(&pair), Err(Error::Precondition(_))));
        assert!(matches!(obstruction_vanishes(&pair), Err(Error::Precondition(_))));
    }
}
