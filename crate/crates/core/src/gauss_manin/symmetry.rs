//! Self-adjointness of `Y`-fixing multiplication operators for the socle pairing.
//!
//! For `u = x_N * Q` the operator `M_u: R_a -> R_{a+3}` with `a = (sigma - 3)/2`
//! (`R_2 -> R_5` for a cubic 5-fold) is paired with `R_a` through the socle.
//! This needs `sigma` odd, i.e. odd-dimensional cubics.
//! The form `B_u(v, w) = socle(NF(u v) * w)` is evaluated in two stages, first
//! reducing `u v`, so its symmetry is a statement about the ring rather than
//! about commutativity of polynomial multiplication.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::exact::matrix::ExactMatrix;
use crate::exact::monomial::mono_basis;
use crate::exact::polynomial::Polynomial;
use crate::exact::rational::{rat, Rational};
use crate::mhs::HypersurfacePair;

/// `x_N * q`.
pub fn y_fixing(pair: &HypersurfacePair, q: &Polynomial) -> Polynomial {
    let n_vars = pair.z().hypersurface().n_vars();
    &Polynomial::var(n_vars, n_vars - 1) * q
}

fn check_direction(pair: &HypersurfacePair, u: &Polynomial) -> Result<u32> {
    let h = pair.z().hypersurface();
    if h.degree() != 3 {
        return Err(Error::Precondition("symmetry certificate is specific to cubic pairs".into()));
    }
    if h.socle_degree() % 2 == 0 {
        return Err(Error::Precondition("symmetry certificate needs an odd-dimensional cubic".into()));
    }
    if u.is_zero() {
        return Ok(h.degree());
    }
    if u.n_vars() != h.n_vars() || u.homogeneous_degree() != Some(h.degree()) {
        return Err(Error::DegreeMismatch(format!("direction {u} must be a form of degree {}", h.degree())));
    }
    if u.divide_by_var(h.n_vars() - 1).is_none() {
        return Err(Error::NotYFixing(format!("{u} is not divisible by x{}", h.n_vars() - 1)));
    }
    Ok(h.degree())
}

/// `B[i][j] = lambda(rep(M_u v_i) * w_j)` where `lambda` reads monomials of `S_sigma`.
fn two_stage_form(
    pair: &HypersurfacePair,
    u: &Polynomial,
    lambda: &dyn Fn(&Polynomial) -> Result<Rational>,
) -> Result<ExactMatrix> {
    let z = pair.z();
    let d = z.hypersurface().degree();
    let sigma = z.hypersurface().socle_degree();
    let a = (sigma - d) / 2;
    let mid = z.piece(a + d)?;
    let right = z.piece(sigma - a - d)?;
    let m = z.mult_operator(u, a)?;
    // L[k][j] = lambda(basis_mid_k * w_j)
    let mut l = ExactMatrix::zeros(mid.dim(), right.dim());
    for k in 0..mid.dim() {
        for j in 0..right.dim() {
            let prod = Polynomial::monomial(mid.basis_monomial(k).mul(right.basis_monomial(j)));
            l.set(k, j, lambda(&prod)?);
        }
    }
    Ok(m.transpose().mul(&l))
}

/// `B_u` for the socle functional.
pub fn symmetry_form(pair: &HypersurfacePair, u: &Polynomial) -> Result<ExactMatrix> {
    check_direction(pair, u)?;
    let z = pair.z();
    z.require_smooth().map_err(|_| Error::SocleUndefined)?;
    two_stage_form(pair, u, &|p| z.socle_value(p))
}

/// Passes iff `B_u` is symmetric for every direction.
pub fn symmetry_certificate(pair: &HypersurfacePair, directions: &[Polynomial]) -> Result<Certificate> {
    let mut cert = Certificate::new("symmetry");
    for (i, u) in directions.iter().enumerate() {
        let b = symmetry_form(pair, u)?;
        cert.symmetric(format!("socle(u v w) symmetric for u = {u}"), format!("B_{i}"), b);
    }
    Ok(cert)
}

/// The same two-stage form with the socle replaced by a seeded random linear
/// functional on `S_sigma` that does not vanish on the Jacobian ideal. The
/// returned certificate is expected to fail, which shows the symmetry test can
/// detect asymmetry.
pub fn symmetry_negative_control(pair: &HypersurfacePair, directions: &[Polynomial], seed: u64) -> Result<Certificate> {
    let z = pair.z();
    let h = z.hypersurface();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: std::collections::HashMap<_, _> = mono_basis(h.n_vars(), h.socle_degree())
        .into_iter()
        .map(|m| (m, rat(rng.gen_range(-5..=5))))
        .collect();
    let lambda = |p: &Polynomial| -> Result<Rational> { Ok(p.terms().map(|(m, c)| c * &weights[m]).sum()) };
    let mut cert = Certificate::new("symmetry negative control");
    for (i, u) in directions.iter().enumerate() {
        check_direction(pair, u)?;
        let b = two_stage_form(pair, u, &lambda)?;
        cert.symmetric(format!("random functional form symmetric for u = {u}"), format!("B_{i}"), b);
    }
    Ok(cert)
}
