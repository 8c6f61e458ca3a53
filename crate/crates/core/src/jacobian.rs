//! Graded pieces of the Jacobian ring `R = Q[x0..xN] / (dF/dx0, ..., dF/dxN)`.
//!
//! Each degree slice is computed by exact elimination on the Macaulay matrix
//! whose rows are `m * dF/dx_j`. Columns are eliminated smallest monomial first,
//! so the surviving (quotient-basis) monomials are the graded-lex-earliest ones
//! whose classes are independent. The computation splits into independent
//! blocks along the torus weights of `F` (see [`crate::grading`]).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::exact::matrix::ExactMatrix;
use crate::exact::monomial::{mono_basis, Monomial};
use crate::exact::polynomial::Polynomial;
use crate::exact::rational::{binomial, rat, Rational};
use crate::exact::sparse::{Echelon, SparseVec};
use crate::grading::{Weight, WeightLattice};
use crate::limits;

/// A projective hypersurface `{F = 0}` in `P^N`, `F` homogeneous of degree `d`.
#[derive(Clone, Debug)]
pub struct Hypersurface {
    f: Polynomial,
    degree: u32,
    partials: Vec<Polynomial>,
    weights: WeightLattice,
}

impl Hypersurface {
    pub fn new(f: Polynomial) -> Result<Self> {
        let degree = f
            .homogeneous_degree()
            .ok_or_else(|| Error::InvalidHypersurface("polynomial is zero or not homogeneous".into()))?;
        if degree < 2 {
            return Err(Error::InvalidHypersurface(format!("degree {degree} < 2")));
        }
        if f.n_vars() < 3 {
            return Err(Error::InvalidHypersurface(format!(
                "{} variables: ambient projective dimension must be at least 2",
                f.n_vars()
            )));
        }
        let partials = f.gradient();
        let weights = WeightLattice::of_polynomial(&f);
        Ok(Hypersurface { f, degree, partials, weights })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.f
    }

    pub fn n_vars(&self) -> usize {
        self.f.n_vars()
    }

    /// `N`, the dimension of the ambient projective space.
    pub fn ambient_dim(&self) -> usize {
        self.n_vars() - 1
    }

    /// `n = N - 1`, the dimension of the hypersurface.
    pub fn dim(&self) -> usize {
        self.n_vars() - 2
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn partials(&self) -> &[Polynomial] {
        &self.partials
    }

    /// `sigma = (N+1)(d-2)`, the degree of the socle of a smooth Jacobian ring.
    pub fn socle_degree(&self) -> u32 {
        self.n_vars() as u32 * (self.degree - 2)
    }

    pub fn weights(&self) -> &WeightLattice {
        &self.weights
    }

    /// `d - N - 1`: the canonical bundle is `O(d - N - 1)`.
    pub fn canonical_twist(&self) -> i64 {
        self.degree as i64 - self.n_vars() as i64
    }
}

/// Coefficients of `((1 - t^(d-1)) / (1 - t))^(N+1)`, the Hilbert series of
/// the Jacobian ring when the partials form a regular sequence.
pub fn hilbert_series_oracle(ambient_dim: usize, degree: u32) -> Vec<u64> {
    assert!(degree >= 2);
    let mut coeffs = vec![1u64];
    let block = (degree - 1) as usize;
    for _ in 0..=ambient_dim {
        let mut next = vec![0u64; coeffs.len() + block - 1];
        for (i, c) in coeffs.iter().enumerate() {
            for k in 0..block {
                next[i + k] += c;
            }
        }
        coeffs = next;
    }
    coeffs
}

fn oracle_at(h: &Hypersurface, degree: u32) -> usize {
    hilbert_series_oracle(h.ambient_dim(), h.degree()).get(degree as usize).copied().unwrap_or(0) as usize
}

/// One generator `monomial * dF/dx_partial` of the Jacobian ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGenerator {
    pub partial: usize,
    pub monomial: Monomial,
}

/// The degree-`degree` slice `R_degree = S_degree / J_degree`.
#[derive(Debug)]
pub struct GradedQuotient {
    degree: u32,
    n_vars: usize,
    ambient: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    generators: Vec<IdealGenerator>,
    ideal_rank: usize,
    quotient_basis: Vec<usize>,
    /// Normal form of each ambient monomial in quotient-basis coordinates.
    normal_forms: Vec<SparseVec>,
    /// For eliminated monomials: `m - NF(m)` as a combination of generators.
    cofactors: Option<Vec<SparseVec>>,
}

impl GradedQuotient {
    pub fn build(h: &Hypersurface, degree: u32, with_cofactors: bool) -> Result<Self> {
        let n = h.n_vars();
        let ambient_count = binomial(degree as u64 + n as u64 - 1, n as u64 - 1) as usize;
        limits::check(format!("degree-{degree} slice of the polynomial ring"), ambient_count)?;
        let ambient = mono_basis(n, degree);
        let index: HashMap<Monomial, usize> = ambient.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

        let mut generators = Vec::new();
        let gen_degree = degree as i64 - (h.degree() as i64 - 1);
        if gen_degree >= 0 {
            let mults = mono_basis(n, gen_degree as u32);
            for (j, p) in h.partials().iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                for m in &mults {
                    generators.push(IdealGenerator { partial: j, monomial: m.clone() });
                }
            }
        }

        // Group ambient monomials and generators by weight.
        let lattice = h.weights();
        let mut blocks: BTreeMap<Weight, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (i, m) in ambient.iter().enumerate() {
            blocks.entry(lattice.weight_of_exponents(m.exponents())).or_default().0.push(i);
        }
        let mut gen_rows: Vec<SparseVec> = Vec::with_capacity(generators.len());
        for (g, gen) in generators.iter().enumerate() {
            let poly = h.partials()[gen.partial].mul_monomial(&gen.monomial);
            let row: SparseVec = poly.terms().map(|(m, c)| (index[m], c.clone())).collect();
            let w = lattice.weight_of_exponents(ambient[row[0].0].exponents());
            blocks.entry(w).or_default().1.push(g);
            gen_rows.push(row);
        }

        let mut normal_forms: Vec<SparseVec> = vec![Vec::new(); ambient.len()];
        let mut cofactors: Option<Vec<SparseVec>> = with_cofactors.then(|| vec![Vec::new(); ambient.len()]);
        let mut is_basis = vec![false; ambient.len()];
        let mut ideal_rank = 0;
        // pivot rows in ambient-index terms, filled after elimination
        let mut eliminated: Vec<(usize, SparseVec)> = Vec::new();

        for (_, (monos, gens)) in blocks {
            // local column 0 = smallest monomial = largest ambient index
            let mut local_of: HashMap<usize, usize> = HashMap::with_capacity(monos.len());
            let mut order = monos.clone();
            order.sort_unstable_by(|a, b| b.cmp(a));
            for (c, &a) in order.iter().enumerate() {
                local_of.insert(a, c);
            }
            let mut ech = Echelon::new(order.len(), with_cofactors);
            for &g in &gens {
                let row: SparseVec = {
                    let mut r: Vec<(usize, Rational)> =
                        gen_rows[g].iter().map(|(a, c)| (local_of[a], c.clone())).collect();
                    r.sort_unstable_by_key(|e| e.0);
                    r
                };
                ech.insert(&row, g);
                if ech.rank() == order.len() && !with_cofactors {
                    break;
                }
            }
            ech.finish();
            ideal_rank += ech.rank();
            for (c, &a) in order.iter().enumerate() {
                match ech.pivot_row_of(c) {
                    None => is_basis[a] = true,
                    Some(row) => {
                        let tail: SparseVec = row[1..].iter().map(|(lc, v)| (order[*lc], v.clone())).collect();
                        eliminated.push((a, tail));
                        if let Some(cf) = cofactors.as_mut() {
                            cf[a] = ech.provenance_of(c).unwrap().clone();
                        }
                    }
                }
            }
        }

        let quotient_basis: Vec<usize> = (0..ambient.len()).filter(|&i| is_basis[i]).collect();
        let coord: HashMap<usize, usize> = quotient_basis.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        for &a in &quotient_basis {
            normal_forms[a] = vec![(coord[&a], rat(1))];
        }
        for (a, tail) in eliminated {
            // pivot row: m + sum tail = m - NF(m)  =>  NF(m) = -sum tail
            let mut nf: SparseVec = tail.into_iter().map(|(b, v)| (coord[&b], -v)).collect();
            nf.sort_unstable_by_key(|e| e.0);
            normal_forms[a] = nf;
        }

        Ok(GradedQuotient {
            degree,
            n_vars: n,
            ambient,
            index,
            generators,
            ideal_rank,
            quotient_basis,
            normal_forms,
            cofactors,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.quotient_basis.len()
    }

    pub fn ambient(&self) -> &[Monomial] {
        &self.ambient
    }

    pub fn ideal_rank(&self) -> usize {
        self.ideal_rank
    }

    pub fn generators(&self) -> &[IdealGenerator] {
        &self.generators
    }

    pub fn has_cofactors(&self) -> bool {
        self.cofactors.is_some()
    }

    /// Monomials representing the basis of `R_degree`, earliest first.
    pub fn basis_monomials(&self) -> Vec<Monomial> {
        self.quotient_basis.iter().map(|&i| self.ambient[i].clone()).collect()
    }

    pub fn basis_monomial(&self, k: usize) -> &Monomial {
        &self.ambient[self.quotient_basis[k]]
    }

    fn check_poly(&self, p: &Polynomial) -> Result<()> {
        if p.n_vars() != self.n_vars {
            return Err(Error::DegreeMismatch(format!("expected {} variables, got {}", self.n_vars, p.n_vars())));
        }
        if !p.is_zero() && p.homogeneous_degree() != Some(self.degree) {
            return Err(Error::DegreeMismatch(format!("expected a form of degree {}, got {p}", self.degree)));
        }
        Ok(())
    }

    /// Coordinates of the class of `p` in the quotient basis.
    pub fn reduce(&self, p: &Polynomial) -> Result<Vec<Rational>> {
        self.check_poly(p)?;
        let mut out = vec![Rational::zero(); self.dim()];
        for (m, c) in p.terms() {
            for (k, v) in &self.normal_forms[self.index[m]] {
                out[*k] += c * v;
            }
        }
        Ok(out)
    }

    pub fn reduce_monomial(&self, m: &Monomial) -> &SparseVec {
        &self.normal_forms[self.index[m]]
    }

    /// `sum coords[k] * basis_monomial(k)`.
    pub fn representative(&self, coords: &[Rational]) -> Polynomial {
        assert_eq!(coords.len(), self.dim());
        Polynomial::from_terms(
            self.n_vars,
            coords.iter().enumerate().map(|(k, c)| (self.basis_monomial(k).clone(), c.clone())),
        )
    }

    /// Splits `p = representative(coords) + sum_j cofactor_j * dF/dx_j`.
    /// Requires a slice built with cofactors.
    pub fn decompose(&self, p: &Polynomial) -> Result<(Vec<Rational>, Vec<Polynomial>)> {
        self.check_poly(p)?;
        let cf = self
            .cofactors
            .as_ref()
            .ok_or_else(|| Error::Precondition("slice was built without cofactors".into()))?;
        let coords = self.reduce(p)?;
        let mut cofactors = vec![Polynomial::zero(self.n_vars); self.n_vars];
        for (m, c) in p.terms() {
            for (g, v) in &cf[self.index[m]] {
                let gen = &self.generators[*g];
                cofactors[gen.partial].add_term(gen.monomial.clone(), c * v);
            }
        }
        Ok((coords, cofactors))
    }
}

/// Outcome of the smoothness test: Hilbert function against the oracle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub smooth: bool,
    /// `(degree, computed dim R_degree, oracle coefficient)` for the degrees examined.
    pub dims: Vec<(u32, usize, usize)>,
    pub first_deviation: Option<u32>,
    pub certificate: Certificate,
}

/// Jacobian ring of a hypersurface with lazily computed, cached graded slices.
#[derive(Debug)]
pub struct JacobianRing {
    h: Hypersurface,
    pieces: Mutex<BTreeMap<u32, Arc<GradedQuotient>>>,
    smoothness: Mutex<Option<SmoothnessReport>>,
}

impl JacobianRing {
    pub fn new(h: Hypersurface) -> Self {
        JacobianRing { h, pieces: Mutex::new(BTreeMap::new()), smoothness: Mutex::new(None) }
    }

    pub fn from_polynomial(f: Polynomial) -> Result<Self> {
        Ok(Self::new(Hypersurface::new(f)?))
    }

    pub fn hypersurface(&self) -> &Hypersurface {
        &self.h
    }

    pub fn piece(&self, degree: u32) -> Result<Arc<GradedQuotient>> {
        if let Some(p) = self.pieces.lock().unwrap().get(&degree) {
            return Ok(p.clone());
        }
        let p = Arc::new(GradedQuotient::build(&self.h, degree, false)?);
        Ok(self.pieces.lock().unwrap().entry(degree).or_insert(p).clone())
    }

    /// Like [`piece`](Self::piece) but guarantees cofactor data for [`GradedQuotient::decompose`].
    pub fn piece_with_cofactors(&self, degree: u32) -> Result<Arc<GradedQuotient>> {
        if let Some(p) = self.pieces.lock().unwrap().get(&degree) {
            if p.has_cofactors() {
                return Ok(p.clone());
            }
        }
        let p = Arc::new(GradedQuotient::build(&self.h, degree, true)?);
        self.pieces.lock().unwrap().insert(degree, p.clone());
        Ok(p)
    }

    pub fn dim(&self, degree: i64) -> Result<usize> {
        if degree < 0 {
            return Ok(0);
        }
        Ok(self.piece(degree as u32)?.dim())
    }

    pub fn hilbert_function(&self, max_degree: u32) -> Result<Vec<usize>> {
        (0..=max_degree).map(|k| self.dim(k as i64)).collect()
    }

    /// Smooth iff `R_{sigma+1} = 0`. Degrees are checked in increasing order
    /// against the regular-sequence Hilbert series; a singular input stops at
    /// the first degree where the dimensions differ.
    pub fn smoothness(&self) -> Result<SmoothnessReport> {
        if let Some(r) = self.smoothness.lock().unwrap().as_ref() {
            return Ok(r.clone());
        }
        let top = self.h.socle_degree() + 1;
        let mut dims = Vec::new();
        let mut first_deviation = None;
        let mut cert = Certificate::new("smoothness");
        for k in 0..=top {
            let found = self.dim(k as i64)?;
            let expected = oracle_at(&self.h, k);
            dims.push((k, found, expected));
            if found != expected {
                first_deviation = Some(k);
                cert.equal(format!("dim R_{k} matches the regular-sequence Hilbert series"), found, expected);
                break;
            }
        }
        if first_deviation.is_none() {
            let last = dims.last().unwrap();
            cert.equal(format!("dim R_{} (sigma + 1) vanishes", last.0), last.1, 0);
            cert.note(format!("Hilbert function {:?}", dims.iter().map(|d| d.1).collect::<Vec<_>>()));
        }
        let report = SmoothnessReport { smooth: first_deviation.is_none(), dims, first_deviation, certificate: cert };
        *self.smoothness.lock().unwrap() = Some(report.clone());
        Ok(report)
    }

    pub fn is_smooth(&self) -> Result<bool> {
        Ok(self.smoothness()?.smooth)
    }

    /// Fails with [`Error::Singular`] unless the hypersurface is smooth.
    pub fn require_smooth(&self) -> Result<()> {
        let r = self.smoothness()?;
        if let Some(k) = r.first_deviation {
            let (_, found, expected) = r.dims.last().copied().unwrap();
            return Err(Error::Singular { degree: k, found, expected });
        }
        Ok(())
    }

    /// Matrix of `v -> u * v` from `R_a` to `R_{a + deg u}` in the quotient bases
    /// (columns indexed by the source basis).
    pub fn mult_operator(&self, u: &Polynomial, a: u32) -> Result<ExactMatrix> {
        let du = if u.is_zero() {
            0
        } else {
            u.homogeneous_degree()
                .ok_or_else(|| Error::DegreeMismatch("multiplier must be homogeneous".into()))?
        };
        let src = self.piece(a)?;
        let tgt = self.piece(a + du)?;
        let mut m = ExactMatrix::zeros(tgt.dim(), src.dim());
        if u.is_zero() {
            return Ok(m);
        }
        for k in 0..src.dim() {
            let prod = u.mul_monomial(src.basis_monomial(k));
            for (r, v) in tgt.reduce(&prod)?.into_iter().enumerate() {
                m.set(r, k, v);
            }
        }
        Ok(m)
    }

    /// The linear form on `S_sigma` reading off the socle coordinate.
    pub fn socle_value(&self, p: &Polynomial) -> Result<Rational> {
        self.require_smooth().map_err(|_| Error::SocleUndefined)?;
        let top = self.piece(self.h.socle_degree())?;
        Ok(top.reduce(p)?.into_iter().next().unwrap_or_else(Rational::zero))
    }

    /// Pairing matrix `R_a x R_{sigma-a} -> R_sigma = Q`.
    pub fn socle_pairing(&self, a: u32) -> Result<SoclePairing> {
        self.require_smooth().map_err(|_| Error::SocleUndefined)?;
        let sigma = self.h.socle_degree();
        if a > sigma {
            return Err(Error::Precondition(format!("pairing degree {a} exceeds socle degree {sigma}")));
        }
        let left = self.piece(a)?;
        let right = self.piece(sigma - a)?;
        let top = self.piece(sigma)?;
        let mut m = ExactMatrix::zeros(left.dim(), right.dim());
        for i in 0..left.dim() {
            for j in 0..right.dim() {
                let prod = left.basis_monomial(i).mul(right.basis_monomial(j));
                let nf = top.reduce_monomial(&prod);
                if let Some((0, v)) = nf.first() {
                    m.set(i, j, v.clone());
                }
            }
        }
        Ok(SoclePairing { a, matrix: m })
    }
}

/// Multiplication pairing into the one-dimensional socle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SoclePairing {
    pub a: u32,
    pub matrix: ExactMatrix,
}

impl SoclePairing {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_nondegenerate(&self) -> bool {
        let r = self.rank();
        r == self.matrix.rows() && r == self.matrix.cols()
    }
}
