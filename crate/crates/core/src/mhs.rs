//! Mixed Hodge structure on `H^n(U)`, `U = Z \ Y`, for a smooth hypersurface
//! `Z = {F = 0}` and its hyperplane section `Y = Z ∩ {x_N = 0}`.
//!
//! The Gysin sequence
//! `H^{n-2}(Y)(-1) -> H^n(Z) -> H^n(U) -> H^{n-1}(Y)(-1) -> H^{n+1}(Z)`
//! gives two weights. For odd `n` the left term vanishes and the right map is
//! onto the one-dimensional `H^{n+1}(Z)`, so `W_n = H^n(Z)` and
//! `Gr_{n+1} = H^{n-1}(Y)_prim(-1)`. For even `n` the roles swap:
//! `W_n = H^n(Z)_prim` and `Gr_{n+1} = H^{n-1}(Y)(-1)`. Even `n` is computed
//! but flagged. The rank of the Gysin maps is taken from Lefschetz theory
//! rather than computed from cycles.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::exact::polynomial::Polynomial;
use crate::hodge::{primitive_hodge_numbers, HodgeDiamond};
use crate::jacobian::JacobianRing;
use crate::twisted::twisted_hodge;

/// `Z = {F = 0}` together with `Y = {F(x_0, .., x_{N-1}, 0) = 0}` in `P^{N-1}`.
#[derive(Debug)]
pub struct HypersurfacePair {
    z: JacobianRing,
    y: JacobianRing,
}

impl HypersurfacePair {
    /// Both `Z` and `Y` must be smooth.
    pub fn new(f: Polynomial) -> Result<Self> {
        let g = f.restrict_last_to_zero();
        if g.is_zero() || g.homogeneous_degree() != f.homogeneous_degree() {
            return Err(Error::InvalidHypersurface("x_N divides F; the section is not a hypersurface".into()));
        }
        let z = JacobianRing::from_polynomial(f)?;
        let y = JacobianRing::from_polynomial(g)?;
        z.require_smooth()?;
        y.require_smooth()?;
        Ok(HypersurfacePair { z, y })
    }

    pub fn z(&self) -> &JacobianRing {
        &self.z
    }

    pub fn y(&self) -> &JacobianRing {
        &self.y
    }

    /// `n = dim Z`.
    pub fn n(&self) -> usize {
        self.z.hypersurface().dim()
    }

    pub fn degree(&self) -> u32 {
        self.z.hypersurface().degree()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HodgeNumber {
    pub weight: usize,
    pub p: usize,
    pub q: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived: Option<i64>,
}

impl Finding {
    fn new(kind: &str, message: String) -> Self {
        Finding { kind: kind.into(), message, claimed: None, derived: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MhsReport {
    pub n: usize,
    pub dim_total: usize,
    pub dim_w_lower: usize,
    /// Nonzero Hodge numbers of `Gr^W_n`.
    pub w_lower_hodge: Vec<HodgeNumber>,
    /// Nonzero Hodge numbers of `Gr^W_{n+1}`.
    pub gr_upper_hodge: Vec<HodgeNumber>,
    /// `dim F^p` for `p = 0..=n+1`.
    pub hodge_filtration_dims: Vec<usize>,
    /// Set when `n` is even.
    pub flagged: bool,
    pub audit: Vec<Finding>,
}

impl MhsReport {
    pub fn hodge_number(&self, weight: usize, p: usize, q: usize) -> usize {
        self.w_lower_hodge
            .iter()
            .chain(&self.gr_upper_hodge)
            .find(|h| h.weight == weight && h.p == p && h.q == q)
            .map_or(0, |h| h.dim)
    }

    pub fn f_dim(&self, p: usize) -> usize {
        self.hodge_filtration_dims.get(p).copied().unwrap_or(0)
    }
}

fn nonzero(weight: usize, entries: impl IntoIterator<Item = (usize, usize, usize)>) -> Vec<HodgeNumber> {
    entries.into_iter().filter(|e| e.2 > 0).map(|(p, q, dim)| HodgeNumber { weight, p, q, dim }).collect()
}

/// `dim F^p` from graded Hodge numbers.
fn filtration_from(n: usize, numbers: &[HodgeNumber]) -> Vec<usize> {
    (0..=n + 1).map(|p| numbers.iter().filter(|h| h.p >= p).map(|h| h.dim).sum()).collect()
}

pub fn gysin_assemble(pair: &HypersurfacePair) -> Result<MhsReport> {
    let n = pair.n();
    let z: HodgeDiamond = primitive_hodge_numbers(pair.z())?;
    let y: HodgeDiamond = primitive_hodge_numbers(pair.y())?;
    let flagged = n % 2 == 0;
    // odd n: all of H^n(Z), primitive H^{n-1}(Y); even n: the reverse
    let (lower, upper) = if flagged {
        (&z.middle_primitive, &y.middle_full)
    } else {
        (&z.middle_full, &y.middle_primitive)
    };
    let w_lower_hodge = nonzero(n, lower.iter().enumerate().map(|(q, &v)| (n - q, q, v)));
    // Y has dimension n-1; its (a, b) class becomes (a+1, b+1)
    let gr_upper_hodge = nonzero(n + 1, upper.iter().enumerate().map(|(b, &v)| (n - 1 - b + 1, b + 1, v)));
    let dim_w_lower = w_lower_hodge.iter().map(|h| h.dim).sum::<usize>();
    let dim_total = dim_w_lower + gr_upper_hodge.iter().map(|h| h.dim).sum::<usize>();
    let all: Vec<HodgeNumber> = w_lower_hodge.iter().chain(&gr_upper_hodge).cloned().collect();
    let mut report = MhsReport {
        n,
        dim_total,
        dim_w_lower,
        w_lower_hodge,
        gr_upper_hodge,
        hodge_filtration_dims: filtration_from(n, &all),
        flagged,
        audit: Vec::new(),
    };
    report.audit = audit(&report, None);
    Ok(report)
}

/// Values claimed elsewhere for a pair, to be audited against a report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimedValues {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_total: Option<usize>,
    /// `dim F^p` keyed by `p`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub hodge_filtration: BTreeMap<usize, usize>,
    /// Nonzero graded Hodge numbers; omitted ones are claimed to vanish.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hodge_numbers: Vec<HodgeNumber>,
}

impl ClaimedValues {
    /// The published table for the cubic 5-fold pair.
    pub fn cubic_fivefold_reference() -> Self {
        let h = |weight, p, q, dim| HodgeNumber { weight, p, q, dim };
        ClaimedValues {
            dim_total: Some(64),
            hodge_filtration: BTreeMap::from([(0, 64), (1, 64), (2, 64), (3, 42), (4, 1), (5, 0)]),
            hodge_numbers: vec![h(5, 2, 3, 21), h(5, 3, 2, 21), h(6, 2, 4, 1), h(6, 4, 2, 1), h(6, 3, 3, 21)],
        }
    }

    fn hodge_sum(&self) -> usize {
        self.hodge_numbers.iter().map(|h| h.dim).sum()
    }
}

/// Internal consistency of `report`, and every disagreement with `claimed`.
pub fn audit(report: &MhsReport, claimed: Option<&ClaimedValues>) -> Vec<Finding> {
    let mut out = Vec::new();
    let upper: usize = report.gr_upper_hodge.iter().map(|h| h.dim).sum();
    let lower: usize = report.w_lower_hodge.iter().map(|h| h.dim).sum();
    if lower != report.dim_w_lower || lower + upper != report.dim_total {
        out.push(Finding::new(
            "additivity",
            format!(
                "dim W_n = {} and Gr_(n+1) = {upper} (Hodge numbers give W_n = {lower}) do not add up to dim H^n(U) = {}",
                report.dim_w_lower, report.dim_total
            ),
        ));
    }
    let all: Vec<HodgeNumber> = report.w_lower_hodge.iter().chain(&report.gr_upper_hodge).cloned().collect();
    let expected_f = filtration_from(report.n, &all);
    if expected_f != report.hodge_filtration_dims {
        out.push(Finding::new(
            "filtration",
            format!("F dims {:?} disagree with the graded Hodge numbers {:?}", report.hodge_filtration_dims, expected_f),
        ));
    }
    let f = &report.hodge_filtration_dims;
    if f.windows(2).any(|w| w[0] < w[1]) || f.first() != Some(&report.dim_total) || f.last() != Some(&0) {
        out.push(Finding::new("filtration", format!("F dims {f:?} are not a decreasing chain from the total to 0")));
    }
    for h in &all {
        if report.hodge_number(h.weight, h.q, h.p) != h.dim {
            out.push(Finding::new(
                "symmetry",
                format!("h_{}^{{{},{}}} = {} but the conjugate type has {}", h.weight, h.p, h.q, h.dim, report.hodge_number(h.weight, h.q, h.p)),
            ));
        }
    }

    let Some(c) = claimed else { return out };
    let internal = match c.dim_total {
        Some(t) if t != c.hodge_sum() => format!(
            "; the claimed Hodge numbers sum to {} while the claimed total is {t}, so the claims are inconsistent among themselves",
            c.hodge_sum()
        ),
        _ => String::new(),
    };
    let mut mismatches = Vec::new();
    if let Some(t) = c.dim_total {
        if t != report.dim_total {
            mismatches.push(("dim H^n(U)".to_string(), t, report.dim_total));
        }
    }
    for (&p, &v) in &c.hodge_filtration {
        if v != report.f_dim(p) {
            mismatches.push((format!("dim F^{p}"), v, report.f_dim(p)));
        }
    }
    let mut types: Vec<(usize, usize, usize)> = c.hodge_numbers.iter().map(|h| (h.weight, h.p, h.q)).collect();
    types.extend(all.iter().map(|h| (h.weight, h.p, h.q)));
    types.sort();
    types.dedup();
    for (w, p, q) in types {
        let claimed = c.hodge_numbers.iter().find(|h| (h.weight, h.p, h.q) == (w, p, q)).map_or(0, |h| h.dim);
        let derived = report.hodge_number(w, p, q);
        if claimed != derived {
            mismatches.push((format!("h_{w}^{{{p},{q}}}"), claimed, derived));
        }
    }
    for (what, claimed, derived) in &mismatches {
        out.push(Finding {
            kind: "claim".into(),
            message: format!("{what}: claimed {claimed}, derived {derived}{internal}"),
            claimed: Some(*claimed as i64),
            derived: Some(*derived as i64),
        });
    }
    if mismatches.is_empty() && !internal.is_empty() {
        out.push(Finding::new("claim", internal.trim_start_matches("; ").to_string()));
    }
    out
}

/// Recomputes Hodge-filtration levels of `H^n(U)` through twisted cohomology of
/// `Z` and compares them with the Gysin assembly.
///
/// * `F^n = H^0(Omega^n_Z(Y)) = h^0(Omega^n_Z(1))`, since top-degree forms are closed.
/// * `F^{n-1} = H^1(Omega^{n-1,c}_Z(Y))`. The sequence
///   `0 -> Omega^{n-1,c}(Y) -> Omega^{n-1}(Y) -> Omega^n(2Y) -> 0` identifies it
///   with `h^1(Omega^{n-1}_Z(1))` once `Omega^n_Z(2Y) = O_Z(d-N+1)` has no `h^0`
///   or `h^1`; that vanishing is part of the certificate. The level is skipped
///   when it fails.
///
/// Even `n` is refused.
pub fn f4_cross_check(pair: &HypersurfacePair) -> Result<Certificate> {
    let n = pair.n();
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("dim Z = {n} is even: flagged, not computed")));
    }
    let report = gysin_assemble(pair)?;
    let z = pair.z();
    let twist_2y = z.hypersurface().canonical_twist() + 2;
    let mut cert = Certificate::new("hodge filtration cross-check");

    let top = twisted_hodge(z, n, 1)?;
    cert.equal(format!("dim F^{n}: Gysin assembly vs h^0(Omega^{n}_Z(1))"), report.f_dim(n), top.get(&0).copied().unwrap_or(0));

    let line = twisted_hodge(z, 0, twist_2y)?;
    let h0 = line.get(&0).copied().unwrap_or(0);
    let h1 = line.get(&1).copied().unwrap_or(0);
    if h0 == 0 && h1 == 0 {
        let all_zero = line.values().all(|&v| v == 0);
        cert.equal(format!("h^i(O_Z({twist_2y})) = 0 for all i"), all_zero, true);
        let route = twisted_hodge(z, n - 1, 1)?;
        cert.equal(
            format!("dim F^{}: Gysin assembly vs h^1(Omega^{}_Z(1))", n - 1, n - 1),
            report.f_dim(n - 1),
            route.get(&1).copied().unwrap_or(0),
        );
    } else {
        cert.note(format!(
            "F^{} route skipped: O_Z({twist_2y}) has h^0 = {h0}, h^1 = {h1}",
            n - 1
        ));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::polynomial::fermat;

    fn cubic_pair() -> HypersurfacePair {
        HypersurfacePair::new(fermat(7, 3)).unwrap()
    }

    #[test]
    fn cubic_pair_report() {
        let r = gysin_assemble(&cubic_pair()).unwrap();
        assert_eq!(r.dim_total, 64);
        assert_eq!(r.dim_w_lower, 42);
        assert_eq!(r.hodge_filtration_dims, vec![64, 64, 64, 42, 1, 0, 0]);
        assert_eq!(r.hodge_number(5, 2, 3), 21);
        assert_eq!(r.hodge_number(5, 3, 2), 21);
        assert_eq!(r.hodge_number(6, 3, 3), 20);
        assert_eq!(r.hodge_number(6, 4, 2), 1);
        assert!(r.audit.is_empty());
        assert!(!r.flagged);
    }

    #[test]
    fn audit_against_reference() {
        let r = gysin_assemble(&cubic_pair()).unwrap();
        let findings = audit(&r, Some(&ClaimedValues::cubic_fivefold_reference()));
        assert_eq!(findings.len(), 1, "{findings:?}");
        assert_eq!((findings[0].claimed, findings[0].derived), (Some(21), Some(20)));
        assert!(findings[0].message.contains("h_6^{3,3}"));
        assert!(findings[0].message.contains("sum to 65"));
    }

    #[test]
    fn corrupted_total() {
        let mut r = gysin_assemble(&cubic_pair()).unwrap();
        r.dim_total += 1;
        r.hodge_filtration_dims[0] += 1;
        r.hodge_filtration_dims[1] += 1;
        r.hodge_filtration_dims[2] += 1;
        let f = audit(&r, None);
        assert_eq!(f.len(), 2, "{f:?}");
        assert_eq!(f[0].kind, "additivity");
    }

    #[test]
    fn cross_checks() {
        let c = f4_cross_check(&cubic_pair()).unwrap();
        assert!(c.passed, "{c:?}");
        assert_eq!(c.checks.len(), 3);
        let q = HypersurfacePair::new(fermat(5, 5)).unwrap();
        let r = gysin_assemble(&q).unwrap();
        assert_eq!(r.f_dim(3), 5);
        let c = f4_cross_check(&q).unwrap();
        assert!(c.passed);
        assert_eq!(c.checks.len(), 1);
        let even = HypersurfacePair::new(fermat(6, 3)).unwrap();
        assert!(matches!(f4_cross_check(&even), Err(Error::Precondition(_))));
        assert!(gysin_assemble(&even).unwrap().flagged);
    }

    #[test]
    fn singular_section() {
        // Z is smooth but Y = {x0^3 + .. + x4^3 = 0} in P^5 is a cone
        let f = crate::exact::parse::parse_polynomial("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^2*x6 + x6^3", None).unwrap();
        assert!(JacobianRing::from_polynomial(f.clone()).unwrap().is_smooth().unwrap());
        assert!(matches!(HypersurfacePair::new(f), Err(Error::Singular { .. })));
    }
}
