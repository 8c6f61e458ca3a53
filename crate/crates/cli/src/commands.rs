use serde::Serialize;
use serde_json::{json, Value};

use hodgekit::deformation::{jb_certificate, kappa_image, obstruction_vanishes, tangent_space};
use hodgekit::exact::monomial::mono_basis;
use hodgekit::gauss_manin::{
    connection_matrix, flatness_certificate, ks_compatibility, ks_scalar, symmetry_certificate,
    symmetry_negative_control, transversality_certificate, y_fixing, Family,
};
use hodgekit::hodge::primitive_hodge_numbers;
use hodgekit::mhs::{audit, f4_cross_check, gysin_assemble, ClaimedValues, Finding, HypersurfacePair};
use hodgekit::twisted::{
    compare_with_reference, euler_characteristic, twisted_hodge, cubic_fivefold_reference, TwistedCell, TwistedTable,
};
use hodgekit::{Certificate, Error, JacobianRing, Monomial, Polynomial};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Singular,
    CertificateFailure,
}

pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub text: Vec<String>,
}

impl Outcome {
    fn new(result: Value, text: Vec<String>) -> Self {
        Outcome { status: Status::Ok, result, text }
    }

    fn require(mut self, passed: bool) -> Self {
        if !passed && self.status == Status::Ok {
            self.status = Status::CertificateFailure;
        }
        self
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn cert_line(c: &Certificate) -> String {
    if c.passed {
        format!("[pass] {} ({} checks)", c.name, c.checks.len())
    } else {
        let failed: Vec<&str> = c.failures().iter().map(|f| f.label()).collect();
        format!("[FAIL] {}: {}", c.name, failed.join("; "))
    }
}

/// `{q=1: 21}`, nonzero entries only.
fn cell_map(h: &std::collections::BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = h.iter().filter(|(_, v)| **v > 0).map(|(q, v)| format!("q={q}: {v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn cell_line(c: &TwistedCell) -> String {
    format!("h^q(Omega^{}({})) = {}  chi = {}", c.p, c.k, cell_map(&c.h), c.chi)
}

/// `x_N * m` for every monomial `m` of degree `d - 1` in `x0..x_{N-1}`.
pub fn coordinate_directions(pair: &HypersurfacePair) -> Vec<Polynomial> {
    let h = pair.z().hypersurface();
    let n = h.n_vars();
    mono_basis(n - 1, h.degree() - 1)
        .into_iter()
        .map(|m| {
            let mut e = m.exponents().to_vec();
            e.push(0);
            y_fixing(pair, &Polynomial::monomial(Monomial::new(e)))
        })
        .collect()
}

pub fn jring(f: Polynomial, degree: Option<u32>) -> Result<Outcome, CliError> {
    let ring = JacobianRing::from_polynomial(f)?;
    let report = ring.smoothness()?;
    let h = ring.hypersurface();
    let mut text = vec![
        format!("variables {}, degree {}, socle degree {}", h.n_vars(), h.degree(), h.socle_degree()),
        format!("dim R_i, i = 0..: {}", report.dims.iter().map(|d| d.1.to_string()).collect::<Vec<_>>().join(" ")),
        format!("smooth values:    {}", report.dims.iter().map(|d| d.2.to_string()).collect::<Vec<_>>().join(" ")),
    ];
    match report.first_deviation {
        Some(d) => text.push(format!("singular: dim R_{d} leaves the smooth Hilbert function")),
        None => text.push("smooth".into()),
    }
    let piece = match degree {
        Some(d) => {
            let p = ring.piece(d)?;
            let basis: Vec<String> = p.basis_monomials().iter().map(ToString::to_string).collect();
            text.push(format!("R_{d}: dim {}, basis {}", p.dim(), basis.join(" ")));
            json!({ "degree": d, "dim": p.dim(), "basis": basis })
        }
        None => Value::Null,
    };
    let result = json!({
        "n_vars": h.n_vars(),
        "degree": h.degree(),
        "socle_degree": h.socle_degree(),
        "smooth": report.smooth,
        "dims": report.dims,
        "first_deviation": report.first_deviation,
        "piece": piece,
    });
    let mut out = Outcome::new(result, text);
    if !report.smooth {
        out.status = Status::Singular;
    }
    Ok(out)
}

pub fn hodge(f: Polynomial) -> Result<Outcome, CliError> {
    let ring = JacobianRing::from_polynomial(f)?;
    let d = primitive_hodge_numbers(&ring)?;
    let mut text = vec![
        format!("dimension {}", d.n),
        format!("primitive h^(n-q,q), q = 0..={}: {:?}", d.n, d.middle_primitive),
        format!("full h^(n-q,q): {:?}", d.middle_full),
        format!("middle Betti number {}", d.middle_betti()),
    ];
    if d.degenerate {
        text.push("degenerate case (quadric or curve): most graded pieces read are zero or at the socle boundary".into());
    }
    let mut result = to_value(&d);
    result["middle_betti"] = json!(d.middle_betti());
    Ok(Outcome::new(result, text))
}

pub fn twisted(f: Polynomial, p: Option<usize>, k: Option<i64>) -> Result<Outcome, CliError> {
    let ring = JacobianRing::from_polynomial(f)?;
    ring.require_smooth()?;
    let h = ring.hypersurface();
    let n = h.dim();
    if let Some(p) = p {
        if p > n {
            return Err(CliError::Usage(format!("--p {p} exceeds the dimension {n}")));
        }
    }
    let d = h.degree() as i64;
    let table = match (p, k) {
        (Some(p), Some(k)) => TwistedTable {
            n,
            degree: h.degree(),
            cells: vec![TwistedCell { p, k, h: twisted_hodge(&ring, p, k)?, chi: euler_characteristic(h, p, k) }],
        },
        (Some(p), None) => TwistedTable::compute(&ring, [p], -2 * d..=3 * d)?,
        (None, Some(k)) => TwistedTable::compute(&ring, 0..=n, [k])?,
        (None, None) => TwistedTable::default_range(&ring)?,
    };
    let (euler, serre, nakano) = (table.euler_failures().len(), table.serre_failures().len(), table.nakano_failures().len());
    let mut text: Vec<String> = table.cells.iter().map(cell_line).collect();
    text.push(format!("Euler characteristic failures {euler}, Serre duality failures {serre}, vanishing failures {nakano}"));
    let result = json!({
        "n": table.n,
        "degree": table.degree,
        "cells": to_value(&table.cells),
        "euler_failures": euler,
        "serre_failures": serre,
        "nakano_failures": nakano,
    });
    Ok(Outcome::new(result, text).require(euler == 0 && nakano == 0))
}

fn finding_line(f: &Finding) -> String {
    format!("finding ({}): {}", f.kind, f.message)
}

pub fn mhs(f: Polynomial, claimed: Option<ClaimedValues>) -> Result<Outcome, CliError> {
    let pair = HypersurfacePair::new(f)?;
    let mut report = gysin_assemble(&pair)?;
    if let Some(c) = &claimed {
        report.audit = audit(&report, Some(c));
    }
    let mut text = vec![
        format!("dim H^{n}(U) = {}, dim W_{n} = {}", report.dim_total, report.dim_w_lower, n = report.n),
        format!("dim F^p, p = 0..={}: {:?}", report.n + 1, report.hodge_filtration_dims),
    ];
    for h in report.w_lower_hodge.iter().chain(&report.gr_upper_hodge) {
        text.push(format!("h_{}^{{{},{}}} = {}", h.weight, h.p, h.q, h.dim));
    }
    if report.flagged {
        text.push("even dimension: weight pieces assembled with the roles of Z and Y swapped (flagged)".into());
    }
    text.extend(report.audit.iter().map(finding_line));
    let (cross, passed) = match f4_cross_check(&pair) {
        Ok(c) => {
            text.push(cert_line(&c));
            let passed = c.passed;
            (to_value(&c), passed)
        }
        Err(Error::Precondition(msg)) => {
            text.push(format!("filtration cross-check skipped: {msg}"));
            (Value::Null, true)
        }
        Err(e) => return Err(e.into()),
    };
    let result = json!({ "report": to_value(&report), "cross_check": cross });
    Ok(Outcome::new(result, text).require(passed))
}

pub fn deform(f: Polynomial) -> Result<Outcome, CliError> {
    let pair = HypersurfacePair::new(f)?;
    let t = tangent_space(&pair)?;
    let ob = obstruction_vanishes(&pair)?;
    let jb = jb_certificate(&pair)?;
    let h = pair.z().hypersurface();
    let kappa: Vec<_> = (h.degree() - 1..=h.socle_degree()).map(|d| kappa_image(&pair, d)).collect::<Result<_, _>>()?;
    let mut text = vec![
        format!("dim R_2 = {}, lifted directions span {}, rank in R_3 {}", t.dim, t.lift_dim, t.lift_rank_in_r3),
        format!("h^1(T_Z(-Y)) = {}", t.h1_twisted),
        cert_line(&ob),
        cert_line(&jb),
    ];
    let kappa_ok = kappa.iter().all(|k| k.equals_jacobian_ideal);
    for k in &kappa {
        text.push(format!("image in degree {}: dim {}, equals J: {}", k.degree, k.dim, k.equals_jacobian_ideal));
    }
    let result = json!({
        "tangent": to_value(&t),
        "obstruction": to_value(&ob),
        "contraction": to_value(&jb),
        "kappa_image": to_value(&kappa),
    });
    Ok(Outcome::new(result, text).require(ob.passed && jb.passed && kappa_ok))
}

/// Certificate bundle for the connection along each direction.
fn gm_bundle(pair: &HypersurfacePair, dirs: Vec<Polynomial>, text: &mut Vec<String>) -> Result<(Value, bool), CliError> {
    let fam = Family::new(pair.z().hypersurface().polynomial().clone(), dirs.clone())?;
    let frame = fam.frame()?;
    text.push(format!("frame dimension {}, pole orders {:?}, {} directions", frame.dim(), frame.poles(), dirs.len()));
    let mut passed = true;
    let (mut connection, mut transversality, mut ks, mut scalars, mut symmetry) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (i, g) in dirs.iter().enumerate() {
        let cm = connection_matrix(&fam, i)?;
        let tr = transversality_certificate(&cm);
        let kc = ks_compatibility(&fam, i)?;
        let s = ks_scalar(&fam, i)?;
        passed &= tr.passed && kc.passed;
        text.push(format!(
            "direction {i} ({g}): transversality {}, KS {}, scalar {}",
            if tr.passed { "pass" } else { "FAIL" },
            if kc.passed { "pass" } else { "FAIL" },
            s.as_ref().map_or("none".to_string(), ToString::to_string)
        ));
        connection.push(to_value(&cm));
        transversality.push(to_value(&tr));
        ks.push(to_value(&kc));
        scalars.push(s.map(|s| s.to_string()));
        match symmetry_certificate(pair, std::slice::from_ref(g)) {
            Ok(c) => {
                passed &= c.passed;
                text.push(format!("direction {i}: {}", cert_line(&c)));
                symmetry.push(to_value(&c));
            }
            Err(e @ (Error::Precondition(_) | Error::NotYFixing(_))) => {
                text.push(format!("direction {i}: symmetry not applicable: {e}"));
                symmetry.push(Value::Null);
            }
            Err(e) => return Err(e.into()),
        }
    }
    let distinct: std::collections::BTreeSet<&String> = scalars.iter().flatten().collect();
    let shared = distinct.len() <= 1;
    passed &= shared;
    text.push(format!(
        "KS scalar shared by all directions: {}",
        if shared { distinct.iter().next().map_or("none".to_string(), |s| s.to_string()) } else { "no".into() }
    ));
    let bundle = json!({
        "frame": to_value(&frame),
        "directions": dirs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "connection": connection,
        "transversality": transversality,
        "ks": ks,
        "ks_scalars": scalars,
        "ks_scalar_shared": shared,
        "symmetry": symmetry,
    });
    Ok((bundle, passed))
}

pub fn gm(f: Polynomial, dirs: Option<Vec<Polynomial>>) -> Result<Outcome, CliError> {
    let pair = HypersurfacePair::new(f)?;
    let dirs = dirs.unwrap_or_else(|| coordinate_directions(&pair));
    let mut text = Vec::new();
    let (bundle, passed) = gm_bundle(&pair, dirs, &mut text)?;
    Ok(Outcome::new(bundle, text).require(passed))
}

pub fn certify(f: Polynomial, dirs: Option<Vec<Polynomial>>) -> Result<Outcome, CliError> {
    let pair = HypersurfacePair::new(f)?;
    let dirs = dirs.unwrap_or_else(|| coordinate_directions(&pair));
    let mut text = Vec::new();
    let mut certs = Vec::new();
    let smooth = pair.z().smoothness()?.certificate;
    certs.push(smooth);
    certs.push(obstruction_vanishes(&pair)?);
    certs.push(jb_certificate(&pair)?);
    match f4_cross_check(&pair) {
        Ok(c) => certs.push(c),
        Err(Error::Precondition(msg)) => text.push(format!("filtration cross-check skipped: {msg}")),
        Err(e) => return Err(e.into()),
    }
    let fam = Family::new(pair.z().hypersurface().polynomial().clone(), dirs.clone())?;
    if dirs.len() >= 2 {
        certs.push(flatness_certificate(&fam, 0, 1)?);
    }
    let mut passed = certs.iter().all(|c| c.passed);
    text.extend(certs.iter().map(cert_line));
    let (bundle, gm_passed) = gm_bundle(&pair, dirs.clone(), &mut text)?;
    passed &= gm_passed;
    let negative = match symmetry_negative_control(&pair, &dirs, 1) {
        Ok(c) => {
            let detected = !c.passed;
            passed &= detected;
            text.push(format!(
                "[{}] negative control: a random functional breaks symmetry in {} of {} directions",
                if detected { "pass" } else { "FAIL" },
                c.failures().len(),
                dirs.len()
            ));
            json!({ "asymmetric_directions": c.failures().len(), "detected": detected })
        }
        Err(Error::Precondition(_) | Error::NotYFixing(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let result = json!({ "certificates": to_value(&certs), "gauss_manin": bundle, "negative_control": negative });
    Ok(Outcome::new(result, text).require(passed))
}

/// Whether a finding is the internal inconsistency of the built-in claimed table.
fn documented(f: &Finding) -> bool {
    f.kind == "claim" && f.message.contains("inconsistent among themselves")
}

pub fn paper_check(f: Polynomial, claimed: Option<ClaimedValues>) -> Result<Outcome, CliError> {
    let pair = HypersurfacePair::new(f)?;
    let h = pair.z().hypersurface();
    if h.degree() != 3 || h.n_vars() != 7 {
        return Err(Error::Precondition("the reference check needs a cubic in 7 variables".into()).into());
    }
    let mut board: Vec<Value> = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    let mut item = |name: &str, passed: bool, detail: String| {
        board.push(json!({ "item": name, "passed": passed, "detail": detail }));
        passed
    };

    let table = TwistedTable::default_range(pair.z())?;
    let diffs = compare_with_reference(&table, &cubic_fivefold_reference());
    let mut detail = format!("{} cells", table.cells.len());
    for (p, q, k, c, v) in &diffs {
        detail.push_str(&format!("; h^{q}(Omega^{p}({k})): claimed {c}, computed {v}"));
    }
    let ok_table = diffs.is_empty() && table.euler_failures().is_empty() && table.serre_failures().is_empty();
    let mut all = item("twisted cohomology table", ok_table, detail);

    let claimed = claimed.unwrap_or_else(ClaimedValues::cubic_fivefold_reference);
    let report = gysin_assemble(&pair)?;
    let findings = audit(&report, Some(&claimed));
    notes.extend(findings.iter().map(|f| f.message.clone()));
    let ok_mhs = findings.len() <= 1 && findings.iter().all(documented);
    all &= item(
        "mixed Hodge numbers and audit",
        ok_mhs,
        format!("dim {}, F dims {:?}, {} finding(s)", report.dim_total, report.hodge_filtration_dims, findings.len()),
    );

    let ob = obstruction_vanishes(&pair)?;
    all &= item("obstruction vanishing", ob.passed, cert_line(&ob));
    let jb = jb_certificate(&pair)?;
    all &= item("contraction ranks", jb.passed, cert_line(&jb));

    let dirs = coordinate_directions(&pair);
    let sym = symmetry_certificate(&pair, &dirs)?;
    let neg = symmetry_negative_control(&pair, &dirs, 1)?;
    all &= item(
        "symmetry of Y-fixing directions",
        sym.passed && !neg.passed,
        format!("{}; negative control asymmetric in {} directions", cert_line(&sym), neg.failures().len()),
    );

    let mut text: Vec<String> = board
        .iter()
        .map(|b| format!("[{}] {}: {}", if b["passed"] == true { "pass" } else { "FAIL" }, b["item"].as_str().unwrap(), b["detail"].as_str().unwrap()))
        .collect();
    text.extend(notes.iter().map(|n| format!("note: {n}")));
    let result = json!({ "scoreboard": board, "notes": notes, "all_passed": all });
    Ok(Outcome::new(result, text).require(all))
}
