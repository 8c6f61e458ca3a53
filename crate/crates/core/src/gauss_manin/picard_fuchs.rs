//! Picard–Fuchs operators of one-parameter families `F + t G`, and the
//! discriminant of the pencil.
//!
//! The derivative tower `d^m/dt^m (A Omega / F_t^k) = (-1)^m (k)_m A G^m Omega / F_t^(k+m)`
//! is reduced at sample values `t = t0`, the linear relation among the first
//! `m + 1` terms is found exactly, and the coefficient functions are
//! reconstructed as rational functions with a common denominator by solving a
//! linear system over more samples than unknowns. The result is then checked
//! at further sample points.

use num_traits::Zero;

use super::{reduce_to_frame, rising, Family, Frame};
use crate::error::{Error, Result};
use crate::exact::matrix::ExactMatrix;
use crate::exact::monomial::mono_basis;
use crate::exact::polynomial::Polynomial;
use crate::exact::rational::{rat, Rational};
use crate::exact::unipoly::UniPoly;
use crate::jacobian::JacobianRing;
use crate::limits;

/// `sum_j coefficients[j](t) * (d/dt)^j`, `coefficients[order]` leading and monic.
#[derive(Clone, Debug)]
pub struct PicardFuchs {
    pub order: usize,
    pub coefficients: Vec<UniPoly>,
    /// Points used to reconstruct the coefficients.
    pub samples: Vec<Rational>,
    /// Further points where the reconstructed operator was checked.
    pub verified: Vec<Rational>,
}

impl PicardFuchs {
    pub fn leading(&self) -> &UniPoly {
        &self.coefficients[self.order]
    }

    pub const METHOD: &'static str = "exact relations at rational sample points, rational reconstruction with a common denominator";
}

fn single_direction(fam: &Family) -> Result<&Polynomial> {
    if fam.directions().len() != 1 {
        return Err(Error::Precondition(format!(
            "Picard-Fuchs needs a one-direction family, got {}",
            fam.directions().len()
        )));
    }
    Ok(&fam.directions()[0])
}

/// Reduced derivative tower at `t0`, or `None` if `F + t0 G` is singular.
fn tower(fam: &Family, class_index: usize, len: usize, t0: &Rational) -> Result<Option<Vec<Vec<Rational>>>> {
    let g = single_direction(fam)?;
    let entry = fam
        .frame()?
        .entries
        .get(class_index)
        .cloned()
        .ok_or_else(|| Error::Precondition(format!("frame has no entry {class_index}")))?;
    let ft = fam.base() + &g.scale(t0);
    let ring = JacobianRing::from_polynomial(ft)?;
    if !ring.is_smooth()? {
        return Ok(None);
    }
    let frame = Frame::standard(&ring)?;
    let mut numerator = Polynomial::monomial(entry.numerator);
    let mut out = Vec::with_capacity(len);
    for m in 0..len as u32 {
        let sign = if m % 2 == 0 { rat(1) } else { rat(-1) };
        let b = numerator.scale(&(sign * rising(entry.pole, m)));
        out.push(reduce_to_frame(&ring, &frame, &b, entry.pole + m)?);
        numerator = &numerator * g;
    }
    Ok(Some(out))
}

fn columns(vs: &[Vec<Rational>]) -> ExactMatrix {
    let rows = vs.first().map_or(0, Vec::len);
    let mut m = ExactMatrix::zeros(rows, vs.len());
    for (c, v) in vs.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            m.set(r, c, x.clone());
        }
    }
    m
}

/// Monic relation `v_m + sum_{j<m} c_j v_j = 0` of the requested order, if the
/// first `m` terms are independent.
fn relation_of_order(t: &[Vec<Rational>], m: usize) -> Option<Vec<Rational>> {
    let lower = columns(&t[..m]);
    if lower.rank() < m {
        return None;
    }
    let rhs: Vec<Rational> = t[m].iter().map(|x| -x).collect();
    let mut c = lower.solve(&rhs)?;
    c.push(rat(1));
    Some(c)
}

/// Pointwise operator at `t0`: monic coefficients `c_0, .., c_{m-1}, 1` of the
/// shortest relation in the tower. `None` if no relation of order
/// `<= max_order` exists or `F + t0 G` is singular.
pub fn picard_fuchs_at(fam: &Family, class_index: usize, max_order: usize, t0: &Rational) -> Result<Option<Vec<Rational>>> {
    let Some(t) = tower(fam, class_index, max_order + 1, t0)? else { return Ok(None) };
    for m in 0..=max_order {
        if columns(&t[..=m]).rank() <= m {
            return Ok(relation_of_order(&t, m));
        }
    }
    Ok(None)
}

/// Sample points `1, -1, 2, -2, 1/2, ...` excluding singular members.
fn sample_points() -> impl Iterator<Item = Rational> {
    (1i64..).flat_map(|k| {
        [rat(k), rat(-k), Rational::new(1.into(), (k + 1).into()), Rational::new((-1).into(), (k + 1).into())]
    })
}

/// Picard–Fuchs operator of the frame class `class_index`, with coefficient
/// degree at most `max_degree`. `None` when the order exceeds `max_order`.
pub fn picard_fuchs(fam: &Family, class_index: usize, max_order: usize, max_degree: usize) -> Result<Option<PicardFuchs>> {
    single_direction(fam)?;
    let mut points = sample_points();
    let mut data: Vec<(Rational, Vec<Rational>)> = Vec::new();
    // generic order: the largest shortest-relation order over a few points
    let mut order = None;
    let mut probes = 0;
    while probes < 3 {
        let t0 = points.next().unwrap();
        let Some(t) = tower(fam, class_index, max_order + 1, &t0)? else { continue };
        probes += 1;
        let m = (0..=max_order).find(|&m| columns(&t[..=m]).rank() <= m);
        let Some(m) = m else { return Ok(None) };
        order = Some(order.map_or(m, |o: usize| o.max(m)));
        data.push((t0, t.into_iter().take(max_order + 1).flatten().collect()));
    }
    let m = order.unwrap();
    let frame_len = data[0].1.len() / (max_order + 1);
    let relation_at = |flat: &[Rational]| -> Option<Vec<Rational>> {
        let t: Vec<Vec<Rational>> = flat.chunks(frame_len).map(<[Rational]>::to_vec).collect();
        relation_of_order(&t, m)
    };
    let mut rel: Vec<(Rational, Vec<Rational>)> =
        data.iter().filter_map(|(t0, flat)| relation_at(flat).map(|c| (t0.clone(), c))).collect();

    let mut more = |rel: &mut Vec<(Rational, Vec<Rational>)>, want: usize| -> Result<()> {
        while rel.len() < want {
            let t0 = points.next().unwrap();
            let Some(t) = tower(fam, class_index, m + 1, &t0)? else { continue };
            if let Some(c) = relation_of_order(&t, m) {
                rel.push((t0, c));
            }
        }
        Ok(())
    };

    for deg in 0..=max_degree {
        let unknowns = (m + 1) * (deg + 1);
        let need = if m == 0 { 1 } else { (unknowns + 2).div_ceil(m) };
        more(&mut rel, need + 3)?;
        let (fit, check) = rel.split_at(need);
        let mut sys = ExactMatrix::zeros(fit.len() * m.max(1), unknowns);
        for (s, (t0, c)) in fit.iter().enumerate() {
            for j in 0..m {
                let row = s * m + j;
                let mut pow = rat(1);
                for e in 0..=deg {
                    sys.set(row, j * (deg + 1) + e, pow.clone());
                    sys.set(row, m * (deg + 1) + e, -(&c[j] * &pow));
                    pow *= t0;
                }
            }
        }
        let kernel = if m == 0 { vec![vec![rat(1)]] } else { sys.kernel_basis() };
        let Some(v) = kernel.into_iter().next() else { continue };
        let mut coefficients: Vec<UniPoly> = v.chunks(deg + 1).map(|c| UniPoly::new(c.to_vec())).collect();
        let lead = coefficients[m].clone();
        if lead.is_zero() {
            continue;
        }
        let scale = lead.leading().recip();
        coefficients.iter_mut().for_each(|p| *p = p.scale(&scale));
        let ok = check.iter().all(|(t0, c)| {
            let q = coefficients[m].eval(t0);
            !q.is_zero() && (0..m).all(|j| coefficients[j].eval(t0) == &c[j] * &q)
        });
        if ok {
            return Ok(Some(PicardFuchs {
                order: m,
                coefficients,
                samples: fit.iter().map(|x| x.0.clone()).collect(),
                verified: check.iter().map(|x| x.0.clone()).collect(),
            }));
        }
    }
    Err(Error::Precondition(format!("no coefficients of degree <= {max_degree} fit the order-{m} relations")))
}

/// Monic generator of the ideal of `t` for which `F + t G` is singular: the
/// gcd of the maximal minors of the degree-`(sigma+1)` Macaulay matrix of the
/// partials, computed by unimodular row reduction over `Q[t]`.
pub fn discriminant(base: &Polynomial, direction: &Polynomial) -> Result<UniPoly> {
    let h = crate::jacobian::Hypersurface::new(base.clone())?;
    let n_vars = h.n_vars();
    let top = h.socle_degree() + 1;
    let cols = mono_basis(n_vars, top);
    let mults = mono_basis(n_vars, top + 1 - h.degree());
    limits::check("discriminant Macaulay matrix", cols.len().max(mults.len() * n_vars))?;
    let index: std::collections::HashMap<_, _> = cols.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let dg = direction.gradient();
    let mut rows: Vec<Vec<UniPoly>> = Vec::new();
    for j in 0..n_vars {
        for m in &mults {
            let mut row = vec![(Rational::zero(), Rational::zero()); cols.len()];
            for (mono, c) in h.partials()[j].mul_monomial(m).terms() {
                row[index[mono]].0 += c;
            }
            for (mono, c) in dg[j].mul_monomial(m).terms() {
                row[index[mono]].1 += c;
            }
            rows.push(row.into_iter().map(|(a, b)| UniPoly::new(vec![a, b])).collect());
        }
    }
    Ok(max_minor_gcd(rows, cols.len()))
}

fn max_minor_gcd(mut m: Vec<Vec<UniPoly>>, ncols: usize) -> UniPoly {
    let nrows = m.len();
    if nrows < ncols {
        return UniPoly::zero();
    }
    let mut det = UniPoly::constant(rat(1));
    for c in 0..ncols {
        loop {
            let nz: Vec<usize> = (c..nrows).filter(|&r| !m[r][c].is_zero()).collect();
            let Some(&p) = nz.iter().min_by_key(|&&r| m[r][c].degree()) else { return UniPoly::zero() };
            if nz.len() == 1 {
                m.swap(c, p);
                break;
            }
            let pivot = m[p].clone();
            for &r in &nz {
                if r == p {
                    continue;
                }
                let (q, _) = m[r][c].div_rem(&pivot[c]);
                for k in c..ncols {
                    if !pivot[k].is_zero() {
                        m[r][k] = m[r][k].sub(&q.mul(&pivot[k]));
                    }
                }
            }
        }
        det = det.mul(&m[c][c]);
    }
    det.monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_polynomial;
    use crate::exact::polynomial::fermat;

    fn hesse() -> Family {
        Family::new(fermat(3, 3), vec![parse_polynomial("x0*x1*x2", Some(3)).unwrap()]).unwrap()
    }

    #[test]
    fn hesse_discriminant() {
        let d = discriminant(&fermat(3, 3), &parse_polynomial("x0*x1*x2", Some(3)).unwrap()).unwrap();
        let sq = d.squarefree_part();
        assert_eq!(sq, UniPoly::new(vec![rat(27), rat(0), rat(0), rat(1)]));
    }

    #[test]
    fn hesse_operator() {
        let pf = picard_fuchs(&hesse(), 0, 4, 8).unwrap().unwrap();
        assert_eq!(pf.order, 2);
        let disc = discriminant(&fermat(3, 3), &parse_polynomial("x0*x1*x2", Some(3)).unwrap()).unwrap();
        assert!(pf.leading().squarefree_part().divides(&disc), "{}", pf.leading());
    }

    #[test]
    fn constant_family() {
        let fam = Family::new(fermat(3, 3), vec![Polynomial::zero(3)]).unwrap();
        let pf = picard_fuchs(&fam, 0, 3, 2).unwrap().unwrap();
        assert_eq!(pf.order, 1);
        assert!(pf.coefficients[0].is_zero());
    }

    #[test]
    fn order_cap() {
        assert!(picard_fuchs(&hesse(), 0, 1, 4).unwrap().is_none());
    }
}
