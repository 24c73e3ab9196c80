//! Polarizations on the top of a tower and the Hilbert-polynomial identities
//! they satisfy.

use std::sync::Arc;

use num::{BigInt, BigRational};
use rayon::prelude::*;
use serde::Serialize;

use crate::coord::CoordRing;
use crate::error::{Error, Result};
use crate::fiber::FiberAlgebraModel;
use crate::hilbert::{hilbert, module_piece_dim, HilbertData, QPoly};
use crate::ideal::Ideal;
use crate::module::ModulePresentation;
use crate::poly::Polynomial;
use crate::tower::ResolutionTower;

#[derive(Clone, Debug, Serialize)]
pub struct PolarizationChart {
    pub label: String,
    /// Local generator of the exceptional product.
    pub exceptional: String,
    /// Coordinate trivializing the pulled-back `L^m` on the chart.
    pub coordinate: String,
    pub twist: u64,
    pub invertible: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolarizationSpec {
    pub exponents: Vec<u32>,
    pub defaulted: bool,
    /// `m_1 * ... * m_l`.
    pub base_exponent: u64,
    /// Exponent of the `i`-th exceptional ideal: `m_{i+1} * ... * m_l`.
    pub multiplicities: Vec<u64>,
    pub charts: Vec<PolarizationChart>,
}

/// `m_i = 1 + ` the largest generator degree of the step ideal on its atlas.
pub fn default_exponents(tower: &ResolutionTower) -> Vec<u32> {
    tower
        .steps
        .iter()
        .map(|s| {
            let d = s
                .ideals
                .iter()
                .filter(|i| !i.identity)
                .map(|i| i.ideal.max_generator_degree())
                .max()
                .unwrap_or(0);
            d.max(0) as u32 + 1
        })
        .collect()
}

pub fn distinguished_polarization(tower: &ResolutionTower, exponents: Option<&[u32]>) -> Result<PolarizationSpec> {
    let l = tower.steps.len();
    let (exps, defaulted) = match exponents {
        Some(e) => (e.to_vec(), false),
        None => (default_exponents(tower), true),
    };
    if exps.len() != l {
        return Err(Error::Domain(format!("expected {l} exponents, got {}", exps.len())));
    }
    if exps.contains(&0) {
        return Err(Error::Domain("exponents must be positive".into()));
    }
    let multiplicities: Vec<u64> = (0..l).map(|i| exps[i + 1..].iter().map(|&m| m as u64).product()).collect();
    let base_exponent: u64 = exps.iter().map(|&m| m as u64).product();
    let base_vars = tower.plan.module.ring().ring().vars().to_vec();
    let charts = tower
        .charts
        .iter()
        .map(|c| {
            let pr = c.ring.ring();
            let mut g = Polynomial::one(pr);
            for (e, &mult) in c.exceptionals.iter().zip(&multiplicities) {
                g = &g * &e.pow(mult as u32);
            }
            let g = c.ring.reduce(&g);
            let invertible = c.ring.is_nonzerodivisor(&g)?;
            if !invertible {
                return Err(Error::CertificateFailed(format!(
                    "exceptional product {g} is not invertible on chart {}",
                    c.label
                )));
            }
            Ok(PolarizationChart {
                label: c.label.clone(),
                exceptional: g.to_string(),
                coordinate: base_vars[c.affine_index].clone(),
                twist: base_exponent,
                invertible,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolarizationSpec {
        exponents: exps,
        defaulted,
        base_exponent,
        multiplicities,
        charts,
    })
}

/// A polynomial interpolated on the first `degree + 2` points and tested on
/// the remaining ones.
#[derive(Clone, Debug, Serialize)]
pub struct Interpolation {
    pub points: Vec<i64>,
    pub extra: Vec<i64>,
    pub polynomial: String,
    pub falling_factorial: String,
    pub reproduces: bool,
    #[serde(skip)]
    pub poly: QPoly,
}

pub fn interpolate_values(values: &[(i64, BigInt)], degree: usize) -> Option<Interpolation> {
    let need = degree + 2;
    if values.len() < need + 2 {
        return None;
    }
    let pts: Vec<(i64, BigRational)> = values[..need]
        .iter()
        .map(|(x, y)| (*x, BigRational::from_integer(y.clone())))
        .collect();
    let poly = QPoly::interpolate(&pts);
    let reproduces = values[need..]
        .iter()
        .all(|(x, y)| poly.eval(*x) == BigRational::from_integer(y.clone()));
    Some(Interpolation {
        points: values[..need].iter().map(|(x, _)| *x).collect(),
        extra: values[need..].iter().map(|(x, _)| *x).collect(),
        polynomial: poly.to_string(),
        falling_factorial: poly.falling_factorial_string("n"),
        reproduces,
        poly,
    })
}

/// `p(m n)` as a polynomial in `n`.
fn rescale(p: &QPoly, m: u64) -> QPoly {
    let mut f = BigRational::from_integer(1.into());
    let mm = BigRational::from_integer(BigInt::from(m));
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| {
            let out = c * &f;
            f = &f * &mm;
            out
        })
        .collect();
    QPoly::new(coeffs)
}

#[derive(Clone, Debug, Serialize)]
pub struct LineRow {
    pub n: u32,
    /// `dim (J^n / t J^n)_{mn}` from the fiber algebra.
    pub fiber: u64,
    /// `dim (I^n)_{mn} + sum_j dim (I^{n-j} / I^{n-j+1})_{mn}` from powers in `A`.
    pub telescoping: u64,
    /// `dim A_{mn}`.
    pub ambient: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberLine {
    pub m: u32,
    pub rows: Vec<LineRow>,
    pub fiber_polynomial: Option<Interpolation>,
    pub ambient_polynomial: Option<Interpolation>,
    /// Hilbert polynomial of `A` at `mn`.
    pub expected: String,
    pub pass: bool,
}

/// Compares the fiber-algebra pieces of degree `mn` with `dim A_{mn}` for
/// `n <= nmax`, then as polynomials.
pub fn fiber_hilbert_line(base: &Arc<CoordRing>, ideal: &Ideal, m: u32, nmax: u32) -> Result<FiberLine> {
    let full = base.ideal(ideal.gens().to_vec());
    let hd: HilbertData = hilbert(&ModulePresentation::free(base, vec![0]))?;
    let unit = full.is_unit();
    if !unit {
        let top = minimal_generator_degree(base, &full)?;
        if top >= m as i64 {
            return Err(Error::Precondition(format!(
                "ideal has generators of degree {top}, not below m = {m}"
            )));
        }
    }
    let model = if unit { None } else { Some(FiberAlgebraModel::new(base, &full)?) };
    let start = first_stable(hd.stabilization, m as u64);
    let rows: Vec<LineRow> = (start..=nmax)
        .into_par_iter()
        .map(|n| {
            let d = (m * n) as i64;
            let ambient = base.relations().quotient_piece_dim(d)?;
            let (fiber, telescoping) = match &model {
                None => (ambient, ambient),
                Some(model) => {
                    let mut tel = model.power_dim(n, d)?;
                    for j in 1..=n {
                        tel += model.power_dim(n - j, d)? - model.power_dim(n - j + 1, d)?;
                    }
                    (model.rees_fiber_dim(n, d)?, tel)
                }
            };
            Ok(LineRow {
                n,
                fiber,
                telescoping,
                ambient,
            })
        })
        .collect::<Result<_>>()?;
    let degree = base.ring().nvars().saturating_sub(1);
    let series = |f: fn(&LineRow) -> u64| -> Vec<(i64, BigInt)> {
        rows.iter().map(|r| (r.n as i64, BigInt::from(f(r)))).collect()
    };
    let fp = interpolate_values(&series(|r| r.fiber), degree);
    let ap = interpolate_values(&series(|r| r.ambient), degree);
    let expected = rescale(&hd.polynomial, m as u64);
    let rows_ok = rows.iter().all(|r| r.fiber == r.ambient && r.telescoping == r.ambient);
    let poly_ok = match (&fp, &ap) {
        (Some(a), Some(b)) => a.reproduces && b.reproduces && a.poly == b.poly && a.poly == expected,
        _ => true,
    };
    Ok(FiberLine {
        m,
        rows,
        fiber_polynomial: fp,
        ambient_polynomial: ap,
        expected: expected.to_string(),
        pass: rows_ok && poly_ok,
    })
}

fn first_stable(stabilization: i64, m: u64) -> u32 {
    (0..).find(|&n: &u32| (n as i64) * m as i64 >= stabilization).unwrap()
}

fn minimal_generator_degree(base: &Arc<CoordRing>, ideal: &Ideal) -> Result<i64> {
    let gens: Vec<Polynomial> = ideal.gens().iter().filter(|g| !base.is_zero(g)).cloned().collect();
    let pm = ModulePresentation::ideal(base, &gens)?;
    Ok(pm.target().degrees().into_iter().max().unwrap_or(0))
}

#[derive(Clone, Debug, Serialize)]
pub struct SheafRow {
    pub n: u32,
    /// `dim (J^n M / t J^n M)_{mn}`.
    pub surrogate: u64,
    /// `dim M_{mn}`.
    pub function: u64,
    /// Hilbert polynomial of `M` at `mn`.
    pub expected: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SheafHilbertReport {
    pub label: String,
    pub attested: bool,
    pub m: u64,
    pub rows: Vec<SheafRow>,
    pub interpolation: Option<Interpolation>,
    pub expected: String,
    pub pass: bool,
}

/// The graded surrogate for the twisted Euler characteristic of the final
/// module in degrees `mn`, built from the first step ideal. Without attestation that the input
/// deforms to a locally free sheaf the result is informational only.
pub fn sheaf_hilbert_check(
    tower: &ResolutionTower,
    m: u64,
    nmax: u32,
    attested: bool,
) -> Result<SheafHilbertReport> {
    let module = &tower.plan.module;
    let base = module.ring();
    let hd = hilbert(module)?;
    let model = match &tower.global_first_ideal {
        Some(i) => Some(FiberAlgebraModel::new(base, i)?),
        None => None,
    };
    let start = first_stable(hd.stabilization, m);
    let rows: Vec<SheafRow> = (start..=nmax)
        .into_par_iter()
        .map(|n| {
            let d = (m * n as u64) as i64;
            let function = module_piece_dim(module, d)?;
            let surrogate = match &model {
                Some(model) => model.module_fiber_dim(module, n, d)?,
                None => function,
            };
            Ok(SheafRow {
                n,
                surrogate,
                function,
                expected: hd.polynomial.eval(d).to_string(),
            })
        })
        .collect::<Result<_>>()?;
    let degree = base.ring().nvars().saturating_sub(1);
    let values: Vec<(i64, BigInt)> = rows.iter().map(|r| (r.n as i64, BigInt::from(r.surrogate))).collect();
    let interpolation = interpolate_values(&values, degree);
    let expected = rescale(&hd.polynomial, m);
    let rows_ok = rows
        .iter()
        .all(|r| r.surrogate == r.function && BigRational::from_integer(BigInt::from(r.surrogate)) == expected.eval(r.n as i64));
    let poly_ok = interpolation.as_ref().is_none_or(|i| i.reproduces && i.poly == expected);
    Ok(SheafHilbertReport {
        label: if attested { "certificate" } else { "informational" }.into(),
        attested,
        m,
        rows,
        interpolation,
        expected: expected.to_string(),
        pass: rows_ok && poly_ok,
    })
}
