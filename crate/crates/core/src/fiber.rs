//! The zero-fiber algebra of the deformation to the normal cone, modelled by
//! bigraded pieces of powers of `J = I A[t] + (t)`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::coord::CoordRing;
use crate::error::{Error, Result};
use crate::ideal::{fresh_name, Ideal};
use crate::module::{intersect, quotient_by_element, ModulePresentation, Submodule};
use crate::poly::{monomials_of_degree, Monomial, PolyRing, Polynomial};

/// A graded base ring `A`, a homogeneous ideal `I`, and `A[t]` with `t`
/// tracked as a second grading.
#[derive(Clone, Debug)]
pub struct FiberAlgebraModel {
    base: Arc<CoordRing>,
    ideal: Ideal,
    ext: Arc<CoordRing>,
    t: Polynomial,
    lift: Vec<Polynomial>,
}

/// One row of the dimension tables at Rees degree `s`, internal degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberRow {
    pub s: u32,
    pub d: i64,
    /// `dim (J^s / J^{s+1})_d`.
    pub graded_piece: u64,
    /// `sum_{q <= s} dim (I^{s-q} / I^{s-q+1})_d`.
    pub summands: u64,
    /// `dim (J^s / t J^s)_d`.
    pub rees_fiber: u64,
    /// `dim A_d`.
    pub ambient: u64,
    pub flat: bool,
}

impl FiberAlgebraModel {
    pub fn new(base: &Arc<CoordRing>, ideal: &Ideal) -> Result<Self> {
        if !base.is_graded() {
            return Err(Error::Scope("fiber algebra tables need a graded base".into()));
        }
        let pr = base.ring();
        if pr.weights().iter().any(|&w| w != 1) {
            return Err(Error::Scope("fiber algebra tables need standard grading".into()));
        }
        let ideal = base.ideal(ideal.gens().to_vec());
        if ideal.is_unit() || base.is_zero_ideal(&ideal) {
            return Err(Error::Precondition("fiber algebra needs a proper nonzero ideal".into()));
        }
        let tname = fresh_name(pr, "t");
        let mut vars = pr.vars().to_vec();
        vars.push(tname.clone());
        let ring = PolyRing::new(pr.name(), &vars)?;
        let rels = base
            .relations()
            .gens()
            .iter()
            .map(|g| g.to_ring(&ring))
            .collect::<Result<Vec<_>>>()?;
        let ext = if rels.is_empty() {
            CoordRing::polynomial(&ring)
        } else {
            CoordRing::quotient(&ring, rels, base.is_integral())?
        };
        let t = Polynomial::var_named(&ring, &tname)?;
        let lift = (0..pr.nvars()).map(|i| Polynomial::var(&ring, i)).collect();
        Ok(FiberAlgebraModel {
            base: base.clone(),
            ideal,
            ext,
            t,
            lift,
        })
    }

    pub fn base(&self) -> &Arc<CoordRing> {
        &self.base
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ext(&self) -> &Arc<CoordRing> {
        &self.ext
    }

    pub fn t(&self) -> &Polynomial {
        &self.t
    }

    /// Minimal-ish generators of `I^k`, modulo the base relations.
    pub fn power_gens(&self, k: u32) -> Result<Vec<Polynomial>> {
        let pr = self.base.ring();
        if k == 0 {
            return Ok(vec![Polynomial::one(pr)]);
        }
        let gens: Vec<Polynomial> = self
            .ideal
            .gens()
            .iter()
            .filter(|g| !self.base.is_zero(g))
            .cloned()
            .collect();
        let p = Ideal::new(pr, gens)?.power(k as i64)?;
        Ok(p.gb().iter().filter(|g| !self.base.is_zero(g)).cloned().collect())
    }

    fn to_ext(&self, p: &Polynomial) -> Polynomial {
        p.substitute(&self.lift, self.ext.ring())
    }

    /// `J^s = sum_q t^q I^{s-q}` in `A[t]`.
    pub fn j_power(&self, s: u32) -> Result<Ideal> {
        let mut gens = Vec::new();
        for q in 0..=s {
            let tq = self.t.pow(q);
            for g in self.power_gens(s - q)? {
                gens.push(&tq * &self.to_ext(&g));
            }
        }
        Ok(self.ext.ideal(gens))
    }

    /// `dim (I^k)_d` in `A`.
    pub fn power_dim(&self, k: u32, d: i64) -> Result<u64> {
        let p = self.base.ideal(self.power_gens(k)?);
        Ok(p.graded_piece_dim(d)? - self.base.relations().graded_piece_dim(d)?)
    }

    pub fn ambient_dim(&self, d: i64) -> Result<u64> {
        self.base.relations().quotient_piece_dim(d)
    }

    /// Dimension and flatness tables for `s <= smax`, `0 <= d <= dmax`.
    pub fn table(&self, smax: u32, dmax: i64) -> Result<Vec<FiberRow>> {
        let powers: Vec<Ideal> = (0..=smax + 1)
            .into_par_iter()
            .map(|s| self.j_power(s))
            .collect::<Result<_>>()?;
        let t_multiples: Vec<Ideal> = (0..=smax)
            .into_par_iter()
            .map(|s| {
                let gens = powers[s as usize].gens().iter().map(|g| &self.t * g).collect();
                Ok(self.ext.ideal(gens))
            })
            .collect::<Result<_>>()?;
        let assoc: Vec<Vec<u64>> = (0..=smax + 1)
            .into_par_iter()
            .map(|k| (0..=dmax).map(|d| self.power_dim(k, d)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let nbase = self.base.ring().nvars();
        let cells: Vec<(u32, i64)> = (0..=smax).flat_map(|s| (0..=dmax).map(move |d| (s, d))).collect();
        cells
            .into_par_iter()
            .map(|(s, d)| {
                let su = s as usize;
                let du = d as usize;
                let mut graded = 0i64;
                let mut rees = 0i64;
                for q in 0..=s {
                    let a = lead_count(&powers[su], nbase, d, q) as i64;
                    graded += a - lead_count(&powers[su + 1], nbase, d, q) as i64;
                    rees += a - lead_count(&t_multiples[su], nbase, d, q) as i64;
                }
                let summands: u64 = (0..=s)
                    .map(|q| {
                        let k = (s - q) as usize;
                        assoc[k][du] - assoc[k + 1][du]
                    })
                    .sum();
                Ok(FiberRow {
                    s,
                    d,
                    graded_piece: graded as u64,
                    summands,
                    rees_fiber: rees as u64,
                    ambient: self.ambient_dim(d)?,
                    flat: graded as u64 == summands,
                })
            })
            .collect()
    }

    /// `dim (J^s / t J^s)_d`, from Gröbner bases in `A[t]`.
    pub fn rees_fiber_dim(&self, s: u32, d: i64) -> Result<u64> {
        let js = self.j_power(s)?;
        let tjs = self.ext.ideal(js.gens().iter().map(|g| &self.t * g).collect());
        let nbase = self.base.ring().nvars();
        let mut total = 0i64;
        for q in 0..=s {
            total += lead_count(&js, nbase, d, q) as i64 - lead_count(&tjs, nbase, d, q) as i64;
        }
        Ok(total as u64)
    }

    /// `dim (J^s M / t J^s M)_d` for `M = F0 / U`, from module Gröbner bases
    /// of `J^s F0[t] + U[t]` and `t J^s F0[t] + U[t]`.
    pub fn module_fiber_dim(&self, module: &ModulePresentation, s: u32, d: i64) -> Result<u64> {
        if module.ring().as_ref() != self.base.as_ref() {
            return Err(Error::RingMismatch("module is not over the fiber base".into()));
        }
        let degrees = module.target().degrees();
        let r = degrees.len();
        let er = self.ext.ring();
        let u: Vec<Vec<Polynomial>> = module
            .relations()
            .iter()
            .map(|v| v.iter().map(|p| self.to_ext(p)).collect())
            .collect();
        let js = self.j_power(s)?;
        let mut big = Vec::new();
        let mut small = Vec::new();
        for g in js.gens() {
            let tg = &self.t * g;
            for i in 0..r {
                let mut v = vec![Polynomial::zero(er); r];
                v[i] = g.clone();
                big.push(v.clone());
                v[i] = tg.clone();
                small.push(v);
            }
        }
        big.extend(u.iter().cloned());
        small.extend(u);
        let nbase = self.base.ring().nvars();
        let a = Submodule::new(&self.ext, &degrees, &big);
        let b = Submodule::new(&self.ext, &degrees, &small);
        let mut total = 0i64;
        for q in 0..=s {
            total += module_standard_count(&b, &degrees, nbase, d, q) as i64
                - module_standard_count(&a, &degrees, nbase, d, q) as i64;
        }
        Ok(total as u64)
    }
}

/// Number of monomials `x^a t^q` with `|a| = d` in the leading ideal.
fn lead_count(ideal: &Ideal, nbase: usize, d: i64, q: u32) -> u64 {
    let leads: Vec<&Monomial> = ideal.gb().iter().filter_map(|g| g.lead_monomial()).collect();
    monomials_of_degree(&vec![1; nbase], d)
        .into_iter()
        .filter(|m| {
            let mut e = m.exps().to_vec();
            e.push(q);
            let full = Monomial::new(e);
            leads.iter().any(|l| l.divides(&full))
        })
        .count() as u64
}

/// Number of standard monomials `x^a t^q e_i` of internal degree `d` for a
/// submodule of `A[t]^r` with basis degrees `degrees`.
pub fn module_standard_count(sub: &Submodule, degrees: &[i64], nbase: usize, d: i64, q: u32) -> u64 {
    let leads = sub.leading_monomials();
    let mut count = 0;
    for (i, ls) in leads.iter().enumerate() {
        for m in monomials_of_degree(&vec![1; nbase], d - degrees[i]) {
            let mut e = m.exps().to_vec();
            e.push(q);
            let full = Monomial::new(e);
            if !ls.iter().any(|l| l.divides(&full)) {
                count += 1;
            }
        }
    }
    count
}

/// Outcome of the monomorphism test on the graded model.
#[derive(Clone, Debug, Serialize)]
pub struct EvVerdict {
    pub applicable: bool,
    pub pass: bool,
    /// `(s, q, ok)` for every slice examined.
    pub slices: Vec<(u32, u32, bool)>,
    /// A vector of `F0` in the kernel, when one exists.
    pub witness: Option<Vec<String>>,
}

/// Tests that the comparison map on every slice `t^q` of Rees degree `s` is
/// injective: `(I^{s-q} F0 + U) ∩ T_{s,q} ⊆ I^{s-q+1} F0 + U`, where
/// `T_{s,q}` is the `t^q` slice of `J^{s+1} F0[t] + U[t]`. With `corrupt`,
/// one non-redundant generator of the comparison target at `(1, 0)` is
/// dropped.
pub fn ev_monomorphism_check(
    model: &FiberAlgebraModel,
    module: &ModulePresentation,
    smax: u32,
    corrupt: bool,
) -> Result<EvVerdict> {
    if module.ring().as_ref() != model.base.as_ref() {
        return Err(Error::RingMismatch("module is not over the fiber base".into()));
    }
    let principal = model.power_gens(1)?.len() == 1;
    if principal && !corrupt {
        return Ok(EvVerdict {
            applicable: false,
            pass: true,
            slices: Vec::new(),
            witness: None,
        });
    }
    let base = &model.base;
    let ext = &model.ext;
    let degrees = module.target().degrees();
    let r = degrees.len();
    let u: Vec<Vec<Polynomial>> = module.relations().to_vec();
    let u_ext: Vec<Vec<Polynomial>> = u.iter().map(|v| v.iter().map(|p| model.to_ext(p)).collect()).collect();
    let pr = base.ring();
    let mut drop_t: Vec<Polynomial> = (0..pr.nvars()).map(|i| Polynomial::var(pr, i)).collect();
    drop_t.push(Polynomial::zero(pr));

    let spread = |gens: &[Polynomial], ring: &Arc<PolyRing>| -> Vec<Vec<Polynomial>> {
        let mut out = Vec::new();
        for g in gens {
            for i in 0..r {
                let mut v = vec![Polynomial::zero(ring); r];
                v[i] = g.clone();
                out.push(v);
            }
        }
        out
    };

    let mut slices = Vec::new();
    let mut witness = None;
    for s in 0..=smax {
        let mut big = spread(model.j_power(s + 1)?.gens(), ext.ring());
        big.extend(u_ext.iter().cloned());
        for q in 0..=s {
            let k = s - q;
            let mut src = spread(&model.power_gens(k)?, pr);
            src.extend(u.iter().cloned());
            let mut rel = spread(&model.power_gens(k + 1)?, pr);
            rel.extend(u.iter().cloned());
            if corrupt && s == 1 && q == 0 {
                rel = drop_one_generator(base, &degrees, rel);
            }
            let tq = model.t.pow(q);
            let slice: Vec<Vec<Polynomial>> = quotient_by_element(ext, &degrees, &big, &tq)
                .into_iter()
                .map(|v| v.iter().map(|p| base.reduce(&p.substitute(&drop_t, pr))).collect::<Vec<_>>())
                .filter(|v| v.iter().any(|p| !p.is_zero()))
                .collect();
            let meet = intersect(base, &degrees, &src, &slice);
            let target = Submodule::new(base, &degrees, &rel);
            let bad = meet.iter().find(|v| !target.contains(v));
            slices.push((s, q, bad.is_none()));
            if let (Some(v), None) = (bad, &witness) {
                witness = Some(v.iter().map(|p| p.to_string()).collect());
            }
        }
    }
    let pass = slices.iter().all(|&(_, _, ok)| ok);
    Ok(EvVerdict {
        applicable: true,
        pass,
        slices,
        witness,
    })
}

/// Removes the first generator not in the span of the others.
fn drop_one_generator(ring: &Arc<CoordRing>, degrees: &[i64], gens: Vec<Vec<Polynomial>>) -> Vec<Vec<Polynomial>> {
    for k in 0..gens.len() {
        let rest: Vec<Vec<Polynomial>> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, v)| v.clone())
            .collect();
        if !Submodule::new(ring, degrees, &rest).contains(&gens[k]) {
            return rest;
        }
    }
    gens
}
