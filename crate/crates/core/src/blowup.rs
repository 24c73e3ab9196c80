//! Blowups of affine charts along ideals, realized chart by chart.

use std::sync::Arc;

use num::{BigRational, One};
use rayon::prelude::*;
use serde::Serialize;

use crate::coord::CoordRing;
use crate::error::{Error, Result};
use crate::homological::torsion_submodule;
use crate::ideal::{fresh_name, Ideal};
use crate::module::{saturate_by_element, ModulePresentation, Submodule};
use crate::poly::{PolyRing, Polynomial, TermOrder};

/// `A[T_0..T_k] / P` with `P` the kernel of `T_j -> f_j`.
#[derive(Clone, Debug)]
pub struct ReesPresentation {
    pub base: Arc<CoordRing>,
    pub gens: Vec<Polynomial>,
    pub ring: Arc<PolyRing>,
    pub tvars: Vec<String>,
    pub defining: Ideal,
}

/// Nonzero elements of the reduced Gröbner basis of `ideal` modulo the base
/// relations, or an error when the blowup would be the identity.
pub fn blowup_generators(base: &CoordRing, ideal: &Ideal) -> Result<Vec<Polynomial>> {
    let full = base.ideal(ideal.gens().to_vec());
    if full.is_unit() {
        return Err(Error::DegenerateBlowup("unit ideal".into()));
    }
    let gens: Vec<Polynomial> = full
        .gb()
        .iter()
        .filter(|g| !base.is_zero(g))
        .cloned()
        .collect();
    if gens.is_empty() {
        return Err(Error::DegenerateBlowup("zero ideal".into()));
    }
    Ok(gens)
}

pub fn rees(base: &Arc<CoordRing>, ideal: &Ideal) -> Result<ReesPresentation> {
    let gens = blowup_generators(base, ideal)?;
    let pr = base.ring();
    let mut names: Vec<String> = pr.vars().to_vec();
    let mut tvars = Vec::new();
    for j in 0..gens.len() {
        let probe = PolyRing::affine(pr.name(), &names)?;
        let t = fresh_name(&probe, &format!("T{j}"));
        names.push(t.clone());
        tvars.push(t);
    }
    let s = fresh_name(&*PolyRing::affine(pr.name(), &names)?, "s");
    let mut all = names.clone();
    all.push(s.clone());
    let big = PolyRing::affine(pr.name(), &all)?;
    let sv = Polynomial::var_named(&big, &s)?;
    let mut rels = Vec::new();
    for g in base.relations().gens() {
        rels.push(g.to_ring(&big)?);
    }
    for (j, f) in gens.iter().enumerate() {
        let t = Polynomial::var_named(&big, &tvars[j])?;
        rels.push(&t - &(&sv * &f.to_ring(&big)?));
    }
    let defining = Ideal::new(&big, rels)?.eliminate(&[s.as_str()])?;
    let ring = defining.ring().clone();
    // Drop the base relations; the Rees ideal lives over A.
    let extra: Vec<Polynomial> = defining
        .gb()
        .iter()
        .filter(|g| tvars.iter().any(|t| g.uses_var(ring.var_index(t).unwrap())))
        .cloned()
        .collect();
    let defining = Ideal::new(&ring, extra)?;
    Ok(ReesPresentation {
        base: base.clone(),
        gens,
        ring,
        tvars,
        defining,
    })
}

impl ReesPresentation {
    /// Substituting `T_j = f_j` kills every defining generator modulo the base.
    pub fn substitution_check(&self) -> bool {
        let pr = self.base.ring();
        let images: Vec<Polynomial> = self
            .ring
            .vars()
            .iter()
            .map(|v| match self.tvars.iter().position(|t| t == v) {
                Some(j) => self.gens[j].clone(),
                None => Polynomial::var_named(pr, v).unwrap(),
            })
            .collect();
        self.defining
            .gens()
            .iter()
            .all(|g| self.base.is_zero(&g.substitute(&images, pr)))
    }
}

/// One affine chart `A[I / f_j]` of a blowup.
#[derive(Clone, Debug)]
pub struct BlowupChart {
    pub index: usize,
    pub ring: Arc<CoordRing>,
    /// Images of the base variables.
    pub base_images: Vec<Polynomial>,
    /// Images of `f_i / f_j` for every generator `i`; entry `index` is one.
    pub ratio_images: Vec<Polynomial>,
    pub exceptional: Polynomial,
}

#[derive(Clone, Debug)]
pub struct ChartAtlas {
    pub level: usize,
    pub base: Arc<CoordRing>,
    pub gens: Vec<Polynomial>,
    pub charts: Vec<BlowupChart>,
}

/// A chart ring still carrying the names of the variables it was built from.
struct Draft {
    ring: Arc<PolyRing>,
    ideal: Ideal,
    images: Vec<Polynomial>,
}

impl Draft {
    /// Eliminates variables occurring only linearly with a constant
    /// coefficient in some relation.
    fn simplify(mut self) -> Result<Draft> {
        while let Some((g, v)) = find_linear(&self.ideal) {
            let keep: Vec<String> = self
                .ring
                .vars()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != v)
                .map(|(_, s)| s.clone())
                .collect();
            let next = PolyRing::affine(self.ring.name(), &keep)?;
            let c = g
                .terms()
                .iter()
                .find(|t| t.mon.exp(v) == 1)
                .map(|t| t.coeff.clone())
                .unwrap();
            let lin = Polynomial::var(&self.ring, v).scale(&c);
            let rest = (&g - &lin).scale(&(-BigRational::one() / c));
            let subst: Vec<Polynomial> = (0..self.ring.nvars())
                .map(|i| {
                    if i == v {
                        rest.to_ring(&next)
                    } else {
                        Polynomial::var(&self.ring, i).to_ring(&next)
                    }
                })
                .collect::<Result<_>>()?;
            let gens = self
                .ideal
                .gens()
                .iter()
                .map(|p| p.substitute(&subst, &next))
                .filter(|p| !p.is_zero())
                .collect();
            let ideal = Ideal::new(&next, gens)?.normalized();
            let images = self.images.iter().map(|p| p.substitute(&subst, &next)).collect();
            self = Draft {
                ring: next,
                ideal,
                images,
            };
        }
        Ok(self)
    }
}

fn find_linear(ideal: &Ideal) -> Option<(Polynomial, usize)> {
    let n = ideal.ring().nvars();
    for g in ideal.gb() {
        for v in 0..n {
            let with_v: Vec<_> = g.terms().iter().filter(|t| t.mon.exp(v) > 0).collect();
            if with_v.len() == 1 && with_v[0].mon == crate::poly::Monomial::var(n, v) {
                return Some((g.clone(), v));
            }
        }
    }
    None
}

/// Charts of the blowup, one per generator `f_j`; charts whose ring
/// collapses to zero are omitted. `prefix` names the ratio variables.
pub fn charts(rees: &ReesPresentation, level: usize, prefix: &str) -> Result<ChartAtlas> {
    let base = &rees.base;
    let pr = base.ring();
    let k = rees.gens.len();
    if k == 1 {
        let ids: Vec<Polynomial> = (0..pr.nvars()).map(|i| Polynomial::var(pr, i)).collect();
        let chart = BlowupChart {
            index: 0,
            ring: base.clone(),
            base_images: ids,
            ratio_images: vec![Polynomial::one(pr)],
            exceptional: rees.gens[0].clone(),
        };
        return Ok(ChartAtlas {
            level,
            base: base.clone(),
            gens: rees.gens.clone(),
            charts: vec![chart],
        });
    }
    let built: Vec<Option<BlowupChart>> = (0..k)
        .into_par_iter()
        .map(|j| build_chart(rees, j, prefix))
        .collect::<Result<_>>()?;
    Ok(ChartAtlas {
        level,
        base: base.clone(),
        gens: rees.gens.clone(),
        charts: built.into_iter().flatten().collect(),
    })
}

fn build_chart(rees: &ReesPresentation, j: usize, prefix: &str) -> Result<Option<BlowupChart>> {
    let base = &rees.base;
    let pr = base.ring();
    let k = rees.gens.len();
    let mut names: Vec<String> = pr.vars().to_vec();
    let mut uname = vec![String::new(); k];
    for i in (0..k).filter(|&i| i != j) {
        let probe = PolyRing::affine(pr.name(), &names)?;
        let u = fresh_name(&probe, &format!("{prefix}_{i}"));
        names.push(u.clone());
        uname[i] = u;
    }
    let ring = PolyRing::affine(pr.name(), &names)?;
    let lift = |p: &Polynomial| p.to_ring(&ring);
    let fj = lift(&rees.gens[j])?;
    let mut rels: Vec<Polynomial> = base.relations().gens().iter().map(lift).collect::<Result<_>>()?;
    for i in (0..k).filter(|&i| i != j) {
        let u = Polynomial::var_named(&ring, &uname[i])?;
        rels.push(&(&u * &fj) - &lift(&rees.gens[i])?);
    }
    let ideal = Ideal::new(&ring, rels)?.saturate_by(&fj)?;
    if ideal.is_unit() {
        return Ok(None);
    }
    let mut images: Vec<Polynomial> = (0..pr.nvars()).map(|i| Polynomial::var(&ring, i)).collect();
    for (i, name) in uname.iter().enumerate() {
        images.push(if i == j {
            Polynomial::one(&ring)
        } else {
            Polynomial::var_named(&ring, name)?
        });
    }
    let draft = Draft {
        ring,
        ideal,
        images,
    }
    .simplify()?;
    let ring = if draft.ideal.is_zero() {
        CoordRing::polynomial(&draft.ring)
    } else {
        CoordRing::quotient(&draft.ring, draft.ideal.gens().to_vec(), base.is_integral())?
    };
    let n = pr.nvars();
    let base_images: Vec<Polynomial> = draft.images[..n].iter().map(|p| ring.reduce(p)).collect();
    let ratio_images: Vec<Polynomial> = draft.images[n..].iter().map(|p| ring.reduce(p)).collect();
    let exceptional = ring.reduce(&rees.gens[j].substitute(&base_images, ring.ring()));
    Ok(Some(BlowupChart {
        index: j,
        ring,
        base_images,
        ratio_images,
        exceptional,
    }))
}

/// Result of comparing two charts on their overlap.
#[derive(Clone, Debug, Serialize)]
pub struct TransitionCheck {
    pub from: usize,
    pub to: usize,
    /// `variable -> (numerator, denominator)` in the target chart.
    pub substitutions: Vec<(String, String, String)>,
    pub pass: bool,
}

impl BlowupChart {
    /// Rings' variables that are ratio variables, with the generator index.
    fn ratio_var(&self, atlas: &ChartAtlas, v: usize) -> Option<usize> {
        let x = Polynomial::var(self.ring.ring(), v);
        if atlas.base.ring().var_index(&self.ring.ring().vars()[v]).is_some() {
            return None;
        }
        self.ratio_images.iter().position(|p| *p == x)
    }
}

/// Image of a polynomial on chart `m` in chart `j`, as `N / d^D` with
/// `d = f_m / f_j`. Returns `(N, D)`.
fn transport(atlas: &ChartAtlas, m: usize, j: usize, p: &Polynomial) -> Result<(Polynomial, u32)> {
    let cm = &atlas.charts[m];
    let cj = &atlas.charts[j];
    let target = cj.ring.ring();
    let d = &cj.ratio_images[cm.index];
    let rm = cm.ring.ring();
    let mut kinds = Vec::with_capacity(rm.nvars());
    for v in 0..rm.nvars() {
        let kind = match cm.ratio_var(atlas, v) {
            Some(i) => (cj.ratio_images[i].clone(), 1u32),
            None => {
                let bi = atlas
                    .base
                    .ring()
                    .var_index(&rm.vars()[v])
                    .ok_or_else(|| Error::Domain(format!("chart variable {} has no meaning", rm.vars()[v])))?;
                (cj.base_images[bi].clone(), 0u32)
            }
        };
        kinds.push(kind);
    }
    let big_d: u32 = p
        .terms()
        .iter()
        .map(|t| (0..rm.nvars()).map(|v| t.mon.exp(v) * kinds[v].1).sum::<u32>())
        .max()
        .unwrap_or(0);
    let mut acc = Polynomial::zero(target);
    for t in p.terms() {
        let mut term = Polynomial::constant(target, t.coeff.clone());
        let mut used = 0u32;
        for (v, (image, weight)) in kinds.iter().enumerate().take(rm.nvars()) {
            let e = t.mon.exp(v);
            if e > 0 {
                term = &term * &image.pow(e);
                used += e * weight;
            }
        }
        term = &term * &d.pow(big_d - used);
        acc = &acc + &term;
    }
    Ok((cj.ring.reduce(&acc), big_d))
}

fn fraction_string(num: &Polynomial, d: &Polynomial, e: u32) -> (String, String) {
    (num.to_string(), d.pow(e).to_string())
}

impl ChartAtlas {
    pub fn is_identity(&self) -> bool {
        self.gens.len() == 1
    }

    /// Checks that chart `m` maps into chart `j` on the overlap: relations go
    /// to zero and base coordinates and ratios agree, modulo the overlap
    /// saturation.
    pub fn check_transition(&self, m: usize, j: usize) -> Result<TransitionCheck> {
        let cm = &self.charts[m];
        let cj = &self.charts[j];
        let d = cj.ratio_images[cm.index].clone();
        let mut subs = Vec::new();
        for v in 0..cm.ring.ring().nvars() {
            let x = Polynomial::var(cm.ring.ring(), v);
            let (n, e) = transport(self, m, j, &x)?;
            let (a, b) = fraction_string(&n, &d, e);
            subs.push((cm.ring.ring().vars()[v].clone(), a, b));
        }
        if cj.ring.is_zero(&d) {
            return Ok(TransitionCheck {
                from: m,
                to: j,
                substitutions: subs,
                pass: true,
            });
        }
        let sat = cj.ring.relations().saturate_by(&d)?;
        let mut ok = true;
        for g in cm.ring.relations().gens() {
            let (n, _) = transport(self, m, j, g)?;
            ok &= sat.contains(&n);
        }
        // Expected images: base variable x is `x_j / 1`, ratio i is `r_i / d`.
        let mut checks: Vec<(Polynomial, Polynomial, u32)> = Vec::new();
        for (bi, p) in cm.base_images.iter().enumerate() {
            checks.push((p.clone(), cj.base_images[bi].clone(), 0));
        }
        for (i, p) in cm.ratio_images.iter().enumerate() {
            checks.push((p.clone(), cj.ratio_images[i].clone(), 1));
        }
        for (p, expect, e) in checks {
            let (n, big_d) = transport(self, m, j, &p)?;
            let lhs = &n * &d.pow(e);
            let rhs = &expect * &d.pow(big_d);
            ok &= sat.contains(&(&lhs - &rhs));
        }
        Ok(TransitionCheck {
            from: m,
            to: j,
            substitutions: subs,
            pass: ok,
        })
    }

    /// All ordered pairs of distinct charts.
    pub fn check_transitions(&self) -> Result<Vec<TransitionCheck>> {
        let pairs: Vec<(usize, usize)> = (0..self.charts.len())
            .flat_map(|m| (0..self.charts.len()).filter(move |&j| j != m).map(move |j| (m, j)))
            .collect();
        pairs
            .into_par_iter()
            .map(|(m, j)| self.check_transition(m, j))
            .collect()
    }

    /// On every chart the pulled-back ideal is generated by the exceptional
    /// element, which is a nonzerodivisor.
    pub fn exceptional_principal(&self) -> Result<bool> {
        for c in &self.charts {
            let e = Ideal::new(c.ring.ring(), vec![c.exceptional.clone()])?;
            let e = c.ring.ideal(e.gens().to_vec());
            let pulled: Vec<Polynomial> = self
                .gens
                .iter()
                .map(|g| g.substitute(&c.base_images, c.ring.ring()))
                .collect();
            let p = c.ring.ideal(pulled);
            if !c.ring.ideals_equal(&e, &p) || !c.ring.is_nonzerodivisor(&c.exceptional)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Pulls an ideal of the base back to every chart.
    pub fn pullback_ideal(&self, ideal: &Ideal) -> Vec<Ideal> {
        self.charts
            .iter()
            .map(|c| {
                let gens = ideal
                    .gens()
                    .iter()
                    .map(|g| c.ring.reduce(&g.substitute(&c.base_images, c.ring.ring())))
                    .collect();
                c.ring.ideal(gens)
            })
            .collect()
    }
}

/// `σ*M / torsion` on every chart, with the saturated relations on the
/// pulled-back generators.
pub fn pullback_strict(m: &ModulePresentation, atlas: &ChartAtlas) -> Result<Vec<(ModulePresentation, Vec<Vec<Polynomial>>)>> {
    if m.ring().as_ref() != atlas.base.as_ref() {
        return Err(Error::RingMismatch("module is not over the blown-up ring".into()));
    }
    atlas
        .charts
        .par_iter()
        .map(|c| {
            let pb = m.pullback(&c.base_images, &c.ring);
            let split = torsion_submodule(&pb)?;
            Ok((split.quotient, split.relations))
        })
        .collect()
}

/// Relations computed independently on two charts agree on the overlap, for
/// every pair of charts.
pub fn strict_transforms_compatible(atlas: &ChartAtlas, relations: &[Vec<Vec<Polynomial>>], rank: usize) -> Result<bool> {
    let n = atlas.charts.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|m| (0..n).filter(move |&j| j != m).map(move |j| (m, j)))
        .collect();
    let verdicts: Vec<bool> = pairs
        .into_par_iter()
        .map(|(m, j)| -> Result<bool> {
            let cj = &atlas.charts[j];
            let d = &cj.ratio_images[atlas.charts[m].index];
            if cj.ring.is_zero(d) {
                return Ok(true);
            }
            let degrees = vec![0; rank];
            let sat = saturate_by_element(&cj.ring, &degrees, &relations[j], d);
            let sub = Submodule::new(&cj.ring, &degrees, &sat);
            for v in &relations[m] {
                let parts: Vec<(Polynomial, u32)> = v
                    .iter()
                    .map(|p| transport(atlas, m, j, p))
                    .collect::<Result<_>>()?;
                let top = parts.iter().map(|(_, e)| *e).max().unwrap_or(0);
                let w: Vec<Polynomial> = parts
                    .into_iter()
                    .map(|(p, e)| cj.ring.reduce(&(&p * &d.pow(top - e))))
                    .collect();
                if !sub.contains(&w) {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect::<Result<_>>()?;
    Ok(verdicts.into_iter().all(|b| b))
}

/// Dehomogenization of a graded ring at `x_i = 1`, as an affine chart with
/// the remaining variables.
pub fn standard_chart(ring: &Arc<CoordRing>, i: usize) -> Result<(Arc<CoordRing>, Vec<Polynomial>)> {
    let pr = ring.ring();
    let keep: Vec<String> = pr
        .vars()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, v)| v.clone())
        .collect();
    let target = PolyRing::with_options(
        &format!("{}_{}", pr.name(), pr.vars()[i]),
        keep.clone(),
        vec![1; keep.len()],
        TermOrder::GrevLex,
        pr.field().clone(),
        false,
    )?;
    let images: Vec<Polynomial> = (0..pr.nvars())
        .map(|k| {
            if k == i {
                Polynomial::one(&target)
            } else {
                Polynomial::var_named(&target, &pr.vars()[k]).unwrap()
            }
        })
        .collect();
    let rels: Vec<Polynomial> = ring
        .relations()
        .gens()
        .iter()
        .map(|g| g.substitute(&images, &target))
        .filter(|g| !g.is_zero())
        .collect();
    let coord = if rels.is_empty() {
        CoordRing::polynomial(&target)
    } else {
        CoordRing::quotient(&target, rels, ring.is_integral())?
    };
    Ok((coord, images))
}
