//! Towers of blowups that turn a torsion-free graded module into a locally
//! free one, one segment of its minimal resolution at a time.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::blowup::{charts, rees, standard_chart};
use crate::coord::CoordRing;
use crate::error::{Error, Result};
use crate::homological::{
    ext, fitting, generic_rank, ideal_strings, is_invertible_ideal, lemma2_certificate,
    local_freeness_certificate, torsion_submodule,
};
use crate::ideal::Ideal;
use crate::module::{kernel, ModulePresentation, Submodule};
use crate::poly::Polynomial;
use crate::resolution::{free_resolution, segment_triples, FreeResolutionData, SegmentTriple};

/// The minimal resolution of the input and what the tower will consume.
#[derive(Clone, Debug)]
pub struct Plan {
    pub module: ModulePresentation,
    pub resolution: FreeResolutionData,
    pub triples: Vec<SegmentTriple>,
    /// Generic rank of `W_k = coker d_{k+1}` for `k = 0..=length`.
    pub ranks: Vec<usize>,
}

impl Plan {
    pub fn length(&self) -> usize {
        self.resolution.length()
    }
}

fn require_graded_torsion_free(m: &ModulePresentation) -> Result<()> {
    if !m.ring().is_graded() || !m.is_homogeneous() {
        return Err(Error::Inhomogeneous("the tower needs a graded module".into()));
    }
    let pr = m.ring().ring();
    if !m.ring().relations().is_zero() || pr.weights().iter().any(|&w| w != 1) {
        return Err(Error::Scope("the tower runs over a standard graded polynomial ring".into()));
    }
    if !torsion_submodule(m)?.torsion.is_zero_module() {
        return Err(Error::Precondition("module has torsion".into()));
    }
    Ok(())
}

pub fn plan(m: &ModulePresentation) -> Result<Plan> {
    require_graded_torsion_free(m)?;
    let resolution = free_resolution(m, true)?;
    plan_from_resolution(m, resolution)
}

/// A plan from a given, possibly non-minimal, resolution of `m`.
pub fn plan_from_resolution(m: &ModulePresentation, resolution: FreeResolutionData) -> Result<Plan> {
    if !resolution.is_complex() {
        return Err(Error::Precondition("resolution is not a complex".into()));
    }
    let ranks = (0..=resolution.length())
        .map(|k| generic_rank(&resolution.cokernel_at(k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Plan {
        module: m.clone(),
        triples: segment_triples(&resolution),
        resolution,
        ranks,
    })
}

/// An affine chart of the current level, with the images of the homogeneous
/// coordinates and the local generators of every exceptional ideal so far.
#[derive(Clone, Debug)]
pub struct TowerChart {
    pub label: String,
    pub ring: Arc<CoordRing>,
    pub images: Vec<Polynomial>,
    /// Index of the coordinate set to one on the base.
    pub affine_index: usize,
    pub exceptionals: Vec<Polynomial>,
}

/// Certificates for one chart produced by a step.
#[derive(Clone, Debug, Serialize)]
pub struct ChartCertificate {
    pub label: String,
    pub parent: String,
    pub ring: String,
    pub identity: bool,
    pub fitting0: Vec<String>,
    pub fitting0_invertible: bool,
    pub fitting0_is_exceptional: bool,
    pub homological_dimension: Option<usize>,
    pub lemma2: bool,
    pub kernel_locally_free: bool,
    pub strict_locally_free: bool,
    pub strict_rank: usize,
    pub strict_is_image: Option<bool>,
    pub pass: bool,
}

/// The ideal blown up on one chart of the previous level.
#[derive(Clone, Debug)]
pub struct StepIdeal {
    pub label: String,
    pub ideal: Ideal,
    pub identity: bool,
    pub atlas_ok: bool,
}

#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub index: usize,
    /// Position `k` of the segment `W_k` handled by this step.
    pub k: usize,
    pub ideals: Vec<StepIdeal>,
    pub certificates: Vec<ChartCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FinalChart {
    pub label: String,
    pub ring: String,
    pub relations: Vec<Vec<String>>,
    pub rank: usize,
    pub locally_free: bool,
}

#[derive(Clone, Debug)]
pub struct ResolutionTower {
    pub plan: Plan,
    pub steps: Vec<ResolutionStep>,
    pub charts: Vec<TowerChart>,
    pub final_modules: Vec<ModulePresentation>,
    pub final_charts: Vec<FinalChart>,
    /// Saturated homogeneous first step ideal, when there is a step.
    pub global_first_ideal: Option<Ideal>,
    pub global_first_consistent: bool,
}

impl ResolutionTower {
    pub fn rank(&self) -> usize {
        self.plan.ranks[0]
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }
}

/// The standard affine atlas of projective space.
pub fn base_atlas(ring: &Arc<CoordRing>) -> Result<Vec<TowerChart>> {
    let pr = ring.ring();
    (0..pr.nvars())
        .map(|i| {
            let (a, images) = standard_chart(ring, i)?;
            Ok(TowerChart {
                label: pr.vars()[i].clone(),
                ring: a,
                images,
                affine_index: i,
                exceptionals: Vec::new(),
            })
        })
        .collect()
}

/// `σ*W_k` on a chart.
fn pulled_segment(plan: &Plan, chart: &TowerChart, k: usize) -> ModulePresentation {
    plan.resolution.cokernel_at(k).pullback(&chart.images, &chart.ring)
}

/// `Fitt_0(Ext^1(σ*W_k))` on a chart, together with the Ext module.
pub fn step_ideal(w: &ModulePresentation) -> Result<(Ideal, ModulePresentation)> {
    let x = ext(w, 1)?;
    let f = fitting(&x, 0)?;
    Ok((f, x))
}

struct StrictCheck {
    locally_free: bool,
    is_image: Option<bool>,
    module: ModulePresentation,
}

/// `W'_k = σ*W_k / torsion` on a chart: local freeness of the expected rank,
/// and for `k >= 1` equality with the image of `σ*d_k`.
fn strict_check(plan: &Plan, chart: &TowerChart, k: usize) -> Result<StrictCheck> {
    let w = pulled_segment(plan, chart, k);
    let split = torsion_submodule(&w)?;
    let r = plan.ranks[k];
    let locally_free = local_freeness_certificate(&split.quotient, r)?.pass;
    let is_image = if k >= 1 {
        let dk = plan
            .resolution
            .differential(k)
            .substitute(&chart.images, chart.ring.ring())
            .map_entries(chart.ring.ring(), |p| chart.ring.reduce(p));
        let zeros_t = vec![0; dk.nrows()];
        let zeros_s = vec![0; dk.ncols()];
        let ker: Vec<Vec<Polynomial>> = kernel(&chart.ring, &zeros_t, &zeros_s, dk.columns())
            .into_iter()
            .map(|(v, _)| v)
            .collect();
        let a = Submodule::new(&chart.ring, &zeros_s, &ker);
        let b = Submodule::new(&chart.ring, &zeros_s, &split.relations);
        Some(a.contains_all(&split.relations) && b.contains_all(&ker))
    } else {
        None
    };
    Ok(StrictCheck {
        locally_free,
        is_image,
        module: split.quotient,
    })
}

fn certify_child(
    plan: &Plan,
    k: usize,
    parent: &TowerChart,
    child: &TowerChart,
    x: Option<&ModulePresentation>,
    local_base: &[Polynomial],
) -> Result<ChartCertificate> {
    let mut cert = ChartCertificate {
        label: child.label.clone(),
        parent: parent.label.clone(),
        ring: child.ring.to_string(),
        identity: x.is_none(),
        fitting0: vec!["1".into()],
        fitting0_invertible: true,
        fitting0_is_exceptional: true,
        homological_dimension: None,
        lemma2: true,
        kernel_locally_free: true,
        strict_locally_free: false,
        strict_rank: plan.ranks[k],
        strict_is_image: None,
        pass: false,
    };
    if let Some(x) = x {
        let xc = x.pullback(local_base, &child.ring);
        let f0 = fitting(&xc, 0)?;
        cert.fitting0 = ideal_strings(&child.ring, &f0);
        cert.fitting0_invertible = is_invertible_ideal(&child.ring, &f0)?;
        let e = child.exceptionals.last().unwrap().clone();
        cert.fitting0_is_exceptional = child.ring.ideals_equal(&f0, &child.ring.ideal(vec![e]));
        let verdict = lemma2_certificate(&xc)?;
        cert.homological_dimension = Some(verdict.homological_dimension);
        cert.lemma2 = verdict.pass && verdict.homological_dimension == 1;
        let n = xc.image_module();
        let full = xc.target().rank();
        cert.kernel_locally_free = local_freeness_certificate(&n, full)?.pass;
    }
    let strict = strict_check(plan, child, k)?;
    cert.strict_locally_free = strict.locally_free;
    cert.strict_is_image = strict.is_image;
    cert.pass = cert.fitting0_invertible
        && cert.fitting0_is_exceptional
        && cert.lemma2
        && cert.kernel_locally_free
        && cert.strict_locally_free
        && cert.strict_is_image.unwrap_or(true);
    Ok(cert)
}

/// Children of one parent chart, their certificates and the step ideal.
type ChartOutcome = (StepIdeal, Vec<(TowerChart, ChartCertificate)>);

fn step_on_chart(plan: &Plan, i: usize, k: usize, parent: &TowerChart) -> Result<ChartOutcome> {
    let w = pulled_segment(plan, parent, k);
    let (ideal, x) = step_ideal(&w)?;
    let pr = parent.ring.ring();
    if ideal.is_unit() {
        let mut child = parent.clone();
        child.exceptionals.push(Polynomial::one(pr));
        let ids: Vec<Polynomial> = (0..pr.nvars()).map(|v| Polynomial::var(pr, v)).collect();
        let cert = certify_child(plan, k, parent, &child, None, &ids)?;
        let si = StepIdeal {
            label: parent.label.clone(),
            ideal,
            identity: true,
            atlas_ok: true,
        };
        return Ok((si, vec![(child, cert)]));
    }
    let r = rees(&parent.ring, &ideal)?;
    let atlas = charts(&r, i, &format!("u{i}"))?;
    let atlas_ok = r.substitution_check()
        && atlas.exceptional_principal()?
        && atlas.check_transitions()?.iter().all(|t| t.pass);
    let children: Vec<(TowerChart, ChartCertificate)> = atlas
        .charts
        .par_iter()
        .map(|c| {
            let images = parent
                .images
                .iter()
                .map(|p| c.ring.reduce(&p.substitute(&c.base_images, c.ring.ring())))
                .collect();
            let mut exceptionals: Vec<Polynomial> = parent
                .exceptionals
                .iter()
                .map(|p| c.ring.reduce(&p.substitute(&c.base_images, c.ring.ring())))
                .collect();
            exceptionals.push(c.exceptional.clone());
            let label = if atlas.is_identity() {
                parent.label.clone()
            } else {
                format!("{}.{}", parent.label, c.index)
            };
            let child = TowerChart {
                label,
                ring: c.ring.clone(),
                images,
                affine_index: parent.affine_index,
                exceptionals,
            };
            let cert = certify_child(plan, k, parent, &child, Some(&x), &c.base_images)?;
            Ok((child, cert))
        })
        .collect::<Result<_>>()?;
    let si = StepIdeal {
        label: parent.label.clone(),
        ideal,
        identity: false,
        atlas_ok,
    };
    Ok((si, children))
}

/// Runs step `i` on every chart of the current level.
pub fn run_step(plan: &Plan, level: &[TowerChart], i: usize) -> Result<(ResolutionStep, Vec<TowerChart>)> {
    let k = plan.length() - i;
    let outcomes: Vec<ChartOutcome> = level
        .par_iter()
        .map(|c| step_on_chart(plan, i, k, c))
        .collect::<Result<_>>()?;
    let mut ideals = Vec::new();
    let mut certificates = Vec::new();
    let mut next = Vec::new();
    for (si, kids) in outcomes {
        if !si.atlas_ok {
            return Err(Error::CertificateFailed(format!(
                "step {i}, chart {}: blowup atlas of {} is inconsistent",
                si.label, si.ideal
            )));
        }
        ideals.push(si);
        for (child, cert) in kids {
            if !cert.pass {
                return Err(Error::CertificateFailed(format!(
                    "step {i}, chart {}: certificate failed for ideal ({})",
                    cert.label,
                    cert.fitting0.join(", ")
                )));
            }
            certificates.push(cert);
            next.push(child);
        }
    }
    Ok((
        ResolutionStep {
            index: i,
            k,
            ideals,
            certificates,
        },
        next,
    ))
}

/// Homogeneous `Fitt_0(Ext^1(W_{l-1}))`, saturated by the irrelevant ideal.
pub fn global_first_ideal(plan: &Plan) -> Result<Option<Ideal>> {
    let l = plan.length();
    if l == 0 {
        return Ok(None);
    }
    let w = plan.resolution.cokernel_at(l - 1);
    let (f, _) = step_ideal(&w)?;
    Ok(Some(f.saturate_irrelevant()?))
}

pub fn run_tower(m: &ModulePresentation) -> Result<ResolutionTower> {
    run_tower_with(plan(m)?)
}

pub fn run_tower_with(plan: Plan) -> Result<ResolutionTower> {
    let ring = plan.module.ring().clone();
    let mut level = base_atlas(&ring)?;
    let mut steps = Vec::new();
    for i in 1..=plan.length() {
        let (step, next) = run_step(&plan, &level, i)?;
        steps.push(step);
        level = next;
    }
    let global = global_first_ideal(&plan)?;
    let consistent = match (&global, steps.first()) {
        (Some(g), Some(step)) => {
            let base = base_atlas(&ring)?;
            base.iter().zip(&step.ideals).all(|(c, si)| {
                let local = g.substitute(&c.images, c.ring.ring());
                c.ring.ideals_equal(&c.ring.ideal(local.gens().to_vec()), &si.ideal)
            })
        }
        _ => true,
    };
    let r = plan.ranks[0];
    let finals: Vec<(ModulePresentation, FinalChart)> = level
        .par_iter()
        .map(|c| {
            let strict = strict_check(&plan, c, 0)?;
            let m = strict.module.minimized();
            let fc = FinalChart {
                label: c.label.clone(),
                ring: c.ring.to_string(),
                relations: m
                    .relations()
                    .iter()
                    .map(|v| v.iter().map(|p| p.to_string()).collect())
                    .collect(),
                rank: r,
                locally_free: strict.locally_free,
            };
            Ok((strict.module, fc))
        })
        .collect::<Result<_>>()?;
    if let Some((_, bad)) = finals.iter().find(|(_, f)| !f.locally_free) {
        return Err(Error::CertificateFailed(format!(
            "final module is not locally free of rank {r} on chart {}",
            bad.label
        )));
    }
    let (final_modules, final_charts) = finals.into_iter().unzip();
    Ok(ResolutionTower {
        plan,
        steps,
        charts: level,
        final_modules,
        final_charts,
        global_first_ideal: global,
        global_first_consistent: consistent,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceVerdict {
    pub padding: Vec<(usize, i64)>,
    /// `(step, chart, equal)` for every step ideal compared.
    pub comparisons: Vec<(usize, String, bool)>,
    pub pass: bool,
}

/// Default padding: one trivial summand at every inner position of the
/// resolution, or at position 1 when the resolution has length at most 1.
pub fn default_padding(res: &FreeResolutionData) -> Vec<(usize, i64)> {
    let l = res.length();
    let top = res
        .twists()
        .iter()
        .flatten()
        .copied()
        .min()
        .unwrap_or(0);
    if l <= 1 {
        return vec![(1, top - 1)];
    }
    (1..l).map(|k| (k, top - k as i64)).collect()
}

/// Runs the tower from the minimal resolution and from a padded one and
/// compares the step ideals chart by chart.
pub fn resolution_independence_check(m: &ModulePresentation, padding: &[(usize, i64)]) -> Result<IndependenceVerdict> {
    let minimal = plan(m)?;
    let mut padded_res = minimal.resolution.clone();
    for &(k, a) in padding {
        padded_res = padded_res.pad(k, a)?;
    }
    let padded = plan_from_resolution(m, padded_res)?;
    let a = run_tower_with(minimal)?;
    let b = run_tower_with(padded)?;
    let mut comparisons = Vec::new();
    let mut pass = true;
    for i in 0..a.steps.len().max(b.steps.len()) {
        match (a.steps.get(i), b.steps.get(i)) {
            (Some(sa), Some(sb)) => {
                pass &= sa.ideals.len() == sb.ideals.len();
                for (ia, ib) in sa.ideals.iter().zip(&sb.ideals) {
                    let eq = ia.label == ib.label && ia.ideal == ib.ideal;
                    pass &= eq;
                    comparisons.push((i + 1, ia.label.clone(), eq));
                }
            }
            // A step present on one side only must be the identity everywhere.
            (Some(only), None) | (None, Some(only)) => {
                for si in &only.ideals {
                    pass &= si.identity;
                    comparisons.push((i + 1, si.label.clone(), si.identity));
                }
            }
            (None, None) => unreachable!(),
        }
    }
    Ok(IndependenceVerdict {
        padding: padding.to_vec(),
        comparisons,
        pass,
    })
}
