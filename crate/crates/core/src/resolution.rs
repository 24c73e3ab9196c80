//! Free resolutions, homological dimension and segment triples.

use std::sync::Arc;

use crate::coord::{CoordRing, Matrix};
use crate::error::{Error, Result};
use crate::homological::{fitting, generic_rank};
use crate::module::{cancel_unit, find_unit, prune_generators, FreeModule, ModulePresentation};
use crate::poly::Polynomial;

/// `0 <- F0 <- F1 <- ... <- FL`, with `maps[k]` the differential `d_{k+1}`.
#[derive(Clone, Debug)]
pub struct FreeResolutionData {
    ring: Arc<CoordRing>,
    modules: Vec<FreeModule>,
    maps: Vec<Matrix>,
    minimal: bool,
}

impl FreeResolutionData {
    pub fn ring(&self) -> &Arc<CoordRing> {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    /// `d_k : F_k -> F_{k-1}` for `1 <= k <= length`.
    pub fn differential(&self, k: usize) -> &Matrix {
        &self.maps[k - 1]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn betti(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    pub fn twists(&self) -> Vec<Vec<i64>> {
        self.modules.iter().map(|m| m.twists().to_vec()).collect()
    }

    /// Alternating sum of ranks.
    pub fn euler_rank(&self) -> i64 {
        self.modules
            .iter()
            .enumerate()
            .map(|(i, m)| if i % 2 == 0 { m.rank() as i64 } else { -(m.rank() as i64) })
            .sum()
    }

    /// Checks `d_k d_{k+1} = 0` modulo the ring relations.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| {
            let p = w[0].mul(&w[1]);
            p.columns()
                .iter()
                .all(|c| c.iter().all(|e| self.ring.is_zero(e)))
        })
    }

    /// Every differential is free of nonzero constants.
    pub fn has_no_unit_entries(&self) -> bool {
        self.maps.iter().all(|m| find_unit(m.columns()).is_none())
    }

    /// Presentation of `F_0 / im d_1`.
    pub fn presented_module(&self) -> ModulePresentation {
        self.cokernel_at(0)
    }

    /// `coker(d_{k+1} : F_{k+1} -> F_k)`; for `k = length` this is `F_k`.
    pub fn cokernel_at(&self, k: usize) -> ModulePresentation {
        let target = self.modules[k].clone();
        if k >= self.maps.len() {
            return ModulePresentation::free(&self.ring, target.twists().to_vec());
        }
        ModulePresentation::from_parts(
            &self.ring,
            target,
            self.modules[k + 1].clone(),
            self.maps[k].clone(),
        )
    }

    /// Adds the trivial complex `R(a) -> R(a)` in homological degrees
    /// `k-1` and `k` (`1 <= k <= length + 1`).
    pub fn pad(&self, k: usize, a: i64) -> Result<FreeResolutionData> {
        if k == 0 || k > self.maps.len() + 1 {
            return Err(Error::Domain(format!("cannot pad at position {k}")));
        }
        let pr = self.ring.ring().clone();
        let mut modules = self.modules.clone();
        let mut maps = self.maps.clone();
        if k == maps.len() + 1 {
            modules.push(FreeModule::default());
            maps.push(Matrix::zero(&pr, modules[k - 1].rank(), 0));
        }
        modules[k - 1] = modules[k - 1].direct_sum(&FreeModule::new(vec![a]));
        modules[k] = modules[k].direct_sum(&FreeModule::new(vec![a]));
        // d_k gains a new row and column meeting in the identity entry.
        let dk = &maps[k - 1];
        let mut cols: Vec<Vec<Polynomial>> = dk
            .columns()
            .iter()
            .map(|c| {
                let mut v = c.clone();
                v.push(Polynomial::zero(&pr));
                v
            })
            .collect();
        let mut e = vec![Polynomial::zero(&pr); dk.nrows()];
        e.push(Polynomial::one(&pr));
        cols.push(e);
        maps[k - 1] = Matrix::new(&pr, dk.nrows() + 1, cols);
        // d_{k-1} gains a zero column, d_{k+1} a zero row.
        if k >= 2 {
            let m = &maps[k - 2];
            let mut cols = m.columns().to_vec();
            cols.push(vec![Polynomial::zero(&pr); m.nrows()]);
            maps[k - 2] = Matrix::new(&pr, m.nrows(), cols);
        }
        if k < maps.len() {
            let m = &maps[k];
            let cols = m
                .columns()
                .iter()
                .map(|c| {
                    let mut v = c.clone();
                    v.push(Polynomial::zero(&pr));
                    v
                })
                .collect();
            maps[k] = Matrix::new(&pr, m.nrows() + 1, cols);
        }
        Ok(FreeResolutionData {
            ring: self.ring.clone(),
            modules,
            maps,
            minimal: false,
        })
    }

    /// Cancels every unit entry and drops trailing zero modules.
    pub fn minimize(&self) -> FreeResolutionData {
        let pr = self.ring.ring().clone();
        let mut modules: Vec<Vec<i64>> = self.twists();
        let mut maps: Vec<Vec<Vec<Polynomial>>> = self.maps.iter().map(|m| m.columns().to_vec()).collect();
        loop {
            let hit = maps
                .iter()
                .enumerate()
                .find_map(|(k, m)| find_unit(m).map(|(i, j)| (k, i, j)));
            let Some((k, i, j)) = hit else { break };
            // maps[k] is d_{k+1}: F_{k+1} -> F_k, entry in row i (F_k), column j (F_{k+1}).
            maps[k] = cancel_unit(&pr, &maps[k], i, j)
                .into_iter()
                .map(|c| c.iter().map(|p| self.ring.reduce(p)).collect())
                .collect();
            modules[k].remove(i);
            modules[k + 1].remove(j);
            if k >= 1 {
                maps[k - 1].remove(i);
            }
            if k + 1 < maps.len() {
                for c in maps[k + 1].iter_mut() {
                    c.remove(j);
                }
            }
        }
        while modules.len() > 1 && modules.last().unwrap().is_empty() {
            modules.pop();
            maps.pop();
        }
        let matrices = maps
            .into_iter()
            .enumerate()
            .map(|(k, cols)| Matrix::new(&pr, modules[k].len(), cols))
            .collect();
        FreeResolutionData {
            ring: self.ring.clone(),
            modules: modules.into_iter().map(FreeModule::new).collect(),
            maps: matrices,
            minimal: self.ring.is_graded(),
        }
    }
}

/// Upper bound on resolution length before giving up on ungraded or
/// non-polynomial rings.
fn length_bound(ring: &CoordRing) -> usize {
    ring.ring().nvars() + 2
}

/// Resolves `m` by iterated syzygies, at most `max_len` steps.
pub fn partial_resolution(m: &ModulePresentation, max_len: usize, minimize: bool) -> FreeResolutionData {
    let ring = m.ring().clone();
    let start = if minimize { m.minimized() } else { m.clone() };
    let mut modules = vec![start.target().clone()];
    let mut maps = Vec::new();
    let mut cur = start;
    while maps.len() < max_len && cur.source().rank() > 0 {
        modules.push(cur.source().clone());
        maps.push(cur.matrix().clone());
        cur = syz_generators(&cur);
    }
    let res = FreeResolutionData {
        ring,
        modules,
        maps,
        minimal: false,
    };
    if minimize {
        res.minimize()
    } else {
        res
    }
}

/// The map `F_{k+1} -> F_k` whose columns generate the kernel of `m`'s
/// relation map.
fn syz_generators(m: &ModulePresentation) -> ModulePresentation {
    let ring = m.ring();
    let gens = crate::module::kernel(ring, &m.target().degrees(), &m.source().degrees(), m.relations());
    let vecs: Vec<Vec<Polynomial>> = gens.iter().map(|(v, _)| v.clone()).collect();
    let keep = prune_generators(ring, &m.source().degrees(), &vecs);
    let twists = keep.iter().map(|&j| -gens[j].1).collect();
    let cols = keep.iter().map(|&j| vecs[j].clone()).collect();
    ModulePresentation::from_parts(
        ring,
        m.source().clone(),
        FreeModule::new(twists),
        Matrix::new(ring.ring(), m.source().rank(), cols),
    )
}

/// Full free resolution. Graded inputs over polynomial rings terminate by the
/// syzygy theorem; otherwise the length is capped and exceeding it is an error.
pub fn free_resolution(m: &ModulePresentation, minimize: bool) -> Result<FreeResolutionData> {
    let bound = length_bound(m.ring());
    let res = partial_resolution(m, bound + 1, minimize);
    if res.length() > bound {
        return Err(Error::Scope(format!(
            "resolution longer than {bound} steps over {}",
            m.ring()
        )));
    }
    Ok(res)
}

/// Projective dimension. Graded: length of the minimal resolution. Ungraded:
/// the first syzygy module that is projective, tested by Fitting ideals over a
/// domain.
pub fn homological_dimension(m: &ModulePresentation) -> Result<usize> {
    if m.ring().is_graded() {
        return Ok(free_resolution(m, true)?.length());
    }
    m.ring().require_integral("homological dimension")?;
    let bound = length_bound(m.ring());
    let mut cur = m.minimized();
    for k in 0..=bound {
        if is_projective(&cur)? {
            return Ok(k);
        }
        cur = syz_image(&cur);
    }
    Err(Error::Scope(format!("no projective syzygy within {bound} steps")))
}

/// The relation module `im(d) ⊂ F0` presented on the columns of `d`.
fn syz_image(m: &ModulePresentation) -> ModulePresentation {
    let next = syz_generators(m);
    ModulePresentation::from_parts(
        m.ring(),
        m.source().clone(),
        next.source().clone(),
        next.matrix().clone(),
    )
    .minimized()
}

/// Over a domain, a finitely presented module is projective iff its Fitting
/// ideal at the generic rank is the unit ideal.
pub fn is_projective(m: &ModulePresentation) -> Result<bool> {
    let r = generic_rank(m)?;
    let f = fitting(m, r)?;
    Ok(f.is_unit())
}

/// `(W_i, F_{i-1}, W_{i-1})` for the short exact sequences
/// `0 -> W_i -> F_{i-1} -> W_{i-1} -> 0` cut out of a resolution.
#[derive(Clone, Debug)]
pub struct SegmentTriple {
    pub index: usize,
    pub sub: ModulePresentation,
    pub free: FreeModule,
    pub quotient: ModulePresentation,
}

pub fn segment_triples(res: &FreeResolutionData) -> Vec<SegmentTriple> {
    (1..=res.length())
        .map(|i| SegmentTriple {
            index: i,
            sub: res.cokernel_at(i),
            free: res.modules()[i - 1].clone(),
            quotient: res.cokernel_at(i - 1),
        })
        .collect()
}
