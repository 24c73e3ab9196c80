//! Graded free modules, presentations and submodule arithmetic.
//!
//! A twist `t` stands for the summand `R(t)`, whose basis element has degree
//! `-t`. A map between free modules is homogeneous when entry `(i, j)` has
//! degree `target_twist[i] - source_twist[j]`.

use std::fmt;
use std::sync::Arc;

use crate::coord::{CoordRing, Matrix};
use crate::error::{Error, Result};
use crate::groebner::{groebner_module, normal_form, ModElem, ModuleOrder};
use crate::poly::{Monomial, PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeModule {
    twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        FreeModule { twists }
    }

    pub fn untwisted(rank: usize) -> Self {
        FreeModule { twists: vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    /// Degrees of the basis elements.
    pub fn degrees(&self) -> Vec<i64> {
        self.twists.iter().map(|t| -t).collect()
    }

    pub fn dual(&self) -> FreeModule {
        FreeModule::new(self.degrees())
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut t = self.twists.clone();
        t.extend_from_slice(&other.twists);
        FreeModule::new(t)
    }
}

impl fmt::Display for FreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twists.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.twists.iter().map(|t| format!("R({t})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn order_for(ring: &CoordRing, degrees: &[i64], blocks: Option<Vec<usize>>) -> ModuleOrder {
    let shifts = if ring.is_graded() {
        degrees.to_vec()
    } else {
        vec![0; degrees.len()]
    };
    let o = ModuleOrder::new(ring.ring(), degrees.len()).with_shifts(shifts);
    match blocks {
        Some(b) => o.with_blocks(b),
        None => o,
    }
}

fn unit_vector(ring: &Arc<PolyRing>, rank: usize, i: usize, p: Polynomial) -> Vec<Polynomial> {
    (0..rank)
        .map(|k| if k == i { p.clone() } else { Polynomial::zero(ring) })
        .collect()
}

/// Gröbner basis of a submodule of `(R/J)^r`, stored as a submodule of `R^r`
/// containing `J R^r`.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: Arc<CoordRing>,
    order: ModuleOrder,
    basis: Vec<ModElem>,
}

impl Submodule {
    pub fn new(ring: &Arc<CoordRing>, degrees: &[i64], gens: &[Vec<Polynomial>]) -> Self {
        let order = order_for(ring, degrees, None);
        let mut elems: Vec<ModElem> = gens.iter().map(|g| ModElem::from_vector(&order, g)).collect();
        elems.extend(relation_elems(ring, &order, 0..degrees.len()));
        let basis = groebner_module(&order, &elems);
        Submodule {
            ring: ring.clone(),
            order,
            basis,
        }
    }

    pub fn rank(&self) -> usize {
        self.order.rank()
    }

    pub fn reduce(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        let e = ModElem::from_vector(&self.order, v);
        normal_form(&self.order, &e, &self.basis).to_vector(self.ring.ring(), self.rank())
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        let e = ModElem::from_vector(&self.order, v);
        normal_form(&self.order, &e, &self.basis).is_zero()
    }

    pub fn contains_all(&self, gens: &[Vec<Polynomial>]) -> bool {
        gens.iter().all(|g| self.contains(g))
    }

    /// True when the submodule is the whole free module.
    pub fn is_everything(&self) -> bool {
        let r = self.ring.ring();
        (0..self.rank()).all(|i| self.contains(&unit_vector(r, self.rank(), i, Polynomial::one(r))))
    }

    /// Leading monomials of the basis, grouped by component.
    pub fn leading_monomials(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.rank()];
        for b in &self.basis {
            let l = b.lead().unwrap();
            out[l.comp].push(l.mon.clone());
        }
        out
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Polynomial>> {
        self.basis
            .iter()
            .map(|b| b.to_vector(self.ring.ring(), self.rank()))
            .collect()
    }
}

fn relation_elems(
    ring: &CoordRing,
    order: &ModuleOrder,
    comps: std::ops::Range<usize>,
) -> Vec<ModElem> {
    let r = ring.ring();
    let rank = order.rank();
    let mut out = Vec::new();
    for i in comps {
        for g in ring.relations().gb() {
            out.push(ModElem::from_vector(order, &unit_vector(r, rank, i, g.clone())));
        }
    }
    out
}

/// Generators of the kernel of the map `R^n -> R^r` given by `columns`, over
/// `R/J`. Returns each generator with its degree (zero on ungraded rings).
pub fn kernel(
    ring: &Arc<CoordRing>,
    target_degrees: &[i64],
    source_degrees: &[i64],
    columns: &[Vec<Polynomial>],
) -> Vec<(Vec<Polynomial>, i64)> {
    let r = target_degrees.len();
    let n = source_degrees.len();
    assert_eq!(columns.len(), n);
    if n == 0 {
        return Vec::new();
    }
    let pr = ring.ring();
    let mut degrees = target_degrees.to_vec();
    degrees.extend_from_slice(source_degrees);
    let blocks = (0..r + n).map(|k| usize::from(k >= r)).collect();
    let order = order_for(ring, &degrees, Some(blocks));
    let mut gens = Vec::with_capacity(n);
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        v.extend(unit_vector(pr, n, j, Polynomial::one(pr)));
        gens.push(ModElem::from_vector(&order, &v));
    }
    gens.extend(relation_elems(ring, &order, 0..r));
    let gb = groebner_module(&order, &gens);
    let mut out = Vec::new();
    for g in gb {
        let l = g.lead().unwrap();
        if order.block_of(l.comp) != 1 {
            continue;
        }
        let deg = if ring.is_graded() { g.lead_degree(&order).unwrap() } else { 0 };
        let v = g.to_vector(pr, r + n);
        let syz: Vec<Polynomial> = v[r..].iter().map(|p| ring.reduce(p)).collect();
        if syz.iter().any(|p| !p.is_zero()) {
            out.push((syz, deg));
        }
    }
    out
}

/// Intersection of two submodules of `(R/J)^r`.
pub fn intersect(
    ring: &Arc<CoordRing>,
    degrees: &[i64],
    u: &[Vec<Polynomial>],
    v: &[Vec<Polynomial>],
) -> Vec<Vec<Polynomial>> {
    let r = degrees.len();
    let pr = ring.ring();
    let mut d2 = degrees.to_vec();
    d2.extend_from_slice(degrees);
    let blocks = (0..2 * r).map(|k| usize::from(k >= r)).collect();
    let order = order_for(ring, &d2, Some(blocks));
    let zeros = vec![Polynomial::zero(pr); r];
    let mut gens = Vec::new();
    for a in u {
        let mut w = a.clone();
        w.extend(a.iter().cloned());
        gens.push(ModElem::from_vector(&order, &w));
    }
    for b in v {
        let mut w = b.clone();
        w.extend(zeros.iter().cloned());
        gens.push(ModElem::from_vector(&order, &w));
    }
    gens.extend(relation_elems(ring, &order, 0..2 * r));
    groebner_module(&order, &gens)
        .into_iter()
        .filter(|g| order.block_of(g.lead().unwrap().comp) == 1)
        .map(|g| g.to_vector(pr, 2 * r)[r..].iter().map(|p| ring.reduce(p)).collect::<Vec<_>>())
        .filter(|w: &Vec<Polynomial>| w.iter().any(|p| !p.is_zero()))
        .collect()
}

/// `N : h = { a : h a ∈ N }`.
pub fn quotient_by_element(
    ring: &Arc<CoordRing>,
    degrees: &[i64],
    n: &[Vec<Polynomial>],
    h: &Polynomial,
) -> Vec<Vec<Polynomial>> {
    let r = degrees.len();
    let pr = ring.ring();
    let hdeg = if ring.is_graded() { h.degree().unwrap_or(0) } else { 0 };
    let mut cols = Vec::new();
    let mut src = Vec::new();
    for (i, d) in degrees.iter().enumerate() {
        cols.push(unit_vector(pr, r, i, h.clone()));
        src.push(d + hdeg);
    }
    for g in n {
        cols.push(g.clone());
        src.push(vector_degree(ring, degrees, g));
    }
    kernel(ring, degrees, &src, &cols)
        .into_iter()
        .map(|(k, _)| k[..r].to_vec())
        .filter(|w| w.iter().any(|p| !p.is_zero()))
        .collect()
}

/// `N : h^∞`, by iterating element quotients until stable.
pub fn saturate_by_element(
    ring: &Arc<CoordRing>,
    degrees: &[i64],
    n: &[Vec<Polynomial>],
    h: &Polynomial,
) -> Vec<Vec<Polynomial>> {
    let mut cur = n.to_vec();
    loop {
        let next = quotient_by_element(ring, degrees, &cur, h);
        let sub = Submodule::new(ring, degrees, &cur);
        if sub.contains_all(&next) {
            return cur;
        }
        cur = next;
    }
}

/// Degree of a homogeneous vector; zero on ungraded rings or for zero vectors.
pub fn vector_degree(ring: &CoordRing, degrees: &[i64], v: &[Polynomial]) -> i64 {
    if !ring.is_graded() {
        return 0;
    }
    v.iter()
        .zip(degrees)
        .find_map(|(p, d)| p.degree().map(|e| e + d))
        .unwrap_or(0)
}

/// Drops generators that lie in the span of the others. On graded rings the
/// scan runs by increasing degree and yields a minimal generating set.
pub fn prune_generators(
    ring: &Arc<CoordRing>,
    degrees: &[i64],
    gens: &[Vec<Polynomial>],
) -> Vec<usize> {
    let nonzero: Vec<usize> = (0..gens.len())
        .filter(|&j| gens[j].iter().any(|p| !ring.is_zero(p)))
        .collect();
    if ring.is_graded() {
        let mut idx = nonzero;
        idx.sort_by_key(|&j| vector_degree(ring, degrees, &gens[j]));
        let mut kept: Vec<usize> = Vec::new();
        for j in idx {
            let sub_gens: Vec<Vec<Polynomial>> = kept.iter().map(|&k| gens[k].clone()).collect();
            if kept.is_empty() || !Submodule::new(ring, degrees, &sub_gens).contains(&gens[j]) {
                kept.push(j);
            }
        }
        kept.sort_unstable();
        kept
    } else {
        let mut kept = nonzero;
        let mut k = kept.len();
        while k > 0 {
            k -= 1;
            let others: Vec<Vec<Polynomial>> = kept
                .iter()
                .filter(|&&j| j != kept[k])
                .map(|&j| gens[j].clone())
                .collect();
            if Submodule::new(ring, degrees, &others).contains(&gens[kept[k]]) {
                kept.remove(k);
            }
        }
        kept
    }
}

/// A module given as the cokernel of a homogeneous map of free modules.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: Arc<CoordRing>,
    target: FreeModule,
    source: FreeModule,
    matrix: Matrix,
}

impl ModulePresentation {
    /// Presentation with the given target twists; column twists are inferred
    /// from the entries. Zero columns are dropped.
    pub fn new(ring: &Arc<CoordRing>, target_twists: Vec<i64>, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = target_twists.len();
        let pr = ring.ring();
        let mut cols = Vec::new();
        let mut source = Vec::new();
        for (j, c) in columns.into_iter().enumerate() {
            if c.len() != r {
                return Err(Error::Domain(format!(
                    "relation {} has {} entries, expected {r}",
                    j + 1,
                    c.len()
                )));
            }
            for p in &c {
                if p.ring() != pr {
                    return Err(Error::RingMismatch(format!("entry {p} of relation {}", j + 1)));
                }
            }
            if c.iter().all(|p| ring.is_zero(p)) {
                continue;
            }
            let t = if ring.is_graded() {
                infer_column_twist(&target_twists, &c)
                    .ok_or_else(|| Error::Inhomogeneous(format!("relation {}", j + 1)))?
            } else {
                0
            };
            cols.push(c);
            source.push(t);
        }
        Ok(ModulePresentation {
            ring: ring.clone(),
            target: FreeModule::new(target_twists),
            matrix: Matrix::new(pr, r, cols),
            source: FreeModule::new(source),
        })
    }

    /// Presentation with explicit twists on both sides, validated.
    pub fn from_map(ring: &Arc<CoordRing>, target: FreeModule, source: FreeModule, matrix: Matrix) -> Result<Self> {
        if matrix.nrows() != target.rank() || matrix.ncols() != source.rank() {
            return Err(Error::Domain("matrix shape does not match the free modules".into()));
        }
        if ring.is_graded() {
            for j in 0..matrix.ncols() {
                for i in 0..matrix.nrows() {
                    let p = matrix.entry(i, j);
                    if p.is_zero() {
                        continue;
                    }
                    let want = target.twists()[i] - source.twists()[j];
                    if !p.is_homogeneous() || p.degree() != Some(want) {
                        return Err(Error::Inhomogeneous(format!(
                            "entry ({}, {}) = {p} should have degree {want}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(ModulePresentation {
            ring: ring.clone(),
            target,
            source,
            matrix,
        })
    }

    pub(crate) fn from_parts(ring: &Arc<CoordRing>, target: FreeModule, source: FreeModule, matrix: Matrix) -> Self {
        debug_assert_eq!(matrix.nrows(), target.rank());
        debug_assert_eq!(matrix.ncols(), source.rank());
        ModulePresentation {
            ring: ring.clone(),
            target,
            source,
            matrix,
        }
    }

    pub fn free(ring: &Arc<CoordRing>, twists: Vec<i64>) -> Self {
        let r = twists.len();
        Self::from_parts(ring, FreeModule::new(twists), FreeModule::default(), Matrix::zero(ring.ring(), r, 0))
    }

    /// `R / (gens)`, generated in degree zero.
    pub fn cyclic(ring: &Arc<CoordRing>, gens: &[Polynomial]) -> Result<Self> {
        Self::new(ring, vec![0], gens.iter().map(|g| vec![g.clone()]).collect())
    }

    /// The ideal `(gens)` viewed as a module: generators in their own degrees
    /// and the syzygies among them as relations.
    pub fn ideal(ring: &Arc<CoordRing>, gens: &[Polynomial]) -> Result<Self> {
        let gens: Vec<Polynomial> = gens.iter().filter(|g| !ring.is_zero(g)).cloned().collect();
        let twists: Vec<i64> = gens
            .iter()
            .map(|g| if ring.is_graded() { -g.degree().unwrap() } else { 0 })
            .collect();
        let row: Vec<Vec<Polynomial>> = gens.iter().map(|g| vec![g.clone()]).collect();
        let src_deg: Vec<i64> = twists.iter().map(|t| -t).collect();
        let syz: Vec<Vec<Polynomial>> = kernel(ring, &[0], &src_deg, &row)
            .into_iter()
            .map(|(v, _)| v)
            .collect();
        let keep = prune_generators(ring, &src_deg, &syz);
        let cols = keep.into_iter().map(|j| syz[j].clone()).collect();
        Self::new(ring, twists, cols)
    }

    pub fn ring(&self) -> &Arc<CoordRing> {
        &self.ring
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn relations(&self) -> &[Vec<Polynomial>] {
        self.matrix.columns()
    }

    pub fn submodule(&self) -> Submodule {
        Submodule::new(&self.ring, &self.target.degrees(), self.matrix.columns())
    }

    pub fn is_zero_module(&self) -> bool {
        self.target.rank() == 0 || self.submodule().is_everything()
    }

    /// Removes redundant relations and cancels constant entries.
    pub fn minimized(&self) -> ModulePresentation {
        let mut target = self.target.twists().to_vec();
        let mut source = self.source.twists().to_vec();
        let mut cols: Vec<Vec<Polynomial>> = self
            .matrix
            .columns()
            .iter()
            .map(|c| c.iter().map(|p| self.ring.reduce(p)).collect())
            .collect();
        let pr = self.ring.ring().clone();
        while let Some((i, j)) = find_unit(&cols) {
            cols = cancel_unit(&pr, &cols, i, j);
            target.remove(i);
            source.remove(j);
            cols = cols
                .into_iter()
                .map(|c| c.iter().map(|p| self.ring.reduce(p)).collect())
                .collect();
        }
        let degrees: Vec<i64> = target.iter().map(|t| -t).collect();
        let keep = prune_generators(&self.ring, &degrees, &cols);
        let nrows = target.len();
        ModulePresentation::from_parts(
            &self.ring,
            FreeModule::new(target),
            FreeModule::new(keep.iter().map(|&j| source[j]).collect()),
            Matrix::new(&pr, nrows, keep.iter().map(|&j| cols[j].clone()).collect()),
        )
    }

    /// Substitutes `images` for the ambient variables and moves to `target`.
    /// Twists are kept when the target is graded and reset otherwise.
    pub fn pullback(&self, images: &[Polynomial], target: &Arc<CoordRing>) -> ModulePresentation {
        let m = self.matrix.substitute(images, target.ring());
        let m = m.map_entries(target.ring(), |p| target.reduce(p));
        let (t0, t1) = if target.is_graded() {
            (self.target.clone(), self.source.clone())
        } else {
            (
                FreeModule::untwisted(self.target.rank()),
                FreeModule::untwisted(self.source.rank()),
            )
        };
        let keep: Vec<usize> = (0..m.ncols())
            .filter(|&j| m.column(j).iter().any(|p| !p.is_zero()))
            .collect();
        ModulePresentation::from_parts(
            target,
            t0,
            FreeModule::new(keep.iter().map(|&j| t1.twists()[j]).collect()),
            m.select_columns(&keep),
        )
    }

    /// Presentation of the kernel of the relation map `F1 -> F0`.
    pub fn syzygies(&self) -> ModulePresentation {
        let gens = kernel(
            &self.ring,
            &self.target.degrees(),
            &self.source.degrees(),
            self.matrix.columns(),
        );
        let vecs: Vec<Vec<Polynomial>> = gens.iter().map(|(v, _)| v.clone()).collect();
        let src_deg = self.source.degrees();
        let keep = prune_generators(&self.ring, &src_deg, &vecs);
        let cols: Vec<Vec<Polynomial>> = keep.iter().map(|&j| vecs[j].clone()).collect();
        let twists: Vec<i64> = keep.iter().map(|&j| -gens[j].1).collect();
        let sub = ModulePresentation::from_parts(
            &self.ring,
            self.source.clone(),
            FreeModule::new(twists),
            Matrix::new(self.ring.ring(), self.source.rank(), cols),
        );
        // The kernel as a module: generated by the columns, related by their syzygies.
        sub.image_module()
    }

    /// The image of the relation map as a module in its own right.
    pub fn image_module(&self) -> ModulePresentation {
        let rel = kernel(
            &self.ring,
            &self.target.degrees(),
            &self.source.degrees(),
            self.matrix.columns(),
        );
        let vecs: Vec<Vec<Polynomial>> = rel.into_iter().map(|(v, _)| v).collect();
        let src_deg = self.source.degrees();
        let keep = prune_generators(&self.ring, &src_deg, &vecs);
        let cols: Vec<Vec<Polynomial>> = keep.iter().map(|&j| vecs[j].clone()).collect();
        let twists = keep
            .iter()
            .map(|&j| -vector_degree(&self.ring, &src_deg, &vecs[j]))
            .collect();
        ModulePresentation::from_parts(
            &self.ring,
            self.source.clone(),
            FreeModule::new(twists),
            Matrix::new(self.ring.ring(), self.source.rank(), cols),
        )
    }

    /// Direct sum with another presentation over the same ring.
    pub fn direct_sum(&self, other: &ModulePresentation) -> ModulePresentation {
        let pr = self.ring.ring();
        let r1 = self.target.rank();
        let r2 = other.target.rank();
        let mut cols = Vec::new();
        for c in self.matrix.columns() {
            let mut v = c.clone();
            v.extend((0..r2).map(|_| Polynomial::zero(pr)));
            cols.push(v);
        }
        for c in other.matrix.columns() {
            let mut v: Vec<Polynomial> = (0..r1).map(|_| Polynomial::zero(pr)).collect();
            v.extend(c.iter().cloned());
            cols.push(v);
        }
        ModulePresentation::from_parts(
            &self.ring,
            self.target.direct_sum(&other.target),
            self.source.direct_sum(&other.source),
            Matrix::new(pr, r1 + r2, cols),
        )
    }

    /// Presentation of the subquotient `gens / (rels ∩ ...)`: the submodule of
    /// `F` generated by `gens` modulo the submodule generated by `rels`, which
    /// must lie inside it.
    pub fn subquotient(
        ring: &Arc<CoordRing>,
        ambient: &FreeModule,
        gens: &[Vec<Polynomial>],
        gen_twists: Vec<i64>,
        rels: &[Vec<Polynomial>],
    ) -> ModulePresentation {
        let pr = ring.ring();
        let p = gens.len();
        let mut cols: Vec<Vec<Polynomial>> = gens.to_vec();
        cols.extend(rels.iter().cloned());
        let mut src: Vec<i64> = gen_twists.iter().map(|t| -t).collect();
        src.extend(rels.iter().map(|r| vector_degree(ring, &ambient.degrees(), r)));
        let syz = kernel(ring, &ambient.degrees(), &src, &cols);
        let rel_vecs: Vec<Vec<Polynomial>> = syz
            .into_iter()
            .map(|(v, _)| v[..p].to_vec())
            .filter(|v| v.iter().any(|q| !q.is_zero()))
            .collect();
        let pm = ModulePresentation::from_parts(
            ring,
            FreeModule::new(gen_twists),
            FreeModule::new(vec![0; rel_vecs.len()]),
            Matrix::new(pr, p, rel_vecs),
        );
        pm.with_inferred_source().minimized()
    }

    fn with_inferred_source(mut self) -> Self {
        let degs = self.target.degrees();
        let twists = self
            .matrix
            .columns()
            .iter()
            .map(|c| -vector_degree(&self.ring, &degs, c))
            .collect();
        self.source = FreeModule::new(twists);
        self
    }

    pub fn is_homogeneous(&self) -> bool {
        Self::from_map(&self.ring, self.target.clone(), self.source.clone(), self.matrix.clone()).is_ok()
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "coker {} <- {}", self.target, self.source)?;
        write!(f, "{}", self.matrix)
    }
}

fn infer_column_twist(target: &[i64], col: &[Polynomial]) -> Option<i64> {
    let mut twist = None;
    for (p, t) in col.iter().zip(target) {
        if p.is_zero() {
            continue;
        }
        if !p.is_homogeneous() {
            return None;
        }
        let s = t - p.degree().unwrap();
        match twist {
            None => twist = Some(s),
            Some(u) if u != s => return None,
            _ => {}
        }
    }
    twist
}

pub(crate) fn find_unit(cols: &[Vec<Polynomial>]) -> Option<(usize, usize)> {
    for (j, c) in cols.iter().enumerate() {
        for (i, p) in c.iter().enumerate() {
            if p.as_nonzero_constant().is_some() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Gaussian cancellation of the unit entry `(i, j)`: subtracts the rank-one
/// correction and drops row `i` and column `j`.
pub(crate) fn cancel_unit(ring: &Arc<PolyRing>, cols: &[Vec<Polynomial>], i: usize, j: usize) -> Vec<Vec<Polynomial>> {
    let a = cols[j][i].as_nonzero_constant().unwrap().clone();
    let inv = ring.field().inv(&a);
    let pivot_col = &cols[j];
    let mut out = Vec::with_capacity(cols.len() - 1);
    for (k, c) in cols.iter().enumerate() {
        if k == j {
            continue;
        }
        let factor = c[i].scale(&inv);
        let mut v = Vec::with_capacity(c.len() - 1);
        for (l, p) in c.iter().enumerate() {
            if l == i {
                continue;
            }
            if factor.is_zero() || pivot_col[l].is_zero() {
                v.push(p.clone());
            } else {
                v.push(p - &(&pivot_col[l] * &factor));
            }
        }
        out.push(v);
    }
    out
}
