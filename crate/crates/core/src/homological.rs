//! Duals, Ext, Fitting ideals, torsion and the two certificate predicates.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::coord::{CoordRing, Matrix};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::{kernel, prune_generators, vector_degree, FreeModule, ModulePresentation};
use crate::poly::Polynomial;
use crate::resolution::{homological_dimension, partial_resolution};

/// Ideal of `(r0 - j)`-minors of the presentation matrix, plus the ring
/// relations.
pub fn fitting(m: &ModulePresentation, j: usize) -> Result<Ideal> {
    let ring = m.ring();
    let r0 = m.target().rank();
    if j >= r0 {
        return Ok(Ideal::unit(ring.ring()));
    }
    let k = r0 - j;
    let a = m.matrix();
    if k > a.ncols() {
        return Ok(ring.zero_ideal());
    }
    let minors = all_minors(ring, a, k)?;
    Ok(ring.ideal(minors).normalized())
}

/// All nonzero `k x k` minors, by Laplace expansion with memoization.
pub fn all_minors(ring: &CoordRing, a: &Matrix, k: usize) -> Result<Vec<Polynomial>> {
    if a.nrows() > 64 || a.ncols() > 64 {
        return Err(Error::Scope("matrices beyond 64 rows or columns".into()));
    }
    let mut memo: HashMap<(u64, u64), Polynomial> = HashMap::new();
    let mut out: Vec<Polynomial> = Vec::new();
    for rows in subsets(a.nrows(), k) {
        for cols in subsets(a.ncols(), k) {
            let d = ring.reduce(&minor(a, &rows, &cols, &mut memo));
            if d.is_zero() {
                continue;
            }
            let d = d.monic();
            let is_const = d.is_constant();
            if !out.contains(&d) {
                out.push(d);
            }
            if is_const {
                return Ok(vec![Polynomial::one(ring.ring())]);
            }
        }
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |m, &i| m | (1u64 << i))
}

fn minor(a: &Matrix, rows: &[usize], cols: &[usize], memo: &mut HashMap<(u64, u64), Polynomial>) -> Polynomial {
    let ring = a.ring();
    if rows.is_empty() {
        return Polynomial::one(ring);
    }
    let key = (mask(rows), mask(cols));
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let r0 = rows[0];
    let rest_rows = &rows[1..];
    let mut acc = Polynomial::zero(ring);
    for (pos, &c) in cols.iter().enumerate() {
        let e = a.entry(r0, c);
        if e.is_zero() {
            continue;
        }
        let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = minor(a, rest_rows, &rest_cols, memo);
        if sub.is_zero() {
            continue;
        }
        let term = e * &sub;
        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    memo.insert(key, acc.clone());
    acc
}

/// Rank over the fraction field of a domain, by fraction-free elimination.
pub fn rank_over_fractions(ring: &CoordRing, a: &Matrix) -> usize {
    let mut rows: Vec<Vec<Polynomial>> = (0..a.nrows())
        .map(|i| a.row(i).iter().map(|p| ring.reduce(p)).collect())
        .collect();
    let ncols = a.ncols();
    let mut rank = 0;
    for c in 0..ncols {
        let pivot = (rank..rows.len()).find(|&i| !rows[i][c].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let prow = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            let piv = &prow[c];
            for (e, p) in row[c..].iter_mut().zip(&prow[c..]) {
                *e = ring.reduce(&(&(&*e * piv) - &(p * &f)));
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the module at the generic point: `rank F0 - rank(A)`.
pub fn generic_rank(m: &ModulePresentation) -> Result<usize> {
    m.ring().require_integral("generic rank")?;
    Ok(m.target().rank() - rank_over_fractions(m.ring(), m.matrix()))
}

/// Generators of `Hom(M, R) = ker(A^T) ⊂ F0*`, with their twists.
fn dual_generators(m: &ModulePresentation) -> (Vec<Vec<Polynomial>>, Vec<i64>) {
    let ring = m.ring();
    let f0d = m.target().dual();
    let f1d = m.source().dual();
    let at = m.matrix().transpose();
    let gens = if m.source().rank() == 0 {
        unit_vectors(ring, &f0d)
    } else {
        kernel(ring, &f1d.degrees(), &f0d.degrees(), at.columns())
    };
    let vecs: Vec<Vec<Polynomial>> = gens.iter().map(|(v, _)| v.clone()).collect();
    let keep = prune_generators(ring, &f0d.degrees(), &vecs);
    let twists = keep.iter().map(|&j| -gens[j].1).collect();
    (keep.into_iter().map(|j| vecs[j].clone()).collect(), twists)
}

fn unit_vectors(ring: &CoordRing, f: &FreeModule) -> Vec<(Vec<Polynomial>, i64)> {
    let pr = ring.ring();
    let degs = f.degrees();
    (0..f.rank())
        .map(|i| {
            let v = (0..f.rank())
                .map(|k| if k == i { Polynomial::one(pr) } else { Polynomial::zero(pr) })
                .collect();
            (v, if ring.is_graded() { degs[i] } else { 0 })
        })
        .collect()
}

fn present_image(ring: &Arc<CoordRing>, ambient: FreeModule, gens: Vec<Vec<Polynomial>>, twists: Vec<i64>) -> ModulePresentation {
    let nrows = ambient.rank();
    ModulePresentation::from_parts(ring, ambient, FreeModule::new(twists), Matrix::new(ring.ring(), nrows, gens))
        .image_module()
}

/// `Hom(M, R)`.
pub fn dual(m: &ModulePresentation) -> ModulePresentation {
    let (gens, twists) = dual_generators(m);
    if gens.is_empty() {
        return ModulePresentation::free(m.ring(), Vec::new());
    }
    present_image(m.ring(), m.target().dual(), gens, twists).minimized()
}

/// `Ext^i(M, R)` as the cohomology of the dualized resolution.
pub fn ext(m: &ModulePresentation, i: usize) -> Result<ModulePresentation> {
    let ring = m.ring();
    if i == 0 {
        return Ok(dual(m));
    }
    let res = partial_resolution(m, i + 1, ring.is_graded());
    let len = res.length();
    if i > len {
        return Ok(ModulePresentation::free(ring, Vec::new()));
    }
    let mods = res.modules();
    let di = res.differential(i);
    let fi = mods[i].dual();
    if i == len {
        return Ok(ModulePresentation::from_parts(ring, fi, mods[i - 1].dual(), di.transpose()).minimized());
    }
    let dn = res.differential(i + 1);
    let gens = kernel(ring, &mods[i + 1].dual().degrees(), &fi.degrees(), dn.transpose().columns());
    let vecs: Vec<Vec<Polynomial>> = gens.iter().map(|(v, _)| v.clone()).collect();
    let keep = prune_generators(ring, &fi.degrees(), &vecs);
    let kv: Vec<Vec<Polynomial>> = keep.iter().map(|&j| vecs[j].clone()).collect();
    let kt: Vec<i64> = keep.iter().map(|&j| -gens[j].1).collect();
    let rels = di.transpose().columns().to_vec();
    Ok(ModulePresentation::subquotient(ring, &fi, &kv, kt, &rels))
}

/// The torsion submodule and the torsion-free quotient of a module over a
/// domain, together with the saturated relation module of the quotient.
#[derive(Clone, Debug)]
pub struct TorsionSplit {
    pub torsion: ModulePresentation,
    pub quotient: ModulePresentation,
    /// Generators of `ker(M0 -> M**)`-lifted relations inside `F0`.
    pub relations: Vec<Vec<Polynomial>>,
}

/// Torsion as `ker(M -> M**)`.
pub fn torsion_submodule(m: &ModulePresentation) -> Result<TorsionSplit> {
    let ring = m.ring();
    ring.require_integral("torsion")?;
    let f0 = m.target().clone();
    let (k, kt) = dual_generators(m);
    let rel: Vec<Vec<Polynomial>> = if k.is_empty() {
        unit_vectors(ring, &f0).into_iter().map(|(v, _)| v).collect()
    } else {
        // K^T : F0 -> ⊕ R(-k_j), column i lists the i-th coordinates of the K_j.
        let kt_deg: Vec<i64> = kt.clone();
        let cols: Vec<Vec<Polynomial>> = (0..f0.rank())
            .map(|i| k.iter().map(|kj| kj[i].clone()).collect())
            .collect();
        kernel(ring, &kt_deg, &f0.degrees(), &cols)
            .into_iter()
            .map(|(v, _)| v)
            .collect()
    };
    let keep = prune_generators(ring, &f0.degrees(), &rel);
    let rel: Vec<Vec<Polynomial>> = keep.into_iter().map(|j| rel[j].clone()).collect();
    let quotient = ModulePresentation::new(ring, f0.twists().to_vec(), rel.clone())?;
    let rel_twists = rel.iter().map(|v| -vector_degree(ring, &f0.degrees(), v)).collect();
    let torsion = ModulePresentation::subquotient(ring, &f0, &rel, rel_twists, m.relations());
    Ok(TorsionSplit {
        torsion,
        quotient,
        relations: rel,
    })
}

/// `κ = M** / M` for a torsion-free module.
pub fn double_dual_quotient(m: &ModulePresentation) -> Result<ModulePresentation> {
    let ring = m.ring();
    ring.require_integral("double dual")?;
    let (k, kt) = dual_generators(m);
    if k.is_empty() {
        return Ok(ModulePresentation::free(ring, Vec::new()));
    }
    let p = k.len();
    // M* = coker(S) with S the syzygies of K; M** = ker(S^T).
    let kdeg: Vec<i64> = kt.iter().map(|t| -t).collect();
    let syz = kernel(ring, &m.target().dual().degrees(), &kdeg, &k);
    let ambient = FreeModule::new(kdeg.clone());
    let g: Vec<(Vec<Polynomial>, i64)> = if syz.is_empty() {
        unit_vectors(ring, &ambient)
    } else {
        let s_cols: Vec<Vec<Polynomial>> = (0..p)
            .map(|j| syz.iter().map(|(s, _)| s[j].clone()).collect())
            .collect();
        let s_deg: Vec<i64> = syz.iter().map(|(_, d)| -d).collect();
        kernel(ring, &s_deg, &ambient.degrees(), &s_cols)
    };
    let gv: Vec<Vec<Polynomial>> = g.iter().map(|(v, _)| v.clone()).collect();
    let keep = prune_generators(ring, &ambient.degrees(), &gv);
    let gens: Vec<Vec<Polynomial>> = keep.iter().map(|&j| gv[j].clone()).collect();
    let twists: Vec<i64> = keep.iter().map(|&j| -g[j].1).collect();
    let images: Vec<Vec<Polynomial>> = (0..m.target().rank())
        .map(|i| k.iter().map(|kj| kj[i].clone()).collect())
        .collect();
    Ok(ModulePresentation::subquotient(ring, &ambient, &gens, twists, &images))
}

/// An ideal of a domain is invertible iff it is locally principal and
/// nonzero: `Fitt_1` of the ideal as a module is the unit ideal and `J : I = J`.
pub fn is_invertible_ideal(ring: &Arc<CoordRing>, ideal: &Ideal) -> Result<bool> {
    let gens: Vec<Polynomial> = ideal
        .gb()
        .iter()
        .map(|g| ring.reduce(g))
        .filter(|g| !g.is_zero())
        .collect();
    if gens.is_empty() {
        return Ok(false);
    }
    if gens.len() == 1 {
        return ring.is_nonzerodivisor(&gens[0]);
    }
    let pm = ModulePresentation::ideal(ring, &gens)?;
    let f1 = fitting(&pm, 1)?;
    Ok(f1.is_unit() && ring.annihilator_trivial(&ring.ideal(gens))?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma2Verdict {
    pub homological_dimension: usize,
    pub fitting0: Vec<String>,
    pub fitting0_invertible: bool,
    pub pass: bool,
}

/// Checks that `hd = 1` exactly when `Fitt_0` is invertible, computing both
/// sides independently.
pub fn lemma2_certificate(f: &ModulePresentation) -> Result<Lemma2Verdict> {
    let ring = f.ring();
    ring.require_integral("lemma2 certificate")?;
    let fit = fitting(f, 0)?;
    if fit.is_unit() {
        return Err(Error::Precondition("module is zero".into()));
    }
    if ring.is_zero_ideal(&fit) {
        return Err(Error::Precondition("support has codimension 0".into()));
    }
    let hd = homological_dimension(f)?;
    let inv = is_invertible_ideal(ring, &fit)?;
    Ok(Lemma2Verdict {
        homological_dimension: hd,
        fitting0: ideal_strings(ring, &fit),
        fitting0_invertible: inv,
        pass: (hd == 1) == inv,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFreenessVerdict {
    pub rank: usize,
    pub fitting_r: Vec<String>,
    pub fitting_r_minus_1: Vec<String>,
    pub pass: bool,
}

/// PASS iff `Fitt_r = (1)` and `Fitt_{r-1} = 0`.
pub fn local_freeness_certificate(m: &ModulePresentation, r: usize) -> Result<LocalFreenessVerdict> {
    let ring = m.ring();
    let fr = fitting(m, r)?;
    let (below, below_zero) = if r == 0 {
        (Vec::new(), true)
    } else {
        let f = fitting(m, r - 1)?;
        (ideal_strings(ring, &f), ring.is_zero_ideal(&f))
    };
    Ok(LocalFreenessVerdict {
        rank: r,
        fitting_r: ideal_strings(ring, &fr),
        fitting_r_minus_1: below,
        pass: fr.is_unit() && below_zero,
    })
}

/// Reduced generators, relations of the ring removed.
pub fn ideal_strings(ring: &CoordRing, ideal: &Ideal) -> Vec<String> {
    let mut out: Vec<String> = ideal
        .gb()
        .iter()
        .filter(|g| !ring.relations().contains(g))
        .map(|g| g.to_string())
        .collect();
    if out.is_empty() {
        out.push("0".into());
    }
    out
}
