//! Ideals with cached reduced Gröbner bases.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner;
use crate::poly::{monomials_of_degree, Monomial, PolyRing, Polynomial, TermOrder};

#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
    saturated: bool,
}

/// Binary and unary ideal operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Power(i64),
    Intersection,
    Quotient,
    Saturation,
}

impl Ideal {
    /// Validated construction: generators must live in `ring` and, in a
    /// graded ring, be homogeneous.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch(format!("{g} is not in {}", ring.name())));
            }
            if ring.is_homogeneous() && !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!("generator {g}")));
            }
        }
        Ok(Self::from_gens(ring, gens))
    }

    pub(crate) fn from_gens(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Self {
        let mut out: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ideal {
            ring: ring.clone(),
            gens: out,
            gb: OnceLock::new(),
            saturated: false,
        }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::from_gens(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::from_gens(ring, vec![Polynomial::one(ring)])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Gröbner basis in the ring's order, computed once.
    pub fn gb(&self) -> &[Polynomial] {
        self.gb
            .get_or_init(|| groebner::groebner(&self.gens).expect("generators share one ring"))
    }

    /// Ideal generated by its own reduced Gröbner basis.
    pub fn normalized(&self) -> Ideal {
        let gb = self.gb().to_vec();
        let out = Ideal {
            ring: self.ring.clone(),
            gens: gb.clone(),
            gb: OnceLock::new(),
            saturated: self.saturated,
        };
        let _ = out.gb.set(gb);
        out
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn mark_saturated(mut self) -> Self {
        self.saturated = true;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().iter().any(|g| g.is_constant())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        groebner::reduce(f, self.gb())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Largest weighted degree among the reduced Gröbner basis elements.
    pub fn max_generator_degree(&self) -> i64 {
        self.gb().iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} versus {}",
                self.ring.name(),
                other.ring.name()
            )));
        }
        Ok(())
    }

    pub fn apply(&self, op: IdealOp, other: &Ideal) -> Result<Ideal> {
        match op {
            IdealOp::Sum => self.sum(other),
            IdealOp::Product => self.product(other),
            IdealOp::Power(k) => self.power(k),
            IdealOp::Intersection => self.intersection(other),
            IdealOp::Quotient => self.quotient(other),
            IdealOp::Saturation => self.saturation(other),
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ok(Self::from_gens(&self.ring, g))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in self.gb() {
            for b in other.gb() {
                g.push(a * b);
            }
        }
        Ok(Self::from_gens(&self.ring, g).normalized())
    }

    pub fn power(&self, k: i64) -> Result<Ideal> {
        if k < 0 {
            return Err(Error::Domain(format!("negative ideal power {k}")));
        }
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Intersection through an auxiliary variable `s`:
    /// eliminate `s` from `s*a + (1-s)*b`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let s_name = fresh_name(&self.ring, "s");
        let mut vars = vec![s_name.clone()];
        vars.extend(self.ring.vars().iter().cloned());
        let mut weights = vec![1];
        weights.extend_from_slice(self.ring.weights());
        let big = PolyRing::with_options(
            "aux",
            vars,
            weights,
            TermOrder::Block { split: 1 },
            self.ring.field().clone(),
            false,
        )?;
        let s = Polynomial::var(&big, 0);
        let one_minus_s = &Polynomial::one(&big) - &s;
        let mut g = Vec::new();
        for a in &self.gens {
            g.push(&s * &a.to_ring(&big)?);
        }
        for b in &other.gens {
            g.push(&one_minus_s * &b.to_ring(&big)?);
        }
        let gb = groebner::groebner(&g)?;
        let kept = gb
            .into_iter()
            .filter(|p| !p.uses_var(0))
            .map(|p| p.to_ring(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_gens(&self.ring, kept).normalized())
    }

    /// `self : (f)`, computed as `(self ∩ (f)) / f`.
    pub fn quotient_by(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let principal = Ideal::from_gens(&self.ring, vec![f.clone()]);
        let inter = self.intersection(&principal)?;
        let gens = inter
            .gens
            .iter()
            .map(|g| g.exact_div(f).expect("intersection lies in (f)"))
            .collect();
        Ok(Self::from_gens(&self.ring, gens).normalized())
    }

    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut acc = Ideal::unit(&self.ring);
        for g in other.gb() {
            let q = self.quotient_by(g)?;
            acc = if acc.is_unit() { q } else { acc.intersection(&q)? };
        }
        Ok(acc)
    }

    /// `self : other^∞` as a stabilized chain of quotients.
    pub fn saturation(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut cur = self.normalized();
        loop {
            let next = cur.quotient(other)?;
            if cur.contains_ideal(&next) {
                return Ok(cur);
            }
            cur = next;
        }
    }

    pub fn saturate_by(&self, f: &Polynomial) -> Result<Ideal> {
        let mut cur = self.normalized();
        loop {
            let next = cur.quotient_by(f)?;
            if cur.contains_ideal(&next) {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Saturation by the irrelevant ideal generated by all variables.
    pub fn saturate_irrelevant(&self) -> Result<Ideal> {
        let m = Ideal::from_gens(
            &self.ring,
            (0..self.ring.nvars()).map(|i| Polynomial::var(&self.ring, i)).collect(),
        );
        Ok(self.saturation(&m)?.mark_saturated())
    }

    /// Intersection with the subring on the variables not in `drop`.
    pub fn eliminate(&self, drop: &[&str]) -> Result<Ideal> {
        let ring = &self.ring;
        for d in drop {
            if ring.var_index(d).is_none() {
                return Err(Error::UnknownVariable(d.to_string()));
            }
        }
        let keep: Vec<String> = ring
            .vars()
            .iter()
            .filter(|v| !drop.contains(&v.as_str()))
            .cloned()
            .collect();
        let weight_of = |v: &str| ring.weights()[ring.var_index(v).unwrap()];
        let order_vars: Vec<String> = drop
            .iter()
            .map(|s| s.to_string())
            .chain(keep.iter().cloned())
            .collect();
        let order_weights = order_vars.iter().map(|v| weight_of(v)).collect();
        let elim = PolyRing::with_options(
            ring.name(),
            order_vars,
            order_weights,
            TermOrder::Block { split: drop.len() },
            ring.field().clone(),
            false,
        )?;
        let sub_order = match ring.order() {
            TermOrder::Block { .. } => TermOrder::GrevLex,
            o => o.clone(),
        };
        let sub = PolyRing::with_options(
            ring.name(),
            keep.clone(),
            keep.iter().map(|v| weight_of(v)).collect(),
            sub_order,
            ring.field().clone(),
            ring.is_homogeneous(),
        )?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.to_ring(&elim))
            .collect::<Result<Vec<_>>>()?;
        let gb = groebner::groebner(&gens)?;
        let kept = gb
            .into_iter()
            .filter(|p| (0..drop.len()).all(|i| !p.uses_var(i)))
            .map(|p| p.to_ring(&sub))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_gens(&sub, kept).normalized())
    }

    fn graded_check(&self) -> Result<()> {
        if !self.ring.is_homogeneous() {
            return Err(Error::Inhomogeneous("ring is not graded".into()));
        }
        if let Some(g) = self.gens.iter().find(|g| !g.is_homogeneous()) {
            return Err(Error::Inhomogeneous(format!("generator {g}")));
        }
        Ok(())
    }

    /// Dimension of the degree-`d` piece of the ideal, by counting monomials
    /// of degree `d` that lie in the leading-term ideal.
    pub fn graded_piece_dim(&self, d: i64) -> Result<u64> {
        self.graded_check()?;
        let leads: Vec<Monomial> = self
            .gb()
            .iter()
            .map(|g| g.lead_monomial().unwrap().clone())
            .collect();
        Ok(monomials_of_degree(self.ring.weights(), d)
            .iter()
            .filter(|m| leads.iter().any(|l| l.divides(m)))
            .count() as u64)
    }

    /// Dimension of the degree-`d` piece of `R / self`.
    pub fn quotient_piece_dim(&self, d: i64) -> Result<u64> {
        let total = monomials_of_degree(self.ring.weights(), d).len() as u64;
        Ok(total - self.graded_piece_dim(d)?)
    }

    /// Maps generators into a ring with the same variable names.
    pub fn to_ring(&self, target: &Arc<PolyRing>) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.to_ring(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_gens(target, gens))
    }

    /// Image under a substitution of variables.
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<PolyRing>) -> Ideal {
        let gens = self.gens.iter().map(|g| g.substitute(images, target)).collect();
        Self::from_gens(target, gens)
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gb() == other.gb()
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A variable name not yet used by `ring`, derived from `base`.
pub fn fresh_name(ring: &PolyRing, base: &str) -> String {
    if ring.var_index(base).is_none() {
        return base.to_string();
    }
    (0..)
        .map(|k| format!("{base}_{k}"))
        .find(|n| ring.var_index(n).is_none())
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_polynomial;

    fn ideal(r: &Arc<PolyRing>, src: &[&str]) -> Ideal {
        Ideal::new(r, src.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn intersection_of_coprime_principals() {
        let r = PolyRing::new("R", &["x", "y"]).unwrap();
        assert_eq!(ideal(&r, &["x"]).intersection(&ideal(&r, &["y"])).unwrap(), ideal(&r, &["x*y"]));
    }

    #[test]
    fn saturation_example() {
        let r = PolyRing::new("R", &["x", "y"]).unwrap();
        let a = ideal(&r, &["x^2", "x*y"]);
        let m = ideal(&r, &["x", "y"]);
        let sat = a.saturation(&m).unwrap();
        assert_eq!(sat, ideal(&r, &["x"]));
        // Stable under one more quotient.
        assert_eq!(sat.quotient(&m).unwrap(), sat);
    }

    #[test]
    fn zeroth_power_and_negative_power() {
        let r = PolyRing::new("R", &["x", "y"]).unwrap();
        let m = ideal(&r, &["x", "y"]);
        assert!(m.power(0).unwrap().is_unit());
        assert!(matches!(m.power(-1), Err(Error::Domain(_))));
    }

    #[test]
    fn elimination_examples() {
        let r = PolyRing::affine("R", &["x", "y", "s", "T0", "T1"]).unwrap();
        let i = ideal(&r, &["T0 - s*x", "T1 - s*y"]);
        let e = i.eliminate(&["s"]).unwrap();
        assert_eq!(e.gb().len(), 1);
        let sub = e.ring().clone();
        let expect = parse_polynomial(&sub, "y*T0 - x*T1").unwrap();
        assert_eq!(e.gb()[0], expect.monic());

        let r2 = PolyRing::new("R", &["x", "y"]).unwrap();
        let e = ideal(&r2, &["x"]).eliminate(&["y"]).unwrap();
        assert_eq!(e.gb().len(), 1);
        assert!(ideal(&r2, &["x - y"]).eliminate(&["x"]).unwrap().is_zero());
        assert!(ideal(&r2, &["x"]).eliminate(&["w"]).is_err());
    }

    #[test]
    fn graded_pieces() {
        let r = PolyRing::new("R", &["x", "y", "z"]).unwrap();
        let m = ideal(&r, &["x", "y"]);
        assert_eq!(Ideal::zero(&r).quotient_piece_dim(2).unwrap(), 6);
        assert_eq!(m.graded_piece_dim(2).unwrap(), 5);
        assert_eq!(m.power(2).unwrap().graded_piece_dim(2).unwrap(), 3);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let r = PolyRing::new("R", &["x", "y"]).unwrap();
        let p = parse_polynomial(&r, "x + y^2").unwrap();
        assert!(matches!(Ideal::new(&r, vec![p]), Err(Error::Inhomogeneous(_))));
    }
}
