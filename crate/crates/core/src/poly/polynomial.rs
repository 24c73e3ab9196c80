use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

use super::monomial::Monomial;
use super::ring::{Field, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: BigRational,
    pub mon: Monomial,
}

/// Sparse polynomial; terms are kept strictly descending in the ring's order
/// with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: BigRational) -> Self {
        Self::from_terms(ring, vec![(c, ring.one_monomial())])
    }

    pub fn from_int(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::constant(ring, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, BigRational::one(), Monomial::var(ring.nvars(), i))
    }

    pub fn var_named(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Arc<PolyRing>, c: BigRational, m: Monomial) -> Self {
        Self::from_terms(ring, vec![(c, m)])
    }

    /// Builds a polynomial from arbitrary (coefficient, monomial) pairs,
    /// combining duplicates and sorting.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(BigRational, Monomial)>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, BigRational> = HashMap::with_capacity(terms.len());
        for (c, m) in terms {
            debug_assert_eq!(m.len(), ring.nvars());
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        let mut out: Vec<Term> = acc
            .into_iter()
            .map(|(mon, c)| Term {
                coeff: normalize(field, c),
                mon,
            })
            .filter(|t| !t.coeff.is_zero())
            .collect();
        out.sort_by(|a, b| ring.cmp_monomials(&b.mon, &a.mon));
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Caller guarantees the terms are sorted, distinct and nonzero.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mon.is_one() && self.terms[0].coeff.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].mon.is_one())
    }

    /// The value if the polynomial is a nonzero constant.
    pub fn as_nonzero_constant(&self) -> Option<&BigRational> {
        if self.terms.len() == 1 && self.terms[0].mon.is_one() {
            Some(&self.terms[0].coeff)
        } else {
            None
        }
    }

    pub fn lead_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mon)
    }

    pub fn lead_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Maximum weighted degree over the terms.
    pub fn degree(&self) -> Option<i64> {
        self.terms.iter().map(|t| self.ring.degree(&t.mon)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mon.total_degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = self.ring.degree(&t.mon);
                self.terms.iter().all(|s| self.ring.degree(&s.mon) == d)
            }
        }
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|t| t.mon.exp(i)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|t| t.mon.exp(i) > 0)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.ring.field().clone();
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: normalize(&field, &t.coeff * c),
                mon: t.mon.clone(),
            })
            .filter(|t| !t.coeff.is_zero())
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    /// Multiplication by `c * m`; preserves the term order.
    pub fn mul_term(&self, c: &BigRational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.ring.field().clone();
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: normalize(&field, &t.coeff * c),
                mon: t.mon.mul(m),
            })
            .filter(|t| !t.coeff.is_zero())
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    pub fn monic(&self) -> Polynomial {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) => {
                let inv = self.ring.field().inv(c);
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self - c * m * other`, the workhorse of reduction.
    pub fn sub_mul_term(&self, c: &BigRational, m: &Monomial, other: &Polynomial) -> Polynomial {
        let field = self.ring.field().clone();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|t| Term {
            coeff: -(&t.coeff * c),
            mon: t.mon.mul(m),
        });
        let mut bnext = b.next();
        loop {
            match (a.peek(), &bnext) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let t = bnext.take().unwrap();
                    let coeff = normalize(&field, t.coeff);
                    if !coeff.is_zero() {
                        out.push(Term { coeff, mon: t.mon });
                    }
                    bnext = b.next();
                }
                (Some(ta), Some(tb)) => match ring.cmp_monomials(&ta.mon, &tb.mon) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let t = bnext.take().unwrap();
                        let coeff = normalize(&field, t.coeff);
                        if !coeff.is_zero() {
                            out.push(Term { coeff, mon: t.mon });
                        }
                        bnext = b.next();
                    }
                    Ordering::Equal => {
                        let ta = a.next().unwrap();
                        let t = bnext.take().unwrap();
                        let coeff = normalize(&field, &ta.coeff + t.coeff);
                        if !coeff.is_zero() {
                            out.push(Term { coeff, mon: t.mon });
                        }
                        bnext = b.next();
                    }
                },
            }
        }
        Polynomial::from_sorted_terms(ring, out)
    }

    /// Re-expresses the polynomial in another ring, matching variables by name.
    pub fn to_ring(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let mut index = Vec::with_capacity(self.ring.nvars());
        for (i, v) in self.ring.vars().iter().enumerate() {
            let j = target.var_index(v);
            if j.is_none() && self.uses_var(i) {
                return Err(Error::RingMismatch(format!(
                    "variable `{v}` does not exist in ring {}",
                    target.name()
                )));
            }
            index.push(j);
        }
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut e = vec![0u32; n];
                for (i, &x) in t.mon.exps().iter().enumerate() {
                    if let Some(j) = index[i] {
                        e[j] = x;
                    }
                }
                (t.coeff.clone(), Monomial::new(e))
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Substitutes `images[i]` for variable `i`; all images share one ring.
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<PolyRing>) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        let mut power_cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        for t in &self.terms {
            let mut p = Polynomial::constant(target, t.coeff.clone());
            for (i, &e) in t.mon.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = power_cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                p = &p * &pw;
            }
            acc = &acc + &p;
        }
        acc
    }

    /// Multivariate division; returns (quotients, remainder).
    pub fn div_rem(&self, divisors: &[Polynomial]) -> (Vec<Polynomial>, Polynomial) {
        let mut quotients: Vec<Polynomial> =
            divisors.iter().map(|_| Polynomial::zero(&self.ring)).collect();
        let mut rem = Vec::new();
        let mut p = self.clone();
        let field = self.ring.field().clone();
        while let Some(lt) = p.lead_term().cloned() {
            let mut divided = false;
            for (k, g) in divisors.iter().enumerate() {
                let Some(gl) = g.lead_term() else { continue };
                if let Some(q) = gl.mon.quotient_of(&lt.mon) {
                    let c = normalize(&field, &lt.coeff * field.inv(&gl.coeff));
                    quotients[k] = &quotients[k] + &Polynomial::monomial(&self.ring, c.clone(), q.clone());
                    p = p.sub_mul_term(&c, &q, g);
                    divided = true;
                    break;
                }
            }
            if !divided {
                rem.push(lt.clone());
                p.terms.remove(0);
            }
        }
        (quotients, Polynomial::from_sorted_terms(&self.ring, rem))
    }

    /// Exact quotient `self / g`, if `g` divides `self`.
    pub fn exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        if g.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(std::slice::from_ref(g));
        if r.is_zero() {
            q.into_iter().next()
        } else {
            None
        }
    }

    /// Canonical text form (parseable back by [`super::parse::parse_polynomial`]).
    pub fn to_text(&self) -> String {
        format!("{self}")
    }
}

pub(crate) fn normalize(field: &Field, c: BigRational) -> BigRational {
    match field {
        Field::Rationals => c,
        _ => field.normalize(c),
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn fmt_monomial(ring: &PolyRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.vars()[i].clone()),
            _ => parts.push(format!("{}^{}", ring.vars()[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let m = fmt_monomial(&self.ring, &t.mon);
            if m.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch in addition");
        let m = self.ring.one_monomial();
        self.sub_mul_term(&-BigRational::one(), &m, rhs)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch in subtraction");
        let m = self.ring.one_monomial();
        self.sub_mul_term(&BigRational::one(), &m, rhs)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch in multiplication");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].coeff, &rhs.terms[0].mon);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].coeff, &self.terms[0].mon);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                terms.push((&a.coeff * &b.coeff, a.mon.mul(&b.mon)));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigRational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Convenience: rational from a pair of machine integers.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new("R", &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
        let q = &p.scale(&rat(3, 4)) - &Polynomial::from_int(&r, 2);
        assert_eq!(q.to_string(), "3/4*x^2 - 3/4*y^2 - 2");
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = &(&x * &y) + &(&y * &y);
        assert_eq!(p.exact_div(&y).unwrap(), &x + &y);
        assert!(p.exact_div(&x).is_none());
    }

    #[test]
    fn substitution() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let z = Polynomial::var(&r, 2);
        let p = &(&x * &x) - &y;
        let images = vec![&y + &z, z.clone(), x.clone()];
        assert_eq!(p.substitute(&images, &r).to_string(), "y^2 + 2*y*z + z^2 - z");
    }

    #[test]
    fn homogeneity() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        assert!((&(&x * &y) + &(&y * &y)).is_homogeneous());
        assert!(!(&x + &(&y * &y)).is_homogeneous());
    }
}
