use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

use super::monomial::Monomial;

/// Monomial orders on exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum TermOrder {
    Lex,
    /// Graded reverse lexicographic; the weighted degree is compared first.
    GrevLex,
    /// Two grevlex blocks: the first `split` variables dominate the rest.
    /// Used to eliminate the leading block.
    Block { split: usize },
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::GrevLex => write!(f, "grevlex"),
            TermOrder::Block { split } => write!(f, "block({split})"),
        }
    }
}

/// Coefficient field. Only the rationals are authoritative; the prime field
/// exists for quick screening runs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn is_authoritative(&self) -> bool {
        matches!(self, Field::Rationals)
    }

    /// Brings a coefficient into canonical form for this field.
    pub fn normalize(&self, c: BigRational) -> BigRational {
        match self {
            Field::Rationals => c,
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let num = c.numer().mod_floor_big(&p);
                let den = c.denom().mod_floor_big(&p);
                let inv = mod_inverse(&den, &p);
                BigRational::from_integer((num * inv).mod_floor_big(&p))
            }
        }
    }

    pub fn inv(&self, c: &BigRational) -> BigRational {
        match self {
            Field::Rationals => c.recip(),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                BigRational::from_integer(mod_inverse(&c.to_integer(), &p))
            }
        }
    }
}

trait ModFloor {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    // Fermat: p is prime.
    let a = a.mod_floor_big(p);
    assert!(!a.is_zero(), "division by zero in prime field");
    a.modpow(&(p - BigInt::from(2)), p)
}

/// A multivariate polynomial ring over a field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PolyRing {
    name: String,
    vars: Vec<String>,
    weights: Vec<u32>,
    order: TermOrder,
    field: Field,
    homogeneous: bool,
}

impl PolyRing {
    /// Standard-graded ring over the rationals with grevlex order.
    pub fn new<S: AsRef<str>>(name: &str, vars: &[S]) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let weights = vec![1; vars.len()];
        Self::with_options(name, vars, weights, TermOrder::GrevLex, Field::Rationals, true)
    }

    /// Affine (non-graded) ring: homogeneity is not enforced anywhere.
    pub fn affine<S: AsRef<str>>(name: &str, vars: &[S]) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let weights = vec![1; vars.len()];
        Self::with_options(name, vars, weights, TermOrder::GrevLex, Field::Rationals, false)
    }

    pub fn with_options(
        name: &str,
        vars: Vec<String>,
        weights: Vec<u32>,
        order: TermOrder,
        field: Field,
        homogeneous: bool,
    ) -> Result<Arc<Self>> {
        if weights.len() != vars.len() {
            return Err(Error::Domain("one weight per variable required".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::Domain(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Domain(format!("duplicate variable `{v}`")));
            }
        }
        if let TermOrder::Block { split } = order {
            if split > vars.len() {
                return Err(Error::Domain("block split exceeds variable count".into()));
            }
        }
        if let Field::Prime(p) = field {
            if p < 2 {
                return Err(Error::Domain("prime field needs p >= 2".into()));
            }
        }
        Ok(Arc::new(PolyRing {
            name: name.to_string(),
            vars,
            weights,
            order,
            field,
            homogeneous,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and grading under another term order.
    pub fn with_order(&self, order: TermOrder) -> Arc<Self> {
        Arc::new(PolyRing {
            order,
            ..self.clone()
        })
    }

    pub fn renamed(&self, name: &str) -> Arc<Self> {
        Arc::new(PolyRing {
            name: name.to_string(),
            ..self.clone()
        })
    }

    /// Weighted degree of an exponent vector.
    pub fn degree(&self, m: &Monomial) -> i64 {
        m.exps()
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exps(), b.exps());
        match self.order {
            TermOrder::Lex => a.cmp(b),
            TermOrder::GrevLex => grevlex(a, b, &self.weights),
            TermOrder::Block { split } => grevlex(&a[..split], &b[..split], &self.weights[..split])
                .then_with(|| grevlex(&a[split..], &b[split..], &self.weights[split..])),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32], w: &[u32]) -> Ordering {
    let wd = |m: &[u32]| -> u64 { m.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum() };
    let td = |m: &[u32]| -> u64 { m.iter().map(|&e| e as u64).sum() };
    wd(a).cmp(&wd(b)).then_with(|| td(a).cmp(&td(b))).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = match self.field {
            Field::Rationals => "QQ".to_string(),
            Field::Prime(p) => format!("GF{p}"),
        };
        write!(
            f,
            "ring {} = {}[{}] order {};",
            self.name,
            field,
            self.vars.join(","),
            self.order
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mon(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        let r = PolyRing::new("R", &["x", "y", "z"]).unwrap();
        // x*z < y^2 in grevlex
        assert_eq!(r.cmp_monomials(&mon(&[1, 0, 1]), &mon(&[0, 2, 0])), Ordering::Less);
        assert_eq!(r.cmp_monomials(&mon(&[1, 0, 0]), &mon(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(r.cmp_monomials(&mon(&[0, 0, 2]), &mon(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let r = PolyRing::new("R", &["s", "x", "y"]).unwrap();
        let r = r.with_order(TermOrder::Block { split: 1 });
        assert_eq!(r.cmp_monomials(&mon(&[1, 0, 0]), &mon(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn rejects_duplicate_variables() {
        assert!(PolyRing::new("R", &["x", "x"]).is_err());
        assert!(PolyRing::new("R", &["1x"]).is_err());
    }

    #[test]
    fn prime_field_normalizes() {
        let f = Field::Prime(7);
        let c = f.normalize(BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(c, BigRational::from_integer(BigInt::from(4)));
        assert_eq!(f.inv(&c), BigRational::from_integer(BigInt::from(2)));
    }
}
