//! Hilbert series and polynomials of graded modules, computed from leading
//! monomials.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::module::ModulePresentation;
use crate::poly::{monomials_of_degree, Monomial};

/// Polynomial in one variable with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn eval(&self, x: i64) -> BigRational {
        let x = BigRational::from_integer(x.into());
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Value at `x` when it is known to be an integer.
    pub fn eval_int(&self, x: i64) -> Option<BigInt> {
        let v = self.eval(x);
        v.is_integer().then(|| v.to_integer())
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigRational::zero();
        QPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// `C(x + a, k)` as a polynomial in `x`.
    pub fn binomial(a: i64, k: usize) -> QPoly {
        let mut p = QPoly::constant(BigRational::one());
        for i in 0..k {
            let factor = QPoly::new(vec![
                BigRational::from_integer((a - i as i64).into()),
                BigRational::one(),
            ]);
            p = p.mul(&factor);
        }
        let fact: BigInt = (1..=k as u64).map(BigInt::from).product();
        p.scale(&BigRational::new(BigInt::one(), fact))
    }

    /// Newton interpolation through distinct integer points.
    pub fn interpolate(points: &[(i64, BigRational)]) -> QPoly {
        let n = points.len();
        let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let dx = BigRational::from_integer((points[i].0 - points[i - level].0).into());
                dd[i] = (&dd[i] - &dd[i - 1]) / dx;
            }
        }
        let mut result = QPoly::zero();
        let mut basis = QPoly::constant(BigRational::one());
        for (i, c) in dd.iter().enumerate() {
            result = result.add(&basis.scale(c));
            let root = BigRational::from_integer((-points[i].0).into());
            basis = basis.mul(&QPoly::new(vec![root, BigRational::one()]));
        }
        result
    }

    /// Coefficients `b_k` with `p(x) = sum b_k x(x-1)...(x-k+1)`.
    pub fn falling_factorial_coeffs(&self) -> Vec<BigRational> {
        let n = self.coeffs.len();
        let mut diffs: Vec<BigRational> = (0..n as i64).map(|x| self.eval(x)).collect();
        let mut out = Vec::with_capacity(n);
        let mut fact = BigInt::one();
        for k in 0..n {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            out.push(&diffs[0] / BigRational::from_integer(fact.clone()));
            for i in 0..diffs.len() - 1 {
                diffs[i] = &diffs[i + 1] - &diffs[i];
            }
            diffs.pop();
        }
        out
    }

    /// Rendering in the falling-factorial basis, e.g. `1 + 3*n_(1) + 1/2*n_(2)`.
    pub fn falling_factorial_string(&self, var: &str) -> String {
        let terms: Vec<(BigRational, String)> = self
            .falling_factorial_coeffs()
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                let m = match k {
                    0 => String::new(),
                    k => format!("{var}_({k})"),
                };
                (c, m)
            })
            .collect();
        render(&terms)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let terms: Vec<(BigRational, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .map(|(k, c)| {
                let m = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    k => format!("{var}^{k}"),
                };
                (c.clone(), m)
            })
            .collect();
        render(&terms)
    }
}

fn render(terms: &[(BigRational, String)]) -> String {
    let mut s = String::new();
    for (c, m) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        match (a.is_one(), m.is_empty()) {
            (_, true) => s.push_str(&a.to_string()),
            (true, false) => s.push_str(m),
            (false, false) => s.push_str(&format!("{a}*{m}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("n"))
    }
}

/// `sum_k numerator[k] T^(shift + k) / (1 - T)^nvars`, with the Hilbert
/// polynomial and the degree from which it agrees with the Hilbert function.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertData {
    pub nvars: usize,
    pub shift: i64,
    pub numerator: Vec<BigInt>,
    pub polynomial: QPoly,
    pub stabilization: i64,
}

impl HilbertData {
    fn from_numerator(nvars: usize, numer: Laurent) -> Self {
        let (shift, numerator) = numer.into_parts();
        let mut polynomial = QPoly::zero();
        if nvars > 0 {
            for (k, a) in numerator.iter().enumerate() {
                let e = shift + k as i64;
                let term = QPoly::binomial(nvars as i64 - 1 - e, nvars - 1);
                polynomial = polynomial.add(&term.scale(&BigRational::from_integer(a.clone())));
            }
        }
        let mut hd = HilbertData {
            nvars,
            shift,
            numerator,
            polynomial,
            stabilization: 0,
        };
        let top = hd.shift + hd.numerator.len() as i64 - 1;
        let mut s = (top - nvars as i64 + 1).max(hd.shift);
        while s > hd.shift - nvars as i64 - 1 && hd.agrees_at(s - 1) {
            s -= 1;
        }
        hd.stabilization = s;
        hd
    }

    fn agrees_at(&self, d: i64) -> bool {
        BigRational::from_integer(self.function(d)) == self.polynomial.eval(d)
    }

    /// Coefficient of `T^d` in the series.
    pub fn function(&self, d: i64) -> BigInt {
        let n = self.nvars as i64;
        let mut acc = BigInt::zero();
        for (k, a) in self.numerator.iter().enumerate() {
            let j = d - self.shift - k as i64;
            if j < 0 {
                continue;
            }
            let c = if n == 0 {
                if j == 0 { BigInt::one() } else { BigInt::zero() }
            } else {
                binomial_int(j + n - 1, n - 1)
            };
            acc += a * c;
        }
        acc
    }

    pub fn numerator_string(&self) -> String {
        let terms: Vec<(BigRational, String)> = self
            .numerator
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let e = self.shift + k as i64;
                let m = match e {
                    0 => String::new(),
                    1 => "T".to_string(),
                    e => format!("T^{e}"),
                };
                (BigRational::from_integer(a.clone()), m)
            })
            .collect();
        render(&terms)
    }
}

fn binomial_int(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Laurent polynomial in `T` with integer coefficients.
#[derive(Clone, Debug, Default)]
struct Laurent {
    terms: std::collections::BTreeMap<i64, BigInt>,
}

impl Laurent {
    fn monomial(e: i64, c: BigInt) -> Self {
        let mut l = Laurent::default();
        l.add_term(e, c);
        l
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn add_shifted(&mut self, other: &Laurent, shift: i64, sign: i64) {
        for (e, c) in &other.terms {
            self.add_term(e + shift, c * BigInt::from(sign));
        }
    }

    fn into_parts(self) -> (i64, Vec<BigInt>) {
        let Some((&lo, _)) = self.terms.iter().next() else {
            return (0, Vec::new());
        };
        let hi = *self.terms.keys().next_back().unwrap();
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in self.terms {
            v[(e - lo) as usize] = c;
        }
        (lo, v)
    }
}

fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort_by_key(|m| m.total_degree());
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator of the Hilbert series of `k[x] / (gens)` over
/// `prod (1 - T^w_i)`.
fn monomial_numerator(weights: &[u32], gens: &[Monomial]) -> Laurent {
    let gens = minimalize(gens);
    let Some((last, rest)) = gens.split_last() else {
        return Laurent::monomial(0, BigInt::one());
    };
    if gens.iter().all(|g| g.exps().iter().filter(|&&e| e > 0).count() <= 1) {
        // Pure powers: a product of (1 - T^{w e}).
        let mut acc = Laurent::monomial(0, BigInt::one());
        for g in &gens {
            let d = weighted(weights, g);
            let mut next = acc.clone();
            next.add_shifted(&acc, d, -1);
            acc = next;
        }
        return acc;
    }
    let colon: Vec<Monomial> = rest
        .iter()
        .map(|g| {
            let l = g.lcm(last);
            last.quotient_of(&l).unwrap()
        })
        .collect();
    let mut n = monomial_numerator(weights, rest);
    let q = monomial_numerator(weights, &colon);
    n.add_shifted(&q, weighted(weights, last), -1);
    n
}

fn weighted(weights: &[u32], m: &Monomial) -> i64 {
    m.exps()
        .iter()
        .zip(weights)
        .map(|(&e, &w)| e as i64 * w as i64)
        .sum()
}

fn standard_grading(m: &ModulePresentation) -> Result<()> {
    let r = m.ring().ring();
    if !m.ring().is_graded() || !m.is_homogeneous() {
        return Err(Error::Inhomogeneous("Hilbert data needs a graded module".into()));
    }
    if r.weights().iter().any(|&w| w != 1) {
        return Err(Error::Scope("Hilbert polynomials need standard grading".into()));
    }
    Ok(())
}

/// Hilbert series and polynomial of the presented module.
pub fn hilbert(m: &ModulePresentation) -> Result<HilbertData> {
    standard_grading(m)?;
    let r = m.ring().ring();
    let leads = m.submodule().leading_monomials();
    let mut total = Laurent::default();
    for (i, ls) in leads.iter().enumerate() {
        let n = monomial_numerator(r.weights(), ls);
        total.add_shifted(&n, -m.target().twists()[i], 1);
    }
    Ok(HilbertData::from_numerator(r.nvars(), total))
}

/// Dimension of the degree-`d` piece, by enumerating standard monomials.
pub fn module_piece_dim(m: &ModulePresentation, d: i64) -> Result<u64> {
    if !m.ring().is_graded() || !m.is_homogeneous() {
        return Err(Error::Inhomogeneous("graded pieces need a graded module".into()));
    }
    let r = m.ring().ring();
    let leads = m.submodule().leading_monomials();
    let mut count = 0u64;
    for (i, ls) in leads.iter().enumerate() {
        let e = d + m.target().twists()[i];
        count += monomials_of_degree(r.weights(), e)
            .iter()
            .filter(|mon| !ls.iter().any(|l| l.divides(mon)))
            .count() as u64;
    }
    Ok(count)
}

/// Integer values of a polynomial at consecutive points, as `i64` when they fit.
pub fn values(p: &QPoly, range: std::ops::RangeInclusive<i64>) -> Vec<Option<i64>> {
    range
        .map(|x| p.eval_int(x).and_then(|v| v.to_i64()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = QPoly::new(vec![q(1, 1), q(0, 1), q(-3, 2), q(1, 6)]);
        let pts: Vec<_> = (2..6).map(|x| (x, p.eval(x))).collect();
        assert_eq!(QPoly::interpolate(&pts), p);
    }

    #[test]
    fn falling_factorial_basis() {
        // x^2 = x_(2) + x_(1)
        let p = QPoly::new(vec![q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(p.falling_factorial_coeffs(), vec![q(0, 1), q(1, 1), q(1, 1)]);
        assert_eq!(p.falling_factorial_string("n"), "n_(1) + n_(2)");
        assert_eq!(p.to_string(), "n^2");
    }

    #[test]
    fn binomial_polynomial() {
        let p = QPoly::binomial(2, 2);
        assert_eq!(p.eval_int(3), Some(BigInt::from(10)));
        assert_eq!(p.to_string(), "1/2*n^2 + 3/2*n + 1");
    }

    #[test]
    fn numerator_of_mixed_monomial_ideal() {
        let gens = vec![Monomial::new(vec![2, 0]), Monomial::new(vec![1, 1])];
        let (shift, n) = monomial_numerator(&[1, 1], &gens).into_parts();
        // 1 - 2T^2 + T^3
        assert_eq!(shift, 0);
        let expect: Vec<BigInt> = [1, 0, -2, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(n, expect);
    }
}
