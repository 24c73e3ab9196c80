use serde::Serialize;

/// Exponent vector, aligned with the variables of its ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }
}

/// All exponent vectors of weighted degree `d`. Every weight must be positive.
pub fn monomials_of_degree(weights: &[u32], d: i64) -> Vec<Monomial> {
    assert!(weights.iter().all(|&w| w > 0), "enumeration needs positive weights");
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut cur = vec![0u32; weights.len()];
    fill(weights, 0, d as u64, &mut cur, &mut out);
    out
}

fn fill(w: &[u32], i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == w.len() {
        if left == 0 {
            out.push(Monomial(cur.clone()));
        }
        return;
    }
    let wi = w[i] as u64;
    for e in 0..=left / wi {
        cur[i] = e as u32;
        fill(w, i + 1, left - e * wi, cur, out);
    }
    cur[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::new(vec![1, 2, 0]);
        let b = Monomial::new(vec![2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), Some(Monomial::new(vec![1, 0, 1])));
        assert_eq!(b.quotient_of(&a), None);
        assert_eq!(a.lcm(&Monomial::new(vec![0, 3, 1])), Monomial::new(vec![1, 3, 1]));
        assert!(Monomial::new(vec![1, 0, 0]).is_coprime(&Monomial::new(vec![0, 4, 1])));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(monomials_of_degree(&[1, 1, 1], 2).len(), 6);
        assert_eq!(monomials_of_degree(&[1, 1, 1, 1], 3).len(), 20);
        assert_eq!(monomials_of_degree(&[1, 2], 4).len(), 3);
        assert!(monomials_of_degree(&[1], -1).is_empty());
    }
}
