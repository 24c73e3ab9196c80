//! Coordinate rings `k[x]/J` and matrices over them.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{PolyRing, Polynomial};

/// Quotient of a polynomial ring. Ideals of the quotient are represented by
/// ideals of the ambient ring containing the relations.
#[derive(Clone, Debug)]
pub struct CoordRing {
    ring: Arc<PolyRing>,
    relations: Ideal,
    integral: bool,
}

impl CoordRing {
    pub fn polynomial(ring: &Arc<PolyRing>) -> Arc<Self> {
        Arc::new(CoordRing {
            ring: ring.clone(),
            relations: Ideal::zero(ring),
            integral: true,
        })
    }

    /// `integral` records whether the quotient is known to be a domain.
    pub fn quotient(ring: &Arc<PolyRing>, relations: Vec<Polynomial>, integral: bool) -> Result<Arc<Self>> {
        let relations = Ideal::new(ring, relations)?.normalized();
        if relations.is_unit() {
            return Err(Error::Domain("quotient by the unit ideal".into()));
        }
        let integral = integral || relations.is_zero();
        Ok(Arc::new(CoordRing {
            ring: ring.clone(),
            relations,
            integral,
        }))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn is_graded(&self) -> bool {
        self.ring.is_homogeneous()
    }

    pub fn require_integral(&self, what: &str) -> Result<()> {
        if self.integral {
            Ok(())
        } else {
            Err(Error::DecomposeFirst(format!("{what} over {}", self.ring.name())))
        }
    }

    /// Ideal of the quotient generated by `gens`.
    pub fn ideal(&self, gens: Vec<Polynomial>) -> Ideal {
        let mut g = gens;
        g.extend(self.relations.gens().iter().cloned());
        Ideal::from_gens(&self.ring, g)
    }

    pub fn zero_ideal(&self) -> Ideal {
        self.ideal(Vec::new())
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.relations.is_zero() {
            f.clone()
        } else {
            self.relations.normal_form(f)
        }
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Ideal equality in the quotient.
    pub fn ideals_equal(&self, a: &Ideal, b: &Ideal) -> bool {
        let a = a.sum(&self.relations).expect("same ring");
        let b = b.sum(&self.relations).expect("same ring");
        a == b
    }

    pub fn is_zero_ideal(&self, a: &Ideal) -> bool {
        a.gens().iter().all(|g| self.is_zero(g))
    }

    /// `f` is a nonzerodivisor iff `J : f = J`.
    pub fn is_nonzerodivisor(&self, f: &Polynomial) -> Result<bool> {
        if self.is_zero(f) {
            return Ok(false);
        }
        if self.relations.is_zero() {
            return Ok(true);
        }
        let q = self.relations.quotient_by(f)?;
        Ok(self.relations.contains_ideal(&q))
    }

    /// `a` contains a nonzerodivisor-like witness: `J : a = J`.
    pub fn annihilator_trivial(&self, a: &Ideal) -> Result<bool> {
        let a = a.sum(&self.relations)?;
        if self.relations.is_zero() {
            return Ok(!a.is_zero());
        }
        let q = self.relations.quotient(&a)?;
        Ok(self.relations.contains_ideal(&q))
    }
}

impl PartialEq for CoordRing {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.relations == other.relations
    }
}

impl fmt::Display for CoordRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}]", self.ring.vars().join(","))?;
        if !self.relations.is_zero() {
            write!(f, "/{}", self.relations)?;
        }
        Ok(())
    }
}

/// Column-major polynomial matrix; `columns[j][i]` is entry `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    ring: Arc<PolyRing>,
    nrows: usize,
    columns: Vec<Vec<Polynomial>>,
}

impl Matrix {
    pub fn new(ring: &Arc<PolyRing>, nrows: usize, columns: Vec<Vec<Polynomial>>) -> Self {
        for c in &columns {
            assert_eq!(c.len(), nrows, "column length must equal row count");
        }
        Matrix {
            ring: ring.clone(),
            nrows,
            columns,
        }
    }

    pub fn zero(ring: &Arc<PolyRing>, nrows: usize, ncols: usize) -> Self {
        Self::new(ring, nrows, vec![vec![Polynomial::zero(ring); nrows]; ncols])
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| if i == j { Polynomial::one(ring) } else { Polynomial::zero(ring) })
                    .collect()
            })
            .collect();
        Self::new(ring, n, cols)
    }

    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let cols = (0..ncols)
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Self::new(ring, nrows, cols)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &[Polynomial] {
        &self.columns[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.columns[j][i]
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.columns.iter().map(|c| c[i].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|p| p.is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        let cols = (0..self.nrows).map(|i| self.row(i)).collect();
        Matrix::new(&self.ring, self.ncols(), cols)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.nrows, "dimension mismatch");
        let cols = other
            .columns
            .iter()
            .map(|oc| {
                (0..self.nrows)
                    .map(|i| {
                        let mut acc = Polynomial::zero(&self.ring);
                        for (k, b) in oc.iter().enumerate() {
                            let a = &self.columns[k][i];
                            if !a.is_zero() && !b.is_zero() {
                                acc = &acc + &(a * b);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Matrix::new(&self.ring, self.nrows, cols)
    }

    /// Columns side by side.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.nrows, other.nrows);
        let mut cols = self.columns.clone();
        cols.extend(other.columns.iter().cloned());
        Matrix::new(&self.ring, self.nrows, cols)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::new(&self.ring, self.nrows, idx.iter().map(|&j| self.columns[j].clone()).collect())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let cols = self
            .columns
            .iter()
            .map(|c| idx.iter().map(|&i| c[i].clone()).collect())
            .collect();
        Matrix::new(&self.ring, idx.len(), cols)
    }

    pub fn map_entries(&self, target: &Arc<PolyRing>, f: impl Fn(&Polynomial) -> Polynomial) -> Matrix {
        let cols = self
            .columns
            .iter()
            .map(|c| c.iter().map(&f).collect())
            .collect();
        Matrix::new(target, self.nrows, cols)
    }

    /// Substitutes images for the variables of every entry.
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<PolyRing>) -> Matrix {
        self.map_entries(target, |p| p.substitute(images, target))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            let row: Vec<String> = self.columns.iter().map(|c| c[i].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
