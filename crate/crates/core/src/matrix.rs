//! Exact square matrices acting on polynomial coefficient vectors.
//!
//! A `FiniteOperator` of dimension d acts on polynomials of degree
//! < d; entry (i, j) is the coefficient of x^i in the image of x^j,
//! so columns are images of the monomial basis.

use crate::poly::Poly;
use crate::rat::Rat;
use crate::{CoreError, Result};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOperator {
    dim: usize,
    entries: Vec<Rat>, // row-major
}

impl FiniteOperator {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1);
        FiniteOperator {
            dim,
            entries: vec![Rat::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = FiniteOperator::zero(dim);
        for i in 0..dim {
            *m.entry_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "ragged rows");
        FiniteOperator {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let mut m = FiniteOperator::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                *m.entry_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn diagonal(dim: usize, f: impl Fn(usize) -> Rat) -> Self {
        FiniteOperator::from_fn(dim, |i, j| if i == j { f(i) } else { Rat::zero() })
    }

    /// Columns given as image polynomials of x^0, x^1, ...
    pub fn from_columns(cols: &[Poly]) -> Result<Self> {
        let dim = cols.len();
        let mut m = FiniteOperator::zero(dim);
        for (j, p) in cols.iter().enumerate() {
            if let Some(d) = p.degree() {
                if d >= dim {
                    return Err(CoreError::DegreeOverflow { degree: d, dim });
                }
            }
            for i in 0..dim {
                *m.entry_mut(i, j) = p.coeff(i);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.dim + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Poly {
        Poly::from_coeffs((0..self.dim).map(|i| self.entry(i, j).clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(CoreError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = FiniteOperator::zero(self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    *out.entry_mut(i, j) += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(CoreError::DimensionMismatch(self.dim, other.dim));
        }
        Ok(FiniteOperator::from_fn(self.dim, |i, j| {
            self.entry(i, j) + other.entry(i, j)
        }))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        FiniteOperator {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        FiniteOperator::from_fn(self.dim, |i, j| self.entry(j, i).clone())
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut acc = FiniteOperator::identity(self.dim);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Apply to a polynomial of degree < dim.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        if let Some(d) = p.degree() {
            if d >= self.dim {
                return Err(CoreError::DegreeOverflow { degree: d, dim: self.dim });
            }
        }
        let mut out = vec![Rat::zero(); self.dim];
        for j in 0..self.dim {
            let c = p.coeff(j);
            if c.is_zero() {
                continue;
            }
            for i in 0..self.dim {
                let e = self.entry(i, j);
                if !e.is_zero() {
                    out[i] += e * &c;
                }
            }
        }
        Ok(Poly::from_coeffs(out))
    }

    /// Top-left square block of the given dimension.
    pub fn top_left(&self, dim: usize) -> Self {
        assert!(dim >= 1 && dim <= self.dim);
        FiniteOperator::from_fn(dim, |i, j| self.entry(i, j).clone())
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.dim;
        let mut a = self.clone();
        let mut inv = FiniteOperator::identity(d);
        for col in 0..d {
            let pivot_row = (col..d)
                .find(|&r| !a.entry(r, col).is_zero())
                .ok_or(CoreError::SingularMatrix)?;
            if pivot_row != col {
                for j in 0..d {
                    let tmp = a.entry(pivot_row, j).clone();
                    *a.entry_mut(pivot_row, j) = a.entry(col, j).clone();
                    *a.entry_mut(col, j) = tmp;
                    let tmp = inv.entry(pivot_row, j).clone();
                    *inv.entry_mut(pivot_row, j) = inv.entry(col, j).clone();
                    *inv.entry_mut(col, j) = tmp;
                }
            }
            let p = a.entry(col, col).clone().recip();
            for j in 0..d {
                *a.entry_mut(col, j) *= &p;
                *inv.entry_mut(col, j) *= &p;
            }
            for r in 0..d {
                if r == col {
                    continue;
                }
                let f = a.entry(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let av = a.entry(col, j).clone();
                    let iv = inv.entry(col, j).clone();
                    *a.entry_mut(r, j) -= &f * av;
                    *inv.entry_mut(r, j) -= &f * iv;
                }
            }
        }
        Ok(inv)
    }
}
