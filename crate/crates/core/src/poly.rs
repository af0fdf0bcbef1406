//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored low degree first with no trailing zeros, so
//! the zero polynomial is the empty vector and has no degree.

use crate::rat::{qi, qu, render_rat, Rat};
use crate::{CoreError, Result};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn x() -> Self {
        Poly::monomial(1, Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(k: usize, c: Rat) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }

    /// Build from low-first coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| qi(c)).collect())
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) + other.coeff(k));
        }
        Poly::from_coeffs(v)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_coeffs(v)
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by x.
    pub fn mul_x(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rat::zero()];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Divide by x; errors unless the constant term is zero.
    pub fn div_x(&self) -> Result<Poly> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        if !self.coeffs[0].is_zero() {
            return Err(CoreError::NotDivisibleByX);
        }
        Ok(Poly {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> Rat {
        self.eval(&qi(x))
    }

    /// Substitute x -> a*x + b.
    pub fn compose_linear(&self, a: &Rat, b: &Rat) -> Poly {
        let lin = Poly::from_coeffs(vec![b.clone(), a.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Substitute another polynomial for x.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Mirror the coefficients within the window 0..=n:
    /// coefficient k of the result is coefficient n-k of self.
    /// Errors when the degree exceeds n.
    pub fn reverse(&self, n: usize) -> Result<Poly> {
        if let Some(d) = self.degree() {
            if d > n {
                return Err(CoreError::ReverseDegree { degree: d, window: n });
            }
        }
        let v = (0..=n).map(|k| self.coeff(n - k)).collect();
        Ok(Poly::from_coeffs(v))
    }

    /// Falling factorial (x)_k = x(x-1)...(x-k+1).
    pub fn falling(k: usize) -> Poly {
        let mut acc = Poly::one();
        for i in 0..k {
            acc = acc.mul(&Poly::from_coeffs(vec![-qu(i), Rat::one()]));
        }
        acc
    }

    /// Rising factorial [x]_k = x(x+1)...(x+k-1).
    pub fn rising(k: usize) -> Poly {
        let mut acc = Poly::one();
        for i in 0..k {
            acc = acc.mul(&Poly::from_coeffs(vec![qu(i), Rat::one()]));
        }
        acc
    }

    /// Product of linear factors (x + c) for each c given.
    pub fn linear_product(shifts: &[Rat]) -> Poly {
        let mut acc = Poly::one();
        for c in shifts {
            acc = acc.mul(&Poly::from_coeffs(vec![c.clone(), Rat::one()]));
        }
        acc
    }

    /// (1 - x)^k.
    pub fn one_minus_x_pow(k: usize) -> Poly {
        Poly::from_i64(&[1, -1]).pow(k)
    }

    /// (1 + x)^k.
    pub fn one_plus_x_pow(k: usize) -> Poly {
        Poly::from_i64(&[1, 1]).pow(k)
    }

    /// Human-readable rendering, e.g. "x + 11x^2 + 11x^3 + x^4".
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = render_rat(c);
            let mag_abs = mag.trim_start_matches('-').to_string();
            let term = match k {
                0 => mag_abs.clone(),
                _ => {
                    let var = if k == 1 {
                        "x".to_string()
                    } else {
                        format!("x^{k}")
                    };
                    if mag_abs == "1" {
                        var
                    } else {
                        format!("{mag_abs}{var}")
                    }
                }
            };
            if parts.is_empty() {
                if mag.starts_with('-') {
                    parts.push(format!("-{term}"));
                } else {
                    parts.push(term);
                }
            } else if mag.starts_with('-') {
                parts.push(format!("- {term}"));
            } else {
                parts.push(format!("+ {term}"));
            }
        }
        parts.join(" ")
    }
}

/// Signed Stirling number of the first kind: (x)_n = sum_k s(n,k) x^k.
pub fn stirling_first(n: usize, k: usize) -> Result<Rat> {
    if k > n {
        return Err(CoreError::StirlingRange { n, k });
    }
    // s(n+1,k) = s(n,k-1) - n*s(n,k)
    let mut row = vec![Rat::one()]; // n = 0
    for m in 0..n {
        let mut next = vec![Rat::zero(); m + 2];
        for (j, v) in row.iter().enumerate() {
            next[j + 1] += v;
            next[j] -= qu(m) * v;
        }
        row = next;
    }
    Ok(row[k].clone())
}

/// Stirling number of the second kind.
pub fn stirling_second(n: usize, k: usize) -> Result<Rat> {
    if k > n {
        return Err(CoreError::StirlingRange { n, k });
    }
    let mut row = vec![Rat::one()]; // n = 0
    for _ in 0..n {
        let mut next = vec![Rat::zero(); row.len() + 1];
        for (j, v) in row.iter().enumerate() {
            next[j + 1] += v;
            next[j] += qu(j) * v;
        }
        row = next;
    }
    Ok(row[k].clone())
}
