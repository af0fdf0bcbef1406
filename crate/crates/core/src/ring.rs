//! Coefficient rings for truncated series.
//!
//! Series are generic over a small ring-as-context trait so the same
//! code runs over plain rationals and over polynomial coefficients
//! (used for bivariate work: rows polynomial in the evaluation
//! variable, or generating functions polynomial in a marker variable).

use crate::poly::Poly;
use crate::rat::Rat;
use num_traits::{One, Zero};

pub trait Ring: Clone + PartialEq {
    type El: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn from_rat(&self, r: &Rat) -> Self::El;
    /// Multiplicative inverse when the element is a unit.
    fn inv(&self, a: &Self::El) -> Option<Self::El>;
}

/// The rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QQ;

impl Ring for QQ {
    type El = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn from_rat(&self, r: &Rat) -> Rat {
        r.clone()
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// Polynomials over the rationals in an auxiliary variable.
///
/// With `trunc = None` this is the exact polynomial ring: only
/// constants are units. With `trunc = Some(m)` products are cut at
/// degree m and the ring behaves as Q[t]/t^{m+1}, where anything with
/// nonzero constant term is a unit. The truncated form is what makes
/// order-by-order reversion possible with a marker variable in the
/// coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyRing {
    pub trunc: Option<usize>,
}

impl PolyRing {
    pub fn exact() -> Self {
        PolyRing { trunc: None }
    }

    pub fn truncated(order: usize) -> Self {
        PolyRing { trunc: Some(order) }
    }

    fn cut(&self, p: Poly) -> Poly {
        match self.trunc {
            None => p,
            Some(m) => {
                if p.degree().map_or(false, |d| d > m) {
                    Poly::from_coeffs(p.coeffs()[..=m].to_vec())
                } else {
                    p
                }
            }
        }
    }
}

impl Ring for PolyRing {
    type El = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::one()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.cut(a.mul(b))
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn from_rat(&self, r: &Rat) -> Poly {
        Poly::constant(r.clone())
    }
    fn inv(&self, a: &Poly) -> Option<Poly> {
        match a.degree() {
            None => None,
            Some(0) => Some(Poly::constant(a.coeff(0).recip())),
            Some(_) => {
                let m = self.trunc?;
                let c0 = a.coeff(0);
                if c0.is_zero() {
                    return None;
                }
                // series-style inversion mod t^{m+1}
                let c0inv = c0.recip();
                let mut out = vec![Rat::zero(); m + 1];
                out[0] = c0inv.clone();
                for k in 1..=m {
                    let mut acc = Rat::zero();
                    for j in 1..=k {
                        acc += a.coeff(j) * &out[k - j];
                    }
                    out[k] = -acc * &c0inv;
                }
                Some(Poly::from_coeffs(out))
            }
        }
    }
}
