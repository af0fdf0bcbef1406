//! Riordan square arrays and their diagonal numerator polynomials.
//!
//! A pair (b, a) with b(0) != 0 and a(0) = 1 determines the square
//! array whose column m is b(x) a(x)^m; equivalently the triangular
//! array of (b, x a). The n-th falling diagonal of the ordinary array
//! is a rational function p_n(x)/(1-x)^{n+1}; for the factorially
//! conjugated (exponential) array the denominator is (1-x)^{2n+1}.
//! The numerator polynomials generalize the classical Euler
//! polynomials (b = 1, a = e^x, ordinary) and, up to (n+1)!, the
//! Narayana polynomials (b = 1, a = 1/(1-x), exponential).

use crate::poly::Poly;
use crate::rat::{factorial, qu, rat_binomial, rat_pow, Rat};
use crate::ring::{PolyRing, QQ};
use crate::series::{sheffer_rows, QSeries, Series};
use crate::matrix::FiniteOperator;
use crate::{CoreError, Result};
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::sync::Mutex;

/// How many guard coefficients past the structural degree window the
/// default truncation order keeps.
pub const DEFAULT_GUARD: usize = 4;

/// Default series order for diagonal work at index n.
pub fn default_order(n: usize) -> usize {
    2 * n + DEFAULT_GUARD
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Ordinary,
    Exponential,
}

/// The pair (b, a): b(0) != 0, a(0) = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPair {
    pub b: QSeries,
    pub a: QSeries,
}

impl SeriesPair {
    pub fn new(b: QSeries, a: QSeries) -> Result<Self> {
        if b.coeff(0).is_zero() {
            return Err(CoreError::BadPair("b(0) must be nonzero".into()));
        }
        if !a.coeff(0).is_one() {
            return Err(CoreError::BadPair("a(0) must be 1".into()));
        }
        Ok(SeriesPair { b, a })
    }

    pub fn with_unit_b(a: QSeries) -> Result<Self> {
        let b = QSeries::one(QQ, a.order());
        SeriesPair::new(b, a)
    }

    pub fn order(&self) -> usize {
        self.b.order().min(self.a.order())
    }
}

/// Column m of the square array: b a^m, entrywise rescaled by
/// k!/m! for the exponential flavor.
pub fn column(pair: &SeriesPair, flavor: Flavor, m: usize) -> QSeries {
    let col = pair.b.mul(&pair.a.pow(m));
    match flavor {
        Flavor::Ordinary => col,
        Flavor::Exponential => {
            let fm = factorial(m);
            QSeries::from_fn(QQ, col.order(), |k| col.coeff(k) * factorial(k) / &fm)
        }
    }
}

/// Row polynomial of the shifted array (b, a-1): coefficient of x^m
/// is [t^n] b(t) (a(t)-1)^m. Since a - 1 has positive valuation the
/// result has degree <= n.
pub fn square_row(pair: &SeriesPair, n: usize) -> Result<Poly> {
    if pair.order() < n {
        return Err(CoreError::OrderOutOfRange);
    }
    let shifted = pair.a.sub(&QSeries::one(QQ, pair.a.order()));
    let mut power = pair.b.clone();
    let mut out = vec![Rat::zero(); n + 1];
    for m in 0..=n {
        out[m] = power.coeff(n).clone();
        power = power.mul(&shifted);
    }
    Ok(Poly::from_coeffs(out))
}

/// The n-th falling diagonal of the array of (b, xa) as a power
/// series: coefficient m is s_n(m)/n! for the ordinary flavor and
/// (m+n)!/m! * s_n(m)/n! for the exponential flavor, where s_n are
/// the generalized Sheffer rows of (b, log a). Rows are evaluated at
/// integers; entries are never materialized from the array itself.
pub fn diagonal_series(pair: &SeriesPair, flavor: Flavor, n: usize) -> Result<QSeries> {
    let order = pair.order();
    let la = pair.a.log()?;
    let rows = sheffer_rows(&pair.b, &la, n)?;
    let sn = &rows[n];
    let nfact = factorial(n);
    let coeffs = (0..=order)
        .map(|m| {
            let base = sn.eval_i64(m as i64) / &nfact;
            match flavor {
                Flavor::Ordinary => base,
                Flavor::Exponential => {
                    // (m+n)!/m! = (m+1)(m+2)...(m+n)
                    let mut f = Rat::one();
                    for i in 1..=n {
                        f *= qu(m + i);
                    }
                    base * f
                }
            }
        })
        .collect();
    Ok(QSeries::from_rat_coeffs(coeffs))
}

/// Result of clearing the (1-x)-power denominator from a diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct NumeratorResult {
    pub numerator: Poly,
    /// Power of (1-x) cleared: n+1 ordinary, 2n+1 exponential.
    pub denominator_exponent: usize,
    pub index: usize,
    /// True when every computed coefficient beyond the structural
    /// degree window vanished, certifying the numerator really is a
    /// polynomial through the computed order.
    pub residual_ok: bool,
}

/// Numerator polynomial of the n-th diagonal: (1-x)^e times the
/// diagonal series, truncated to the structural window (degree < e).
pub fn numerator(pair: &SeriesPair, flavor: Flavor, n: usize) -> Result<NumeratorResult> {
    let e = match flavor {
        Flavor::Ordinary => n + 1,
        Flavor::Exponential => 2 * n + 1,
    };
    let order = pair.order();
    if order < e {
        return Err(CoreError::OrderOutOfRange);
    }
    let diag = diagonal_series(pair, flavor, n)?;
    let clear = QSeries::from_poly(&Poly::one_minus_x_pow(e), order);
    let prod = clear.mul(&diag);
    let numerator = Poly::from_coeffs(prod.coeffs()[..e].to_vec());
    let residual_ok = prod.coeffs()[e..].iter().all(|c| c.is_zero());
    Ok(NumeratorResult {
        numerator,
        denominator_exponent: e,
        index: n,
        residual_ok,
    })
}

static EULER_CACHE: Lazy<Mutex<Vec<Poly>>> = Lazy::new(|| Mutex::new(Vec::new()));

/// Classical Euler polynomial A_n: n! times the ordinary numerator of
/// the pair (1, e^x). A_n(1) = n!.
pub fn euler_poly(n: usize) -> Poly {
    let mut cache = EULER_CACHE.lock().unwrap();
    while cache.len() <= n {
        let k = cache.len();
        let pair = SeriesPair::with_unit_b(exp_series(default_order(k))).unwrap();
        let res = numerator(&pair, Flavor::Ordinary, k).unwrap();
        debug_assert!(res.residual_ok);
        cache.push(res.numerator.scale(&factorial(k)));
    }
    cache[n].clone()
}

/// Narayana polynomial N_n = sum_m C(n,m-1) C(n,n-m) x^m / n
/// (N_0 = 1); (n+1)! N_n is the exponential numerator of (1, 1/(1-x)).
pub fn narayana_poly(n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let mut coeffs = vec![Rat::zero(); n + 1];
    for m in 1..=n {
        coeffs[m] = rat_binomial(&qu(n), m - 1) * rat_binomial(&qu(n), n - m) / qu(n);
    }
    Poly::from_coeffs(coeffs)
}

/// Type-B analogue: sum_m C(n,m)^2 x^m.
pub fn narayana_b_poly(n: usize) -> Poly {
    Poly::from_coeffs(
        (0..=n)
            .map(|m| {
                let c = rat_binomial(&qu(n), m);
                &c * &c
            })
            .collect(),
    )
}

/// Pascal-type matrix: entry (i, j) = C(i, j) phi^(i-j).
pub fn pascal_power(phi: &Rat, size: usize) -> FiniteOperator {
    FiniteOperator::from_fn(size, |i, j| {
        if j > i {
            Rat::zero()
        } else {
            rat_binomial(&qu(i), j) * rat_pow(phi, (i - j) as i64)
        }
    })
}

/// Named base series.
#[derive(Debug, Clone, PartialEq)]
pub enum Catalog {
    Exp,
    Geom,
    OnePlusX,
    Catalan,
    GenBinom(Rat),
}

pub fn exp_series(order: usize) -> QSeries {
    QSeries::from_fn(QQ, order, |k| factorial(k).recip())
}

pub fn geom_series(order: usize) -> QSeries {
    QSeries::from_fn(QQ, order, |_| Rat::one())
}

pub fn one_plus_x_series(order: usize) -> QSeries {
    QSeries::from_poly(&Poly::from_i64(&[1, 1]), order)
}

/// Catalan numbers by their defining convolution recurrence.
pub fn catalan_series(order: usize) -> QSeries {
    let mut c = vec![Rat::one()];
    for n in 1..=order {
        let mut acc = Rat::zero();
        for i in 0..n {
            acc += &c[i] * &c[n - 1 - i];
        }
        c.push(acc);
    }
    QSeries::from_rat_coeffs(c)
}

/// Generalized binomial series at exponent 1: coefficient n is
/// 1/(1+n beta) * C(1+n beta, n), in product form so the formula is
/// defined even when 1 + n beta = 0.
pub fn genbinom_series(beta: &Rat, order: usize) -> QSeries {
    QSeries::from_fn(QQ, order, |n| {
        if n == 0 {
            return Rat::one();
        }
        // 1/(1+n beta) C(1+n beta, n) = prod_{j=1}^{n-1}(1+n beta-j)/n!
        let nb = qu(n) * beta;
        let mut acc = Rat::one();
        for j in 1..n {
            acc *= Rat::one() + &nb - qu(j);
        }
        acc / factorial(n)
    })
}

impl Catalog {
    pub fn series(&self, order: usize) -> QSeries {
        match self {
            Catalog::Exp => exp_series(order),
            Catalog::Geom => geom_series(order),
            Catalog::OnePlusX => one_plus_x_series(order),
            Catalog::Catalan => catalan_series(order),
            Catalog::GenBinom(beta) => genbinom_series(beta, order),
        }
    }
}

/// Coefficientwise check of the generating-function identity tying
/// the exponential numerators phi_n of (1, a) to the reversion of
/// x(1 - t a(x)): with (1, x b(x)) the compositional inverse pair,
///   sum_n phi_n(t) x^n/(n+1)! = (1-t) b(x (1-t)^2)
/// as bivariate truncations. Returns the first failing index, or None
/// when all of 0..=n_max agree.
pub fn gnp_generating_check(a: &QSeries, n_max: usize) -> Result<Option<usize>> {
    let t_order = 2 * n_max + DEFAULT_GUARD;
    let x_order = n_max + 2;
    let ring = PolyRing::truncated(t_order);
    let t = Poly::x();

    // g = x(1 - t a(x)) over Q[t]/t^{t_order+1}
    let g = Series::from_fn(ring, x_order, |k| {
        if k == 0 {
            Poly::zero()
        } else {
            let base = if k == 1 { Poly::one() } else { Poly::zero() };
            base.sub(&t.scale(a.coeff(k - 1)))
        }
    });
    let xb = g.reversion()?;
    let b = xb.div_x()?;

    // substitute x (1-t)^2 and multiply by (1-t)
    let omt = Poly::from_i64(&[1, -1]);
    let omt2 = omt.mul(&omt);
    let sub = Series::from_fn(ring, x_order - 1, |k| {
        if k == 1 {
            omt2.clone()
        } else {
            Poly::zero()
        }
    });
    let rhs = b.compose(&sub)?.scale(&omt);

    // left side: exponential numerators of (1, a)
    if a.order() < default_order(n_max) {
        return Err(CoreError::OrderOutOfRange);
    }
    let pair = SeriesPair::with_unit_b(a.clone())?;
    for n in 0..=n_max {
        let res = numerator(&pair, Flavor::Exponential, n)?;
        if !res.residual_ok {
            return Ok(Some(n));
        }
        let lhs_n = res.numerator.scale(&factorial(n + 1).recip());
        // truncate to the marker order before comparing
        let lhs_cut = Poly::from_coeffs(
            lhs_n
                .coeffs()
                .iter()
                .take(t_order + 1)
                .cloned()
                .collect(),
        );
        if &lhs_cut != rhs.coeff(n) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
