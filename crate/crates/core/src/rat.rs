//! Arbitrary-precision rational scalars and basic combinatorial values.
//!
//! `Rat` is always stored in lowest terms with positive denominator,
//! so equality is plain structural equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Integer as a rational.
pub fn qi(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics if d = 0.
pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn qu(n: usize) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn factorial_int(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

pub fn factorial(n: usize) -> Rat {
    Rat::from_integer(factorial_int(n))
}

/// Binomial coefficient with arbitrary rational upper argument:
/// z(z-1)...(z-k+1)/k!.
pub fn rat_binomial(z: &Rat, k: usize) -> Rat {
    let mut num = Rat::one();
    for i in 0..k {
        num *= z - qu(i);
    }
    num / factorial(k)
}

/// Binomial coefficient with integer arguments, 0 when k > n.
pub fn binomial(n: usize, k: usize) -> Rat {
    if k > n {
        return Rat::zero();
    }
    rat_binomial(&qu(n), k)
}

/// r^k for signed integer k; negative k requires r != 0.
pub fn rat_pow(r: &Rat, k: i64) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    for _ in 0..k.unsigned_abs() {
        acc *= r;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
pub fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse "p" or "p/q" (optionally signed). Returns None on malformed
/// input or zero denominator.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_str.parse().ok()?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return None;
    }
    Some(Rat::new(numer, denom))
}

/// True when r is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// The integer value of r, if r is an integer small enough for i64.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    let n = r.numer();
    let v: i64 = n.try_into().ok()?;
    Some(v)
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}
