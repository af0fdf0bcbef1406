//! Truncated formal power series with explicit order.
//!
//! A series of order N stores exact coefficients for x^0..x^N and
//! nothing beyond; binary operations truncate to the smaller order.
//! Composition requires the inner series to vanish at 0, reversion is
//! an order-by-order solve, and log/exp/rational powers check their
//! constant-term preconditions and report errors rather than panic.

use crate::poly::Poly;
use crate::rat::{factorial, qu, Rat};
use crate::ring::{PolyRing, Ring, QQ};
use crate::{CoreError, Result};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct Series<R: Ring> {
    ring: R,
    coeffs: Vec<R::El>, // length order + 1
}

pub type QSeries = Series<QQ>;
pub type PSeries = Series<PolyRing>;

impl<R: Ring> Series<R> {
    pub fn from_coeffs(ring: R, coeffs: Vec<R::El>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        Series { ring, coeffs }
    }

    pub fn from_fn(ring: R, order: usize, f: impl Fn(usize) -> R::El) -> Self {
        Series {
            coeffs: (0..=order).map(f).collect(),
            ring,
        }
    }

    pub fn zero(ring: R, order: usize) -> Self {
        let z = ring.zero();
        Series::from_fn(ring, order, |_| z.clone())
    }

    pub fn one(ring: R, order: usize) -> Self {
        let mut s = Series::zero(ring, order);
        s.coeffs[0] = s.ring.one();
        s
    }

    pub fn x(ring: R, order: usize) -> Self {
        assert!(order >= 1);
        let mut s = Series::zero(ring, order);
        s.coeffs[1] = s.ring.one();
        s
    }

    pub fn constant(ring: R, c: R::El, order: usize) -> Self {
        let mut s = Series::zero(ring, order);
        s.coeffs[0] = c;
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &R::El {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[R::El] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Series {
            ring: self.ring.clone(),
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    fn same_ring(&self, other: &Self) {
        assert!(self.ring == other.ring, "series over different coefficient rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        let n = self.order().min(other.order());
        Series::from_fn(self.ring.clone(), n, |k| {
            self.ring.add(&self.coeffs[k], &other.coeffs[k])
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_ring(other);
        let n = self.order().min(other.order());
        Series::from_fn(self.ring.clone(), n, |k| {
            self.ring.sub(&self.coeffs[k], &other.coeffs[k])
        })
    }

    pub fn neg(&self) -> Self {
        Series {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        }
    }

    pub fn scale(&self, s: &R::El) -> Self {
        Series {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| self.ring.mul(c, s)).collect(),
        }
    }

    pub fn scale_rat(&self, s: &Rat) -> Self {
        self.scale(&self.ring.from_rat(s))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        let n = self.order().min(other.order());
        let mut out = vec![self.ring.zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if self.ring.is_zero(b) {
                    continue;
                }
                let p = self.ring.mul(a, b);
                out[i + j] = self.ring.add(&out[i + j], &p);
            }
        }
        Series {
            ring: self.ring.clone(),
            coeffs: out,
        }
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let c0inv = self.ring.inv(&self.coeffs[0]).ok_or(CoreError::NonUnitDivisor)?;
        let n = self.order();
        let mut out = vec![self.ring.zero(); n + 1];
        out[0] = c0inv.clone();
        for k in 1..=n {
            let mut acc = self.ring.zero();
            for j in 1..=k {
                let p = self.ring.mul(&self.coeffs[j], &out[k - j]);
                acc = self.ring.add(&acc, &p);
            }
            out[k] = self.ring.neg(&self.ring.mul(&acc, &c0inv));
        }
        Ok(Series {
            ring: self.ring.clone(),
            coeffs: out,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Multiply by x (coefficients shift up, order preserved).
    pub fn mul_x(&self) -> Self {
        let n = self.order();
        Series::from_fn(self.ring.clone(), n, |k| {
            if k == 0 {
                self.ring.zero()
            } else {
                self.coeffs[k - 1].clone()
            }
        })
    }

    /// Divide by x; the constant term must vanish. Order drops by one.
    pub fn div_x(&self) -> Result<Self> {
        if !self.ring.is_zero(&self.coeffs[0]) {
            return Err(CoreError::NotDivisibleByX);
        }
        if self.order() == 0 {
            return Err(CoreError::OrderOutOfRange);
        }
        Ok(Series {
            ring: self.ring.clone(),
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Termwise derivative; order drops by one.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        assert!(n >= 1, "cannot differentiate an order-0 truncation meaningfully");
        Series::from_fn(self.ring.clone(), n - 1, |k| {
            self.ring
                .mul(&self.coeffs[k + 1], &self.ring.from_rat(&qu(k + 1)))
        })
    }

    /// Substitute `inner` (which must vanish at 0) into self. Horner
    /// evaluation from the top coefficient down.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.same_ring(inner);
        if !self.ring.is_zero(&inner.coeffs[0]) {
            return Err(CoreError::InnerConstantNotZero);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Series::zero(self.ring.clone(), n);
        for k in (0..=self.order().min(n)).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = self.ring.add(&acc.coeffs[0], &self.coeffs[k]);
        }
        // coefficients of self beyond degree n cannot reach order n,
        // because inner has valuation >= 1
        Ok(acc)
    }

    /// Compositional inverse: returns h with self(h(x)) = x, solved
    /// order by order. Requires zero constant term and a unit linear
    /// coefficient.
    pub fn reversion(&self) -> Result<Self> {
        if !self.ring.is_zero(&self.coeffs[0]) {
            return Err(CoreError::NotReversible);
        }
        if self.order() < 1 {
            return Err(CoreError::NotReversible);
        }
        let g1inv = self.ring.inv(&self.coeffs[1]).ok_or(CoreError::NotReversible)?;
        let n = self.order();
        let mut h = Series::zero(self.ring.clone(), n);
        h.coeffs[1] = g1inv.clone();
        for k in 2..=n {
            // with h known below degree k, [x^k] self(h) = g1*h_k + c
            let partial = self.compose(&h.truncate(k - 1).pad_zero(k))?;
            let c = partial.coeffs[k].clone();
            h.coeffs[k] = self.ring.neg(&self.ring.mul(&c, &g1inv));
        }
        Ok(h)
    }

    /// Extend with zero coefficients up to `order` (internal helper;
    /// only valid when the dropped tail is genuinely unknown-zero).
    fn pad_zero(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() <= order {
            coeffs.push(self.ring.zero());
        }
        Series {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        let u0 = self.ring.sub(&self.coeffs[0], &self.ring.one());
        if !self.ring.is_zero(&u0) {
            return Err(CoreError::LogConstantNotOne);
        }
        let n = self.order();
        let mut u = self.clone();
        u.coeffs[0] = self.ring.zero();
        let mut power = Series::one(self.ring.clone(), n);
        let mut acc = Series::zero(self.ring.clone(), n);
        for m in 1..=n {
            power = power.mul(&u);
            let sign = if m % 2 == 1 { Rat::one() } else { -Rat::one() };
            acc = acc.add(&power.scale_rat(&(sign / qu(m))));
        }
        Ok(acc)
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.ring.is_zero(&self.coeffs[0]) {
            return Err(CoreError::ExpConstantNotZero);
        }
        let n = self.order();
        let mut power = Series::one(self.ring.clone(), n);
        let mut acc = Series::one(self.ring.clone(), n);
        for m in 1..=n {
            power = power.mul(self);
            acc = acc.add(&power.scale_rat(&factorial(m).recip()));
        }
        Ok(acc)
    }

    /// self^phi for rational phi, via exp(phi * log self); the
    /// constant term must be 1.
    pub fn pow_rat(&self, phi: &Rat) -> Result<Self> {
        self.log()?.scale_rat(phi).exp()
    }

    /// Integer power by repeated multiplication (no constant-term
    /// restriction for non-negative exponents).
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Series::one(self.ring.clone(), self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl QSeries {
    pub fn from_rat_coeffs(coeffs: Vec<Rat>) -> Self {
        Series::from_coeffs(QQ, coeffs)
    }

    /// Series with coefficients given by a polynomial (tail zero).
    pub fn from_poly(p: &Poly, order: usize) -> Self {
        Series::from_fn(QQ, order, |k| p.coeff(k))
    }

    /// The truncation as a polynomial.
    pub fn to_poly(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.clone())
    }

    /// Lift rational coefficients into constant polynomials.
    pub fn lift(&self, ring: PolyRing) -> PSeries {
        Series::from_fn(ring, self.order(), |k| Poly::constant(self.coeffs[k].clone()))
    }

    /// x/(1 + c x) expanded to the given order.
    pub fn moebius_sub(c: &Rat, order: usize) -> QSeries {
        Series::from_fn(QQ, order, |k| {
            if k == 0 {
                Rat::zero()
            } else {
                crate::rat::rat_pow(&-c.clone(), (k - 1) as i64)
            }
        })
    }
}

/// Generalized Sheffer rows: with b(0) != 0 and g_log(0) = 0, row n is
/// s_n(y) = n! [x^n] b(x) exp(y g_log(x)), a polynomial of degree <= n
/// in the evaluation variable y. Returns rows 0..=n_max.
pub fn sheffer_rows(b: &QSeries, g_log: &QSeries, n_max: usize) -> Result<Vec<Poly>> {
    if b.coeff(0).is_zero() {
        return Err(CoreError::BadPair("b(0) must be nonzero".into()));
    }
    if !g_log.coeff(0).is_zero() {
        return Err(CoreError::BadPair("g_log(0) must be zero".into()));
    }
    let order = b.order().min(g_log.order());
    if order < n_max {
        return Err(CoreError::OrderOutOfRange);
    }
    let ring = PolyRing::exact();
    let phi = Poly::x();
    // y * g_log(x) as a series in x over Q[y]
    let f = Series::from_fn(ring, order, |k| phi.scale(g_log.coeff(k)));
    let e = f.exp()?;
    let full = b.lift(ring).mul(&e);
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let row = full.coeff(n).scale(&factorial(n));
        debug_assert!(row.degree().map_or(true, |d| d <= n));
        rows.push(row);
    }
    Ok(rows)
}

/// Independent reversion oracle: the classical coefficient extraction
/// [x^n] h = (1/n) [x^{n-1}] (x/g)^n for the compositional inverse h
/// of g. Used to cross-check the order-by-order solve.
pub fn reversion_coefficient_oracle(g: &QSeries, n: usize) -> Result<Rat> {
    if n == 0 {
        return Ok(Rat::zero());
    }
    let base = g.div_x()?.inverse()?; // x/g
    let p = base.pow(n);
    if p.order() < n - 1 {
        return Err(CoreError::OrderOutOfRange);
    }
    Ok(p.coeff(n - 1) / qu(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qi};
    use proptest::prelude::*;

    fn geom(order: usize) -> QSeries {
        QSeries::from_fn(QQ, order, |_| Rat::one())
    }

    fn exps(order: usize) -> QSeries {
        QSeries::from_fn(QQ, order, |k| factorial(k).recip())
    }

    #[test]
    fn mul_div_roundtrip() {
        let g = geom(10);
        let one_minus_x = QSeries::from_poly(&Poly::from_i64(&[1, -1]), 10);
        assert_eq!(g.mul(&one_minus_x), QSeries::one(QQ, 10));
        assert_eq!(QSeries::one(QQ, 10).div(&one_minus_x).unwrap(), g);
    }

    #[test]
    fn binary_ops_truncate_to_min() {
        let a = geom(10);
        let b = geom(6);
        assert_eq!(a.mul(&b).order(), 6);
        assert_eq!(a.add(&b).order(), 6);
    }

    #[test]
    fn compose_geometric() {
        // 1/(1-x) composed with x/(1-x) = (1-x)/(1-2x)
        let g = geom(10);
        let inner = g.mul_x();
        let composed = g.compose(&inner).unwrap();
        let expected = QSeries::from_poly(&Poly::from_i64(&[1, -1]), 10)
            .div(&QSeries::from_poly(&Poly::from_i64(&[1, -2]), 10))
            .unwrap();
        assert_eq!(composed, expected);
        // composition with nonzero inner constant fails
        assert!(g.compose(&g).is_err());
    }

    #[test]
    fn reversion_of_catalan_like() {
        // reversion of x(1-x) is x*C(x) with Catalan coefficients
        let g = QSeries::from_poly(&Poly::from_i64(&[0, 1, -1]), 10);
        let h = g.reversion().unwrap();
        let catalan = [1i64, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (k, &c) in catalan.iter().enumerate() {
            assert_eq!(h.coeff(k + 1), &qi(c));
        }
        // round trip both ways
        let idx = QSeries::x(QQ, 10);
        assert_eq!(g.compose(&h).unwrap(), idx);
        assert_eq!(h.compose(&g).unwrap(), idx);
    }

    #[test]
    fn reversion_oracle_agrees() {
        for g in [
            QSeries::from_poly(&Poly::from_i64(&[0, 1, -1]), 12),
            exps(12).mul_x(),
            geom(12).mul_x(),
            QSeries::from_poly(&Poly::from_i64(&[0, 2, 3, -1, 5]), 12),
        ] {
            let h = g.reversion().unwrap();
            for n in 1..=12 {
                assert_eq!(h.coeff(n), &reversion_coefficient_oracle(&g, n).unwrap());
            }
        }
    }

    #[test]
    fn log_exp_roundtrip() {
        let e = exps(12);
        assert_eq!(e.log().unwrap(), QSeries::x(QQ, 12));
        let g = geom(12);
        assert_eq!(g.log().unwrap().exp().unwrap(), g);
        assert!(g.mul_x().log().is_err());
        assert!(g.exp().is_err());
    }

    #[test]
    fn pow_rat_square_root() {
        // (1+x)^(1/2) squared is 1+x
        let one_plus_x = QSeries::from_poly(&Poly::from_i64(&[1, 1]), 12);
        let r = one_plus_x.pow_rat(&q(1, 2)).unwrap();
        assert_eq!(r.mul(&r), one_plus_x);
        // (1+x)^(-1) matches inverse
        assert_eq!(
            one_plus_x.pow_rat(&qi(-1)).unwrap(),
            one_plus_x.inverse().unwrap()
        );
    }

    #[test]
    fn division_by_non_unit_fails() {
        let xs = QSeries::x(QQ, 5);
        assert!(QSeries::one(QQ, 5).div(&xs).is_err());
    }

    #[test]
    fn sheffer_rows_exponential() {
        // b = 1, g_log = x gives s_n(y) = y^n
        let one = QSeries::one(QQ, 8);
        let x = QSeries::x(QQ, 8);
        let rows = sheffer_rows(&one, &x, 6).unwrap();
        for (n, row) in rows.iter().enumerate() {
            assert_eq!(row, &Poly::monomial(n, Rat::one()));
        }
        // b = 1/(1-x), g_log = log(1/(1-x)): s_n(y) = [y+1]_n
        let g = geom(10);
        let rows = sheffer_rows(&g, &g.log().unwrap(), 6).unwrap();
        for (n, row) in rows.iter().enumerate() {
            let expected = Poly::rising(n).compose_linear(&qi(1), &qi(1));
            assert_eq!(row, &expected, "rising factorial row {n}");
        }
    }

    #[test]
    fn bivariate_series_over_truncated_ring() {
        // reversion of x(1 - t/(1-x)) over Q[t]/t^6: the linear
        // coefficient 1-t is a unit there
        let ring = PolyRing::truncated(6);
        let order = 6;
        let t = Poly::x();
        let g = Series::from_fn(ring, order, |k| match k {
            0 => Poly::zero(),
            1 => Poly::from_i64(&[1, -1]),
            _ => t.neg(),
        });
        let h = g.reversion().unwrap();
        let idx = Series::x(ring, order);
        assert_eq!(g.compose(&h).unwrap(), idx);
    }

    fn unit_series() -> impl Strategy<Value = QSeries> {
        prop::collection::vec((-6i64..=6, 1i64..=3), 8).prop_map(|cs| {
            let mut coeffs: Vec<Rat> = cs.into_iter().map(|(n, d)| q(n, d)).collect();
            coeffs.insert(0, Rat::one());
            QSeries::from_rat_coeffs(coeffs)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn log_turns_products_into_sums(a in unit_series(), b in unit_series()) {
            let lhs = a.mul(&b).log().unwrap();
            let rhs = a.log().unwrap().add(&b.log().unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pow_rat_is_additive(a in unit_series(), p in -4i64..=4, r in 1i64..=3) {
            let phi = q(p, r);
            let two_phi = &phi + &phi;
            let lhs = a.pow_rat(&phi).unwrap().mul(&a.pow_rat(&phi).unwrap());
            prop_assert_eq!(lhs, a.pow_rat(&two_phi).unwrap());
        }

        #[test]
        fn inverse_roundtrip(a in unit_series()) {
            prop_assert_eq!(a.inverse().unwrap().mul(&a), QSeries::one(QQ, a.order()));
        }

        #[test]
        fn reversion_roundtrip(tail in prop::collection::vec((-5i64..=5, 1i64..=3), 7)) {
            let mut coeffs = vec![Rat::zero(), Rat::one()];
            coeffs.extend(tail.into_iter().map(|(n, d)| q(n, d)));
            let g = QSeries::from_rat_coeffs(coeffs);
            let h = g.reversion().unwrap();
            prop_assert_eq!(g.compose(&h).unwrap(), QSeries::x(QQ, g.order()));
            prop_assert_eq!(h.compose(&g).unwrap(), QSeries::x(QQ, g.order()));
        }
    }
}
