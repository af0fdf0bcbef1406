//! Generalized Lagrange (binomial-type) series.
//!
//! For a base series a with a(0) = 1, the associate family is
//! determined coefficientwise by the Sheffer rows u_n of (1, log a):
//!   [x^n] assoc(beta, phi) = phi u_n(phi + n beta) / ((phi + n beta) n!).
//! Since u_n vanishes at 0 for n >= 1 the division is performed at
//! the polynomial level, so parameter choices with phi + n beta = 0
//! are handled exactly. The family satisfies the functional
//! equations of the generalized binomial series (the special case
//! a = 1 + x) and carries a dual polynomial basis built from the
//! reversion of log a.

use crate::poly::Poly;
use crate::rat::{factorial, qu, rat_binomial, Rat};
use crate::ring::QQ;
use crate::series::{sheffer_rows, QSeries};
use crate::{CoreError, Result};
use num_traits::{One, Zero};

/// Sheffer rows u_n of (1, log a): u_n(m) = n! [x^n] a^m.
pub fn u_rows(a: &QSeries, n_max: usize) -> Result<Vec<Poly>> {
    let one = QSeries::one(QQ, a.order());
    sheffer_rows(&one, &a.log()?, n_max)
}

/// u_n divided by x (exact for n >= 1; u_0/x is treated as 0 and
/// never used).
fn u_row_shifted(u: &Poly) -> Result<Poly> {
    u.div_x()
}

/// The beta-associate of a at exponent phi, as a truncated series of
/// the same order as a.
pub fn lagrange_associate(a: &QSeries, beta: &Rat, phi: &Rat) -> Result<QSeries> {
    let order = a.order();
    let rows = u_rows(a, order)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Rat::one());
    for (n, row) in rows.iter().enumerate().skip(1) {
        // phi/(phi + n beta) * u_n(phi + n beta)/n!, with the pole
        // cancelled against the factor of x in u_n
        let w = u_row_shifted(row).map_err(|_| {
            CoreError::Invalid(format!(
                "coefficient formula hits a non-removable singularity at n = {n}"
            ))
        })?;
        let arg = phi + qu(n) * beta;
        coeffs.push(phi * w.eval(&arg) / factorial(n));
    }
    Ok(QSeries::from_rat_coeffs(coeffs))
}

/// The generalized binomial series: the associate family of 1 + x,
/// directly from the binomial closed form (product form, so that
/// phi + n beta = 0 is exact).
pub fn generalized_binomial(beta: &Rat, phi: &Rat, order: usize) -> QSeries {
    QSeries::from_fn(QQ, order, |n| {
        if n == 0 {
            return Rat::one();
        }
        // phi/(phi+n beta) C(phi+n beta, n)
        //   = phi (phi+n beta-1)...(phi+n beta-n+1)/n!
        let base = phi + qu(n) * beta;
        let mut acc = phi.clone();
        for j in 1..n {
            acc *= &base - qu(j);
        }
        acc / factorial(n)
    })
}

/// The beta-deformation of the rows u_n: x w_n(x + n beta) where
/// w_n = u_n/x; equals u_n with its argument shifted, restoring
/// u_n at beta = 0.
pub fn beta_u_poly(a: &QSeries, beta: &Rat, n: usize) -> Result<Poly> {
    if n == 0 {
        return Ok(Poly::one());
    }
    let rows = u_rows(a, n)?;
    let w = u_row_shifted(&rows[n])?;
    let shifted = w.compose_linear(&Rat::one(), &(qu(n) * beta));
    Ok(shifted.mul_x())
}

/// Prefactor series for the beta-deformed pair:
/// b(x assoc^beta) (1 + x beta (log assoc)'), where assoc is the
/// beta-associate of a at exponent 1.
pub fn beta_prefactor(b: &QSeries, a: &QSeries, beta: &Rat) -> Result<QSeries> {
    let assoc = lagrange_associate(a, beta, &Rat::one())?;
    let sub = assoc.pow_rat(beta)?.mul_x();
    let left = b.compose(&sub)?;
    let dlog = assoc.log()?.derivative();
    let right_tail = dlog.mul_x().scale_rat(beta);
    let right = QSeries::one(QQ, right_tail.order()).add(&right_tail);
    Ok(left.mul(&right))
}

/// Column polynomial of the dual basis: q_n(x) built from the n-th
/// power of q = reversion(log a) with factorial rescaling, then the
/// substitution x -> x/(1 + n beta x) performed as a composition
/// with the truncated geometric expansion.
pub fn dual_basis_poly(a: &QSeries, beta: &Rat, n: usize) -> Result<QSeries> {
    let q = a.log()?.reversion()?;
    let qn = q.pow(n);
    let nfact = factorial(n);
    let base = QSeries::from_fn(QQ, q.order(), |k| qn.coeff(k) * factorial(k) / &nfact);
    let c = qu(n) * beta;
    let inner = QSeries::moebius_sub(&c, base.order());
    let outer = base.compose(&inner)?;
    // multiply by 1/(1 + n beta x)
    let denom = QSeries::from_poly(&Poly::from_coeffs(vec![Rat::one(), c]), outer.order());
    outer.div(&denom)
}

/// Residual of the dual-basis expansion of 1/(1 - phi x): the sum of
/// beta_u_n(phi) dual_n(x) over n <= n_terms, minus the geometric
/// target. Coefficients of x^k stabilize once n > k, so the residual
/// must vanish through order n_terms.
pub fn dual_basis_residual(
    a: &QSeries,
    beta: &Rat,
    phi: &Rat,
    n_terms: usize,
) -> Result<QSeries> {
    if a.order() < n_terms {
        return Err(CoreError::OrderOutOfRange);
    }
    let mut acc = QSeries::zero(QQ, n_terms);
    for n in 0..=n_terms {
        let coeff = beta_u_poly(a, beta, n)?.eval(phi);
        if coeff.is_zero() {
            continue;
        }
        let col = dual_basis_poly(a, beta, n)?.truncate(n_terms);
        acc = acc.add(&col.scale_rat(&coeff));
    }
    let target = QSeries::from_fn(QQ, n_terms, |k| crate::rat::rat_pow(phi, k as i64));
    Ok(acc.sub(&target))
}

/// Check the compositional inverse pair
///   (1, x assoc(beta, phi)) (1, x assoc(beta-phi, -phi)) = (1, x)
/// and its prefactored refinement
///   (1 + x phi (log A)', x A)(1 - x phi (log B)', x B) = (1, x)
/// where A = assoc(beta, 1)^... -- concretely A = assoc of a at
/// (beta, phi) base, B at (beta-phi, -phi). Returns false with no
/// error when the identity fails coefficientwise.
pub fn inverse_pair_check(a: &QSeries, beta: &Rat, phi: &Rat) -> Result<bool> {
    let f = lagrange_associate(a, beta, phi)?.mul_x();
    let g = lagrange_associate(a, &(beta - phi), &-phi.clone())?.mul_x();
    let x = QSeries::x(QQ, f.order().min(g.order()));
    if f.compose(&g)? != x || g.compose(&f)? != x {
        return Ok(false);
    }
    // prefactored pair: b-components 1 +- x phi (log assoc_1)'
    let a1 = lagrange_associate(a, beta, &Rat::one())?;
    let a2 = lagrange_associate(a, &(beta - phi), &Rat::one())?;
    let b1 = one_plus_dlog(&a1, phi);
    let b2 = one_plus_dlog(&a2, &-phi.clone());
    // product pair (b1, g1)(b2, g2) = (b1 * b2(g1), g2(g1))
    let g1 = a1.pow_rat(phi)?.mul_x();
    let g2 = a2.pow_rat(&-phi.clone())?.mul_x();
    let prod_b = b1.mul(&b2.compose(&g1)?);
    let prod_g = g2.compose(&g1)?;
    let ord = prod_b.order().min(prod_g.order());
    Ok(prod_b.truncate(ord) == QSeries::one(QQ, ord)
        && prod_g.truncate(ord) == QSeries::x(QQ, ord))
}

/// 1 + x phi (log s)'.
pub fn one_plus_dlog(s: &QSeries, phi: &Rat) -> QSeries {
    let tail = s.log().unwrap().derivative().mul_x().scale_rat(phi);
    QSeries::one(QQ, tail.order()).add(&tail)
}

/// Closed form of the generalized Euler polynomial:
/// (1/n) sum_m C(n(1-beta), m-1) C(n beta, n-m) x^m.
pub fn gep_closed_form(beta: &Rat, n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let a1 = qu(n) * (Rat::one() - beta);
    let a2 = qu(n) * beta;
    Poly::from_coeffs(
        (0..=n)
            .map(|m| {
                if m == 0 {
                    Rat::zero()
                } else {
                    rat_binomial(&a1, m - 1) * rat_binomial(&a2, n - m) / qu(n)
                }
            })
            .collect(),
    )
}

/// Closed form of the generalized Narayana polynomial:
/// ((n+1)!/n) sum_m C(n(2-beta), m-1) C(n beta, n-m) x^m.
pub fn gnp_closed_form(beta: &Rat, n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let a1 = qu(n) * (qu(2) - beta);
    let a2 = qu(n) * beta;
    let scale = factorial(n + 1) / qu(n);
    Poly::from_coeffs(
        (0..=n)
            .map(|m| {
                if m == 0 {
                    Rat::zero()
                } else {
                    rat_binomial(&a1, m - 1) * rat_binomial(&a2, n - m) * &scale
                }
            })
            .collect(),
    )
}
