//! Mechanical verification of the identity catalogue.
//!
//! Every identity the library claims is registered here under a
//! stable id and checked by exact coefficient comparison over a
//! parameter grid — no tolerances anywhere. Where an identity has
//! two derivations (definition vs. factorization, pipeline vs.
//! closed form), the two sides are computed by independent routes.

use crate::lagrange::{
    beta_prefactor, dual_basis_residual, generalized_binomial, gep_closed_form,
    gnp_closed_form, inverse_pair_check, lagrange_associate, one_plus_dlog,
};
use crate::matrix::FiniteOperator;
use crate::poly::{stirling_first, stirling_second, Poly};
use crate::rat::{factorial, q, qi, qu, rat_binomial, render_rat, Rat};
use crate::ring::QQ;
use crate::riordan::{
    catalan_series, column, default_order, diagonal_series, euler_poly, exp_series,
    genbinom_series, geom_series, gnp_generating_check, narayana_poly, numerator,
    one_plus_x_series, Flavor, SeriesPair,
};
use crate::series::{reversion_coefficient_oracle, QSeries};
use crate::transforms::{
    build, closed_form_column, mirror_matrix, mul_poly_matrix, mul_series_matrix,
    raise_matrix, reduce_conjugation, reflect_matrix, shift_matrix, shift_relations_check,
    OpName,
};
use crate::Result;
use num_traits::{One, Zero};
use std::fmt;
use std::time::{Duration, Instant};

/// Stable identifiers of the checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    T11,
    T12,
    T13,
    T14,
    T15,
    T16,
    T17,
    T18,
    T19,
    T20,
    T21,
    R1,
    R2,
    Ex1,
    Ex2,
    Ex3,
    Ex4,
    Ex5,
    Ex6,
    Ex7,
    Ex8,
    Ex9,
    Stirling,
    DualBasis,
    GfNarayana,
    ColsumA,
    GrouplawG,
    ReduceA,
    ReduceG,
    SumId1,
    SumId2,
    ReversalGep,
    ReversalGnp,
    PseudoInv,
    CatalogConsistency,
}

impl CheckId {
    pub fn as_str(&self) -> &'static str {
        use CheckId::*;
        match self {
            T1 => "T1",
            T2 => "T2",
            T3 => "T3",
            T4 => "T4",
            T5 => "T5",
            T6 => "T6",
            T7 => "T7",
            T8 => "T8",
            T9 => "T9",
            T10 => "T10",
            T11 => "T11",
            T12 => "T12",
            T13 => "T13",
            T14 => "T14",
            T15 => "T15",
            T16 => "T16",
            T17 => "T17",
            T18 => "T18",
            T19 => "T19",
            T20 => "T20",
            T21 => "T21",
            R1 => "R1",
            R2 => "R2",
            Ex1 => "EX1",
            Ex2 => "EX2",
            Ex3 => "EX3",
            Ex4 => "EX4",
            Ex5 => "EX5",
            Ex6 => "EX6",
            Ex7 => "EX7",
            Ex8 => "EX8",
            Ex9 => "EX9",
            Stirling => "STIRLING",
            DualBasis => "DUALBASIS",
            GfNarayana => "GFNARAYANA",
            ColsumA => "COLSUM_A",
            GrouplawG => "GROUPLAW_G",
            ReduceA => "REDUCE_A",
            ReduceG => "REDUCE_G",
            SumId1 => "SUMID1",
            SumId2 => "SUMID2",
            ReversalGep => "REVERSAL_GEP",
            ReversalGnp => "REVERSAL_GNP",
            PseudoInv => "PSEUDOINV",
            CatalogConsistency => "CATALOG_CONSISTENCY",
        }
    }

    pub fn parse(s: &str) -> Option<CheckId> {
        Self::all().iter().copied().find(|c| c.as_str() == s)
    }

    pub fn all() -> Vec<CheckId> {
        use CheckId::*;
        vec![
            T1, T2, T3, T4, T5, T6, T7, T8, T9, T10, T11, T12, T13, T14, T15, T16, T17, T18,
            T19, T20, T21, R1, R2, Ex1, Ex2, Ex3, Ex4, Ex5, Ex6, Ex7, Ex8, Ex9, Stirling,
            DualBasis, GfNarayana, ColsumA, GrouplawG, ReduceA, ReduceG, SumId1, SumId2,
            ReversalGep, ReversalGnp, PseudoInv, CatalogConsistency,
        ]
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct CheckParams {
    pub max_n: usize,
    pub beta_grid: Vec<Rat>,
    pub guard: usize,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams {
            max_n: 6,
            beta_grid: vec![
                qi(-2),
                qi(-1),
                q(-1, 2),
                qi(0),
                q(1, 2),
                qi(1),
                qi(2),
                qi(3),
            ],
            guard: 4,
        }
    }
}

impl CheckParams {
    pub fn describe(&self) -> String {
        let grid: Vec<String> = self.beta_grid.iter().map(render_rat).collect();
        format!(
            "max_n={} beta_grid=[{}] guard={}",
            self.max_n,
            grid.join(","),
            self.guard
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotRun,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotRun => "NOT_RUN",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub id: CheckId,
    pub verdict: Verdict,
    pub params: String,
    pub counterexample: Option<String>,
    pub elapsed: Duration,
}

type CheckResult = std::result::Result<(), String>;

fn fail(msg: String) -> CheckResult {
    Err(msg)
}

pub fn run_check(id: CheckId, params: &CheckParams) -> CheckReport {
    let start = Instant::now();
    let outcome = dispatch(id, params);
    let elapsed = start.elapsed();
    match outcome {
        Ok(Ok(())) => CheckReport {
            id,
            verdict: Verdict::Pass,
            params: params.describe(),
            counterexample: None,
            elapsed,
        },
        Ok(Err(ce)) => CheckReport {
            id,
            verdict: Verdict::Fail,
            params: params.describe(),
            counterexample: Some(ce),
            elapsed,
        },
        Err(e) => CheckReport {
            id,
            verdict: Verdict::Fail,
            params: params.describe(),
            counterexample: Some(format!("internal error: {e}")),
            elapsed,
        },
    }
}

/// Run checks in the order given; the report order matches the
/// input order.
pub fn run_suite(ids: &[CheckId], params: &CheckParams) -> Vec<CheckReport> {
    ids.iter().map(|&id| run_check(id, params)).collect()
}

fn dispatch(id: CheckId, p: &CheckParams) -> Result<CheckResult> {
    use CheckId::*;
    match id {
        T1 => check_t1(p),
        T2 => check_t2(p),
        T3 => check_t3(p),
        T4 => check_t4(p),
        T5 => check_t5(p),
        T6 => check_t6(p),
        T7 => check_t7(p),
        T8 => check_t8(p),
        T9 => check_t9(p),
        T10 => check_t10(p),
        T11 => check_t11(p),
        T12 => check_t12(p),
        T13 => check_t13(p),
        T14 => check_t14(p),
        T15 => check_t15(p),
        T16 => check_t16(p),
        T17 => check_t17(p),
        T18 => check_t18(p),
        T19 => check_t19(p),
        T20 => check_t20(p),
        T21 => check_t21(p),
        R1 => check_r1(p),
        R2 => check_r2(p),
        Ex1 => check_ex1(p),
        Ex2 => check_ex2(p),
        Ex3 => check_ex3(p),
        Ex4 => check_ex4(p),
        Ex5 => check_ex5(p),
        Ex6 => check_ex6(p),
        Ex7 => check_ex7(p),
        Ex8 => check_ex8(p),
        Ex9 => check_ex9(p),
        Stirling => check_stirling(p),
        DualBasis => check_dual_basis(p),
        GfNarayana => check_gf_narayana(p),
        ColsumA => check_colsum_a(p),
        GrouplawG => check_grouplaw_g(p),
        ReduceA => check_reduce_a(p),
        ReduceG => check_reduce_g(p),
        SumId1 => check_sumid(p, false),
        SumId2 => check_sumid(p, true),
        ReversalGep => check_reversal_gep(p),
        ReversalGnp => check_reversal_gnp(p),
        PseudoInv => check_pseudo_inv(p),
        CatalogConsistency => check_catalog(p),
    }
}

fn sign(n: usize) -> Rat {
    if n % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Catalog of base series for pipeline checks, with names for
/// counterexample messages.
fn catalog_bases(order: usize, betas: &[Rat]) -> Vec<(String, QSeries)> {
    let mut v = vec![
        ("exp".to_string(), exp_series(order)),
        ("geom".to_string(), geom_series(order)),
        ("onepx".to_string(), one_plus_x_series(order)),
        ("catalan".to_string(), catalan_series(order)),
    ];
    for b in betas {
        v.push((format!("genbinom({})", render_rat(b)), genbinom_series(b, order)));
    }
    v
}

// --- tilde Euler conjugations -------------------------------------------

fn check_t1(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        let lhs = build(OpName::Ut, n, None)?
            .mul(&reflect_matrix(n))?
            .mul(&build(OpName::UtInv, n, None)?)?;
        let rhs = mirror_matrix(n).scale(&sign(n - 1));
        if lhs != rhs {
            return Ok(fail(format!("tilde reflection conjugation fails at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_t2(p: &CheckParams) -> Result<CheckResult> {
    let order = default_order(p.max_n);
    let mut bases = catalog_bases(order, &p.beta_grid);
    // include a base with a_1 != 1 so the claim is not vacuous
    bases.push((
        "geom(2x)".to_string(),
        QSeries::from_fn(QQ, order, |k| crate::rat::rat_pow(&qi(2), k as i64)),
    ));
    for (name, a) in bases {
        let a1 = a.coeff(1).clone();
        let pair = SeriesPair::with_unit_b(a)?;
        for n in 0..=p.max_n {
            let res = numerator(&pair, Flavor::Ordinary, n)?;
            if !res.residual_ok {
                return Ok(fail(format!("numerator residual fails: {name} n={n}")));
            }
            let expected = crate::rat::rat_pow(&a1, n as i64);
            if res.numerator.eval_i64(1) != expected {
                return Ok(fail(format!(
                    "alpha_n(1) != a_1^n for {name} n={n}: got {}",
                    render_rat(&res.numerator.eval_i64(1))
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn degree_reduction_samples(deg: usize) -> Vec<Poly> {
    // two deterministic test polynomials of exact degree `deg`
    let p1 = Poly::from_coeffs((0..=deg).map(|j| qu(j + 1)).collect());
    let p2 = Poly::from_coeffs((0..=deg).map(|j| sign(j) * qu(2 * j + 1)).collect());
    vec![p1, p2]
}

fn check_t3(p: &CheckParams) -> Result<CheckResult> {
    // forward: Ut_n s = (1-x)^m ((n-m)!/n!) Ut_{n-m} s for deg s < n-m
    // backward: UtInv_n (1-x)^m c = (n!/(n-m)!) UtInv_{n-m} c
    for n in 2..=p.max_n {
        let ut_n = build(OpName::Ut, n, None)?;
        let utinv_n = build(OpName::UtInv, n, None)?;
        for m in 1..n {
            let ut_small = build(OpName::Ut, n - m, None)?;
            let utinv_small = build(OpName::UtInv, n - m, None)?;
            let ratio = factorial(n - m) / factorial(n);
            for s in degree_reduction_samples(n - m - 1) {
                let lhs = ut_n.apply(&s)?;
                let rhs = Poly::one_minus_x_pow(m)
                    .mul(&ut_small.apply(&s)?)
                    .scale(&ratio);
                if lhs != rhs {
                    return Ok(fail(format!("tilde degree reduction fails n={n} m={m}")));
                }
                let lhs2 = utinv_n.apply(&Poly::one_minus_x_pow(m).mul(&s))?;
                let rhs2 = utinv_small.apply(&s)?.scale(&ratio.clone().recip());
                if lhs2 != rhs2 {
                    return Ok(fail(format!(
                        "tilde inverse degree reduction fails n={n} m={m}"
                    )));
                }
            }
        }
    }
    Ok(Ok(()))
}

fn check_t4(p: &CheckParams) -> Result<CheckResult> {
    // A = Vt^{-1} Dt ((1+x)^{n beta}, x)^T Dt^{-1} Vt, with the power
    // expanded by the series route for independence
    for n in 1..=p.max_n {
        for beta in &p.beta_grid {
            let a = build(OpName::A, n, Some(beta))?;
            let nb = qu(n) * beta;
            let pw = one_plus_x_series(n + 1).pow_rat(&nb)?;
            let mid = mul_series_matrix(&pw, n)?.transpose();
            let dt = build(OpName::Dt, n, None)?;
            let dt_inv = FiniteOperator::diagonal(n, |i| qu(i + 1).recip());
            let fact = build(OpName::VtInv, n, None)?
                .mul(&dt)?
                .mul(&mid)?
                .mul(&dt_inv)?
                .mul(&build(OpName::Vt, n, None)?)?;
            if a != fact {
                return Ok(fail(format!(
                    "tilde group factorization fails n={n} beta={}",
                    render_rat(beta)
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn check_t5(p: &CheckParams) -> Result<CheckResult> {
    let order = default_order(p.max_n);
    for beta in &p.beta_grid {
        let pair = SeriesPair::with_unit_b(genbinom_series(beta, order))?;
        for n in 0..=p.max_n {
            let res = numerator(&pair, Flavor::Ordinary, n)?;
            if !res.residual_ok || res.numerator != gep_closed_form(beta, n) {
                return Ok(fail(format!(
                    "generalized Euler closed form fails beta={} n={n}",
                    render_rat(beta)
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn check_t6(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        let lhs = build(OpName::Ft, n, None)?
            .mul(&shift_matrix(n, &qu(n)))?
            .mul(&reflect_matrix(n))?
            .mul(&build(OpName::FtInv, n, None)?)?;
        let rhs = mirror_matrix(n).scale(&sign(n - 1));
        if lhs != rhs {
            return Ok(fail(format!("Ft reflection conjugation fails at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_t7(p: &CheckParams) -> Result<CheckResult> {
    // St = Vt^{-1} Ct Vt vs the defining product Ft UtInv
    for n in 1..=p.max_n {
        let st = build(OpName::St, n, None)?;
        let fact = build(OpName::VtInv, n, None)?
            .mul(&build(OpName::Ct, n, None)?)?
            .mul(&build(OpName::Vt, n, None)?)?;
        if st != fact {
            return Ok(fail(format!("St factorization fails at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_t8(p: &CheckParams) -> Result<CheckResult> {
    let order = default_order(p.max_n);
    for beta in &p.beta_grid {
        let pair = SeriesPair::with_unit_b(genbinom_series(beta, order))?;
        for n in 0..=p.max_n {
            let res = numerator(&pair, Flavor::Exponential, n)?;
            if !res.residual_ok || res.numerator != gnp_closed_form(beta, n) {
                return Ok(fail(format!(
                    "generalized Narayana closed form fails beta={} n={n}",
                    render_rat(beta)
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn check_t9(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        let lhs = build(OpName::U, n, None)?
            .mul(&shift_matrix(n + 1, &Rat::one()))?
            .mul(&reflect_matrix(n + 1))?
            .mul(&build(OpName::UInv, n, None)?)?;
        let rhs = mirror_matrix(n + 1).scale(&sign(n));
        if lhs != rhs {
            return Ok(fail(format!("plain reflection conjugation fails at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_t10(p: &CheckParams) -> Result<CheckResult> {
    for n in 2..=p.max_n {
        let u_n = build(OpName::U, n, None)?;
        let uinv_n = build(OpName::UInv, n, None)?;
        for m in 1..n {
            let u_small = build(OpName::U, n - m, None)?;
            let uinv_small = build(OpName::UInv, n - m, None)?;
            let ratio = factorial(n - m) / factorial(n);
            for s in degree_reduction_samples(n - m) {
                let lhs = u_n.apply(&s)?;
                let rhs = Poly::one_minus_x_pow(m)
                    .mul(&u_small.apply(&s)?)
                    .scale(&ratio);
                if lhs != rhs {
                    return Ok(fail(format!("plain degree reduction fails n={n} m={m}")));
                }
                let lhs2 = uinv_n.apply(&Poly::one_minus_x_pow(m).mul(&s))?;
                let rhs2 = uinv_small.apply(&s)?.scale(&ratio.clone().recip());
                if lhs2 != rhs2 {
                    return Ok(fail(format!(
                        "plain inverse degree reduction fails n={n} m={m}"
                    )));
                }
            }
        }
    }
    Ok(Ok(()))
}

fn check_t11(p: &CheckParams) -> Result<CheckResult> {
    // F: shift n+1; BF variant: shift n-1
    for n in 1..=p.max_n {
        let lhs = build(OpName::F, n, None)?
            .mul(&shift_matrix(n + 1, &qu(n + 1)))?
            .mul(&reflect_matrix(n + 1))?
            .mul(&build(OpName::FInv, n, None)?)?;
        let rhs = mirror_matrix(n + 1).scale(&sign(n));
        if lhs != rhs {
            return Ok(fail(format!("F reflection conjugation fails at n={n}")));
        }
        let lhs_b = build(OpName::BF, n, None)?
            .mul(&shift_matrix(n + 1, &qu(n - 1)))?
            .mul(&reflect_matrix(n + 1))?
            .mul(&build(OpName::BFInv, n, None)?)?;
        if lhs_b != rhs {
            return Ok(fail(format!("BF reflection conjugation fails at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_t12(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        let s = build(OpName::S, n, None)?;
        let fact = build(OpName::VInv, n, None)?
            .mul(&build(OpName::C, n, None)?)?
            .mul(&build(OpName::V, n, None)?)?;
        if s != fact {
            return Ok(fail(format!("S factorization fails at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_t13(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        let s = build(OpName::S, n, None)?;
        for col in 0..=n {
            if s.column(col) != closed_form_column(OpName::S, n, col, None)? {
                return Ok(fail(format!("S closed column fails n={n} p={col}")));
            }
        }
    }
    Ok(Ok(()))
}

fn check_t14(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        let sinv = build(OpName::SInv, n, None)?;
        for col in 0..=n {
            if sinv.column(col) != closed_form_column(OpName::SInv, n, col, None)? {
                return Ok(fail(format!("S inverse closed column fails n={n} p={col}")));
            }
        }
    }
    Ok(Ok(()))
}

fn group_reversal(op: OpName, n: usize, beta: &Rat) -> Result<bool> {
    let dim = op.dim(n);
    let m = build(op, n, Some(beta))?;
    let minv = build(op, n, Some(&-beta.clone()))?;
    let j = mirror_matrix(dim);
    Ok(minv == j.mul(&m)?.mul(&j)?)
}

fn check_t15(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        for beta in &p.beta_grid {
            if !group_reversal(OpName::G, n, beta)? {
                return Ok(fail(format!(
                    "G reversal fails n={n} beta={}",
                    render_rat(beta)
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn check_t16(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        for beta in &p.beta_grid {
            let g = build(OpName::G, n, Some(beta))?;
            let nb = qu(n) * beta;
            let pw = one_plus_x_series(n + 2).pow_rat(&nb)?;
            let mid = mul_series_matrix(&pw, n + 1)?.transpose();
            let fact = build(OpName::VInv, n, None)?
                .mul(&mid)?
                .mul(&build(OpName::V, n, None)?)?;
            if g != fact {
                return Ok(fail(format!(
                    "G factorization fails n={n} beta={}",
                    render_rat(beta)
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn check_t17(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        for beta in &p.beta_grid {
            let g = build(OpName::G, n, Some(beta))?;
            for col in 0..=n {
                if g.column(col) != closed_form_column(OpName::G, n, col, Some(beta))? {
                    return Ok(fail(format!(
                        "G closed column fails n={n} p={col} beta={}",
                        render_rat(beta)
                    )));
                }
            }
        }
    }
    Ok(Ok(()))
}

fn check_t18(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        for beta in &p.beta_grid {
            if !group_reversal(OpName::H, n, beta)? {
                return Ok(fail(format!(
                    "H reversal fails n={n} beta={}",
                    render_rat(beta)
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn check_t19(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        for beta in &p.beta_grid {
            let h = build(OpName::H, n, Some(beta))?;
            for col in 0..=n {
                if h.column(col) != closed_form_column(OpName::H, n, col, Some(beta))? {
                    return Ok(fail(format!(
                        "H closed column fails n={n} p={col} beta={}",
                        render_rat(beta)
                    )));
                }
            }
            // corner specials
            let nb = qu(n) * beta;
            let corner_n = Poly::from_coeffs(
                (0..=n)
                    .map(|m| {
                        rat_binomial(&(-&nb + qu(2 * n)), m) * rat_binomial(&nb, n - m)
                    })
                    .collect(),
            )
            .scale(&rat_binomial(&qu(2 * n), n).recip());
            if h.column(n) != corner_n {
                return Ok(fail(format!(
                    "H corner column n fails n={n} beta={}",
                    render_rat(beta)
                )));
            }
            let corner_0 = Poly::from_coeffs(
                (0..=n)
                    .map(|m| {
                        rat_binomial(&-nb.clone(), m) * rat_binomial(&(&nb + qu(2 * n)), n - m)
                    })
                    .collect(),
            )
            .scale(&rat_binomial(&qu(2 * n), n).recip());
            if h.column(0) != corner_0 {
                return Ok(fail(format!(
                    "H corner column 0 fails n={n} beta={}",
                    render_rat(beta)
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn check_t20(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        for beta in &p.beta_grid {
            if !group_reversal(OpName::T, n, beta)? {
                return Ok(fail(format!(
                    "T reversal fails n={n} beta={}",
                    render_rat(beta)
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn check_t21(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        for beta in &p.beta_grid {
            let t = build(OpName::T, n, Some(beta))?;
            for col in 0..n {
                if t.column(col) != closed_form_column(OpName::T, n, col, Some(beta))? {
                    return Ok(fail(format!(
                        "T closed column fails n={n} p={col} beta={}",
                        render_rat(beta)
                    )));
                }
            }
            // corner specials
            let nb = qu(n) * beta;
            if n >= 1 {
                let corner_top = Poly::from_coeffs(
                    (0..n)
                        .map(|m| {
                            rat_binomial(&(qu(2 * n) - &nb), m) * rat_binomial(&nb, n - 1 - m)
                        })
                        .collect(),
                )
                .scale(&rat_binomial(&qu(2 * n), n - 1).recip());
                if t.column(n - 1) != corner_top {
                    return Ok(fail(format!(
                        "T corner column n-1 fails n={n} beta={}",
                        render_rat(beta)
                    )));
                }
                let corner_0 = Poly::from_coeffs(
                    (0..n)
                        .map(|m| {
                            rat_binomial(&-nb.clone(), m)
                                * rat_binomial(&(&nb + qu(2 * n)), n - 1 - m)
                        })
                        .collect(),
                )
                .scale(&rat_binomial(&qu(2 * n), n - 1).recip());
                if t.column(0) != corner_0 {
                    return Ok(fail(format!(
                        "T corner column 0 fails n={n} beta={}",
                        render_rat(beta)
                    )));
                }
            }
        }
    }
    Ok(Ok(()))
}

// --- structural remarks ---------------------------------------------------

fn check_r1(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        if !shift_relations_check(n)? {
            return Ok(fail(format!("index-shift relations fail at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_r2(p: &CheckParams) -> Result<CheckResult> {
    // order-by-order reversion vs the classical coefficient formula
    let order = default_order(p.max_n);
    for (name, a) in catalog_bases(order, &p.beta_grid) {
        let g = a.mul_x();
        let h = g.reversion()?;
        for n in 1..=order {
            if h.coeff(n) != &reversion_coefficient_oracle(&g, n)? {
                return Ok(fail(format!("reversion oracle disagrees: {name} n={n}")));
            }
        }
    }
    Ok(Ok(()))
}

// --- worked examples -------------------------------------------------------

fn check_ex1(p: &CheckParams) -> Result<CheckResult> {
    // F_n [x+n+1]_n = (2n)!/n!, and the truncation identities tying
    // Ft to F and BF
    for n in 1..=p.max_n {
        let f = build(OpName::F, n, None)?;
        let arg = Poly::linear_product(
            &(0..n).map(|i| qu(n + 1) + qu(i)).collect::<Vec<_>>(),
        );
        if f.apply(&arg)? != Poly::constant(factorial(2 * n) / factorial(n)) {
            return Ok(fail(format!("F rising-factorial image fails at n={n}")));
        }
        // Ft = (F (x+n+1, x) E) truncated to the leading n x n block
        let ft = build(OpName::Ft, n, None)?;
        let shift_mul = mul_poly_matrix(&Poly::from_coeffs(vec![qu(n + 1), Rat::one()]), n + 1);
        let prod = f
            .mul(&shift_mul)?
            .mul(&shift_matrix(n + 1, &Rat::one()))?
            .top_left(n);
        if ft != prod {
            return Ok(fail(format!("Ft truncation identity (F route) fails at n={n}")));
        }
        // Ft = (BF (x+n, x)) truncated
        let bf = build(OpName::BF, n, None)?;
        let shift_mul2 = mul_poly_matrix(&Poly::from_coeffs(vec![qu(n), Rat::one()]), n + 1);
        let prod2 = bf.mul(&shift_mul2)?.top_left(n);
        if ft != prod2 {
            return Ok(fail(format!(
                "Ft truncation identity (BF route) fails at n={n}"
            )));
        }
    }
    Ok(Ok(()))
}

/// Materialize the triangular array of (b, g) with g(0) = 0:
/// entry (i, j) = [x^i] b g^j, for rows 0..=rows.
fn triangle(b: &QSeries, g: &QSeries, rows: usize) -> Vec<Vec<Rat>> {
    let mut col = b.clone();
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    for _ in 0..=rows {
        cols.push(col.coeffs()[..=rows].to_vec());
        col = col.mul(g);
    }
    (0..=rows)
        .map(|i| (0..=rows).map(|j| cols[j][i].clone()).collect())
        .collect()
}

fn triangle_eq(got: &[Vec<Rat>], expected: &[&[i64]]) -> bool {
    expected.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, &v)| got[i][j] == qi(v))
    })
}

fn check_ex2(p: &CheckParams) -> Result<CheckResult> {
    let order = 12;
    // triangle of (1+x, x(1+x))
    let b = one_plus_x_series(order);
    let g = b.mul_x();
    let t1 = triangle(&b, &g, 6);
    let expect1: &[&[i64]] = &[
        &[1, 0, 0, 0, 0, 0, 0],
        &[1, 1, 0, 0, 0, 0, 0],
        &[0, 2, 1, 0, 0, 0, 0],
        &[0, 1, 3, 1, 0, 0, 0],
        &[0, 0, 3, 4, 1, 0, 0],
        &[0, 0, 1, 6, 5, 1, 0],
        &[0, 0, 0, 4, 10, 6, 1],
    ];
    if !triangle_eq(&t1, expect1) {
        return Ok(fail("shifted Pascal triangle mismatch".into()));
    }
    // triangle of (1 + x(log C)', x C)
    let c = catalan_series(order);
    let b2 = one_plus_dlog(&c, &Rat::one());
    let g2 = c.truncate(b2.order()).mul_x();
    let t2 = triangle(&b2, &g2, 5);
    let expect2: &[&[i64]] = &[
        &[1, 0, 0, 0, 0, 0],
        &[1, 1, 0, 0, 0, 0],
        &[3, 2, 1, 0, 0, 0],
        &[10, 6, 3, 1, 0, 0],
        &[35, 20, 10, 4, 1, 0],
        &[126, 70, 35, 15, 5, 1],
    ];
    if !triangle_eq(&t2, expect2) {
        return Ok(fail("central-binomial triangle mismatch".into()));
    }
    // type-B Narayana numerators of (1+x, 1+x) against S_n x^{n-1}
    let pair = SeriesPair::new(
        one_plus_x_series(default_order(p.max_n)),
        one_plus_x_series(default_order(p.max_n)),
    )?;
    for n in 1..=p.max_n {
        let res = numerator(&pair, Flavor::Exponential, n)?;
        let expected = closed_form_column(OpName::S, n, n - 1, None)?;
        let direct = Poly::from_i64(&[1, 1])
            .mul(&Poly::monomial(n - 1, Rat::one()))
            .scale(&(factorial(2 * n) / (factorial(n) * qu(2))));
        if !res.residual_ok || res.numerator != expected || expected != direct {
            return Ok(fail(format!("type-B numerator vs S column fails at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_ex3(p: &CheckParams) -> Result<CheckResult> {
    let order = 12;
    let c = catalan_series(order);
    // triangle of ((xC)', xC)
    let xc = c.mul_x();
    let b1 = xc.derivative();
    let g1 = xc.truncate(b1.order());
    let t1 = triangle(&b1, &g1, 5);
    let expect1: &[&[i64]] = &[
        &[1, 0, 0, 0, 0, 0],
        &[2, 1, 0, 0, 0, 0],
        &[6, 3, 1, 0, 0, 0],
        &[20, 10, 4, 1, 0, 0],
        &[70, 35, 15, 5, 1, 0],
        &[252, 126, 56, 21, 6, 1],
    ];
    if !triangle_eq(&t1, expect1) {
        return Ok(fail("central binomial (xC)' triangle mismatch".into()));
    }
    // triangle of (1 + x(log C)', x C^{-1})
    let b2 = one_plus_dlog(&c, &Rat::one());
    let g2 = c.inverse()?.truncate(b2.order()).mul_x();
    let t2 = triangle(&b2, &g2, 5);
    let expect2: &[&[i64]] = &[
        &[1, 0, 0, 0, 0, 0],
        &[1, 1, 0, 0, 0, 0],
        &[3, 0, 1, 0, 0, 0],
        &[10, 1, -1, 1, 0, 0],
        &[35, 4, 0, -2, 1, 0],
        &[126, 15, 1, 0, -3, 1],
    ];
    if !triangle_eq(&t2, expect2) {
        return Ok(fail("inverse-Catalan triangle mismatch".into()));
    }
    // type-B ordinary numerators of ((xC)', C) vs (2n)!/n! Sinv x^0
    let dpair = SeriesPair::new(
        catalan_series(default_order(p.max_n)).mul_x().derivative(),
        catalan_series(default_order(p.max_n) - 1),
    )?;
    for n in 0..=p.max_n {
        let res = numerator(&dpair, Flavor::Ordinary, n)?;
        let expected = closed_form_column(OpName::SInv, n.max(1), 0, None)?
            .scale(&(factorial(2 * n) / factorial(n)));
        let expected = if n == 0 { Poly::one() } else { expected };
        if !res.residual_ok || res.numerator != expected {
            return Ok(fail(format!("type-B numerator vs Sinv column fails at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_ex4(p: &CheckParams) -> Result<CheckResult> {
    let order = 12;
    let opx = one_plus_x_series(order);
    // triangle of ((x(1+x))', x(1+x))
    let b1 = opx.mul_x().derivative();
    let g1 = opx.truncate(b1.order()).mul_x();
    let t1 = triangle(&b1, &g1, 6);
    let expect1: &[&[i64]] = &[
        &[1, 0, 0, 0, 0, 0, 0],
        &[2, 1, 0, 0, 0, 0, 0],
        &[0, 3, 1, 0, 0, 0, 0],
        &[0, 2, 4, 1, 0, 0, 0],
        &[0, 0, 5, 5, 1, 0, 0],
        &[0, 0, 2, 9, 6, 1, 0],
        &[0, 0, 0, 7, 14, 7, 1],
    ];
    if !triangle_eq(&t1, expect1) {
        return Ok(fail("derivative shifted-Pascal triangle mismatch".into()));
    }
    // triangle of (1 + x(log(1+x))', x(1+x)^{-1})
    let b2 = one_plus_dlog(&opx, &Rat::one());
    let g2 = opx.inverse()?.truncate(b2.order()).mul_x();
    let t2 = triangle(&b2, &g2, 6);
    let expect2: &[&[i64]] = &[
        &[1, 0, 0, 0, 0, 0, 0],
        &[1, 1, 0, 0, 0, 0, 0],
        &[-1, 0, 1, 0, 0, 0, 0],
        &[1, -1, -1, 1, 0, 0, 0],
        &[-1, 2, 0, -2, 1, 0, 0],
        &[1, -3, 2, 2, -3, 1, 0],
        &[-1, 4, -5, 0, 5, -4, 1],
    ];
    if !triangle_eq(&t2, expect2) {
        return Ok(fail("inverse shifted-Pascal triangle mismatch".into()));
    }
    // type-B ordinary numerators of ((x(1+x))', 1+x): (2-x) x^{n-1}
    let dorder = default_order(p.max_n);
    let dpair = SeriesPair::new(
        one_plus_x_series(dorder).mul_x().derivative(),
        one_plus_x_series(dorder - 1),
    )?;
    for n in 1..=p.max_n {
        let res = numerator(&dpair, Flavor::Ordinary, n)?;
        let expected = Poly::from_i64(&[2, -1]).mul(&Poly::monomial(n - 1, Rat::one()));
        let via_s = closed_form_column(OpName::SInv, n, n - 1, None)?
            .scale(&(factorial(2 * n) / factorial(n)));
        if !res.residual_ok || res.numerator != expected || via_s != expected {
            return Ok(fail(format!("(2-x)x^(n-1) numerator fails at n={n}")));
        }
        // companion pair (1 + x(log(1+x))', 1/(1+x)): (-1)^n (2x - 1)
        let comp_pair = SeriesPair::new(
            one_plus_dlog(&one_plus_x_series(dorder), &Rat::one()),
            one_plus_x_series(dorder - 1).inverse()?,
        )?;
        let comp = numerator(&comp_pair, Flavor::Ordinary, n)?;
        let comp_expected = Poly::from_i64(&[-1, 2]).scale(&sign(n));
        if !comp.residual_ok || comp.numerator != comp_expected {
            return Ok(fail(format!("companion (2x-1) numerator fails at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_ex5(p: &CheckParams) -> Result<CheckResult> {
    // type-B numerators of the geometric base: (1 - (1-x)^{n+1})/x,
    // and the companion from the inverse pair via the mirror law
    let order = default_order(p.max_n);
    let geom = geom_series(order);
    let pair = SeriesPair::new(geom.mul_x().derivative(), geom.truncate(order - 1))?;
    for n in 0..=p.max_n {
        let res = numerator(&pair, Flavor::Ordinary, n)?;
        let expected = Poly::one()
            .sub(&Poly::one_minus_x_pow(n + 1))
            .div_x()?
            .neg()
            .neg();
        if !res.residual_ok || res.numerator != expected {
            return Ok(fail(format!("geometric type-B numerator fails at n={n}")));
        }
        // companion: numerators of (1/(1-x), x(1-x)) are
        // (-1)^n J_n applied to the above
        let comp_pair = SeriesPair::new(
            geom.truncate(order),
            QSeries::from_poly(&Poly::from_i64(&[1, -1]), order),
        )?;
        let comp = numerator(&comp_pair, Flavor::Ordinary, n)?;
        let mirrored = expected.reverse(n)?.scale(&sign(n));
        if !comp.residual_ok || comp.numerator != mirrored {
            return Ok(fail(format!("geometric companion numerator fails at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_ex6(p: &CheckParams) -> Result<CheckResult> {
    // type-B numerators of the exponential base:
    // (1/n!) (A_n/x + n(1-x) A_{n-1}/x), A_0/x read as 1
    let order = default_order(p.max_n);
    let e = exp_series(order);
    let pair = SeriesPair::new(e.mul_x().derivative(), e.truncate(order - 1))?;
    for n in 1..=p.max_n {
        let res = numerator(&pair, Flavor::Ordinary, n)?;
        let tilde_n = if n == 0 { Poly::one() } else { euler_poly(n).div_x()? };
        let tilde_prev = if n == 1 {
            Poly::one()
        } else {
            euler_poly(n - 1).div_x()?
        };
        let expected = tilde_n
            .add(&Poly::one_minus_x_pow(1).mul(&tilde_prev).scale(&qu(n)))
            .scale(&factorial(n).recip());
        if !res.residual_ok || res.numerator != expected {
            return Ok(fail(format!("Euler-combination formula fails at n={n}")));
        }
        // companion: numerators of (1+x, x e^{-x}) are the mirror
        let einv = e.inverse()?;
        let comp_pair = SeriesPair::new(one_plus_x_series(order), einv)?;
        let comp = numerator(&comp_pair, Flavor::Ordinary, n)?;
        let mirrored = expected.reverse(n)?.scale(&sign(n));
        if !comp.residual_ok || comp.numerator != mirrored {
            return Ok(fail(format!("exponential companion fails at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_ex7(p: &CheckParams) -> Result<CheckResult> {
    // prefactor coincidence for the generalized binomial series, and
    // the numerators of the prefactored pair against G columns
    let order = default_order(p.max_n).max(10);
    for beta in &p.beta_grid {
        let a = genbinom_series(beta, order);
        // a_beta (1 + x (log a_beta^{beta-1})') = 1 + x (log a_beta^beta)'
        let lhs = a.mul(&one_plus_dlog(&a, &(beta - qi(1))));
        let rhs = one_plus_dlog(&a, beta);
        if lhs.truncate(rhs.order()) != rhs {
            return Ok(fail(format!(
                "prefactor coincidence fails beta={}",
                render_rat(beta)
            )));
        }
        // numerators of (1 + x(log a^beta)', a) = G_n^beta x^n
        let pair = SeriesPair::new(one_plus_dlog(&a, beta), a.truncate(order - 1))?;
        for n in 1..=p.max_n {
            let res = numerator(&pair, Flavor::Ordinary, n)?;
            let expected = closed_form_column(OpName::G, n, n, Some(beta))?;
            if !res.residual_ok || res.numerator != expected {
                return Ok(fail(format!(
                    "prefactored numerator vs G column fails beta={} n={n}",
                    render_rat(beta)
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn check_ex8(p: &CheckParams) -> Result<CheckResult> {
    // the two sign-conjugation coincidences between associate pairs
    let order = 12;
    let base = one_plus_x_series(order);
    for beta in &p.beta_grid {
        // pair 1: (1 + x(log assoc(1-b)^{-b})', x assoc(1-b))
        //       = reflected (1 + x(log assoc(b)^b)', x assoc(b)^{-1})
        let a_b = lagrange_associate(&base, beta, &Rat::one())?;
        let a_1mb = lagrange_associate(&base, &(Rat::one() - beta), &Rat::one())?;
        let b_left = one_plus_dlog(&a_1mb, &-beta.clone());
        let b_right = one_plus_dlog(&a_b, beta);
        // reflected component: value at -x
        let reflect = |s: &QSeries| {
            QSeries::from_fn(QQ, s.order(), |k| s.coeff(k) * sign(k))
        };
        if b_left != reflect(&b_right) {
            return Ok(fail(format!(
                "sign conjugation (b component) fails beta={}",
                render_rat(beta)
            )));
        }
        let g_right = a_b.inverse()?;
        if a_1mb != reflect(&g_right) {
            return Ok(fail(format!(
                "sign conjugation (g component) fails beta={}",
                render_rat(beta)
            )));
        }
        // pair 2: the exponent-shifted variant at beta+1
        let a_p1 = lagrange_associate(&base, &(beta + qi(1)), &Rat::one())?;
        let a_mb = lagrange_associate(&base, &-beta.clone(), &Rat::one())?;
        let left_b2 = a_mb.mul(&one_plus_dlog(&a_mb, &-beta.clone()));
        let right_b2 = a_p1.inverse()?.mul(&one_plus_dlog(&a_p1, beta));
        if left_b2.truncate(right_b2.order()) != reflect(&right_b2) {
            return Ok(fail(format!(
                "shifted sign conjugation fails beta={}",
                render_rat(beta)
            )));
        }
        if a_mb != reflect(&a_p1.inverse()?) {
            return Ok(fail(format!(
                "shifted sign conjugation (g component) fails beta={}",
                render_rat(beta)
            )));
        }
    }
    Ok(Ok(()))
}

fn check_ex9(p: &CheckParams) -> Result<CheckResult> {
    // exponential numerators of the prefactored associate pair equal
    // (2n)!/n! H_n^beta x^n, and the derivative chain rule identity
    let max_n = p.max_n.min(5);
    let order = default_order(max_n).max(12);
    let base = one_plus_x_series(order);
    for beta in &p.beta_grid {
        let a = genbinom_series(beta, order);
        let pre = beta_prefactor(&QSeries::one(QQ, order), &base, beta)?;
        // the beta-prefactor of b = 1 must coincide with 1 + x(log a^beta)'
        let direct = one_plus_dlog(&a, beta);
        if pre.truncate(direct.order()) != direct {
            return Ok(fail(format!(
                "prefactor assembly mismatch beta={}",
                render_rat(beta)
            )));
        }
        let pair = SeriesPair::new(direct.clone(), a.truncate(direct.order()))?;
        for n in 0..=max_n {
            let res = numerator(&pair, Flavor::Exponential, n)?;
            let expected = if n == 0 {
                Poly::one()
            } else {
                closed_form_column(OpName::H, n, n, Some(beta))?
                    .scale(&(factorial(2 * n) / factorial(n)))
            };
            if !res.residual_ok || res.numerator != expected {
                return Ok(fail(format!(
                    "prefactored numerator vs H column fails beta={} n={n}",
                    render_rat(beta)
                )));
            }
        }
        // chain-rule identity:
        // (x A')(x) substituted... (xB)'(x) * (1 + x(log a^b)')(xB)
        //   = (1 + x(log assoc(b-1)^{b-1})') * B
        // with B = assoc(beta-1, -1) = assoc(beta-1)^(-1)
        let a_m1 = lagrange_associate(&base, &(beta - qi(1)), &Rat::one())?;
        let binv = a_m1.inverse()?;
        let xb = binv.mul_x();
        let lhs = xb.derivative().mul(&direct.compose(&xb.truncate(direct.order()))?);
        let rhs = one_plus_dlog(&a_m1, &(beta - qi(1))).mul(&binv);
        let ord = lhs.order().min(rhs.order());
        if lhs.truncate(ord) != rhs.truncate(ord) {
            return Ok(fail(format!(
                "derivative chain identity fails beta={}",
                render_rat(beta)
            )));
        }
    }
    Ok(Ok(()))
}

// --- aggregate identities ---------------------------------------------------

fn check_stirling(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        // tilde: UtInv VtInv x^p = (n!/(p+1)!) sum_m s(p+1,m) x^{m-1}
        //        Vt Ut x^p = (1/n!) sum_m m! S(p+1,m) x^{m-1}
        let utinv_vtinv = build(OpName::UtInv, n, None)?.mul(&build(OpName::VtInv, n, None)?)?;
        let vt_ut = build(OpName::Vt, n, None)?.mul(&build(OpName::Ut, n, None)?)?;
        for col in 0..n {
            let e1 = Poly::from_coeffs(
                (1..=col + 1)
                    .map(|m| stirling_first(col + 1, m).unwrap())
                    .collect(),
            )
            .scale(&(factorial(n) / factorial(col + 1)));
            if utinv_vtinv.column(col) != e1 {
                return Ok(fail(format!("tilde first-kind factor fails n={n} p={col}")));
            }
            let e2 = Poly::from_coeffs(
                (1..=col + 1)
                    .map(|m| factorial(m) * stirling_second(col + 1, m).unwrap())
                    .collect(),
            )
            .scale(&factorial(n).recip());
            if vt_ut.column(col) != e2 {
                return Ok(fail(format!("tilde second-kind factor fails n={n} p={col}")));
            }
        }
        // plain: UInv VInv x^p = (n!/p!) sum_m s(p,m) x^m
        //        V U x^p = (1/n!) sum_m m! S(p,m) x^m
        let uinv_vinv = build(OpName::UInv, n, None)?.mul(&build(OpName::VInv, n, None)?)?;
        let v_u = build(OpName::V, n, None)?.mul(&build(OpName::U, n, None)?)?;
        for col in 0..=n {
            let e1 = Poly::from_coeffs(
                (0..=col).map(|m| stirling_first(col, m).unwrap()).collect(),
            )
            .scale(&(factorial(n) / factorial(col)));
            if uinv_vinv.column(col) != e1 {
                return Ok(fail(format!("plain first-kind factor fails n={n} p={col}")));
            }
            let e2 = Poly::from_coeffs(
                (0..=col)
                    .map(|m| factorial(m) * stirling_second(col, m).unwrap())
                    .collect(),
            )
            .scale(&factorial(n).recip());
            if v_u.column(col) != e2 {
                return Ok(fail(format!("plain second-kind factor fails n={n} p={col}")));
            }
        }
    }
    Ok(Ok(()))
}

fn check_dual_basis(p: &CheckParams) -> Result<CheckResult> {
    let n_terms = 8;
    let order = n_terms + 4;
    for (name, a) in catalog_bases(order, &[qi(1), q(-1, 2)]) {
        for beta in &p.beta_grid {
            for phi in [qi(1), q(2, 3)] {
                let r = dual_basis_residual(&a, beta, &phi, n_terms)?;
                if !r.is_zero() {
                    return Ok(fail(format!(
                        "dual basis residual nonzero: {name} beta={} phi={}",
                        render_rat(beta),
                        render_rat(&phi)
                    )));
                }
            }
        }
    }
    Ok(Ok(()))
}

fn check_gf_narayana(p: &CheckParams) -> Result<CheckResult> {
    let n_max = p.max_n.min(5);
    let order = default_order(n_max);
    for (name, a) in [
        ("geom", geom_series(order)),
        ("exp", exp_series(order)),
        ("onepx", one_plus_x_series(order)),
    ] {
        if let Some(n) = gnp_generating_check(&a, n_max)? {
            return Ok(fail(format!(
                "generating function identity fails for {name} at n={n}"
            )));
        }
    }
    // closed algebraic form for the Narayana generating function:
    // sum N_n(t) x^n = (1 + x(1-t) - sqrt(1 - 2x(1+t) + x^2(1-t)^2))/(2x)
    use crate::poly::Poly as P;
    use crate::ring::PolyRing;
    use crate::series::Series;
    let t_order = 2 * n_max + 2;
    let ring = PolyRing::truncated(t_order);
    let x_order = n_max + 1;
    let inner = Series::from_fn(ring, x_order, |k| match k {
        0 => P::one(),
        1 => P::from_i64(&[-2, -2]),
        2 => P::from_i64(&[1, -2, 1]),
        _ => P::zero(),
    });
    let root = inner.pow_rat(&q(1, 2))?;
    let numer = Series::from_fn(ring, x_order, |k| match k {
        0 => P::one(),
        1 => P::from_i64(&[1, -1]),
        _ => P::zero(),
    })
    .sub(&root);
    let gf = numer.div_x()?.scale(&P::constant(q(1, 2)));
    for n in 0..=n_max {
        let expected = narayana_poly(n);
        let got = gf.coeff(n);
        if got != &expected {
            return Ok(fail(format!("algebraic Narayana series fails at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_colsum_a(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        for beta in &p.beta_grid {
            let a = build(OpName::A, n, Some(beta))?;
            for j in 0..n {
                let mut acc = Rat::zero();
                for i in 0..n {
                    acc += a.entry(i, j);
                }
                if !acc.is_one() {
                    return Ok(fail(format!(
                        "column sum != 1: n={n} beta={} column {j}",
                        render_rat(beta)
                    )));
                }
            }
        }
    }
    Ok(Ok(()))
}

fn check_grouplaw_g(p: &CheckParams) -> Result<CheckResult> {
    for n in 1..=p.max_n {
        let x = build(OpName::X, n, None)?;
        // X is nilpotent and I + X is the n-th root of the group
        if x.pow(n + 1)? != FiniteOperator::zero(n + 1) {
            return Ok(fail(format!("shear is not nilpotent at n={n}")));
        }
        let i_plus_x = x.add(&FiniteOperator::identity(n + 1))?;
        let root = build(OpName::G, n, Some(&q(1, n as i64)))?;
        if i_plus_x != root {
            return Ok(fail(format!("I+X vs fractional power fails at n={n}")));
        }
        // direct conjugation route
        let v = build(OpName::V, n, None)?;
        let direct = build(OpName::VInv, n, None)?
            .mul(&raise_matrix(n + 1).transpose())?
            .mul(&v)?;
        if x != direct {
            return Ok(fail(format!("shear conjugation route fails at n={n}")));
        }
        // binomial expansion for integer n beta
        for beta in &p.beta_grid {
            let nb = qu(n) * beta;
            if !crate::rat::is_integer(&nb) {
                continue;
            }
            let g = build(OpName::G, n, Some(beta))?;
            let mut acc = FiniteOperator::zero(n + 1);
            let mut xp = FiniteOperator::identity(n + 1);
            for m in 0..=n {
                acc = acc.add(&xp.scale(&rat_binomial(&nb, m)))?;
                xp = xp.mul(&x)?;
            }
            if g != acc {
                return Ok(fail(format!(
                    "binomial expansion of the group fails n={n} beta={}",
                    render_rat(beta)
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn check_reduce(op: OpName, p: &CheckParams) -> Result<CheckResult> {
    for n in 2..=p.max_n {
        for m in 1..n {
            for beta in &p.beta_grid {
                let reduced = reduce_conjugation(op, n, m, beta)?;
                let target_beta = qu(n) * beta / qu(n - m);
                let expected = build(op, n - m, Some(&target_beta))?;
                if reduced != expected {
                    return Ok(fail(format!(
                        "{} reduction fails n={n} m={m} beta={}",
                        op.token(),
                        render_rat(beta)
                    )));
                }
            }
        }
    }
    Ok(Ok(()))
}

fn check_reduce_a(p: &CheckParams) -> Result<CheckResult> {
    check_reduce(OpName::A, p)
}

fn check_reduce_g(p: &CheckParams) -> Result<CheckResult> {
    check_reduce(OpName::G, p)
}

fn check_sumid(p: &CheckParams, shifted: bool) -> Result<CheckResult> {
    // sum_m (-1)^{n-m} C(2n+1, n-m) m^p C(m+n, n) = (-1)^{n+p}(n+1)^p
    // and the companion with (m+1)^p summing to (-1)^{n+p} n^p, p <= n
    for n in 0..=p.max_n {
        for pw in 0..=n {
            let mut acc = Rat::zero();
            for m in 0..=n {
                let base = if shifted { qu(m + 1) } else { qu(m) };
                acc += sign(n - m)
                    * rat_binomial(&qu(2 * n + 1), n - m)
                    * crate::rat::rat_pow(&base, pw as i64)
                    * rat_binomial(&qu(m + n), n);
            }
            let target = if shifted {
                sign(n + pw) * crate::rat::rat_pow(&qu(n), pw as i64)
            } else {
                sign(n + pw) * crate::rat::rat_pow(&qu(n + 1), pw as i64)
            };
            if acc != target {
                return Ok(fail(format!(
                    "summation identity ({}) fails n={n} p={pw}",
                    if shifted { "shifted" } else { "plain" }
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn check_reversal_gep(p: &CheckParams) -> Result<CheckResult> {
    // closed-form reversal: gep(1-beta) = x J_n gep(beta)
    for beta in &p.beta_grid {
        for n in 1..=p.max_n {
            let lhs = gep_closed_form(&(Rat::one() - beta), n);
            let rhs = gep_closed_form(beta, n).div_x()?.reverse(n - 1)?.mul_x();
            if lhs != rhs {
                return Ok(fail(format!(
                    "closed-form reversal fails beta={} n={n}",
                    render_rat(beta)
                )));
            }
        }
    }
    // pipeline reversal: numerators of (1, 1/a) are (-1)^n x J_n
    // applied to those of (1, a)
    let order = default_order(p.max_n);
    for (name, a) in catalog_bases(order, &[qi(2), q(1, 2)]) {
        let pair = SeriesPair::with_unit_b(a.clone())?;
        let ipair = SeriesPair::with_unit_b(a.inverse()?)?;
        for n in 0..=p.max_n {
            let alpha = numerator(&pair, Flavor::Ordinary, n)?;
            let alpha_inv = numerator(&ipair, Flavor::Ordinary, n)?;
            let expected = if n == 0 {
                alpha.numerator.clone()
            } else {
                alpha.numerator.reverse(n)?.mul_x().scale(&sign(n))
            };
            if !alpha_inv.residual_ok || alpha_inv.numerator != expected {
                return Ok(fail(format!("pipeline reversal fails: {name} n={n}")));
            }
        }
    }
    Ok(Ok(()))
}

fn check_reversal_gnp(p: &CheckParams) -> Result<CheckResult> {
    // closed-form reversal: gnp(2-beta) = x J_n gnp(beta)
    for beta in &p.beta_grid {
        for n in 1..=p.max_n {
            let lhs = gnp_closed_form(&(qu(2) - beta), n);
            let rhs = gnp_closed_form(beta, n).div_x()?.reverse(n - 1)?.mul_x();
            if lhs != rhs {
                return Ok(fail(format!(
                    "closed-form reversal fails beta={} n={n}",
                    render_rat(beta)
                )));
            }
        }
    }
    // pipeline reversal through the compositional inverse:
    // the second component of (1, xa)^{-1} is the reversion
    let max_n = p.max_n.min(5);
    let order = default_order(max_n);
    for (name, a) in catalog_bases(order, &[qi(2)]) {
        let pair = SeriesPair::with_unit_b(a.clone())?;
        let a_rev = a.mul_x().reversion()?.div_x()?;
        let rpair = SeriesPair::with_unit_b(a_rev)?;
        for n in 0..=max_n {
            let phi = numerator(&pair, Flavor::Exponential, n)?;
            let phi_rev = numerator(&rpair, Flavor::Exponential, n)?;
            let expected = if n == 0 {
                phi.numerator.clone()
            } else {
                phi.numerator.reverse(n)?.mul_x().scale(&sign(n))
            };
            if !phi_rev.residual_ok || phi_rev.numerator != expected {
                return Ok(fail(format!("pipeline reversal fails: {name} n={n}")));
            }
        }
    }
    Ok(Ok(()))
}

fn check_pseudo_inv(p: &CheckParams) -> Result<CheckResult> {
    // geometric base: (1, x/(1-x))^{-1} = (1, x/(1+x)), i.e. the
    // reversion of x a(x) is x a(-x); the numerators are then
    // invariant under x J_n
    let order = default_order(p.max_n);
    let a = geom_series(order);
    let rev = a.mul_x().reversion()?;
    let expected = QSeries::from_fn(QQ, order, |k| {
        if k == 0 {
            Rat::zero()
        } else {
            sign(k - 1)
        }
    });
    if rev != expected {
        return Ok(fail("geometric base is not a pseudo-involution".into()));
    }
    let pair = SeriesPair::with_unit_b(a)?;
    for n in 1..=p.max_n {
        let phi = numerator(&pair, Flavor::Exponential, n)?.numerator;
        // x J_n phi = phi: the numerators are palindromic
        let mirrored = phi.div_x()?.reverse(n - 1)?.mul_x();
        if mirrored != phi {
            return Ok(fail(format!("palindromic numerator fails at n={n}")));
        }
    }
    Ok(Ok(()))
}

fn check_catalog(p: &CheckParams) -> Result<CheckResult> {
    let order = 2 * p.max_n + p.guard;
    // catalan: defining quadratic c = 1 + x c^2 and the associate route
    let c = catalan_series(order);
    let rhs = QSeries::one(QQ, order).add(&c.mul(&c).mul_x());
    if c != rhs {
        return Ok(fail("catalan quadratic fails".into()));
    }
    if c != genbinom_series(&qi(2), order) {
        return Ok(fail("catalan vs generalized binomial mismatch".into()));
    }
    // geometric: (1-x) * geom = 1
    let g = geom_series(order);
    if g.mul(&QSeries::from_poly(&Poly::from_i64(&[1, -1]), order)) != QSeries::one(QQ, order) {
        return Ok(fail("geometric series identity fails".into()));
    }
    // exp: log is x
    if exp_series(order).log()? != QSeries::x(QQ, order) {
        return Ok(fail("exponential series log fails".into()));
    }
    // genbinom(beta) equals the associate of 1+x across the grid,
    // and the explicit product-form coefficients agree; the associate
    // inverse-pair law holds as well
    let base = one_plus_x_series(order);
    for beta in &p.beta_grid {
        let gb = genbinom_series(beta, order);
        if gb != lagrange_associate(&base, beta, &Rat::one())? {
            return Ok(fail(format!(
                "generalized binomial vs associate mismatch beta={}",
                render_rat(beta)
            )));
        }
        if gb != generalized_binomial(beta, &Rat::one(), order) {
            return Ok(fail(format!(
                "generalized binomial product form mismatch beta={}",
                render_rat(beta)
            )));
        }
        for phi in [qi(1), q(3, 2)] {
            if !inverse_pair_check(&base, beta, &phi)? {
                return Ok(fail(format!(
                    "associate inverse pair fails beta={} phi={}",
                    render_rat(beta),
                    render_rat(&phi)
                )));
            }
        }
    }
    // diagonal consistency with brute-force powers: coefficient m of
    // the n-th diagonal of (b, xa) is [x^n] b a^m, weighted by
    // (m+n)!/m! in the exponential flavor
    let pair = SeriesPair::new(geom_series(order), exp_series(order))?;
    for flavor in [Flavor::Ordinary, Flavor::Exponential] {
        for n in 0..=p.max_n.min(4) {
            let diag = diagonal_series(&pair, flavor, n)?;
            let mut power = pair.b.clone();
            for m in 0..=p.max_n {
                let raw = power.coeff(n).clone();
                let expected = match flavor {
                    Flavor::Ordinary => raw,
                    Flavor::Exponential => raw * factorial(m + n) / factorial(m),
                };
                if diag.coeff(m) != &expected {
                    return Ok(fail(format!(
                        "diagonal vs brute-force entry mismatch n={n} m={m}"
                    )));
                }
                // the square-array column agrees with the raw power
                let col = column(&pair, flavor, m);
                let col_expected = power.coeff(n) * factorial(n) / factorial(m);
                let matches = match flavor {
                    Flavor::Ordinary => col.coeff(n) == power.coeff(n),
                    Flavor::Exponential => col.coeff(n) == &col_expected,
                };
                if !matches {
                    return Ok(fail(format!("column entry mismatch n={n} m={m}")));
                }
                power = power.mul(&pair.a);
            }
        }
    }
    Ok(Ok(()))
}
