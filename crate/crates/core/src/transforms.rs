//! The named finite transformation matrices.
//!
//! Two parallel families act on polynomial coefficient vectors: the
//! "tilde" family of dimension n (degree < n) built from the shifted
//! Euler polynomials, and the plain family of dimension n+1 built
//! from the Euler polynomials themselves. On top of these sit the
//! diagonal-summation operators (F and friends), the factorial
//! diagonals (C), and the one-parameter conjugation groups (A, G, H,
//! T) obtained by conjugating the shift x -> x + n*beta.
//!
//! `build` constructs every matrix from its defining formula;
//! factorizations and closed-form columns live in separate functions
//! so the verification layer can compare independent routes.

use crate::matrix::FiniteOperator;
use crate::poly::Poly;
use crate::rat::{factorial, qi, qu, rat_binomial, rat_pow, Rat};
use crate::riordan::euler_poly;
use crate::ring::QQ;
use crate::series::QSeries;
use crate::{CoreError, Result};
use num_traits::{One, Zero};

/// Token names of the matrix families. Names ending in `T` (for
/// "tilde") have dimension n; the plain families have dimension n+1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpName {
    U,
    UInv,
    Ut,
    UtInv,
    V,
    VInv,
    Vt,
    VtInv,
    F,
    FInv,
    Ft,
    FtInv,
    BF,
    BFInv,
    S,
    SInv,
    St,
    StInv,
    C,
    Ct,
    Dt,
    J,
    Jt,
    E,
    X,
    A,
    G,
    H,
    T,
}

impl OpName {
    /// Matrix dimension at index n.
    pub fn dim(&self, n: usize) -> usize {
        use OpName::*;
        match self {
            Ut | UtInv | Vt | VtInv | Ft | FtInv | St | StInv | Ct | Dt | Jt | A | T => n,
            U | UInv | V | VInv | F | FInv | BF | BFInv | S | SInv | C | J | E | X | G | H => {
                n + 1
            }
        }
    }

    /// Whether the family takes the beta (or shift) parameter.
    pub fn takes_beta(&self) -> bool {
        matches!(self, OpName::A | OpName::G | OpName::H | OpName::T | OpName::E)
    }

    pub fn token(&self) -> &'static str {
        use OpName::*;
        match self {
            U => "U",
            UInv => "Uinv",
            Ut => "Ut",
            UtInv => "Utinv",
            V => "V",
            VInv => "Vinv",
            Vt => "Vt",
            VtInv => "Vtinv",
            F => "F",
            FInv => "Finv",
            Ft => "Ft",
            FtInv => "Ftinv",
            BF => "BF",
            BFInv => "BFinv",
            S => "S",
            SInv => "Sinv",
            St => "St",
            StInv => "Stinv",
            C => "C",
            Ct => "Ct",
            Dt => "Dt",
            J => "J",
            Jt => "Jt",
            E => "E",
            X => "X",
            A => "A",
            G => "G",
            H => "H",
            T => "T",
        }
    }

    /// Parse a token; tilde families also accept the spelled-out
    /// form ("Utilde" etc.).
    pub fn parse(s: &str) -> Option<OpName> {
        use OpName::*;
        Some(match s {
            "U" => U,
            "Uinv" => UInv,
            "Ut" | "Utilde" => Ut,
            "Utinv" | "Utildeinv" => UtInv,
            "V" => V,
            "Vinv" => VInv,
            "Vt" | "Vtilde" => Vt,
            "Vtinv" | "Vtildeinv" => VtInv,
            "F" => F,
            "Finv" => FInv,
            "Ft" | "Ftilde" => Ft,
            "Ftinv" | "Ftildeinv" => FtInv,
            "BF" => BF,
            "BFinv" => BFInv,
            "S" => S,
            "Sinv" => SInv,
            "St" | "Stilde" => St,
            "Stinv" | "Stildeinv" => StInv,
            "C" => C,
            "Ct" | "Ctilde" => Ct,
            "Dt" | "Dtilde" => Dt,
            "J" => J,
            "Jt" | "Jtilde" => Jt,
            "E" => E,
            "X" => X,
            "A" => A,
            "G" => G,
            "H" => H,
            "T" => T,
            _ => return None,
        })
    }

    pub fn all() -> &'static [OpName] {
        use OpName::*;
        &[
            U, UInv, Ut, UtInv, V, VInv, Vt, VtInv, F, FInv, Ft, FtInv, BF, BFInv, S, SInv,
            St, StInv, C, Ct, Dt, J, Jt, E, X, A, G, H, T,
        ]
    }
}

/// Shift operator: p(x) -> p(x + c), i.e. column j is (x + c)^j.
pub fn shift_matrix(dim: usize, c: &Rat) -> FiniteOperator {
    FiniteOperator::from_fn(dim, |i, j| {
        if i > j {
            Rat::zero()
        } else {
            rat_binomial(&qu(j), i) * rat_pow(c, (j - i) as i64)
        }
    })
}

/// Sign reflection: p(x) -> p(-x).
pub fn reflect_matrix(dim: usize) -> FiniteOperator {
    FiniteOperator::diagonal(dim, |i| if i % 2 == 0 { Rat::one() } else { -Rat::one() })
}

/// Coefficient mirror within degree < dim.
pub fn mirror_matrix(dim: usize) -> FiniteOperator {
    FiniteOperator::from_fn(dim, |i, j| {
        if i + j == dim - 1 {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

/// Multiplication by x, truncated to degree < dim.
pub fn raise_matrix(dim: usize) -> FiniteOperator {
    FiniteOperator::from_fn(dim, |i, j| {
        if i == j + 1 {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

/// Multiplication by a polynomial, truncated to degree < dim.
pub fn mul_poly_matrix(p: &Poly, dim: usize) -> FiniteOperator {
    FiniteOperator::from_fn(dim, |i, j| if i >= j { p.coeff(i - j) } else { Rat::zero() })
}

/// Multiplication by a truncated series (order >= dim - 1).
pub fn mul_series_matrix(s: &QSeries, dim: usize) -> Result<FiniteOperator> {
    if s.order() + 1 < dim {
        return Err(CoreError::OrderOutOfRange);
    }
    Ok(FiniteOperator::from_fn(dim, |i, j| {
        if i >= j {
            s.coeff(i - j).clone()
        } else {
            Rat::zero()
        }
    }))
}

/// Shifted Euler polynomial A_{n}/x (the constant 1 for n = 0).
fn euler_shifted(n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    euler_poly(n).div_x().expect("Euler polynomials vanish at 0 for n >= 1")
}

fn summation_column(n: usize, p: usize, clear: usize, shifted: bool) -> Poly {
    // (1-x)^clear * sum_m w(m) x^m with
    //   w(m) = m^p C(m+n, n)           (plain; m starts at 0)
    //   w(m) = m^{p+1} C(m+n, n), then shift down one x (shifted)
    let order = clear + n + 4;
    let series = QSeries::from_fn(QQ, order, |m| {
        let mm = if shifted { m + 1 } else { m };
        let power = if shifted { p + 1 } else { p };
        let mut w = rat_pow(&qu(mm), power as i64);
        w *= rat_binomial(&qu(mm + n), n);
        w
    });
    let prod = QSeries::from_poly(&Poly::one_minus_x_pow(clear), order).mul(&series);
    Poly::from_coeffs(prod.coeffs().to_vec())
}

/// Build the matrix for a family at index n. `beta` is required for
/// A, G, H, T (group parameter) and E (shift amount, default 1).
pub fn build(op: OpName, n: usize, beta: Option<&Rat>) -> Result<FiniteOperator> {
    use OpName::*;
    let dim = op.dim(n);
    if dim == 0 {
        return Err(CoreError::BadMatrixRequest(format!(
            "{} requires n >= 1",
            op.token()
        )));
    }
    if op.takes_beta() && beta.is_none() && op != E {
        return Err(CoreError::BadMatrixRequest(format!(
            "{} requires a beta parameter",
            op.token()
        )));
    }
    let m = match op {
        // column p: (1/n!) (1-x)^{n-1-p} * (A_{p+1}/x)
        Ut => {
            let cols: Vec<Poly> = (0..n)
                .map(|p| {
                    Poly::one_minus_x_pow(n - 1 - p)
                        .mul(&euler_shifted(p + 1))
                        .scale(&factorial(n).recip())
                })
                .collect();
            FiniteOperator::from_columns(&cols)?
        }
        // column p: (x-1)_p [x+1]_{n-p-1}
        UtInv => {
            let cols: Vec<Poly> = (0..n)
                .map(|p| {
                    let falling = Poly::linear_product(
                        &(0..p).map(|i| -qi(1) - qu(i)).collect::<Vec<_>>(),
                    );
                    let rising = Poly::linear_product(
                        &(0..n - p - 1).map(|i| qi(1) + qu(i)).collect::<Vec<_>>(),
                    );
                    falling.mul(&rising)
                })
                .collect();
            FiniteOperator::from_columns(&cols)?
        }
        // column p: (1/n!) (1-x)^{n-p} A_p
        U => {
            let cols: Vec<Poly> = (0..=n)
                .map(|p| {
                    Poly::one_minus_x_pow(n - p)
                        .mul(&euler_poly(p))
                        .scale(&factorial(n).recip())
                })
                .collect();
            FiniteOperator::from_columns(&cols)?
        }
        // column p: (x)_p [x+1]_{n-p}
        UInv => {
            let cols: Vec<Poly> = (0..=n)
                .map(|p| {
                    let falling = Poly::falling(p);
                    let rising = Poly::linear_product(
                        &(0..n - p).map(|i| qi(1) + qu(i)).collect::<Vec<_>>(),
                    );
                    falling.mul(&rising)
                })
                .collect();
            FiniteOperator::from_columns(&cols)?
        }
        // column p: (1+x)^{n-1-p} x^p
        Vt => {
            let cols: Vec<Poly> = (0..n)
                .map(|p| Poly::one_plus_x_pow(n - 1 - p).mul(&Poly::monomial(p, Rat::one())))
                .collect();
            FiniteOperator::from_columns(&cols)?
        }
        VtInv => {
            let cols: Vec<Poly> = (0..n)
                .map(|p| Poly::one_minus_x_pow(n - 1 - p).mul(&Poly::monomial(p, Rat::one())))
                .collect();
            FiniteOperator::from_columns(&cols)?
        }
        V => {
            let cols: Vec<Poly> = (0..=n)
                .map(|p| Poly::one_plus_x_pow(n - p).mul(&Poly::monomial(p, Rat::one())))
                .collect();
            FiniteOperator::from_columns(&cols)?
        }
        VInv => {
            let cols: Vec<Poly> = (0..=n)
                .map(|p| Poly::one_minus_x_pow(n - p).mul(&Poly::monomial(p, Rat::one())))
                .collect();
            FiniteOperator::from_columns(&cols)?
        }
        // column p: (1-x)^{2n+1} sum_m m^p C(m+n,n) x^m
        F => {
            let cols: Vec<Poly> = (0..=n)
                .map(|p| {
                    let col = summation_column(n, p, 2 * n + 1, false);
                    debug_assert!(col.degree().map_or(true, |d| d <= n));
                    col
                })
                .collect();
            FiniteOperator::from_columns(&cols)?
        }
        // column p: (n!/(2n)!) (x)_p [x+n+1]_{n-p}
        FInv => {
            let scale = factorial(n) / factorial(2 * n);
            let cols: Vec<Poly> = (0..=n)
                .map(|p| {
                    let rising = Poly::linear_product(
                        &(0..n - p).map(|i| qu(n + 1) + qu(i)).collect::<Vec<_>>(),
                    );
                    Poly::falling(p).mul(&rising).scale(&scale)
                })
                .collect();
            FiniteOperator::from_columns(&cols)?
        }
        // column p: (1-x)^{2n+1} sum_{m>=1} m^{p+1} C(m+n,n) x^{m-1}
        Ft => {
            let cols: Vec<Poly> = (0..n)
                .map(|p| {
                    let full = summation_column(n, p, 2 * n + 1, true);
                    debug_assert!(full.degree().map_or(true, |d| d <= n - 1));
                    full
                })
                .collect();
            FiniteOperator::from_columns(&cols)?
        }
        // column p: (n!/(2n)!) (x-1)_p [x+n+1]_{n-p-1}
        FtInv => {
            let scale = factorial(n) / factorial(2 * n);
            let cols: Vec<Poly> = (0..n)
                .map(|p| {
                    let falling = Poly::linear_product(
                        &(0..p).map(|i| -qi(1) - qu(i)).collect::<Vec<_>>(),
                    );
                    let rising = Poly::linear_product(
                        &(0..n - p - 1).map(|i| qu(n + 1) + qu(i)).collect::<Vec<_>>(),
                    );
                    falling.mul(&rising).scale(&scale)
                })
                .collect();
            FiniteOperator::from_columns(&cols)?
        }
        BF => build(F, n, None)?.mul(&shift_matrix(n + 1, &Rat::one()))?,
        // column p: (n!/(2n)!) (x-1)_p [x+n]_{n-p}
        BFInv => {
            let scale = factorial(n) / factorial(2 * n);
            let cols: Vec<Poly> = (0..=n)
                .map(|p| {
                    let falling = Poly::linear_product(
                        &(0..p).map(|i| -qi(1) - qu(i)).collect::<Vec<_>>(),
                    );
                    let rising = Poly::linear_product(
                        &(0..n - p).map(|i| qu(n) + qu(i)).collect::<Vec<_>>(),
                    );
                    falling.mul(&rising).scale(&scale)
                })
                .collect();
            FiniteOperator::from_columns(&cols)?
        }
        S => build(F, n, None)?.mul(&build(UInv, n, None)?)?,
        SInv => build(U, n, None)?.mul(&build(FInv, n, None)?)?,
        St => build(Ft, n, None)?.mul(&build(UtInv, n, None)?)?,
        StInv => build(Ut, n, None)?.mul(&build(FtInv, n, None)?)?,
        // diagonal (n+p)!/p!
        C => FiniteOperator::diagonal(n + 1, |p| factorial(n + p) / factorial(p)),
        // diagonal (n+p+1)!/(p+1)!
        Ct => FiniteOperator::diagonal(n, |p| factorial(n + p + 1) / factorial(p + 1)),
        // diagonal p+1
        Dt => FiniteOperator::diagonal(n, |p| qu(p + 1)),
        J => mirror_matrix(n + 1),
        Jt => mirror_matrix(n),
        E => {
            let one = Rat::one();
            let c = beta.unwrap_or(&one);
            shift_matrix(n + 1, c)
        }
        X => {
            let v = build(V, n, None)?;
            let vinv = build(VInv, n, None)?;
            vinv.mul(&raise_matrix(n + 1).transpose())?.mul(&v)?
        }
        A => {
            let nb = qu(n) * beta.unwrap();
            build(Ut, n, None)?
                .mul(&shift_matrix(n, &nb))?
                .mul(&build(UtInv, n, None)?)?
        }
        G => {
            let nb = qu(n) * beta.unwrap();
            build(U, n, None)?
                .mul(&shift_matrix(n + 1, &nb))?
                .mul(&build(UInv, n, None)?)?
        }
        H => {
            let nb = qu(n) * beta.unwrap();
            build(F, n, None)?
                .mul(&shift_matrix(n + 1, &nb))?
                .mul(&build(FInv, n, None)?)?
        }
        T => {
            let nb = qu(n) * beta.unwrap();
            build(Ft, n, None)?
                .mul(&shift_matrix(n, &nb))?
                .mul(&build(FtInv, n, None)?)?
        }
    };
    Ok(m)
}

/// t_m(phi | beta, x) = sum_j C(phi, j) C(beta, m-j) x^j: the row
/// polynomial of the product of two binomial series.
pub fn binomial_product_poly(phi: &Rat, beta: &Rat, m: usize) -> Poly {
    Poly::from_coeffs(
        (0..=m)
            .map(|j| rat_binomial(phi, j) * rat_binomial(beta, m - j))
            .collect(),
    )
}

/// Closed-form column p for the families with an explicit entry
/// formula (S, Sinv, G, H, T). `beta` is required for G, H, T.
pub fn closed_form_column(op: OpName, n: usize, p: usize, beta: Option<&Rat>) -> Result<Poly> {
    let dim = op.dim(n);
    if p >= dim {
        return Err(CoreError::BadMatrixRequest(format!(
            "column {p} out of range for {} at n = {n}",
            op.token()
        )));
    }
    match op {
        // ((n+p)! (n-p)!/n!) sum_m C(n, m-p) C(n, n-m) x^m
        OpName::S => {
            let scale = factorial(n + p) * factorial(n - p) / factorial(n);
            Ok(Poly::from_coeffs(
                (0..=n)
                    .map(|m| {
                        if m < p {
                            Rat::zero()
                        } else {
                            rat_binomial(&qu(n), m - p) * rat_binomial(&qu(n), n - m) * &scale
                        }
                    })
                    .collect(),
            ))
        }
        // (p! (n-p)!/(2n)!) sum_m C(-n, m-p) C(2n, n-m) x^m
        OpName::SInv => {
            let scale = factorial(p) * factorial(n - p) / factorial(2 * n);
            Ok(Poly::from_coeffs(
                (0..=n)
                    .map(|m| {
                        if m < p {
                            Rat::zero()
                        } else {
                            rat_binomial(&-qu(n), m - p)
                                * rat_binomial(&qu(2 * n), n - m)
                                * &scale
                        }
                    })
                    .collect(),
            ))
        }
        // sum_m C(-n beta + p, m) C(n beta + n - p, n - m) x^m
        OpName::G => {
            let nb = qu(n) * beta.ok_or_else(|| missing_beta(op))?;
            Ok(Poly::from_coeffs(
                (0..=n)
                    .map(|m| {
                        rat_binomial(&(-&nb + qu(p)), m)
                            * rat_binomial(&(&nb + qu(n) - qu(p)), n - m)
                    })
                    .collect(),
            ))
        }
        // sum_{m=p}^{n} C(n-p, n-m) C(n+m, m)^{-1} (1-x)^{n-m}
        //              t_m(-n beta + n + m | n beta, x)
        OpName::H => {
            let nb = qu(n) * beta.ok_or_else(|| missing_beta(op))?;
            let mut acc = Poly::zero();
            for m in p..=n {
                let w = rat_binomial(&qu(n - p), n - m)
                    / rat_binomial(&qu(n + m), m);
                if w.is_zero() {
                    continue;
                }
                let t = binomial_product_poly(&(-&nb + qu(n) + qu(m)), &nb, m);
                acc = acc.add(&Poly::one_minus_x_pow(n - m).mul(&t).scale(&w));
            }
            Ok(acc)
        }
        // same shape one size down, with the (p+1, m+1) weights
        OpName::T => {
            let nb = qu(n) * beta.ok_or_else(|| missing_beta(op))?;
            let mut acc = Poly::zero();
            for m in p..n {
                let w = rat_binomial(&qu(n - 1 - p), n - 1 - m)
                    / rat_binomial(&qu(n + 1 + m), m);
                if w.is_zero() {
                    continue;
                }
                let t = binomial_product_poly(&(-&nb + qu(n) + qu(m) + qi(1)), &nb, m);
                acc = acc.add(&Poly::one_minus_x_pow(n - 1 - m).mul(&t).scale(&w));
            }
            Ok(acc)
        }
        _ => Err(CoreError::BadMatrixRequest(format!(
            "no closed-form column for {}",
            op.token()
        ))),
    }
}

fn missing_beta(op: OpName) -> CoreError {
    CoreError::BadMatrixRequest(format!("{} requires a beta parameter", op.token()))
}

/// Conjugate the group family (A or G) by the (1-x)^{-m} diagonal
/// shear and truncate: the result equals the same family at index
/// n - m with parameter rescaled by n/(n-m).
pub fn reduce_conjugation(op: OpName, n: usize, m: usize, beta: &Rat) -> Result<FiniteOperator> {
    if m >= n {
        return Err(CoreError::BadMatrixRequest(
            "reduction step m must satisfy 0 <= m < n".into(),
        ));
    }
    let dim = op.dim(n);
    let target = op.dim(n - m);
    let order = dim + 1;
    let inv_clear = QSeries::from_poly(&Poly::one_minus_x_pow(m), order).inverse()?;
    let left = mul_series_matrix(&inv_clear, dim)?;
    let right = mul_poly_matrix(&Poly::one_minus_x_pow(m), dim);
    match op {
        OpName::A | OpName::G => {
            let mid = build(op, n, Some(beta))?;
            let prod = left.mul(&mid)?.mul(&right)?;
            Ok(prod.top_left(target))
        }
        _ => Err(CoreError::BadMatrixRequest(
            "reduction is defined for the A and G families".into(),
        )),
    }
}

/// The index-shift relations between the two Euler-type families:
/// the tilde matrix is both the inner block of the plain matrix
/// conjugated by x-shifts, and a truncation of the plain matrix
/// composed with the unit shift. Returns true when both hold at n.
pub fn shift_relations_check(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(CoreError::BadMatrixRequest("n >= 1 required".into()));
    }
    let ut = build(OpName::Ut, n, None)?;
    let u = build(OpName::U, n, None)?;
    // (x,x)^T U_n (x,x): entry (i, j) -> U[i+1][j+1]
    for i in 0..n {
        for j in 0..n {
            if ut.entry(i, j) != u.entry(i + 1, j + 1) {
                return Ok(false);
            }
        }
    }
    // U_n E (x,x) truncated to the leading n rows/columns
    let ue = u.mul(&shift_matrix(n + 1, &Rat::one()))?;
    for i in 0..n {
        for j in 0..n {
            if ut.entry(i, j) != ue.entry(i, j + 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
