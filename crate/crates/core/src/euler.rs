//! Approximants of `γ + ln x`.
//!
//! All four constructions share the coefficient skeleton
//! `b_k = C(n,k)²·C(n+k,k)^p / k!` and differ in `p` and in how the numerator
//! is assembled from harmonic numbers:
//!
//! * [`laguerre1_type_i`]: `p = 0`, type I multiple Laguerre functions;
//! * [`euler_mixed`]: `p = 1`, built from its double-sum closed form;
//! * [`euler_p_family`]: general `p`, numerator from the residues at the
//!   double poles `t = k` of the contour integrand, whose logarithmic
//!   derivative contributes `p(H_{n+k} − H_k) − 3H_k + 2H_{n−k}`;
//! * [`pilehrood_baseline`]: the older scalar construction used for comparison.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::approximant::{ApproximantPair, Family};
use crate::error::{Error, Result};
use crate::exact::{factorial, harmonic_table, lcm_upto, rat, BinomialRow, ExactRational, Poly};

/// `[C(n+k, k)]_{k=0..=n}`.
fn central_column(n: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    out.push(c.clone());
    for k in 1..=n {
        c = c * (n + k) / k;
        out.push(c.clone());
    }
    out
}

/// `[1/k!]_{k=0..=n}`.
fn inverse_factorials(n: u64) -> Vec<ExactRational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut f = BigInt::one();
    out.push(ExactRational::one());
    for k in 1..=n {
        f *= k;
        out.push(ExactRational::new(BigInt::one(), f.clone()));
    }
    out
}

/// `b_k = C(n,k)²·C(n+k,k)^p / k!` for `k = 0..=n`.
fn skeleton(n: u64, p: u32) -> Vec<ExactRational> {
    let row = BinomialRow::new(n);
    let col = central_column(n);
    let inv = inverse_factorials(n);
    (0..=n as usize)
        .map(|k| {
            let c = &row.as_slice()[k];
            ExactRational::from_integer(c * c * col[k].pow(p)) * &inv[k]
        })
        .collect()
}

/// `L_n^(I) = L_{n;1} + L_{n;2}·(γ + ln x)` with
/// `L_{n;1} = Σ C(n,k)²(−3H_k + 2H_{n−k}) x^k/k!` and `L_{n;2} = Σ C(n,k)² x^k/k!`.
pub fn laguerre1_type_i(n: u64) -> ApproximantPair {
    let h = harmonic_table(n as usize);
    let b = skeleton(n, 0);
    let numer = (0..=n as usize)
        .map(|k| &b[k] * (rat(-3) * &h[k] + rat(2) * &h[n as usize - k]))
        .collect();
    ApproximantPair {
        family: Family::LaguerreTypeI,
        index_n: n,
        numerator: Poly::from_coeffs(numer),
        denominator: Poly::from_coeffs(b),
    }
}

/// `F_n^(I)` from its double-sum closed form:
///
/// `F_{n;1} = Σ_k C(n,k)²C(n+k,k)(−3H_k + 2H_{n−k}) x^k/k! − Σ_k C(n,k)² x^k/k! · Σ_{l=1}^n C(n+k, n−l)(−1)^l/l`,
/// `F_{n;2} = Σ_k C(n,k)²C(n+k,k) x^k/k!`.
pub fn euler_mixed(n: u64) -> ApproximantPair {
    let nu = n as usize;
    let h = harmonic_table(nu);
    let row = BinomialRow::new(n);
    let col = central_column(n);
    let inv = inverse_factorials(n);
    let lcm = lcm_upto(n);
    // lcm(1..n)/l, so the inner alternating sum stays in the integers.
    let cofactors: Vec<BigInt> = (1..=n).map(|l| &lcm / l).collect();

    let mut numer = Vec::with_capacity(nu + 1);
    let mut denom = Vec::with_capacity(nu + 1);
    for k in 0..=nu {
        let c2 = &row.as_slice()[k] * &row.as_slice()[k];
        let base = ExactRational::from_integer(&c2 * &col[k]) * &inv[k];
        let harm = rat(-3) * &h[k] + rat(2) * &h[nu - k];

        // Σ_{l=1}^{n} C(n+k, n−l)(−1)^l·lcm/l, walking j = n−l downward from n−1.
        let m = n + k as u64;
        let mut binom_row = Vec::with_capacity(nu);
        let mut c = BigInt::one();
        for j in 0..nu as u64 {
            binom_row.push(c.clone());
            c = c * (m - j) / (j + 1);
        }
        let mut inner = BigInt::zero();
        for l in 1..=nu {
            let term = &binom_row[nu - l] * &cofactors[l - 1];
            if l % 2 == 1 {
                inner -= term;
            } else {
                inner += term;
            }
        }
        let inner = ExactRational::new(inner, lcm.clone());

        let low = ExactRational::from_integer(c2) * &inv[k];
        numer.push(&base * harm - low * inner);
        denom.push(base);
    }
    ApproximantPair {
        family: Family::EulerMixed,
        index_n: n,
        numerator: Poly::from_coeffs(numer),
        denominator: Poly::from_coeffs(denom),
    }
}

/// The `p`-generalised family: denominator `Σ_k b_k x^k` with
/// `b_k = C(n,k)²C(n+k,k)^p/k!` and numerator
/// `Σ_k b_k [p(H_{n+k} − H_k) − 3H_k + 2H_{n−k}] x^k`.
pub fn euler_p_family(n: u64, p: u32) -> ApproximantPair {
    let nu = n as usize;
    let h = harmonic_table(2 * nu);
    let b = skeleton(n, p);
    let pr = rat(p);
    let numer = (0..=nu)
        .map(|k| {
            let bracket = &pr * (&h[nu + k] - &h[k]) - rat(3) * &h[k] + rat(2) * &h[nu - k];
            &b[k] * bracket
        })
        .collect();
    ApproximantPair {
        family: Family::EulerP(p),
        index_n: n,
        numerator: Poly::from_coeffs(numer),
        denominator: Poly::from_coeffs(b),
    }
}

/// `Q = Σ C(n,k)^a k!` and `P = Σ C(n,k)^a k!(aH_{n−k} − (a−1)H_k)`; `P/Q → γ`.
///
/// `Q` is an integer; `P` in general only becomes one after multiplying by
/// `lcm(1..n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PilehroodBaseline {
    pub p: ExactRational,
    pub q: ExactRational,
}

pub fn pilehrood_baseline(n: u64, a: u32) -> Result<PilehroodBaseline> {
    if a == 0 {
        return Err(Error::InvalidInput(
            "pilehrood parameter a must be ≥ 1".into(),
        ));
    }
    let nu = n as usize;
    let h = harmonic_table(nu);
    let row = BinomialRow::new(n);
    let mut q = ExactRational::zero();
    let mut p = ExactRational::zero();
    let mut kf = BigInt::one();
    for k in 0..=nu {
        if k > 0 {
            kf *= k;
        }
        let w = ExactRational::from_integer(row.as_slice()[k].pow(a) * &kf);
        p += &w * (rat(a) * &h[nu - k] - rat(a - 1) * &h[k]);
        q += w;
    }
    Ok(PilehroodBaseline { p, q })
}

/// Pilehrood approximant as constant polynomials `(−P, Q)`.
pub fn pilehrood_pair(n: u64, a: u32) -> Result<ApproximantPair> {
    let PilehroodBaseline { p, q } = pilehrood_baseline(n, a)?;
    Ok(ApproximantPair {
        family: Family::Pilehrood(a),
        index_n: n,
        numerator: Poly::constant(-p),
        denominator: Poly::constant(q),
    })
}

/// Outcome of [`diophantine_scaler_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalerReport {
    /// `n!·F₂ ∈ Z[x]`.
    pub denominator_scaler_ok: bool,
    /// `n!·lcm(1..n)·F₁ ∈ Z[x]`.
    pub numerator_scaler_ok: bool,
    /// Smallest positive `M` with `M·n!·F₁ ∈ Z[x]`.
    #[serde(serialize_with = "crate::analysis::serialize_display")]
    pub minimal_numerator_multiplier: BigInt,
}

/// Check the integrality claims for an Euler-type pair.
pub fn diophantine_scaler_check(pair: &ApproximantPair) -> Result<ScalerReport> {
    match pair.family {
        Family::LaguerreTypeI | Family::EulerMixed | Family::EulerP(_) => {}
        other => {
            return Err(Error::InvalidInput(format!(
                "scaler check applies to laguerre1/euler/euler-p, not {other}"
            )))
        }
    }
    let n = pair.index_n;
    let nf = rat(factorial(n));
    let scaled_num = pair.numerator.scale(&nf);
    let minimal = scaled_num.denominator_lcm();
    Ok(ScalerReport {
        denominator_scaler_ok: pair.denominator.scale(&nf).is_integral(),
        numerator_scaler_ok: scaled_num.scale(&rat(lcm_upto(n))).is_integral(),
        minimal_numerator_multiplier: minimal,
    })
}
