//! High-precision reference values for γ, `ln x`, `E₁(x)` and `e^x·E₁(x)`,
//! and measurement of linear forms `Q·c − P` against them.
//!
//! Every public oracle returns an [`OracleValue`] whose absolute error is at
//! most `2^(1−p)`. Internally each computes with `p + 64` fractional bits
//! (plus series-specific guards) and rounds once.

mod bigfloat;
mod series;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use bigfloat::{BigFloat, OracleValue};
pub use series::cancellation_guard_bits;

use crate::error::{Error, Result};
use crate::exact::{fraction_string, ln_abs_rational, rational_to_f64, ExactRational};

/// Largest working precision any oracle will attempt.
pub const MAX_WORKING_BITS: u64 = 1 << 20;

const GUARD: u64 = 64;

/// γ to 50 decimal places.
pub const GAMMA_50_DIGITS: &str = "0.57721566490153286060651209008240243104215933593992";

fn check_precision(p: u64) -> Result<u64> {
    if p < 64 {
        return Err(Error::InvalidInput(format!(
            "precision must be ≥ 64 bits, got {p}"
        )));
    }
    let w = p + GUARD;
    if w > MAX_WORKING_BITS {
        return Err(Error::PrecisionInfeasible {
            needed: w,
            cap: MAX_WORKING_BITS,
        });
    }
    Ok(w)
}

fn check_positive(x: &ExactRational) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "argument must be positive, got {}",
            fraction_string(x)
        )))
    }
}

fn finish(mantissa: BigInt, w: u64, p: u64) -> OracleValue {
    OracleValue {
        precision_bits: p,
        value: BigFloat::new(mantissa, w).round_to(p),
    }
}

/// Which of the two independent γ algorithms to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaMethod {
    /// Alternating exponential-integral series at a large integer argument.
    Series,
    /// Brent–McMillan Bessel-function sums.
    BrentMcMillan,
}

pub fn gamma_ref(precision_bits: u64) -> Result<OracleValue> {
    gamma_ref_with(precision_bits, GammaMethod::Series)
}

pub fn gamma_ref_with(precision_bits: u64, method: GammaMethod) -> Result<OracleValue> {
    let w = check_precision(precision_bits)?;
    let m = match method {
        GammaMethod::Series => series::gamma_series(w),
        GammaMethod::BrentMcMillan => series::gamma_brent_mcmillan(w),
    };
    Ok(finish(m, w, precision_bits))
}

pub fn ln_ref(x: &ExactRational, precision_bits: u64) -> Result<OracleValue> {
    check_positive(x)?;
    let w = check_precision(precision_bits)?;
    Ok(finish(series::ln_rational(x, w), w, precision_bits))
}

pub fn exp_ref(x: &ExactRational, precision_bits: u64) -> Result<OracleValue> {
    let w = check_precision(precision_bits)?;
    Ok(finish(series::exp_rational(x, w), w, precision_bits))
}

/// `Σ_{k≥1} (−1)^{k+1} x^k/(k·k!)`, equal to `γ + ln x + E₁(x)`.
pub fn ein_ref(x: &ExactRational, precision_bits: u64) -> Result<OracleValue> {
    let w = check_precision(precision_bits)?;
    Ok(finish(series::alternating_ein(x, w), w, precision_bits))
}

/// `true` when `e^{−x}/x < 2^(−p−2)`, so `E₁(x)` rounds to zero at `p` bits.
fn e1_negligible(x: &ExactRational, p: u64) -> bool {
    let xf = rational_to_f64(x);
    -xf - xf.ln() < -((p + 2) as f64) * std::f64::consts::LN_2
}

/// `E₁(x) = Σ_{k≥1} (−1)^{k+1} x^k/(k·k!) − γ − ln x`, or `0` once the tail
/// bound `e^{−x}/x` is below the requested precision.
pub fn e1_ref(x: &ExactRational, precision_bits: u64) -> Result<OracleValue> {
    check_positive(x)?;
    let w = check_precision(precision_bits)?;
    if e1_negligible(x, precision_bits) {
        return Ok(finish(BigInt::zero(), w, precision_bits));
    }
    Ok(finish(e1_series(x, w), w, precision_bits))
}

fn e1_series(x: &ExactRational, w: u64) -> BigInt {
    let wg = w + 4;
    let m = series::alternating_ein(x, wg) - series::gamma_series(wg) - series::ln_rational(x, wg);
    m >> 4u32
}

/// `E₁(x)` from the continued fraction for `e^x·E₁(x)`, independent of the
/// series behind [`e1_ref`] and of γ.
pub fn e1_continued_fraction(x: &ExactRational, precision_bits: u64) -> Result<OracleValue> {
    check_positive(x)?;
    let w = check_precision(precision_bits)?;
    let g = series::exp_e1_continued_fraction(x, w + 8);
    let e = series::exp_rational(&-x, w + 8);
    let m = (g * e) >> (w + 16);
    Ok(finish(m, w, precision_bits))
}

/// `e^x·E₁(x)`; at `x = 1` this is the Gompertz constant δ.
pub fn exp_e1_ref(x: &ExactRational, precision_bits: u64) -> Result<OracleValue> {
    check_positive(x)?;
    // E₁(x) ≈ e^{−x}/x, so it needs x·log₂e more absolute bits than the product.
    let extra = (rational_to_f64(x) * std::f64::consts::LOG2_E).ceil() as u64 + 8;
    let w = check_precision(precision_bits + extra)?;
    let wg = w + 8;
    let m = (e1_series(x, wg) * series::exp_rational(x, wg)) >> (wg + 8 + extra);
    Ok(finish(m, w - extra, precision_bits))
}

/// A constant the approximants target.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConstantId {
    /// `γ + ln x`.
    GammaPlusLn(ExactRational),
    /// `e^x·E₁(x)`.
    ExpE1(ExactRational),
    /// γ, the same as `GammaPlusLn(1)`.
    Gamma,
    /// δ, the same as `ExpE1(1)`.
    Delta,
}

impl ConstantId {
    /// Collapse the named aliases onto their parametrised forms.
    pub fn canonical(&self) -> ConstantId {
        let one = ExactRational::one();
        match self {
            ConstantId::Gamma => ConstantId::GammaPlusLn(one),
            ConstantId::Delta => ConstantId::ExpE1(one),
            c => c.clone(),
        }
    }

    fn compute(&self, precision_bits: u64) -> Result<OracleValue> {
        match self.canonical() {
            ConstantId::GammaPlusLn(x) => {
                check_positive(&x)?;
                let w = check_precision(precision_bits)?;
                let m = series::gamma_series(w) + series::ln_rational(&x, w);
                Ok(finish(m, w, precision_bits))
            }
            ConstantId::ExpE1(x) => exp_e1_ref(&x, precision_bits),
            _ => unreachable!("canonical form has a parameter"),
        }
    }

    /// Cached oracle value at `precision_bits`.
    pub fn value(&self, precision_bits: u64) -> Result<OracleValue> {
        type Cache = Mutex<HashMap<(ConstantId, u64), OracleValue>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let key = (self.canonical(), precision_bits);
        if let Some(v) = cache.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        // Computed outside the lock; a racing duplicate is harmless.
        let v = self.compute(precision_bits)?;
        cache.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }
}

impl fmt::Display for ConstantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantId::GammaPlusLn(x) => write!(f, "gamma+ln({})", fraction_string(x)),
            ConstantId::ExpE1(x) => write!(f, "exp({0})*E1({0})", fraction_string(x)),
            ConstantId::Gamma => f.write_str("gamma"),
            ConstantId::Delta => f.write_str("delta"),
        }
    }
}

/// How well `P/Q` approximates a constant `c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearFormQuality {
    /// `|Q·c − P|`, saturating to infinity or zero outside the f64 range.
    pub abs_error: f64,
    /// `ln|Q·c − P|`.
    pub log_error: f64,
    /// `ln|c − P/Q|`.
    pub log_ratio_error: f64,
    /// `−ln|Q·c − P| / ln Q`; undefined when `Q ≤ 1`.
    pub r_measured: Option<f64>,
    /// Oracle precision that finally resolved the error.
    pub precision_bits: u64,
}

/// Significant bits demanded of `c − P/Q` before the measurement is accepted.
pub const SIGNIFICANT_BITS: u32 = 16;

/// Measure `Q·c − P`, doubling the oracle precision (from `precision_bits`)
/// until `c − P/Q` is known to [`SIGNIFICANT_BITS`] bits.
pub fn linear_form_quality(
    p: &ExactRational,
    q: &ExactRational,
    c: &ConstantId,
    precision_bits: u64,
) -> Result<LinearFormQuality> {
    linear_form_quality_capped(p, q, c, precision_bits, MAX_WORKING_BITS)
}

pub fn linear_form_quality_capped(
    p: &ExactRational,
    q: &ExactRational,
    c: &ConstantId,
    precision_bits: u64,
    cap_bits: u64,
) -> Result<LinearFormQuality> {
    if !q.is_positive() {
        return Err(Error::InvalidInput("Q must be positive".into()));
    }
    let ratio = p / q;
    let mut bits = precision_bits.max(64);
    loop {
        if bits > cap_bits {
            return Err(Error::PrecisionInfeasible {
                needed: bits,
                cap: cap_bits,
            });
        }
        let cv = c.value(bits)?;
        let d = cv.value.sub(&BigFloat::from_rational(&ratio, bits));
        // oracle error ≤ 2 ulps, rounding of P/Q ≤ 1/2 ulp
        if d.mantissa.abs() >= BigInt::from(4) << SIGNIFICANT_BITS {
            let log_ratio_error = d.ln_abs();
            let ln_q = ln_abs_rational(q);
            let log_error = ln_q + log_ratio_error;
            let r_measured = (*q > ExactRational::one()).then(|| -log_error / ln_q);
            return Ok(LinearFormQuality {
                abs_error: log_error.exp(),
                log_error,
                log_ratio_error,
                r_measured,
                precision_bits: bits,
            });
        }
        bits *= 2;
    }
}
