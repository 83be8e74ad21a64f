//! Exact arithmetic: big rationals, combinatorial tables, dense polynomials
//! and forms `A(x) + B(x)·(c + ln x)`.

mod combinatorics;
mod loglinear;
mod poly;

pub use combinatorics::{
    binomial, factorial, harmonic, harmonic_table, lcm_table, lcm_upto, BinomialRow,
};
pub use loglinear::{rodrigues_step, ConstantTag, LogLinearForm};
pub use poly::Poly;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = num_rational::BigRational;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational from an integer.
pub fn rat(n: impl Into<BigInt>) -> ExactRational {
    ExactRational::from_integer(n.into())
}

/// Exact rational `num/den`. Panics on a zero denominator.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRational {
    ExactRational::new(num.into(), den.into())
}

/// Parse `"a/b"` or `"a"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<ExactRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(ExactRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(ExactRational::from_integer),
    }
}

/// Fraction string `"a/b"`, or `"a"` when the denominator is one.
pub fn fraction_string(q: &ExactRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Natural logarithm of `|n|` for an arbitrarily large integer, to f64 accuracy.
pub fn ln_abs_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of `|q|`, to f64 accuracy, for huge or tiny rationals.
pub fn ln_abs_rational(q: &ExactRational) -> f64 {
    ln_abs_bigint(q.numer()) - ln_abs_bigint(q.denom())
}

/// Nearest f64 to `q` (saturates to ±inf, flushes to zero).
pub fn rational_to_f64(q: &ExactRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let l = ln_abs_rational(q);
    if l > 709.0 {
        return if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    if l < -740.0 {
        return 0.0;
    }
    // Scale to keep 64 significant bits in the integer quotient.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = 64 - (nb - db);
    let scaled = if shift >= 0 {
        (q.numer() << shift as u64) / q.denom()
    } else {
        q.numer() / (q.denom() << (-shift) as u64)
    };
    let half = (shift / 2) as i32;
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-half) * 2f64.powi(half - shift as i32)
}
