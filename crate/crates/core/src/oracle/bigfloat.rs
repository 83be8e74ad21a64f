use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exact::{ln_abs_bigint, rational_to_f64, ExactRational};

/// Binary fixed-point number `mantissa·2^(−frac_bits)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BigFloat {
    pub mantissa: BigInt,
    pub frac_bits: u64,
}

/// Nearest integer to `a/b`, ties away from zero; `b > 0`.
pub(crate) fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (r << 1u32) >= *b {
        q + 1
    } else {
        q
    }
}

/// `m·2^(−shift)` rounded to nearest.
pub(crate) fn shr_round(m: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    let half = BigInt::from(1) << (shift - 1);
    (m + half) >> shift
}

impl BigFloat {
    pub fn new(mantissa: BigInt, frac_bits: u64) -> Self {
        BigFloat {
            mantissa,
            frac_bits,
        }
    }

    pub fn zero(frac_bits: u64) -> Self {
        BigFloat::new(BigInt::zero(), frac_bits)
    }

    /// Nearest fixed-point value to `q`.
    pub fn from_rational(q: &ExactRational, frac_bits: u64) -> Self {
        BigFloat::new(div_round(&(q.numer() << frac_bits), q.denom()), frac_bits)
    }

    /// The exact rational this value denotes.
    pub fn to_rational(&self) -> ExactRational {
        ExactRational::new(self.mantissa.clone(), BigInt::from(1) << self.frac_bits)
    }

    /// Round (or pad) to `bits` fractional bits.
    pub fn round_to(&self, bits: u64) -> BigFloat {
        if bits >= self.frac_bits {
            BigFloat::new(&self.mantissa << (bits - self.frac_bits), bits)
        } else {
            BigFloat::new(shr_round(&self.mantissa, self.frac_bits - bits), bits)
        }
    }

    /// `self − other` at the finer of the two precisions.
    pub fn sub(&self, other: &BigFloat) -> BigFloat {
        let bits = self.frac_bits.max(other.frac_bits);
        BigFloat::new(
            self.round_to(bits).mantissa - other.round_to(bits).mantissa,
            bits,
        )
    }

    pub fn add(&self, other: &BigFloat) -> BigFloat {
        let bits = self.frac_bits.max(other.frac_bits);
        BigFloat::new(
            self.round_to(bits).mantissa + other.round_to(bits).mantissa,
            bits,
        )
    }

    /// `|self − other| ≤ 2^log2_tol`.
    pub fn agrees_with(&self, other: &BigFloat, log2_tol: i64) -> bool {
        let d = self.sub(other);
        // |m|·2^(−f) ≤ 2^t  ⇔  |m| ≤ 2^(t + f)
        let e = log2_tol + d.frac_bits as i64;
        if e < 0 {
            return d.mantissa.is_zero();
        }
        d.mantissa.abs() <= BigInt::from(1) << (e as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// `ln|self|`; `−inf` at zero.
    pub fn ln_abs(&self) -> f64 {
        if self.mantissa.is_zero() {
            return f64::NEG_INFINITY;
        }
        ln_abs_bigint(&self.mantissa) - self.frac_bits as f64 * std::f64::consts::LN_2
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.to_rational())
    }

    /// Truncated decimal expansion with `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scaled = (self.mantissa.abs() * BigInt::from(10).pow(digits as u32)) >> self.frac_bits;
        let s = format!("{:0>width$}", scaled.to_string(), width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.frac_bits as f64) * std::f64::consts::LOG10_2) as usize;
        f.write_str(&self.to_decimal(digits.max(1)))
    }
}

/// An oracle result: `value` is within `2^(1 − precision_bits)` of the true
/// constant. Values are stored with exactly `precision_bits` fractional bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleValue {
    pub precision_bits: u64,
    pub value: BigFloat,
}

impl OracleValue {
    /// Log2 of the documented absolute error bound.
    pub fn error_bound_log2(&self) -> i64 {
        1 - self.precision_bits as i64
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}
