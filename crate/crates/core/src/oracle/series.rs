//! Fixed-point kernels. Every function here takes a working precision `w`
//! (fractional bits) and returns a mantissa `M` with `|M·2^(−w) − value|`
//! bounded by a small multiple of `2^(−w)`; the multiple is stated per
//! function. Callers add guard bits and round once at the end.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bigfloat::div_round;
use crate::exact::ExactRational;

const LOG2_E: f64 = std::f64::consts::LOG2_E;

fn one(w: u64) -> BigInt {
    BigInt::one() << w
}

/// `atanh(p/q)` for `0 ≤ p/q ≤ 1/3`. Error below `T + 1` ulps for `T` terms.
pub(crate) fn atanh_ratio(p: &BigInt, q: &BigInt, w: u64) -> BigInt {
    let q2 = q * q;
    let p2 = p * p;
    let mut pw = div_round(&(p << w), q);
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    while !pw.is_zero() {
        sum += &pw / k;
        pw = div_round(&(pw * &p2), &q2);
        k += 2;
    }
    sum
}

/// `ln 2 = 2·atanh(1/3)`.
pub(crate) fn ln2_atanh(w: u64) -> BigInt {
    let g = 8 + (w as f64).log2().ceil() as u64;
    (atanh_ratio(&BigInt::one(), &BigInt::from(3), w + g) << 1u32) >> g
}

/// `ln 2 = Σ_{k≥1} 1/(k·2^k)`, independent of [`ln2_atanh`].
pub(crate) fn ln2_series(w: u64) -> BigInt {
    let g = 8 + (w as f64).log2().ceil() as u64;
    let wg = w + g;
    let mut sum = BigInt::zero();
    for k in 1..=wg {
        sum += (one(wg) >> k) / k;
    }
    sum >> g
}

/// `ln N` for a positive integer via `N = 2^e·y`, `y ∈ [3/4, 3/2]`,
/// `ln y = 2·atanh((y−1)/(y+1))`. Error within 2 ulps.
pub(crate) fn ln_int(n: &BigInt, w: u64) -> BigInt {
    assert!(n.is_positive(), "ln of a non-positive integer");
    let mut e = n.bits() - 1;
    let mut base = BigInt::one() << e;
    if n * 2 > &base * 3 {
        e += 1;
        base <<= 1u32;
    }
    let g = 16 + 64 - e.leading_zeros() as u64;
    let wg = w + g;
    let num = n - &base;
    let den = n + &base;
    let t = if num.is_negative() {
        -atanh_ratio(&-num, &den, wg)
    } else {
        atanh_ratio(&num, &den, wg)
    };
    let total = (t << 1u32) + ln2_atanh(wg) * e;
    div_round(&total, &one(g))
}

/// `ln x` for positive rational `x`.
pub(crate) fn ln_rational(x: &ExactRational, w: u64) -> BigInt {
    let wg = w + 4;
    (ln_int(x.numer(), wg) - ln_int(x.denom(), wg)) >> 4u32
}

/// `e^x` for rational `x`. Direct Taylor series; positive `x` needs
/// `x·log₂e` guard bits, which are added here. Error within 2 ulps.
pub(crate) fn exp_rational(x: &ExactRational, w: u64) -> BigInt {
    if x.is_negative() {
        let pos = exp_rational(&-x, w + 8);
        return div_round(&(BigInt::one() << (2 * w + 8)), &pos);
    }
    let xf = crate::exact::rational_to_f64(x);
    let g = 32 + (xf * LOG2_E).ceil() as u64;
    let wg = w + g;
    let (a, b) = (x.numer(), x.denom());
    let mut t = one(wg);
    let mut sum = t.clone();
    let mut k = 1u64;
    loop {
        t = (t * a) / (b * k);
        if t.is_zero() && k as f64 > xf {
            break;
        }
        sum += &t;
        k += 1;
    }
    div_round(&sum, &one(g))
}

/// Guard bits for the alternating series at argument `x`: the largest term
/// is about `e^x`, so `⌈1.5·x·log₂e⌉` bits are lost to cancellation.
pub fn cancellation_guard_bits(x: f64) -> u64 {
    64 + (1.5 * x * LOG2_E).ceil() as u64
}

/// `Σ_{k≥1} (−1)^{k+1} x^k/(k·k!)` with its own cancellation guard.
/// Error within 2 ulps.
pub(crate) fn alternating_ein(x: &ExactRational, w: u64) -> BigInt {
    let xf = crate::exact::rational_to_f64(x);
    let g = cancellation_guard_bits(xf);
    let wg = w + g;
    let (a, b) = (x.numer(), x.denom());
    let mut t = one(wg);
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    loop {
        t = (t * a) / (b * k);
        if t.is_zero() && k as f64 > xf {
            break;
        }
        let term = &t / k;
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        k += 1;
    }
    div_round(&sum, &one(g))
}

/// γ from `Σ_{k≥1} (−1)^{k+1} N^k/(k·k!) − ln N`, dropping `E₁(N) < e^{−N}/N`.
/// `N` is the smallest integer with `e^{−N}/N < 2^(−w−8)`.
pub(crate) fn gamma_series(w: u64) -> BigInt {
    let mut n = ((w + 8) as f64 * std::f64::consts::LN_2).floor().max(1.0) as u64;
    while -(n as f64) - (n as f64).ln() >= -((w + 8) as f64) * std::f64::consts::LN_2 {
        n += 1;
    }
    let nq = ExactRational::from_integer(BigInt::from(n));
    let wg = w + 4;
    (alternating_ein(&nq, wg) - ln_int(&BigInt::from(n), wg)) >> 4u32
}

/// γ by Brent–McMillan: with `B_k = (m^k/k!)²` and `A_k = B_k·H_k`,
/// `γ = ΣA_k/ΣB_k − ln m + O(e^{−4m})`, `m = 2^j`. Uses [`ln2_series`].
pub(crate) fn gamma_brent_mcmillan(w: u64) -> BigInt {
    let need = ((w + 12) as f64 * std::f64::consts::LN_2 / 4.0)
        .ceil()
        .max(1.0);
    let j = need.log2().ceil() as u64;
    let m = 1u64 << j;
    let m2 = BigInt::from(m) * m;
    let g = 32 + (w as f64).log2().ceil() as u64;
    let wg = w + g;
    let mut b = one(wg);
    let mut a = BigInt::zero();
    let mut sum_b = b.clone();
    let mut sum_a = BigInt::zero();
    let mut k = 1u64;
    loop {
        let kk = BigInt::from(k);
        b = (b * &m2) / (&kk * &kk);
        a = ((a * &m2) / &kk + &b) / &kk;
        if b.is_zero() && a.is_zero() && k > m {
            break;
        }
        sum_b += &b;
        sum_a += &a;
        k += 1;
    }
    let ratio = div_round(&(sum_a << wg), &sum_b);
    div_round(&(ratio - ln2_series(wg) * j), &one(g))
}

/// `e^x·E₁(x)` from its continued fraction
/// `1/(x + 1/(1 + 1/(x + 2/(1 + 2/(x + …)))))`, truncated after `terms`
/// partial quotients and evaluated bottom-up.
pub(crate) fn exp_e1_cf_truncated(x: &ExactRational, terms: u64, w: u64) -> BigInt {
    let xm = div_round(&(x.numer() << w), x.denom());
    let unit = one(w);
    let b = |i: u64| if i == 1 || i % 2 == 1 { &xm } else { &unit };
    let mut t = b(terms).clone();
    for i in (1..terms).rev() {
        let a = BigInt::from(i.div_ceil(2));
        t = b(i) + div_round(&(a << (2 * w)), &t);
    }
    div_round(&(BigInt::one() << (2 * w)), &t)
}

/// [`exp_e1_cf_truncated`] with enough terms that consecutive convergents
/// agree to 2 ulps. The convergents bracket the limit, so that gap bounds
/// the truncation error.
pub(crate) fn exp_e1_continued_fraction(x: &ExactRational, w: u64) -> BigInt {
    let g = 16;
    let wg = w + g;
    let mut terms = 64;
    loop {
        let f = exp_e1_cf_truncated(x, terms, wg);
        let f_next = exp_e1_cf_truncated(x, terms + 1, wg);
        if (&f - &f_next).abs() <= BigInt::from(2) << g {
            return div_round(&(f + f_next), &(BigInt::from(2) << g));
        }
        terms *= 2;
    }
}
