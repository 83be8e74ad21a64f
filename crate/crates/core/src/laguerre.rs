//! Type II multiple Laguerre polynomials on the step line, and the classical
//! Laguerre values `L_n(−x)` used as a lower bound for the Euler denominators.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::{ln_abs_rational, rat, BinomialRow, ExactRational, Poly};

/// `L_{(n1,n2)}(x)`, monic of degree `n1 + n2` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeIIPolynomial {
    pub n1: u64,
    pub n2: u64,
    pub poly: Poly,
}

/// `g ↦ g' − g`, the action of `d/dx` on `g(x)·e^{−x}`.
fn diff_weighted(g: &mut [BigInt]) {
    let len = g.len();
    for i in 0..len {
        let next = if i + 1 < len {
            &g[i + 1] * (i + 1)
        } else {
            BigInt::zero()
        };
        g[i] = next - &g[i];
    }
}

fn shift(g: &mut Vec<BigInt>, k: u64) {
    g.splice(0..0, std::iter::repeat_n(BigInt::zero(), k as usize));
}

/// `(−1)^{n1+n2}·e^{x}·D^{n1}[x^{n1}·D^{n2}[x^{n2}·e^{−x}]]`.
///
/// The prefactor is `e^{+x}`: it cancels the weight so the result is a
/// polynomial. With this sign the step-line recurrence of
/// [`four_term_residual`] holds exactly.
pub fn type_ii_laguerre(n1: u64, n2: u64) -> TypeIIPolynomial {
    // Track g with the function equal to g(x)·e^{−x}.
    let mut g = vec![BigInt::one()];
    shift(&mut g, n2);
    for _ in 0..n2 {
        diff_weighted(&mut g);
    }
    shift(&mut g, n1);
    for _ in 0..n1 {
        diff_weighted(&mut g);
    }
    if (n1 + n2) % 2 == 1 {
        for c in g.iter_mut() {
            *c = -&*c;
        }
    }
    TypeIIPolynomial {
        n1,
        n2,
        poly: Poly::from_ints(g),
    }
}

/// Recurrence coefficients `(b_n, c_n, d_n) = (3n+2, 3n²+3n+1, n³)`.
pub fn step_line_coefficients(n: u64) -> (u64, u64, u64) {
    (3 * n + 2, 3 * n * n + 3 * n + 1, n * n * n)
}

/// `x·L_{(n+1,n)} − L_{(n+1,n+1)} − b_n L_{(n+1,n)} − c_n L_{(n,n)} − d_n L_{(n,n−1)}`.
///
/// Zero when the recurrence holds. At `n = 0` the last term carries
/// `d_0 = 0` and is dropped.
pub fn four_term_residual(n: u64) -> Poly {
    let (b, c, d) = step_line_coefficients(n);
    let up = type_ii_laguerre(n + 1, n).poly;
    let mut r = &(&up.shift_up(1) - &type_ii_laguerre(n + 1, n + 1).poly) - &up.scale(&rat(b));
    r = &r - &type_ii_laguerre(n, n).poly.scale(&rat(c));
    if n > 0 {
        r = &r - &type_ii_laguerre(n, n - 1).poly.scale(&rat(d));
    }
    r
}

/// `L_n(−x) = Σ_k C(n,k)·x^k/k!`.
pub fn classical_laguerre_neg(n: u64, x: &ExactRational) -> ExactRational {
    let row = BinomialRow::new(n);
    let mut term = ExactRational::one();
    let mut sum = ExactRational::zero();
    for k in 0..=n {
        if k > 0 {
            term = term * x / rat(k);
        }
        sum += &term * rat(row.as_slice()[k as usize].clone());
    }
    sum
}

/// `ln L_n(−x) + ln(n)/4 − 2√(nx)`, which tends to a constant.
pub fn perron_offset(n: u64, x: &ExactRational) -> f64 {
    let xf = crate::exact::rational_to_f64(x);
    let nf = n as f64;
    ln_abs_rational(&classical_laguerre_neg(n, x)) + 0.25 * nf.ln() - 2.0 * (nf * xf).sqrt()
}

#[derive(Debug, Clone, Serialize)]
pub struct PerronDrift {
    pub n: u64,
    pub offset: f64,
    pub offset_doubled: f64,
    pub drift: f64,
}

/// Compare [`perron_offset`] at `n` and `2n`.
pub fn perron_drift(n: u64, x: &ExactRational) -> PerronDrift {
    let offset = perron_offset(n, x);
    let offset_doubled = perron_offset(2 * n, x);
    PerronDrift {
        n,
        offset,
        offset_doubled,
        drift: (offset_doubled - offset).abs(),
    }
}
