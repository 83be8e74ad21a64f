use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{factorial, ExactRational, Poly};
use crate::error::{Error, Result};

/// The constant `c` paired with `ln x` in a [`LogLinearForm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstantTag {
    /// `c = γ`, Euler's constant.
    EulerGamma,
    /// `c = 0`.
    None,
}

/// The function `A(x) + B(x)·(c + ln x)` with polynomial `A`, `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogLinearForm {
    pub rational_part: Poly,
    pub log_part: Poly,
    pub constant_tag: ConstantTag,
}

impl LogLinearForm {
    pub fn new(rational_part: Poly, log_part: Poly, constant_tag: ConstantTag) -> Self {
        LogLinearForm {
            rational_part,
            log_part,
            constant_tag,
        }
    }

    /// `d/dx` using `(P + Q·ln x)' = P' + Q/x + Q'·ln x`.
    ///
    /// Fails when `Q(0) ≠ 0`, since `Q/x` would then leave the polynomials.
    pub fn derivative(&self) -> Result<LogLinearForm> {
        let q_over_x = self.log_part.div_x().ok_or_else(|| {
            Error::Internal("log part not divisible by x while differentiating".into())
        })?;
        Ok(LogLinearForm {
            rational_part: &self.rational_part.derivative() + &q_over_x,
            log_part: self.log_part.derivative(),
            constant_tag: self.constant_tag,
        })
    }

    pub fn mul_x_pow(&self, m: usize) -> LogLinearForm {
        LogLinearForm {
            rational_part: self.rational_part.shift_up(m),
            log_part: self.log_part.shift_up(m),
            constant_tag: self.constant_tag,
        }
    }

    pub fn scale(&self, c: &ExactRational) -> LogLinearForm {
        LogLinearForm {
            rational_part: self.rational_part.scale(c),
            log_part: self.log_part.scale(c),
            constant_tag: self.constant_tag,
        }
    }
}

/// `(1/m!)·d^m/dx^m [x^m·f(x)]`, by `m` single derivatives.
///
/// After multiplying by `x^m` the log part vanishes to order `m` at zero, and
/// every derivative lowers that order by one, so each `Q/x` is exact.
pub fn rodrigues_step(f: &LogLinearForm, m: usize) -> Result<LogLinearForm> {
    let mut g = f.mul_x_pow(m);
    for _ in 0..m {
        g = g.derivative()?;
    }
    let inv = ExactRational::new(BigInt::from(1), factorial(m as u64));
    Ok(g.scale(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn form(a: &[i64], b: &[i64]) -> LogLinearForm {
        LogLinearForm::new(
            Poly::from_ints(a.iter().copied()),
            Poly::from_ints(b.iter().copied()),
            ConstantTag::EulerGamma,
        )
    }

    #[test]
    fn rodrigues_examples() {
        let f = form(&[2, -3], &[1, 1]);
        assert_eq!(rodrigues_step(&f, 1).unwrap(), form(&[3, -5], &[1, 2]));
        assert_eq!(rodrigues_step(&f, 0).unwrap(), f);
        assert_eq!(
            rodrigues_step(&form(&[], &[1]), 1).unwrap(),
            form(&[1], &[1])
        );
    }

    #[test]
    fn derivative_rejects_nonzero_log_constant() {
        let f = form(&[1], &[1]);
        assert!(matches!(f.derivative(), Err(Error::Internal(_))));
    }

    fn c_ratio(m: usize, k: usize) -> ExactRational {
        let c = rat(crate::exact::binomial((m + k) as u64, m as i64));
        c / rat(BigInt::from(k + 1).pow(m as u32))
    }

    // On monomials the operator has a closed form, checked directly:
    //   (1/m!)·D^m[x^{m+k}] = C(m+k, m)·x^k
    //   (1/m!)·D^m[x^{m+k} ln x] = C(m+k, m)·x^k ln x + x^k·Σ_{l=1}^m C(m+k, m-l)(-1)^{l-1}/l
    #[test]
    fn step_matches_monomial_closed_form() {
        use crate::exact::binomial;
        for k in 0..6usize {
            for m in 0..7usize {
                let mono =
                    LogLinearForm::new(Poly::monomial(rat(1), k), Poly::zero(), ConstantTag::None);
                let got = rodrigues_step(&mono, m).unwrap();
                let c = rat(binomial((m + k) as u64, m as i64));
                assert_eq!(got.rational_part, Poly::monomial(c.clone(), k));
                assert!(got.log_part.is_zero());

                let log_mono =
                    LogLinearForm::new(Poly::zero(), Poly::monomial(rat(1), k), ConstantTag::None);
                let got = rodrigues_step(&log_mono, m).unwrap();
                let mut extra = rat(0);
                for l in 1..=m {
                    let sign = if l % 2 == 1 { 1 } else { -1 };
                    extra += rat(binomial((m + k) as u64, (m - l) as i64)) * ratio(sign, l as i64);
                }
                assert_eq!(got.log_part, Poly::monomial(c, k));
                assert_eq!(got.rational_part, Poly::monomial(extra, k));

                // m single-order steps give (D∘x)^m instead of D^m∘x^m; on x^k
                // (and on the log part of x^k ln x) they differ by the factor
                // C(m+k, m)/(k+1)^m.
                let mut iter = mono.clone();
                let mut iter_log = log_mono.clone();
                for _ in 0..m {
                    iter = rodrigues_step(&iter, 1).unwrap();
                    iter_log = rodrigues_step(&iter_log, 1).unwrap();
                }
                let fix = c_ratio(m, k);
                assert_eq!(iter.scale(&fix), rodrigues_step(&mono, m).unwrap());
                assert_eq!(
                    iter_log.log_part.scale(&fix),
                    rodrigues_step(&log_mono, m).unwrap().log_part
                );
            }
        }
    }
}
