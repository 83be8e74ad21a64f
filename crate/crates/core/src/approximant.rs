use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, lcm_upto, ConstantTag, ExactRational, LogLinearForm, Poly};
use crate::oracle::ConstantId;

/// Which construction produced an [`ApproximantPair`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Type I multiple Laguerre polynomials of the first kind, `L_n^(I)`.
    LaguerreTypeI,
    /// Mixed type functions `F_n^(I)` for `γ + ln x`.
    EulerMixed,
    /// `p`-fold Rodrigues iterate of `L_n^(I)`; `p = 1` is [`Family::EulerMixed`].
    EulerP(u32),
    /// Pilehrood–Pilehrood approximants of `γ` with parameter `a ≥ 1` (only at `x = 1`).
    Pilehrood(u32),
    /// Dual mixed type functions `F_n^(II)` for `e^x E_1(x)`.
    Gompertz,
}

impl Family {
    /// The constant `c(x)` that `−F₁(x)/F₂(x)` approximates.
    pub fn target(&self, x: &ExactRational) -> ConstantId {
        match self {
            Family::Gompertz => ConstantId::ExpE1(x.clone()),
            _ => ConstantId::GammaPlusLn(x.clone()),
        }
    }

    pub fn is_euler_type(&self) -> bool {
        !matches!(self, Family::Gompertz)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::LaguerreTypeI => f.write_str("laguerre1"),
            Family::EulerMixed => f.write_str("euler"),
            Family::EulerP(p) => write!(f, "euler-p:{p}"),
            Family::Pilehrood(a) => write!(f, "pilehrood:{a}"),
            Family::Gompertz => f.write_str("gompertz"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown family `{s}`"));
        match s {
            "laguerre1" => return Ok(Family::LaguerreTypeI),
            "euler" => return Ok(Family::EulerMixed),
            "gompertz" => return Ok(Family::Gompertz),
            _ => {}
        }
        let (name, param) = s.split_once(':').ok_or_else(bad)?;
        let param: u32 = param.parse().map_err(|_| bad())?;
        match name {
            "euler-p" => Ok(Family::EulerP(param)),
            "pilehrood" if param >= 1 => Ok(Family::Pilehrood(param)),
            "pilehrood" => Err(Error::InvalidInput("pilehrood needs a ≥ 1".into())),
            _ => Err(bad()),
        }
    }
}

/// Numerator/denominator polynomials of one family member.
///
/// Every family follows the same convention: `F₁(x) + F₂(x)·c(x)` is small,
/// so `−F₁(x)/F₂(x)` approximates the target constant `c(x)`. Pilehrood pairs
/// are scalars and are stored as constant polynomials `(−P, Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximantPair {
    pub family: Family,
    pub index_n: u64,
    pub numerator: Poly,
    pub denominator: Poly,
}

impl ApproximantPair {
    /// `−F₁(x)/F₂(x)`.
    pub fn ratio_at(&self, x: &ExactRational) -> ExactRational {
        -self.numerator.eval(x) / self.denominator.eval(x)
    }

    /// The pair as `F₁ + F₂·(γ + ln x)`; `None` for the Gompertz family.
    pub fn as_log_linear_form(&self) -> Option<LogLinearForm> {
        self.family.is_euler_type().then(|| {
            LogLinearForm::new(
                self.numerator.clone(),
                self.denominator.clone(),
                ConstantTag::EulerGamma,
            )
        })
    }

    /// The integer `S` by which the pair is scaled to form the linear form
    /// `Q·c − P` with `P = −S·F₁(x)`, `Q = S·F₂(x)`.
    ///
    /// For `x = a/b` this is `n!·lcm(1..n)·b^n` for the Euler-type families,
    /// `n!·b^n` for Gompertz, and `lcm(1..n)` for Pilehrood. An extra factor is
    /// folded in whenever the nominal scaler does not clear every denominator,
    /// so `P` and `Q` are always integers.
    pub fn diophantine_scaler(&self, x: &ExactRational) -> BigInt {
        let n = self.index_n;
        let b_pow = x.denom().pow(n as u32);
        let nominal = match self.family {
            Family::Pilehrood(_) => lcm_upto(n),
            Family::Gompertz => factorial(n) * &b_pow,
            _ => factorial(n) * lcm_upto(n) * &b_pow,
        };
        let p = self.numerator.eval(x) * &nominal;
        let q = self.denominator.eval(x) * &nominal;
        let extra = num_integer::Integer::lcm(p.denom(), q.denom());
        nominal * extra
    }
}

/// Build member `n` of `family`.
pub fn construct(family: Family, n: u64) -> Result<ApproximantPair> {
    match family {
        Family::LaguerreTypeI => Ok(crate::euler::laguerre1_type_i(n)),
        Family::EulerMixed => Ok(crate::euler::euler_mixed(n)),
        Family::EulerP(p) => Ok(crate::euler::euler_p_family(n, p)),
        Family::Pilehrood(a) => crate::euler::pilehrood_pair(n, a),
        Family::Gompertz => crate::gompertz::gompertz_pair(n),
    }
}
