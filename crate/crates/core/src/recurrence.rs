//! Five-term recurrences at `x = 1` satisfied by both the numerators and the
//! denominators of the Euler and Gompertz approximants.
//!
//! The coefficient tables ship as `data/recurrences.json`, fully expanded in
//! powers of `n`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;

use crate::approximant::Family;
use crate::error::{Error, Result};
use crate::exact::{rat, ExactRational};

const DATA: &str = include_str!("../data/recurrences.json");

/// `Σ_{k=0}^{4} c_{n,k}·S_{n+k} = 0` with `c_{n,k}` an integer polynomial in `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub family_tag: String,
    /// `coefficient_polys[k][d]` multiplies `n^d` in `c_{n,k}`.
    pub coefficient_polys: Vec<Vec<BigInt>>,
}

#[derive(Deserialize)]
struct RawFile {
    recurrences: Vec<RawSpec>,
}

#[derive(Deserialize)]
struct RawSpec {
    family: String,
    coefficients: Vec<Vec<String>>,
}

fn load() -> Vec<RecurrenceSpec> {
    let raw: RawFile = serde_json::from_str(DATA).expect("recurrences.json is well-formed");
    raw.recurrences
        .into_iter()
        .map(|r| RecurrenceSpec {
            family_tag: r.family,
            coefficient_polys: r
                .coefficients
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|s| s.parse().expect("integer string"))
                        .collect()
                })
                .collect(),
        })
        .collect()
}

fn table() -> &'static [RecurrenceSpec] {
    static TABLE: OnceLock<Vec<RecurrenceSpec>> = OnceLock::new();
    TABLE.get_or_init(load)
}

impl RecurrenceSpec {
    /// The shipped table for `family` (`euler` or `gompertz`).
    pub fn for_family(family: Family) -> Result<&'static RecurrenceSpec> {
        let tag = match family {
            Family::EulerMixed => "euler",
            Family::Gompertz => "gompertz",
            other => {
                return Err(Error::InvalidInput(format!(
                    "no recurrence shipped for {other}"
                )))
            }
        };
        Ok(table()
            .iter()
            .find(|s| s.family_tag == tag)
            .expect("both tables present"))
    }

    pub fn euler() -> &'static RecurrenceSpec {
        Self::for_family(Family::EulerMixed).unwrap()
    }

    pub fn gompertz() -> &'static RecurrenceSpec {
        Self::for_family(Family::Gompertz).unwrap()
    }

    pub fn order(&self) -> usize {
        self.coefficient_polys.len() - 1
    }

    /// `c_{n,k}` evaluated at `n`.
    pub fn coefficient(&self, k: usize, n: &BigInt) -> BigInt {
        self.coefficient_polys[k]
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * n + c)
    }
}

/// `Σ_k c_{n,k}·S_{n+k}` for `values = [S_n, …, S_{n+4}]`.
pub fn recurrence_residual(
    spec: &RecurrenceSpec,
    values: &[ExactRational],
    n: u64,
) -> ExactRational {
    assert_eq!(values.len(), spec.order() + 1, "need one value per term");
    let nb = BigInt::from(n);
    values
        .iter()
        .enumerate()
        .fold(ExactRational::zero(), |acc, (k, v)| {
            acc + rat(spec.coefficient(k, &nb)) * v
        })
}

/// First `n` in `0..=seq.len()−5` whose residual is nonzero, if any.
pub fn first_violation(spec: &RecurrenceSpec, seq: &[ExactRational]) -> Option<u64> {
    let w = spec.order() + 1;
    seq.windows(w)
        .enumerate()
        .find(|(n, win)| !recurrence_residual(spec, win, *n as u64).is_zero())
        .map(|(n, _)| n as u64)
}

/// `max_k |c_{n,k}/n⁸ ÷ (−729·(−1)^k·C(4,k)) − 1|`.
pub fn characteristic_limit_check(spec: &RecurrenceSpec, n: u64) -> f64 {
    const LIMIT: [f64; 5] = [-729.0, 2916.0, -4374.0, 2916.0, -729.0];
    let nb = BigInt::from(n);
    let n8 = nb.pow(8);
    (0..=spec.order())
        .map(|k| {
            let r = ExactRational::new(spec.coefficient(k, &nb), n8.clone());
            let v = r.to_f64().unwrap_or(f64::NAN);
            (v / LIMIT[k] - 1.0).abs()
        })
        .fold(0.0, f64::max)
}
