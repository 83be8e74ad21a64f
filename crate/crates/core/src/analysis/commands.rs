use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approximant::{construct, ApproximantPair, Family};
use crate::asymptotics::predicted_error_slope;
use crate::error::{Error, Result};
use crate::euler::{
    diophantine_scaler_check, euler_mixed, euler_p_family, laguerre1_type_i, pilehrood_baseline,
};
use crate::exact::{
    binomial, fraction_string, harmonic_table, lcm_upto, ln_abs_rational, rat, ratio,
    rational_to_f64, rodrigues_step, ExactRational, Poly,
};
use crate::gompertz::{gompertz_integrality_check, gompertz_numerator};
use crate::laguerre::four_term_residual;
use crate::oracle::{linear_form_quality, LinearFormQuality};
use crate::recurrence::{recurrence_residual, RecurrenceSpec};

/// One row of `build`: exact coefficients, lowest power first, as
/// space-separated fraction strings (`0` for the zero polynomial).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildRow {
    pub n: u64,
    #[serde(rename = "F1_coeffs")]
    pub f1_coeffs: String,
    #[serde(rename = "F2_coeffs")]
    pub f2_coeffs: String,
}

fn coeff_string(p: &Poly) -> String {
    if p.is_zero() {
        "0".to_string()
    } else {
        p.to_fraction_strings().join(" ")
    }
}

pub fn build_rows(family: Family, ns: &[u64]) -> Result<Vec<BuildRow>> {
    ns.par_iter()
        .map(|&n| {
            let pair = construct(family, n)?;
            Ok(BuildRow {
                n,
                f1_coeffs: coeff_string(&pair.numerator),
                f2_coeffs: coeff_string(&pair.denominator),
            })
        })
        .collect()
}

/// The evaluation point, optionally growing with `n` (`x_n = x·n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XSpec {
    pub x: ExactRational,
    pub scale_with_n: bool,
}

impl XSpec {
    pub fn fixed(x: ExactRational) -> Self {
        XSpec {
            x,
            scale_with_n: false,
        }
    }

    /// `x`, or `x·n` when scaling (`x` at `n = 0`).
    pub fn at(&self, n: u64) -> ExactRational {
        if self.scale_with_n && n > 0 {
            &self.x * rat(n)
        } else {
            self.x.clone()
        }
    }
}

/// One row of `converge`.
///
/// * `log_denom`: `ln F₂(x)`.
/// * `log_abs_error`: `ln|c − ratio_n|` with `ratio_n = −F₁(x)/F₂(x)`.
/// * `slope_predicted`: the model's `−ln|c − ratio_n|`, when one exists.
/// * `slope_gap`: `−log_abs_error − slope_predicted`.
/// * `r_measured`: `−ln|Q·c − P| / ln Q` for the integer-scaled pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: u64,
    pub log_denom: f64,
    pub log_abs_error: f64,
    pub slope_predicted: Option<f64>,
    pub slope_gap: Option<f64>,
    pub r_measured: Option<f64>,
}

struct Measurement {
    pair: ApproximantPair,
    x: ExactRational,
    q: ExactRational,
    quality: LinearFormQuality,
}

fn measure(family: Family, n: u64, x: &ExactRational, precision_bits: u64) -> Result<Measurement> {
    if matches!(family, Family::Pilehrood(_)) && *x != rat(1) {
        return Err(Error::InvalidInput(
            "pilehrood approximants exist only at x = 1".into(),
        ));
    }
    if *x <= rat(0) {
        return Err(Error::InvalidInput("x must be positive".into()));
    }
    let pair = construct(family, n)?;
    let s = rat(pair.diophantine_scaler(x));
    let p = -pair.numerator.eval(x) * &s;
    let q = pair.denominator.eval(x) * &s;
    let quality = linear_form_quality(&p, &q, &family.target(x), precision_bits)?;
    Ok(Measurement {
        pair,
        x: x.clone(),
        q,
        quality,
    })
}

pub fn sweep_rows(
    family: Family,
    x: &XSpec,
    ns: &[u64],
    precision_bits: u64,
) -> Result<Vec<SweepRow>> {
    ns.par_iter()
        .map(|&n| {
            let m = measure(family, n, &x.at(n), precision_bits)?;
            let log_abs_error = m.quality.log_ratio_error;
            let slope_predicted = predicted_error_slope(family, rational_to_f64(&m.x), n as f64);
            Ok(SweepRow {
                n,
                log_denom: ln_abs_rational(&m.pair.denominator.eval(&m.x)),
                log_abs_error,
                slope_predicted,
                slope_gap: slope_predicted.map(|s| -log_abs_error - s),
                r_measured: m.quality.r_measured,
            })
        })
        .collect()
}

/// One row of `baseline`: `log_q = ln Q`, `error_slope = −ln|c − P/Q|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineRow {
    pub family: String,
    pub n: u64,
    pub log_q: f64,
    pub error_slope: f64,
    pub r_measured: Option<f64>,
}

/// Pilehrood for each `a`, the `p`-family for each `p`, then the Euler and
/// Gompertz families, all at `x = 1` and the same indices.
pub fn baseline_rows(
    ns: &[u64],
    a_list: &[u32],
    p_list: &[u32],
    precision_bits: u64,
) -> Result<Vec<BaselineRow>> {
    let mut families: Vec<Family> = a_list.iter().map(|&a| Family::Pilehrood(a)).collect();
    families.extend(p_list.iter().map(|&p| Family::EulerP(p)));
    families.extend([Family::EulerMixed, Family::Gompertz]);
    let jobs: Vec<(Family, u64)> = families
        .iter()
        .flat_map(|&f| ns.iter().map(move |&n| (f, n)))
        .collect();
    jobs.par_iter()
        .map(|&(family, n)| {
            let m = measure(family, n, &rat(1), precision_bits)?;
            Ok(BaselineRow {
                family: family.to_string(),
                n,
                log_q: ln_abs_rational(&m.q),
                error_slope: -m.quality.log_ratio_error,
                r_measured: m.quality.r_measured,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Recurrence,
    Integrality,
    Crosscheck,
    Laguerre,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recurrence" => Ok(Suite::Recurrence),
            "integrality" => Ok(Suite::Integrality),
            "crosscheck" => Ok(Suite::Crosscheck),
            "laguerre" => Ok(Suite::Laguerre),
            _ => Err(Error::InvalidInput(format!(
                "unknown suite `{s}` (recurrence|integrality|crosscheck|laguerre)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Recurrence => "recurrence",
            Suite::Integrality => "integrality",
            Suite::Crosscheck => "crosscheck",
            Suite::Laguerre => "laguerre",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: u64,
    pub passed: bool,
    /// Smallest failing index with a description.
    pub first_counterexample: Option<String>,
    /// Observations that are reported but do not fail the suite.
    pub notes: Vec<String>,
}

/// [`VerifyReport`] flattened for tabular output; notes are joined by `"; "`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub suite: Suite,
    pub checks: u64,
    pub passed: bool,
    pub first_counterexample: Option<String>,
    pub notes: String,
}

impl From<&VerifyReport> for VerifyRow {
    fn from(r: &VerifyReport) -> Self {
        VerifyRow {
            suite: r.suite,
            checks: r.checks,
            passed: r.passed,
            first_counterexample: r.first_counterexample.clone(),
            notes: r.notes.join("; "),
        }
    }
}

/// Per-index outcome: number of checks, failure description, notes.
type Outcome = (u64, Option<String>, Vec<String>);

fn collect(
    suite: Suite,
    ns: &[u64],
    f: impl Fn(u64) -> Result<Outcome> + Sync,
) -> Result<VerifyReport> {
    let mut results: Vec<(u64, Outcome)> = ns
        .par_iter()
        .map(|&n| f(n).map(|o| (n, o)))
        .collect::<Result<_>>()?;
    results.sort_by_key(|r| r.0);
    let checks = results.iter().map(|r| r.1 .0).sum();
    let first_counterexample = results
        .iter()
        .find_map(|(n, (_, fail, _))| fail.as_ref().map(|m| format!("n = {n}: {m}")));
    let notes = results.into_iter().flat_map(|r| r.1 .2).collect();
    Ok(VerifyReport {
        suite,
        checks,
        passed: first_counterexample.is_none(),
        first_counterexample,
        notes,
    })
}

/// Values `(F₁(1), F₂(1))` for `n = 0..=n_max`.
fn values_at_one(family: Family, n_max: u64) -> Result<Vec<(ExactRational, ExactRational)>> {
    let one = rat(1);
    (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let p = construct(family, n)?;
            Ok((p.numerator.eval(&one), p.denominator.eval(&one)))
        })
        .collect()
}

/// `C(n+k,k)(H_{n+k} − H_k) = −Σ_{l=1}^{n} C(n+k,n−l)(−1)^l/l`.
pub fn binomial_harmonic_identity(n: u64, k: u64) -> bool {
    let h = harmonic_table((n + k) as usize);
    let lhs = rat(binomial(n + k, k as i64)) * (&h[(n + k) as usize] - &h[k as usize]);
    let mut rhs = rat(0);
    for l in 1..=n {
        let term = rat(binomial(n + k, (n - l) as i64)) * ratio(1, l);
        if l % 2 == 1 {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    lhs == rhs
}

/// Run one exact suite over the indices `ns`.
///
/// `families` restricts the recurrence and integrality suites; when empty
/// they cover the Euler and Gompertz families.
pub fn verify_suite(suite: Suite, ns: &[u64], families: &[Family]) -> Result<VerifyReport> {
    let families: Vec<Family> = if families.is_empty() {
        vec![Family::EulerMixed, Family::Gompertz]
    } else {
        families.to_vec()
    };
    match suite {
        Suite::Recurrence => {
            let n_max = ns.iter().max().map_or(0, |m| m + 4);
            let mut tables = Vec::new();
            for &family in &families {
                let spec = RecurrenceSpec::for_family(family)?;
                let vals = if ns.is_empty() {
                    Vec::new()
                } else {
                    values_at_one(family, n_max)?
                };
                tables.push((family, spec, vals));
            }
            collect(suite, ns, |n| {
                let mut fail = None;
                let w = n as usize..n as usize + 5;
                for (family, spec, vals) in &tables {
                    let num: Vec<_> = vals[w.clone()].iter().map(|v| v.0.clone()).collect();
                    let den: Vec<_> = vals[w.clone()].iter().map(|v| v.1.clone()).collect();
                    for (what, seq) in [("F1", num), ("F2", den)] {
                        let r = recurrence_residual(spec, &seq, n);
                        if fail.is_none() && r != rat(0) {
                            fail =
                                Some(format!("{family} {what} residual {}", fraction_string(&r)));
                        }
                    }
                }
                Ok((2 * tables.len() as u64, fail, Vec::new()))
            })
        }
        Suite::Integrality => collect(suite, ns, |n| {
            let mut fail = None;
            let mut notes = Vec::new();
            for &family in &families {
                match family {
                    Family::Gompertz => {
                        let r = gompertz_integrality_check(&construct(family, n)?);
                        if !r.ok() && fail.is_none() {
                            fail = Some(format!("{family}: n!·F not integral ({r:?})"));
                        }
                    }
                    Family::Pilehrood(a) => {
                        let b = pilehrood_baseline(n, a)?;
                        if !b.q.is_integer() && fail.is_none() {
                            fail = Some(format!(
                                "{family}: Q = {} not integral",
                                fraction_string(&b.q)
                            ));
                        }
                        if !(&b.p * rat(lcm_upto(n))).is_integer() && fail.is_none() {
                            fail = Some(format!(
                                "{family}: lcm(1..n)·P = {} not integral",
                                fraction_string(&b.p)
                            ));
                        }
                        if !b.p.is_integer() {
                            notes.push(format!(
                                "n = {n}: {family} P = {} needs the lcm(1..n) factor",
                                fraction_string(&b.p)
                            ));
                        }
                    }
                    _ => {
                        let r = diophantine_scaler_check(&construct(family, n)?)?;
                        if !r.denominator_scaler_ok && fail.is_none() {
                            fail = Some(format!("{family}: n!·F2 not integral"));
                        }
                        if !r.numerator_scaler_ok {
                            let msg = format!(
                                "{family}: n!·lcm(1..n)·F1 not integral; minimal multiplier of n!·F1 is {}",
                                r.minimal_numerator_multiplier
                            );
                            match family {
                                Family::EulerP(p) if p >= 2 => {
                                    notes.push(format!("n = {n}: {msg}"))
                                }
                                _ if fail.is_none() => fail = Some(msg),
                                _ => {}
                            }
                        }
                    }
                }
            }
            Ok((families.len() as u64, fail, notes))
        }),
        Suite::Crosscheck => collect(suite, ns, |n| {
            let mut fail: Option<String> = None;
            let mut flag = |ok: bool, what: &str| {
                if !ok && fail.is_none() {
                    fail = Some(what.to_string());
                }
            };
            let lag = laguerre1_type_i(n);
            let mixed = euler_mixed(n);
            let form = lag.as_log_linear_form().expect("euler-type");
            let rod = rodrigues_step(&form, n as usize)?;
            flag(
                rod.rational_part == mixed.numerator && rod.log_part == mixed.denominator,
                "closed form differs from Rodrigues step of L^(I)",
            );
            let p1 = euler_p_family(n, 1);
            flag(
                p1.numerator == mixed.numerator && p1.denominator == mixed.denominator,
                "p = 1 differs from F^(I)",
            );
            let p0 = euler_p_family(n, 0);
            flag(
                p0.numerator == lag.numerator && p0.denominator == lag.denominator,
                "p = 0 differs from L^(I)",
            );
            flag(
                gompertz_numerator(n).is_ok(),
                "partial fractions miss the closed-form F2^(II)",
            );
            let ident = (0..=n).all(|k| binomial_harmonic_identity(n, k));
            flag(ident, "binomial/harmonic identity fails");
            Ok((5, fail, Vec::new()))
        }),
        Suite::Laguerre => collect(suite, ns, |n| {
            let r = four_term_residual(n);
            let fail = (!r.is_zero()).then(|| format!("residual {r}"));
            Ok((1, fail, Vec::new()))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        let rows = build_rows(Family::EulerMixed, &[0, 1]).unwrap();
        assert_eq!(rows[0].f1_coeffs, "0");
        assert_eq!(rows[0].f2_coeffs, "1");
        assert_eq!(rows[1].f1_coeffs, "3 -5");
        assert_eq!(rows[1].f2_coeffs, "1 2");
        let g = build_rows(Family::Gompertz, &[2]).unwrap();
        assert_eq!(g[0].f1_coeffs, "-9/2 -35/2");
    }

    #[test]
    fn verify_small_ranges() {
        let ns: Vec<u64> = (0..=12).collect();
        for suite in [
            Suite::Recurrence,
            Suite::Integrality,
            Suite::Crosscheck,
            Suite::Laguerre,
        ] {
            let r = verify_suite(suite, &ns, &[]).unwrap();
            assert!(r.passed, "{r:?}");
            assert!(r.checks > 0);
        }
        let empty = verify_suite(Suite::Recurrence, &[], &[]).unwrap();
        assert!(empty.passed);
        assert_eq!(empty.checks, 0);
    }

    #[test]
    fn pilehrood_lcm_factor_is_noted() {
        let r = verify_suite(Suite::Integrality, &[3], &[Family::Pilehrood(1)]).unwrap();
        assert!(r.passed);
        assert!(r.notes[0].contains("37/3"));
    }

    #[test]
    fn sweep_examples() {
        let rows = sweep_rows(Family::EulerMixed, &XSpec::fixed(rat(1)), &[0, 2], 128).unwrap();
        assert_eq!(rows[0].r_measured, None);
        assert!((rows[1].log_abs_error.exp() - 9.0934e-4).abs() < 1e-7);
        let g = sweep_rows(Family::Gompertz, &XSpec::fixed(rat(1)), &[1], 128).unwrap();
        assert!((g[0].log_abs_error.exp() - 3.6526e-3).abs() < 1e-7);
        assert!(
            sweep_rows(Family::Gompertz, &XSpec::fixed(rat(1)), &[], 128)
                .unwrap()
                .is_empty()
        );
        assert!(sweep_rows(Family::Pilehrood(2), &XSpec::fixed(rat(2)), &[1], 128).is_err());
    }

    #[test]
    fn baseline_pilehrood_small() {
        let rows = baseline_rows(&[2], &[2], &[], 128).unwrap();
        let pil = &rows[0];
        assert_eq!(pil.family, "pilehrood:2");
        // (P, Q) = (4, 7), scaled by lcm(1, 2): |14γ − 8| = 2·|7γ − 4|
        assert!(((pil.log_q - pil.error_slope).exp() - 2.0 * 4.0509e-2).abs() < 1e-5);
    }
}
