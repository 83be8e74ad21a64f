//! Exact rational approximants to `γ + ln x` and `e^x·E₁(x)` built from
//! mixed type multiple Laguerre functions, with the tools to check them:
//! exact recurrences and integrality, high-precision reference constants,
//! and measured convergence against asymptotic models.
//!
//! ```
//! use gammapprox_core::{euler_mixed, rat, ratio};
//!
//! let pair = euler_mixed(2);
//! assert_eq!(pair.ratio_at(&rat(1)), ratio(37, 64)); // ≈ γ
//! ```

pub mod analysis;
pub mod approximant;
pub mod asymptotics;
pub mod error;
pub mod euler;
pub mod exact;
pub mod gompertz;
pub mod laguerre;
pub mod oracle;
pub mod recurrence;

pub use approximant::{construct, ApproximantPair, Family};
pub use asymptotics::{
    drift_report, predicted_error_slope, predicted_log, AsymptoticModel, DriftReport,
};
pub use error::{Error, Result};
pub use euler::{
    diophantine_scaler_check, euler_mixed, euler_p_family, laguerre1_type_i, pilehrood_baseline,
    pilehrood_pair, PilehroodBaseline, ScalerReport,
};
pub use exact::{
    binomial, factorial, fraction_string, harmonic, lcm_upto, parse_rational, rat, ratio,
    rodrigues_step, ConstantTag, ExactRational, LogLinearForm, Poly,
};
pub use gompertz::{
    gompertz_denominator, gompertz_integrality_check, gompertz_numerator, gompertz_pair,
    IntegralityReport, MellinRationalFunction,
};
pub use laguerre::{
    classical_laguerre_neg, four_term_residual, type_ii_laguerre, TypeIIPolynomial,
};
pub use oracle::{
    e1_ref, exp_e1_ref, gamma_ref, linear_form_quality, BigFloat, ConstantId, LinearFormQuality,
    OracleValue,
};
pub use recurrence::{characteristic_limit_check, recurrence_residual, RecurrenceSpec};
