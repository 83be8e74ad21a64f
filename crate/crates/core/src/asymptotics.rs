//! Growth and decay templates `n^β·exp(Σ μ_j n^{e_j})` for the approximants,
//! evaluated on the real positive branch `ω = x^{1/4}`.

use serde::Serialize;

use crate::approximant::Family;

/// One exponent term `coefficient·ω^omega_power·n^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentTerm {
    pub exponent: f64,
    pub coefficient: f64,
    pub omega_power: i32,
}

/// `β·ln n + Σ μ_j(ω)·n^{e_j}`, the logarithm of a canonical solution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticModel {
    pub name: &'static str,
    pub power_of_n: f64,
    pub exponent_terms: Vec<ExponentTerm>,
}

const fn term(exponent: f64, coefficient: f64, omega_power: i32) -> ExponentTerm {
    ExponentTerm {
        exponent,
        coefficient,
        omega_power,
    }
}

impl AsymptoticModel {
    /// Dominant solution of the Euler recurrence: `(4ω, −ω²/2, −3ω³/8)`.
    pub fn euler() -> Self {
        AsymptoticModel {
            name: "euler",
            power_of_n: -9.0 / 8.0,
            exponent_terms: vec![
                term(0.75, 4.0, 1),
                term(0.5, -0.5, 2),
                term(0.25, -0.375, 3),
            ],
        }
    }

    /// Dominant solution of the Gompertz recurrence: `(4ω, +ω²/2, −3ω³/8)`.
    pub fn gompertz() -> Self {
        AsymptoticModel {
            name: "gompertz",
            power_of_n: -9.0 / 8.0,
            exponent_terms: vec![term(0.75, 4.0, 1), term(0.5, 0.5, 2), term(0.25, -0.375, 3)],
        }
    }

    pub fn for_family(family: Family) -> Option<Self> {
        match family {
            Family::EulerMixed | Family::EulerP(1) => Some(Self::euler()),
            Family::Gompertz => Some(Self::gompertz()),
            _ => None,
        }
    }
}

/// `β·ln n + Σ μ_j ω^{k_j} n^{e_j}`.
pub fn predicted_log(model: &AsymptoticModel, n: f64, omega: f64) -> f64 {
    model.power_of_n * n.ln()
        + model
            .exponent_terms
            .iter()
            .map(|t| t.coefficient * omega.powi(t.omega_power) * n.powf(t.exponent))
            .sum::<f64>()
}

/// Predicted `−ln|c − ratio_n|` at `x`, where a model is available.
///
/// Euler: `4x^{1/4}n^{3/4} − x^{1/2}n^{1/2} − (3/8)x^{3/4}n^{1/4}`; Gompertz
/// flips the middle sign. For the Pilehrood baseline with `a ≥ 2` only the
/// leading term `a(1 − cos(2π/a))·n^{(a−1)/a}` is used (at `x = 1`).
pub fn predicted_error_slope(family: Family, x: f64, n: f64) -> Option<f64> {
    let w = x.powf(0.25);
    let lead = 4.0 * w * n.powf(0.75) - 0.375 * w.powi(3) * n.powf(0.25);
    match family {
        Family::EulerMixed | Family::EulerP(1) => Some(lead - w * w * n.sqrt()),
        Family::Gompertz => Some(lead + w * w * n.sqrt()),
        Family::Pilehrood(a) if a >= 2 => {
            let a = a as f64;
            let c = a * (1.0 - (2.0 * std::f64::consts::PI / a).cos());
            Some(c * n.powf((a - 1.0) / a))
        }
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriftReport {
    /// `(n, C_n)` with `C_n = observed − predicted`.
    pub constants: Vec<(u64, f64)>,
    /// `(m, |C_{2m} − C_m|)` for every `m` whose double is also observed.
    pub drifts: Vec<(u64, f64)>,
}

impl DriftReport {
    pub fn max_drift(&self) -> f64 {
        self.drifts.iter().map(|d| d.1).fold(0.0, f64::max)
    }
}

pub fn drift_report(observed: &[(u64, f64)], model: &AsymptoticModel, omega: f64) -> DriftReport {
    let constants: Vec<(u64, f64)> = observed
        .iter()
        .map(|&(n, v)| (n, v - predicted_log(model, n as f64, omega)))
        .collect();
    let drifts = constants
        .iter()
        .filter_map(|&(m, c)| {
            constants
                .iter()
                .find(|&&(n2, _)| n2 == 2 * m)
                .map(|&(_, c2)| (m, (c2 - c).abs()))
        })
        .collect();
    DriftReport { constants, drifts }
}
