//! Experiment drivers behind the command-line tool: building coefficient
//! tables, exact verification suites, convergence sweeps and baseline
//! comparisons, with CSV/JSON output that embeds a run manifest.

mod commands;
mod output;

pub use commands::{
    baseline_rows, build_rows, sweep_rows, verify_suite, BaselineRow, BuildRow, Suite, SweepRow,
    VerifyReport, VerifyRow, XSpec,
};
pub use output::{read_csv, read_json, render, Format, RunManifest, Table};

use serde::Serializer;

/// Serialize any `Display` value as a string (big integers, rationals).
pub fn serialize_display<T: std::fmt::Display, S: Serializer>(
    v: &T,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
