//! Verification layer: exact-pass statement suites, report-only scans of
//! the asymptotic bounds, and deterministic report emission.

pub mod bounds;
pub mod grid;
pub mod report;
pub mod scans;
pub mod suites;

pub use bounds::*;
pub use grid::Grid;
pub use report::{
    reports_to_csv, reports_to_json, BoundReport, SuiteResult, Verdict, REPORT_CSV_HEADER,
};
pub use scans::{run_scan, SCANS};

use crate::error::{Error, Result};

/// Exact-pass suites runnable by id; each has a fixed declared grid.
pub const EXACT_SUITES: &[&str] = &[
    "lemma-nmult",
    "lemma-even-exponent",
    "lemma-two-power",
    "lemma-odd-exponent",
    "lemma-squarefree",
    "lemma-wronskian-gcd",
    "lemma-resultant-lift",
    "lemma-coprime-sieve",
    "eq-expansion",
    "eq-distinct-split",
    "identity-adjugate",
    "identity-resultant-gcd",
    "worked-values",
    "pv",
];

/// Runs one exact-pass suite; `seed` drives the constructed-instance
/// suites and defaults to 0 everywhere in the artifact.
pub fn run_suite(id: &str, seed: u64) -> Result<SuiteResult> {
    match id {
        "lemma-nmult" => suites::nmult_suite(),
        "lemma-even-exponent" => suites::even_exponent_suite(),
        "lemma-two-power" => suites::two_power_suite(),
        "lemma-odd-exponent" => suites::odd_exponent_suite(),
        "lemma-squarefree" => suites::squarefree_suite(),
        "lemma-wronskian-gcd" => suites::wronskian_gcd_suite(),
        "lemma-resultant-lift" => suites::resultant_lift_suite(seed),
        "lemma-coprime-sieve" => suites::coprime_sieve_suite(),
        "eq-expansion" => suites::expansion_suite(),
        "eq-distinct-split" => suites::distinct_split_suite(),
        "identity-adjugate" => suites::adjugate_suite(seed),
        "identity-resultant-gcd" => suites::resultant_gcd_suite(seed),
        "worked-values" => suites::worked_values_suite(),
        "pv" => suites::pv_suite(),
        _ => Err(Error::UnknownStatement(id.to_string())),
    }
}
