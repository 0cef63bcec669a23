//! Versioned JSON documents written by the binary.
//!
//! Every document carries `schema_version` and round-trips: serializing and
//! re-parsing reproduces the value field for field (floats included — the
//! writer emits shortest-round-trip decimals).

use aqrm::{
    DegeneracyReport, Error, ModelParams, ScanTable, SpectrumResult, TaylorCoefficients,
    WavefunctionGrid, WellReport,
};
use serde::{Deserialize, Serialize};

/// Version stamp on every JSON document and error record.
pub const SCHEMA_VERSION: u32 = 1;

/// `spectrum` output: one result per requested method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub schema_version: u32,
    pub results: Vec<SpectrumResult>,
}

/// `scan --format json` output: one table per requested method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanDocument {
    pub schema_version: u32,
    pub tables: Vec<ScanTable>,
}

/// Sampled effective potential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialProfile {
    pub xi: Vec<f64>,
    pub v: Vec<f64>,
}

/// `potential` output: expansion coefficients and well geometry, plus the
/// sampled profile unless that went to a CSV alongside (the JSON is then the
/// sidecar and `profile` is `None`). `taylor` is `None` at g = 0, where the
/// closed forms are singular; a warning on stderr says so.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialDocument {
    pub schema_version: u32,
    pub params: ModelParams,
    pub profile: Option<PotentialProfile>,
    pub taylor: Option<TaylorCoefficients>,
    pub wells: WellReport,
}

/// `wavefunction --format json` output: one grid per requested method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionDocument {
    pub schema_version: u32,
    pub params: ModelParams,
    pub grids: Vec<WavefunctionGrid>,
}

/// `degeneracy-map --format json` output: one report per asymmetry value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyDocument {
    pub schema_version: u32,
    pub reports: Vec<DegeneracyReport>,
}

/// Machine-readable error record printed to stderr on any failure; `kind`
/// maps 1:1 to the exit code (invalid_input 2, solver 3, precondition 4).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub schema_version: u32,
    pub kind: String,
    pub message: String,
}

impl ErrorRecord {
    pub fn from_error(e: &Error) -> ErrorRecord {
        let kind = match e {
            Error::InvalidInput(_) => "invalid_input",
            Error::Solver(_) => "solver",
            Error::Precondition(_) => "precondition",
        };
        let message = match e {
            Error::InvalidInput(m) | Error::Solver(m) | Error::Precondition(m) => m.clone(),
        };
        ErrorRecord { schema_version: SCHEMA_VERSION, kind: kind.into(), message }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_record_kinds_match_exit_codes() {
        let cases = [
            (Error::InvalidInput("x".into()), "invalid_input", 2),
            (Error::Solver("x".into()), "solver", 3),
            (Error::Precondition("x".into()), "precondition", 4),
        ];
        for (e, kind, code) in cases {
            let rec = ErrorRecord::from_error(&e);
            assert_eq!(rec.kind, kind);
            assert_eq!(rec.schema_version, SCHEMA_VERSION);
            assert_eq!(e.exit_code(), code);
        }
    }
}
