//! The JSON record every run emits.
//!
//! Everything except `timings` depends only on the arguments, so two runs
//! with the same arguments produce identical reports once `timings` is
//! dropped.

use minimal_cubics::Error;
use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub q: Option<u64>,
    pub outputs: Value,
    pub status: Status,
    pub timings: Timings,
}

#[derive(Serialize)]
pub struct Status {
    pub exit_code: i32,
    pub kind: &'static str,
    pub message: Option<String>,
}

#[derive(Serialize)]
pub struct Timings {
    pub elapsed_ms: u128,
}

impl Status {
    pub fn ok() -> Status {
        Status { exit_code: 0, kind: "ok", message: None }
    }

    pub fn from_error(err: &anyhow::Error) -> Status {
        let (exit_code, kind) = match err.downcast_ref::<Error>() {
            Some(Error::RefusedImpossible(_)) => (2, "refused-impossible"),
            Some(Error::RefusedScope(_)) => (3, "refused-scope"),
            _ => (1, "failed"),
        };
        Status { exit_code, kind, message: Some(format!("{err:#}")) }
    }
}
