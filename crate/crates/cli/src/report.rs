use serde::Serialize;
use serde_json::Value;

/// Everything a run printed, with its inputs echoed back.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub result: Value,
    pub wall_time_ms: u128,
    pub resource_limit_hit: bool,
}

/// A failed run: message plus process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<nbhd::Error> for Failure {
    fn from(e: nbhd::Error) -> Self {
        use nbhd::Error::*;
        let code = match e {
            InvalidParameter(_) | Parse(_) => 2,
            ResourceLimit { .. } => 3,
            NotFree(_) => 4,
            Structural(_) | MatchingDefect(_) => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}
