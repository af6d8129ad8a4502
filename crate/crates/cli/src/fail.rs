//! Exit-code mapping: 1 for contract violations, 2 for anything that did
//! not parse.

use std::fmt;

use stabkit::{Error, JsonError};

#[derive(Debug)]
pub enum Failure {
    Parse(String),
    Contract(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Contract(_) => 1,
            Failure::Parse(_) => 2,
        }
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Failure::Parse(msg.into())
    }

    pub fn contract(msg: impl Into<String>) -> Self {
        Failure::Contract(msg.into())
    }

    /// JSON failure in the file at `path`.
    pub fn json(path: &str, e: JsonError) -> Self {
        match e {
            JsonError::Syntax(e) => Self::json_syntax(path, &e),
            JsonError::Invalid(e) => Self::from(e),
        }
    }

    pub fn json_syntax(path: &str, e: &serde_json::Error) -> Self {
        Failure::Parse(format!(
            "{path}: line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Parse(m),
            other => Failure::Contract(other.to_string()),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(m) => write!(f, "parse error: {m}"),
            Failure::Contract(m) if m.starts_with("contract violation") => write!(f, "{m}"),
            Failure::Contract(m) => write!(f, "contract violation: {m}"),
        }
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;
