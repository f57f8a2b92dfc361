use std::fmt;

use serde::Serialize;

/// Stable error codes printed on stderr, e.g. `error[E_LABELING]: ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ErrorCode {
    /// Bad flags or flag combinations.
    EUsage,
    /// A graph file that does not parse or describes an invalid graph.
    EGraph,
    /// A labeling file that does not parse or does not cover the graph.
    ELabeling,
    /// Parameters outside the range an operation is defined on.
    ERange,
    /// Unreadable input file.
    EInput,
    /// Output could not be written.
    EOutput,
    /// Bad `RADIOBOOK_THREADS` value.
    EEnv,
    /// Graph too large for exact search.
    ETooLarge,
    /// Constructive labeling missed its guaranteed bound.
    EConstruct,
    /// Any other solver failure.
    ESolve,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::EUsage => "E_USAGE",
            ErrorCode::EGraph => "E_GRAPH",
            ErrorCode::ELabeling => "E_LABELING",
            ErrorCode::ERange => "E_RANGE",
            ErrorCode::EInput => "E_INPUT",
            ErrorCode::EOutput => "E_OUTPUT",
            ErrorCode::EEnv => "E_ENV",
            ErrorCode::ETooLarge => "E_TOO_LARGE",
            ErrorCode::EConstruct => "E_CONSTRUCT",
            ErrorCode::ESolve => "E_SOLVE",
        }
    }

    /// 2 for anything wrong with the input, 3 for failures after the input
    /// was accepted.
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorCode::EOutput | ErrorCode::EConstruct | ErrorCode::ESolve => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: ErrorCode,
    pub message: String,
}

impl CliError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.code, self.message)
    }
}

impl std::error::Error for CliError {}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: &'a str,
    exit_code: i32,
}

#[derive(Serialize)]
struct ErrorEnvelope<'a> {
    error: ErrorBody<'a>,
}

impl CliError {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ErrorEnvelope {
            error: ErrorBody {
                code: self.code.as_str(),
                message: &self.message,
                exit_code: self.code.exit_code(),
            },
        })
        .expect("error serializes")
    }
}

pub type CliResult<T> = Result<T, CliError>;
