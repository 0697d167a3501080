//! Errors surfaced by the command-line driver and their exit codes.

use crate::expr::ExprError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, out-of-range parameters, unreadable paths.
    #[error("{0}")]
    Usage(String),
    #[error("{message}")]
    Parse { message: String, offset: Option<usize> },
    /// The solver or a quadrature construction failed.
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse { .. } => 3,
            CliError::Numeric(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse { .. } => "parse",
            CliError::Numeric(_) => "numeric",
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        CliError::Parse { message: message.into(), offset: None }
    }

    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            kind: &'a str,
            message: String,
            exit_code: i32,
            #[serde(skip_serializing_if = "Option::is_none")]
            offset: Option<usize>,
        }
        #[derive(Serialize)]
        struct Wrapper<'a> {
            error: Body<'a>,
        }
        let offset = match self {
            CliError::Parse { offset, .. } => *offset,
            _ => None,
        };
        serde_json::to_string(&Wrapper {
            error: Body {
                kind: self.kind(),
                message: self.to_string(),
                exit_code: self.exit_code(),
                offset,
            },
        })
        .expect("error object serializes")
    }

    /// Prefix the message with where the expression came from.
    pub fn from_expr(field: &str, e: ExprError) -> Self {
        CliError::Parse {
            message: format!("{field}: {e}"),
            offset: Some(e.offset()),
        }
    }
}

impl From<telegraph_core::Error> for CliError {
    fn from(e: telegraph_core::Error) -> Self {
        use telegraph_core::Error as E;
        match e {
            E::InvalidAlpha(_) | E::InvalidLength(_) | E::InvalidArgument(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
