use std::io;
use std::path::PathBuf;

use serde::Serialize;

/// Everything the front end can fail with, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid config at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Domain(#[from] cpbspec_core::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn config(key: impl Into<String>, message: impl ToString) -> Self {
        Self::Config {
            key: key.into(),
            message: message.to_string(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Syntax { .. } | Self::Config { .. } | Self::Usage(_) => 2,
            Self::Domain(_) => 3,
            Self::Io { .. } => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Self::Syntax { .. } => "syntax",
            Self::Config { .. } => "config",
            Self::Usage(_) => "usage",
            Self::Domain(_) => "domain",
            Self::Io { .. } => "io",
        }
    }

    /// One-line JSON document for stderr.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            kind: &'a str,
            exit_code: i32,
            message: String,
            #[serde(skip_serializing_if = "Option::is_none")]
            key: Option<&'a str>,
            #[serde(skip_serializing_if = "Option::is_none")]
            line: Option<usize>,
            #[serde(skip_serializing_if = "Option::is_none")]
            column: Option<usize>,
            #[serde(skip_serializing_if = "Option::is_none")]
            path: Option<String>,
        }
        let mut body = Body {
            kind: self.kind(),
            exit_code: self.exit_code(),
            message: self.to_string(),
            key: None,
            line: None,
            column: None,
            path: None,
        };
        match self {
            Self::Syntax { line, column, .. } => {
                body.line = Some(*line);
                body.column = Some(*column);
            }
            Self::Config { key, .. } => body.key = Some(key),
            Self::Io { path, .. } => body.path = Some(path.display().to_string()),
            _ => {}
        }
        serde_json::json!({ "error": body }).to_string()
    }
}
