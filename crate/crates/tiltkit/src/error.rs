use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad invocation; exit code 2.
    #[error("usage: {0}")]
    Usage(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("unknown generator kind {0:?}")]
    UnknownKind(String),
    /// Well-formed invocation on invalid data; exit code 1.
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] tiltkit_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::UnknownSuite(_) | CliError::UnknownKind(_) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Usage(_) => "Usage".into(),
            CliError::UnknownSuite(_) => "UnknownSuite".into(),
            CliError::UnknownKind(_) => "UnknownKind".into(),
            CliError::Invalid(_) => "InvalidInput".into(),
            CliError::Io(_) => "Io".into(),
            CliError::Core(e) => {
                let dbg = format!("{e:?}");
                dbg.split(['(', ' ']).next().unwrap_or("Core").to_string()
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": self.kind(), "detail": self.to_string(), "exit_code": self.exit_code() })
    }
}
