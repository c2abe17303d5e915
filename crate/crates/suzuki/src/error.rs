use thiserror::Error;

/// Problems with input files or fixtures; the CLI maps these to exit code 2.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Core(#[from] suzuki_core::Error),
    #[error("fixture {name}: {message}")]
    Fixture { name: String, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Other(String),
}

impl InputError {
    pub fn fixture(name: &str, message: impl Into<String>) -> Self {
        InputError::Fixture { name: name.to_string(), message: message.into() }
    }

    /// Prefixes a syntax error with the file it came from.
    pub fn in_file(self, file: &str) -> Self {
        match self {
            InputError::Syntax { line, message } => InputError::Other(format!("{file}:{line}: {message}")),
            other => other,
        }
    }
}
