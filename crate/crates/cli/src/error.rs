use std::fmt;

/// Everything that ends a run early. Exit codes: 2 domain, 3 precision, 4 I/O;
/// verification failure (1) is not an error.
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Precision(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Precision(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(_) => "domain",
            CliError::Precision(_) => "precision",
            CliError::Io(_) => "io",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Precision(m) | CliError::Io(m) => m,
        }
    }

    /// `error kind=<kind> code=<n> reason=<json string>` on one line.
    pub fn line(&self) -> String {
        let reason = serde_json::to_string(self.message()).expect("strings serialize");
        format!("error kind={} code={} reason={reason}", self.kind(), self.exit_code())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.line())
    }
}

impl std::error::Error for CliError {}

impl From<hecke_core::Error> for CliError {
    fn from(e: hecke_core::Error) -> Self {
        if e.is_domain_error() {
            CliError::Domain(e.to_string())
        } else {
            CliError::Precision(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
