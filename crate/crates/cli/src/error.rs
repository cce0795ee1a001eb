use thiserror::Error;

/// Exit status for malformed command lines (`EX_USAGE`).
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("invalid lattice file: {0}")]
    Format(String),
    #[error(transparent)]
    Lattice(#[from] hyperlattice_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lattice(e) if e.is_internal() => EXIT_INTERNAL,
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_PRECONDITION,
        }
    }

    /// Short machine-readable tag for the error.
    pub fn kind(&self) -> String {
        match self {
            CliError::Io { .. } => "io".into(),
            CliError::Json { .. } => "json".into(),
            CliError::Format(_) => "format".into(),
            CliError::Usage(_) => "usage".into(),
            CliError::Lattice(e) => {
                let debug = format!("{e:?}");
                let name: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
                snake_case(&name)
            }
        }
    }

    pub fn from_json(e: serde_json::Error) -> Self {
        let text = e.to_string();
        let message = match text.rfind(" at line ") {
            Some(i) => text[..i].to_string(),
            None => text,
        };
        CliError::Json { line: e.line(), column: e.column(), message }
    }
}

fn snake_case(name: &str) -> String {
    let mut out = String::with_capacity(name.len() + 4);
    for (i, c) in name.chars().enumerate() {
        if c.is_uppercase() {
            if i > 0 {
                out.push('_');
            }
            out.extend(c.to_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

pub type CliResult<T> = Result<T, CliError>;
