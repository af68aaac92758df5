use serde_json::{json, Value};

/// Failures that stop a command before it produces a verdict.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input; `path` locates the offending field (empty for the
    /// document as a whole).
    Schema { path: String, message: String },
    /// Well-formed input that violates a mathematical hypothesis.
    Hypothesis(String),
}

impl CliError {
    pub fn schema(path: &str, message: impl Into<String>) -> Self {
        CliError::Schema {
            path: path.to_string(),
            message: message.into(),
        }
    }

    #[cfg(test)]
    pub fn path(&self) -> Option<&str> {
        match self {
            CliError::Schema { path, .. } => Some(path),
            CliError::Hypothesis(_) => None,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Schema { .. } => 2,
            CliError::Hypothesis(_) => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Schema { path, message } => {
                json!({ "error": { "kind": "schema", "path": path, "message": message } })
            }
            CliError::Hypothesis(message) => {
                json!({ "error": { "kind": "hypothesis", "message": message } })
            }
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Schema { path, message } if path.is_empty() => {
                write!(f, "schema error: {message}")
            }
            CliError::Schema { path, message } => write!(f, "schema error at {path}: {message}"),
            CliError::Hypothesis(message) => write!(f, "hypothesis violated: {message}"),
        }
    }
}

impl From<cone_zeta::Error> for CliError {
    fn from(e: cone_zeta::Error) -> Self {
        use cone_zeta::Error::*;
        match e {
            Hypothesis(msg) => CliError::Hypothesis(msg),
            NonPositiveDirection { .. }
            | ExpansionDirection { .. }
            | NotPointed
            | DependentGenerators
            | WeightDatum(_)
            | GroupTooLarge(_) => CliError::Hypothesis(e.to_string()),
            _ => CliError::schema("", e.to_string()),
        }
    }
}
