use std::fmt::{Debug, Display};

use serde_json::json;

/// Variants that only wrap an error from another module.
const WRAPPERS: [&str; 6] = ["Isometry", "Surgery", "Linalg", "Model", "Flow", "Fig8"];

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input; exit code 1.
    Usage(String),
    /// A library error; exit code 2.
    Domain { name: String, message: String },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(e: impl Display) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn domain<E: Debug + Display>(e: E) -> Self {
        CliError::Domain {
            name: error_name(&format!("{e:?}")),
            message: e.to_string(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain { .. } => 2,
        }
    }

    pub fn report(&self) -> String {
        match self {
            CliError::Usage(m) => format!("error: {m}"),
            CliError::Domain { name, message } => {
                json!({"error": name, "message": message}).to_string()
            }
        }
    }
}

/// The innermost variant name of a `Debug` rendering such as
/// `Isometry(NotInGroup { residual: 1.0 })`.
pub fn error_name(debug: &str) -> String {
    let mut s = debug.trim();
    loop {
        let end = s
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(s.len());
        let (head, rest) = s.split_at(end);
        if WRAPPERS.contains(&head) && rest.starts_with('(') {
            s = rest[1..].trim_start();
            continue;
        }
        return head.to_string();
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::domain(e)
            }
        }
    )*};
}

domain_from!(
    crkit_core::isometry::IsometryError,
    crkit_core::flows::FlowError,
    crkit_core::fig8::Fig8Error,
    crkit_core::surgery::SurgeryError,
    crkit_core::models::ModelError,
    crkit_core::linalg::LinalgError
);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn innermost_variant() {
        assert_eq!(
            error_name("Isometry(NotInGroup { residual: 1.0 })"),
            "NotInGroup"
        );
        assert_eq!(
            error_name("Surgery(NotCoprime { p: 2, n: 4 })"),
            "NotCoprime"
        );
        assert_eq!(error_name("UnknownFamily"), "UnknownFamily");
        assert_eq!(error_name("NegativeDelta { delta: -1.0 }"), "NegativeDelta");
    }
}
