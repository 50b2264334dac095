use crate::syntax::Span;
use serde::Serialize;
use std::fmt;

/// Warnings produced while analysing or flattening. They never stop the
/// pipeline; `--strict` turns them into a non-zero exit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Diagnostic {
    pub code: DiagCode,
    pub class: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span: Option<Span>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagCode {
    /// Private member that nothing carried into the subclass can reach.
    Anomaly,
    /// Override that Java rejects (static mismatch or final superclass member).
    IllegalOverride,
    /// Package-private member inherited across a package boundary.
    PackageVisibility,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::Anomaly => "anomaly",
            DiagCode::IllegalOverride => "illegal-override",
            DiagCode::PackageVisibility => "package-visibility",
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "warning[{}] {}: {}", self.code.as_str(), self.class, self.message)?;
        if let Some(span) = self.span {
            write!(f, " (at {span})")?;
        }
        Ok(())
    }
}
