use std::fmt;

use galcoh_core::cohomology::CohomologyError;
use galcoh_core::isogeny::IsogenyError;
use galcoh_core::rootdata::RootDataError;
use galcoh_core::weyl::WeylError;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    /// Bad name, bad file, or an ambiguous or empty form selection.
    Resolution,
    /// A computed value disagrees with the closed-form value for its family.
    Validation,
    Guard,
    Engine,
}

#[derive(Debug, Clone, Serialize)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn resolution(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Resolution, message: message.into() }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Validation, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Resolution => 2,
            ErrorKind::Validation => 3,
            ErrorKind::Guard => 4,
            ErrorKind::Engine => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        let kind = match e {
            CohomologyError::Weyl(WeylError::GuardExceeded { .. }) | CohomologyError::FiberGuard { .. } => {
                ErrorKind::Guard
            }
            _ => ErrorKind::Engine,
        };
        CliError { kind, message: e.to_string() }
    }
}

impl From<IsogenyError> for CliError {
    fn from(e: IsogenyError) -> Self {
        match e {
            IsogenyError::Cohomology(c) => c.into(),
            IsogenyError::NotCentral | IsogenyError::NotTauStable => CliError::resolution(e.to_string()),
            _ => CliError { kind: ErrorKind::Engine, message: e.to_string() },
        }
    }
}

impl From<RootDataError> for CliError {
    fn from(e: RootDataError) -> Self {
        CliError::resolution(e.to_string())
    }
}
