use std::fmt;

use orient_core::format::ParseError;
use orient_core::Error;

use crate::report::Output;

/// Failure classes, each with its own exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Unreadable or invalid input: 2.
    Parse,
    /// No solution exists (disconnected, bridge, one-way cut, cyclic): 3.
    Infeasible,
    /// Input exceeds a size bound of an exhaustive or exact method: 4.
    SizeBound,
    /// A claimed value did not check out: 1.
    Verification,
    /// Anything else: 1.
    Other,
}

impl Kind {
    pub fn exit_code(self) -> u8 {
        match self {
            Kind::Parse => 2,
            Kind::Infeasible => 3,
            Kind::SizeBound => 4,
            Kind::Verification | Kind::Other => 1,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
    /// Report to print before failing, e.g. an infeasibility witness.
    pub output: Option<Output>,
}

impl CliError {
    pub fn new(kind: Kind, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
            output: None,
        }
    }

    pub fn with_output(mut self, output: Output) -> Self {
        self.output = Some(output);
        self
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::new(Kind::Parse, e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        // Files are 1-based; the library reports 0-based vertices.
        if let Error::Bridge { u, v, .. } = e {
            return CliError::new(
                Kind::Infeasible,
                format!("edge {} {} is a bridge, so no strong orientation exists", u + 1, v + 1),
            );
        }
        let kind = match &e {
            Error::Disconnected | Error::Bridge { .. } | Error::OneWayCut(_) | Error::Cyclic => Kind::Infeasible,
            Error::TooLarge { .. } | Error::BudgetExceeded { .. } => Kind::SizeBound,
            Error::EmptyGraph
            | Error::VertexOutOfRange { .. }
            | Error::SelfLoop { .. }
            | Error::DuplicateEdge { .. }
            | Error::InvalidTree(_)
            | Error::LengthMismatch { .. }
            | Error::InvalidEpsilon(_)
            | Error::InvalidInstance(_) => Kind::Parse,
            Error::Internal(_) => Kind::Other,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::new(Kind::Other, format!("{e:#}"))
    }
}
