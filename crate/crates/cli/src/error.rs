use std::fmt;
use std::process::ExitCode;

use iet_core::format::FormatError;
use iet_core::growth::GrowthError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Usage,
    Format,
    Io,
    Capacity,
}

impl Kind {
    fn label(self) -> &'static str {
        match self {
            Kind::Usage => "usage",
            Kind::Format => "format",
            Kind::Io => "io",
            Kind::Capacity => "capacity",
        }
    }

    pub fn exit_code(self) -> ExitCode {
        ExitCode::from(match self {
            Kind::Usage => 2,
            Kind::Format | Kind::Io => 3,
            Kind::Capacity => 4,
        })
    }
}

/// Printed as a single line: `error[<kind>] <input>: <message>`.
#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub input: String,
    pub message: String,
}

impl CliError {
    pub fn new(kind: Kind, input: impl Into<String>, message: impl fmt::Display) -> Self {
        CliError {
            kind,
            input: input.into(),
            message: message.to_string(),
        }
    }

    pub fn usage(input: impl Into<String>, message: impl fmt::Display) -> Self {
        Self::new(Kind::Usage, input, message)
    }

    pub fn format(input: impl Into<String>, message: impl fmt::Display) -> Self {
        Self::new(Kind::Format, input, message)
    }

    pub fn from_format(input: impl Into<String>, e: FormatError) -> Self {
        let kind = match e {
            FormatError::Io { .. } => Kind::Io,
            _ => Kind::Format,
        };
        // file errors already carry the path
        match e {
            FormatError::InFile { path, source } => Self::new(kind, path, source),
            FormatError::Io { path, message } => Self::new(kind, path, message),
            e => Self::new(kind, input, e),
        }
    }

    pub fn from_growth(input: impl Into<String>, e: GrowthError) -> Self {
        match e {
            GrowthError::Capacity { .. } => Self::new(Kind::Capacity, input, e),
            GrowthError::NoPowers => Self::usage(input, e),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
        write!(
            f,
            "error[{}] {}: {}",
            self.kind.label(),
            flat(&self.input),
            flat(&self.message)
        )
    }
}
