use std::fmt;

use thiserror::Error;

/// A single violated invariant, naming the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: &'static str,
    pub message: String,
}

impl Violation {
    pub(crate) fn new(field: &'static str, message: impl Into<String>) -> Self {
        Self {
            field,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Every violation found while validating one entity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violations(pub Vec<Violation>);

impl Violations {
    pub fn iter(&self) -> impl Iterator<Item = &Violation> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(Violations),

    #[error("empty file")]
    EmptyFile,

    #[error("infinite CCR: communication time is zero")]
    InfiniteCcr,

    #[error("remote not faster: no finite rate suffices")]
    RemoteNotFaster,

    #[error("transfer alone exceeds local compute time")]
    TransferExceedsLocal,

    #[error("model comparison requires zero queueing delay on every hop (hop {hop} has {queue_delay} s)")]
    QueueDelayUnsupported { hop: usize, queue_delay: f64 },

    #[error("trace unreadable: {0}")]
    Io(#[from] std::io::Error),

    #[error("trace unreadable: {0}")]
    Csv(#[from] csv::Error),
}

impl From<Violations> for Error {
    fn from(v: Violations) -> Self {
        Error::Invalid(v)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Collects violations for a real-valued field.
pub(crate) fn check_positive(out: &mut Vec<Violation>, field: &'static str, value: f64) {
    if !value.is_finite() {
        out.push(Violation::new(field, format!("{field} must be finite")));
    } else if value <= 0.0 {
        out.push(Violation::new(field, format!("{field} must be > 0")));
    }
}

pub(crate) fn check_non_negative(out: &mut Vec<Violation>, field: &'static str, value: f64) {
    if !value.is_finite() {
        out.push(Violation::new(field, format!("{field} must be finite")));
    } else if value < 0.0 {
        out.push(Violation::new(field, format!("{field} must be >= 0")));
    }
}

pub(crate) fn into_result(violations: Vec<Violation>) -> Result<(), Violations> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Violations(violations))
    }
}
