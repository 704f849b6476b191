use std::fmt;

use serde::Serialize;

/// Outcome of checking one structural statement on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum Verdict {
    Verified(String),
    Falsified(String),
    OutOfHypothesis(String),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Verified(_))
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, Verdict::Falsified(_))
    }

    pub fn detail(&self) -> &str {
        match self {
            Verdict::Verified(d) | Verdict::Falsified(d) | Verdict::OutOfHypothesis(d) => d,
        }
    }

    pub(crate) fn from_result(r: crate::Result<String>) -> Self {
        match r {
            Ok(detail) => Verdict::Verified(detail),
            Err(e) => Verdict::Falsified(e.to_string()),
        }
    }

    /// Like `from_result`, with `None` meaning the hypotheses were not met.
    pub(crate) fn from_optional(r: crate::Result<Option<String>>, reason: &str) -> Self {
        match r {
            Ok(Some(detail)) => Verdict::Verified(detail),
            Ok(None) => Verdict::OutOfHypothesis(reason.to_string()),
            Err(e) => Verdict::Falsified(e.to_string()),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Verified(d) => write!(f, "verified ({d})"),
            Verdict::Falsified(d) => write!(f, "falsified: {d}"),
            Verdict::OutOfHypothesis(d) => write!(f, "out of hypothesis: {d}"),
        }
    }
}

/// Early-returns a falsification from a check function.
macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::CoreError::InvariantViolation(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;
