//! Values that may only be known as lower bounds.

use std::fmt;

use serde::{Serialize, Serializer};

/// An integer known exactly, or only known to be at least some bound because
/// a computation hit its truncation limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Censored {
    Exact(u32),
    AtLeast(u32),
}

impl Censored {
    pub fn exact(&self) -> Option<u32> {
        match self {
            Censored::Exact(v) => Some(*v),
            Censored::AtLeast(_) => None,
        }
    }

    pub fn is_censored(&self) -> bool {
        matches!(self, Censored::AtLeast(_))
    }

    /// The exact value or the lower bound.
    pub fn bound(&self) -> u32 {
        match self {
            Censored::Exact(v) | Censored::AtLeast(v) => *v,
        }
    }
}

impl fmt::Display for Censored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Censored::Exact(v) => write!(f, "{v}"),
            Censored::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// Exact values serialize as numbers, censored ones as `">=n"` strings.
impl Serialize for Censored {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Censored::Exact(v) => s.serialize_u32(*v),
            Censored::AtLeast(v) => s.serialize_str(&format!(">={v}")),
        }
    }
}
