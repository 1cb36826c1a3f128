use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input data.
    Input(String),
    /// Group enumeration exceeded the element limit.
    GroupTooLarge { limit: usize },
    /// Coset enumeration exceeded its cap; the presented group may be infinite.
    CosetOverflow { cap: usize },
    /// The fundamental group of a fixed-set component is not finite within the coset cap.
    Pi1NotFinite { component: String, cap: usize },
    /// The exact cover search for `N^G` has too many candidates.
    CoverSearchTooLarge { candidates: usize, cap: usize },
    /// A brute-force oracle was asked to run beyond its size cap.
    OracleCapExceeded { size: usize, cap: usize },
    /// Two independent computations that must agree did not.
    Inconsistency(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn inconsistency(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }

    /// True for failures caused by a configurable resource cap.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::GroupTooLarge { .. }
                | Error::CosetOverflow { .. }
                | Error::Pi1NotFinite { .. }
                | Error::CoverSearchTooLarge { .. }
                | Error::OracleCapExceeded { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(m) => write!(f, "input error: {m}"),
            Error::GroupTooLarge { limit } => {
                write!(f, "group has more than {limit} elements")
            }
            Error::CosetOverflow { cap } => {
                write!(f, "coset enumeration exceeded {cap} cosets")
            }
            Error::Pi1NotFinite { component, cap } => write!(
                f,
                "pi1 not finite within cap: component {component} exceeded {cap} cosets"
            ),
            Error::CoverSearchTooLarge { candidates, cap } => {
                write!(f, "cover search has {candidates} candidate classes, cap is {cap}")
            }
            Error::OracleCapExceeded { size, cap } => {
                write!(f, "oracle instance size {size} exceeds cap {cap}")
            }
            Error::Inconsistency(m) => write!(f, "internal consistency failure: {m}"),
        }
    }
}
