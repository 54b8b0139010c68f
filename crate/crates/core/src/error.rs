use core::fmt;

use crate::jet::GmfClass;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    NonFinite,
    NotSymmetric,
    /// A cubic key is not a nondecreasing triple inside `1..=dim`.
    BadCubicIndex([usize; 3]),
    EigenNoConvergence,
    NotUnitVector(f64),
    NotBirthDeath(GmfClass),
    IndexOutOfRange { index: usize, max: usize },
    InvalidArgument(&'static str),
    InconsistentDiagram,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NonFinite => f.write_str("non-finite coefficient"),
            Error::NotSymmetric => f.write_str("quadratic part is not symmetric"),
            Error::BadCubicIndex(idx) => write!(
                f,
                "cubic index {:?} is not a sorted 1-based triple within the dimension",
                idx
            ),
            Error::EigenNoConvergence => f.write_str("symmetric eigensolver did not converge"),
            Error::NotUnitVector(n) => write!(f, "vector has norm {n}, expected 1"),
            Error::NotBirthDeath(c) => write!(f, "jet is not a birth-death jet ({c:?})"),
            Error::IndexOutOfRange { index, max } => {
                write!(f, "index {index} out of range 0..={max}")
            }
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            Error::InconsistentDiagram => f.write_str("zigzag diagram maps do not match bases"),
        }
    }
}

impl core::error::Error for Error {}
