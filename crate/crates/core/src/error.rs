use alloc::string::String;
use alloc::vec::Vec;

use crate::exact::Rational;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A floating point result overflowed or became NaN.
    #[error("numeric range error: {0}")]
    NumericRange(String),
    /// An iterative numeric procedure hit its iteration cap.
    #[error("no convergence: {0}")]
    NonConvergence(String),
    /// The contiguous-relation system has only the trivial solution.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    /// The nullspace vector cannot be normalized to phi_4 = n + rho.
    #[error("normalization error: phi_4 component of the nullspace vector is zero")]
    Normalization { basis: Vec<Rational> },
    /// The contiguous-relation system has more than one independent solution.
    #[error("ambiguous contiguous relation: nullspace has dimension {}", basis.len())]
    Ambiguous { basis: Vec<Vec<Rational>> },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
