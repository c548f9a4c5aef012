//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by constructions, validations and enumerations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: the message names the violated invariant.
    #[error("validation failed: {0}")]
    Validation(String),
    /// An enumeration would visit more configurations than the configured cap.
    #[error("enumeration cap exceeded: {what} needs {needed} configurations, cap is {cap}")]
    CapExceeded {
        what: String,
        needed: u128,
        cap: u64,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("{0:?} is not an information set")]
    NotInformationSet(Vec<String>),
    /// Information-set queries need |C| = |A|^k.
    #[error("code of size {size} is not isomorphic to a power of the alphabet (order {alphabet_order}); information-set queries are refused")]
    NotSystematic { size: u128, alphabet_order: usize },
    #[error("graph is disconnected ({components} components); connectedness is required")]
    Disconnected { components: usize },
    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),
    #[error("non-standard input: {0}")]
    NonStandardInput(String),
    #[error("zero-mass proposal on tree edge `{0}`")]
    ZeroMassProposal(String),
    #[error("missing external field")]
    MissingField,
    #[error("incompatible method: {0}")]
    IncompatibleMethod(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}
