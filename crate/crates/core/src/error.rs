use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group handle mismatch: {0}")]
    HandleMismatch(String),
    #[error("resource bound exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: u128 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("{what} index {index} out of range (max {max})")]
    OutOfRange { what: &'static str, index: usize, max: usize },
    #[error("element of G_{level} is not in the Moore subgroup: face d_{face} is nontrivial")]
    NotInMoore { level: usize, face: usize },
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("map is not surjective: image has {image} of {target} elements")]
    NotSurjective { image: usize, target: usize },
    #[error("undecided at bound {bound}: {what}")]
    Undecided { what: String, bound: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn resource(what: impl Into<String>, limit: impl Into<u128>) -> Self {
        Error::Resource { what: what.into(), limit: limit.into() }
    }
}
