use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("vector {index} of the sub-lattice is not contained in the super-lattice")]
    NotContained { index: usize },
    #[error("a coincidence system needs at least two homomorphisms, got {0}")]
    TooFewHomomorphisms(usize),
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureCap { cap: usize },
    #[error("{what} of size {size} exceeds the cap of {cap}")]
    SizeCap {
        what: &'static str,
        size: String,
        cap: u64,
    },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}
