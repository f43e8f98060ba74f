use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("window size mismatch: {0} vs {1}")]
    WindowMismatch(usize, usize),

    #[error("invalid position set: {0}")]
    InvalidPositions(String),

    #[error("integer overflow in polynomial arithmetic")]
    Overflow,

    #[error("polynomial of degree {degree} cannot be twisted by q^{bound}")]
    DegreeTooLarge { degree: usize, bound: i64 },

    #[error("polynomial is not a valid q-derivative for N = {0}")]
    NotAPartial(i64),

    #[error("cannot parse polynomial: {0}")]
    PolyParse(String),

    #[error("{x} is not below {y} in Bruhat order")]
    NotBelow { x: Permutation, y: Permutation },

    #[error("expected {x} < {y}")]
    NotStrictlyBelow { x: Permutation, y: Permutation },

    #[error("window size {0} is too large for a full Kazhdan-Lusztig table")]
    TableTooLarge(usize),

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("malformed edge set: {0}")]
    MalformedEdgeSet(String),

    #[error("vertex {0} out of range")]
    NoSuchVertex(usize),

    #[error("the crown of a decomposition must differ from the top vertex")]
    CrownIsTop,

    #[error("graph has no unique maximal vertex")]
    NoUniqueTop,

    #[error("the coset of {0} contains the whole interval, so it is not a proper decomposition")]
    CosetContainsTop(Permutation),

    #[error("canonical coset decomposition is invalid: {0}")]
    CanonicalInvalid(String),

    #[error("hypercube map inconsistency: {0}")]
    HypercubeMap(String),

    #[error("Kazhdan-Lusztig basis expansion left a nonzero residue")]
    NonzeroResidue,

    #[error("corner rank data is not the rank matrix of a permutation")]
    InvalidRankMatrix,

    #[error("kl cache: {0}")]
    Cache(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
