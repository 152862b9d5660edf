use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("letter refers to generator {index}, but the alphabet has {rank} generators")]
    InvalidLetter { index: usize, rank: usize },
    #[error("operands belong to different alphabets")]
    AlphabetMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed exponent in `{0}` (only `name^-1` is accepted)")]
    MalformedExponent(String),
    #[error("malformed element `{0}`")]
    MalformedElement(String),
    #[error("`{0}` is not an element of the free quandle")]
    NotInFreeQuandle(String),
    #[error("generator set is empty")]
    EmptyGeneratorSet,
    #[error("bound {bound} is smaller than generator tail length {needed}")]
    BoundTooSmall { bound: usize, needed: usize },
    #[error("closure exceeded {limit} elements")]
    ClosureTooLarge { limit: usize },
    #[error("`{0}` is not in the closure")]
    NotInClosure(String),
    #[error("input contains the identity word")]
    EmptyInputWord,
    #[error("line {line}: {message}")]
    Problem { line: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
