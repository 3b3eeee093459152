use thiserror::Error;

/// Errors raised by tree, algebra and linear-algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("tree contains more than one special vertex (second `@` at byte {offset})")]
    MultipleSpecial { offset: usize },

    #[error("generator label 0 at byte {offset}; labels start at 1")]
    ZeroLabel { offset: usize },

    #[error("expected degree {expected}, found degree {found}")]
    DegreeMismatch { expected: u8, found: u8 },

    #[error("total degree {0} exceeds 1; products with two special vertices are not supported")]
    DegreeOverflow(u8),

    #[error("label {label} is outside the permutation domain 1..={size}")]
    LabelOutOfDomain { label: u32, size: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("vector has a component on the empty word")]
    UnitComponent,

    #[error("word {0:?} is not a Lyndon word")]
    NotLyndon(Vec<u32>),

    #[error("subspaces live in different ambient spaces")]
    UniverseMismatch,

    #[error("matrix entry references an undeclared key")]
    UndeclaredKey,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
