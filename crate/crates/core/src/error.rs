use alloc::string::String;

/// Errors raised by the evaluators, translations and linear-algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("variable `{0}` used both as an element and as a set")]
    SortMismatch(String),
    #[error("no value supplied for indeterminate `{0}`")]
    MissingIndeterminate(String),
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(char),
    #[error("alphabet is invalid: {0}")]
    InvalidAlphabet(String),
    #[error("universe of size {0} is too large for set quantification (limit 64)")]
    UniverseTooLarge(usize),
    #[error("bound variable `{0}` shadows an enclosing binder")]
    Shadowing(String),
    #[error("negation applied to a non-boolean subformula: {0}")]
    IllegalNegation(String),
    #[error("formula is not in RMSOL; offending subformula: {0}")]
    NotRmsol(String),
    #[error("formula is not in bMSOL: {0}")]
    NotBmsol(String),
    #[error("term is not ground: {0}")]
    NonGround(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Hankel rank not saturated at basis length {basis_len}: rank {rank}, next rank {next_rank}")]
    RankNotSaturated {
        basis_len: usize,
        rank: usize,
        next_rank: usize,
    },
    #[error("shifted Hankel row for `{0}` is not in the span of the basis rows")]
    Inexpressible(String),
}

pub type Result<T> = core::result::Result<T, Error>;
