use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("point group is not finite or too large (closure exceeded {bound} elements)")]
    PointGroupTooLarge { bound: usize },

    #[error("inconsistent generators: {0}")]
    InconsistentGenerators(String),

    #[error("invalid group data: {0}")]
    InvalidGroup(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("character restriction has a nontrivial stabilizer in D1; induction from L is not irreducible")]
    NotMaximalOrbit,

    #[error("budget exceeded: {needed} action evaluations requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("no crystal-like certificate: {0}")]
    NoCertificate(String),

    #[error("unsupported lattice choice: {0}")]
    UnsupportedLattice(String),
}
