use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {0} out of range, expected 1, 2 or 3")]
    InvalidIndex(i64),

    #[error("unknown class name `{0}`")]
    UnknownClassName(String),

    #[error("lattice arithmetic overflow")]
    Overflow,

    #[error("double cover datum is inconsistent: 2M = {twice_m} but D = {branch}")]
    BranchMismatch { twice_m: String, branch: String },

    #[error("odd intersection number {0} where an even one is required")]
    Parity(i64),

    #[error("invalid bidouble data: {}", .0.join("; "))]
    InvalidBidouble(Vec<String>),

    #[error("invalid line arrangement: {}", .0.join("; "))]
    InvalidArrangement(Vec<String>),

    #[error("cohomology assembly produced negative h1 = {h1} for class {class}")]
    Inconsistent { class: String, h1: i64 },

    #[error("no degree-2 cover with source genus {g_source} over target genus {g_target} (ramification {ramification})")]
    ImpossibleCover {
        g_source: u32,
        g_target: u32,
        ramification: i64,
    },

    #[error("{0}")]
    Domain(String),
}
