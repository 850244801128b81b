use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("matrix has no entry above the absolute zero tolerance")]
    ZeroMatrix,

    #[error("matrix is numerically rank deficient: rank {rank} < {required} columns")]
    RankDeficient { rank: usize, required: usize },

    #[error("k = {k} exceeds the numerical rank {rank} of the data")]
    KTooLarge { k: usize, rank: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("entry ({row}, {col}) has modulus {modulus}, expected 1")]
    NotUnimodular {
        row: usize,
        col: usize,
        modulus: f64,
    },

    #[error("columns are not orthonormal (max deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },

    #[error("problem too large for exhaustive search: N = {n} > {max}")]
    TooLarge { n: usize, max: usize },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("SVD did not converge: {0}")]
    SvdNoConvergence(String),
}
