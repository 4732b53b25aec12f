use thiserror::Error;

pub type Result<T> = std::result::Result<T, AdicError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdicError {
    #[error("invalid ring configuration: {0}")]
    InvalidConfig(String),

    #[error("precision exceeded: level {level} requested but precision is {precision}")]
    PrecisionExceeded { level: usize, precision: usize },

    #[error("ring configuration mismatch")]
    ConfigMismatch,

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("d∘d ≠ 0 at degree {0}")]
    NotAComplex(i32),

    #[error("not a chain map at degree {0}")]
    NotAChainMap(i32),

    #[error("generator {0} of the sequence is a unit")]
    UnitGenerator(usize),

    #[error("map is not surjective at level {0}")]
    NotSurjective(usize),

    #[error("module is not projective at level {0}")]
    NotProjective(usize),

    #[error("index {index} lies outside the materialization window {window}")]
    Unmaterialized { index: usize, window: usize },

    #[error("undetermined at precision {precision}: {reason}")]
    Undetermined { precision: usize, reason: String },

    #[error("precision insufficient: {0}; increase N")]
    PrecisionInsufficient(String),

    #[error("not finitely generated at window {0}")]
    NotFinitelyGenerated(usize),

    #[error("not cofinite: {0}")]
    NotCofinite(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),
}
