use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("tail not certifiable for degree {degree} within radius cap {cap} (best bound {best_bound:e})")]
    TailNotCertifiable { degree: u32, cap: u32, best_bound: f64 },

    #[error("moment table covers degree {available}, degree {needed} required")]
    MomentTableTooShort { needed: usize, available: usize },

    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("symbol has a zero; reciprocal not in Wiener algebra (min modulus {min_modulus:e})")]
    WienerViolated { min_modulus: f64 },

    #[error("grid size n = {n} exceeds the conditioning cap {cap}; use extended precision (cap 20)")]
    ConditioningCap { n: usize, cap: usize },

    #[error("numerically singular normal equations (condition estimate {condition:e})")]
    NumericallySingular { condition: f64 },
}
