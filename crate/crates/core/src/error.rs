use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tensor component {index} is not finite")]
    NonFinite { index: usize },

    #[error("symmetry violation: maximum deviation {max_deviation:e} exceeds tolerance {tol:e}")]
    SymmetryViolation { max_deviation: f64, tol: f64 },

    #[error("matrix is not symmetric and traceless (deviation {deviation:e})")]
    NotDeviatoric { deviation: f64 },

    #[error("tensor does not lie in the fourth-order harmonic space (residual {residual:e})")]
    NotHarmonic { residual: f64 },

    #[error("negative magnitude {0} in polar configuration")]
    NegativeMagnitude(f64),

    #[error("exponent vector {0:?} does not satisfy the degree equation")]
    InfeasibleSolution([u32; 6]),

    #[error("witness case {0} is out of range 1..=7")]
    WitnessCaseOutOfRange(u32),

    #[error("decomposition of a major-symmetric tensor gave v = {v:e}, |D1 - D2| = {dev_gap:e}")]
    InternalSymmetryBreach { v: f64, dev_gap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
