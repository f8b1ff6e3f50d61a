use crate::surface::GeneratorName;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {ell} is too small here (need ell >= {min})")]
    ModulusTooSmall { ell: u64, min: u64 },
    #[error("({x}, {y}, {z}) is not on the surface mod {ell}")]
    OffSurface { x: u64, y: u64, z: u64, ell: u64 },
    #[error("the zero element has no multiplicative order")]
    ZeroOrder,
    #[error("conic slice at a = {a} mod {ell} is empty")]
    EmptyConic { a: u64, ell: u64 },
    #[error("domain is not closed under {gen}")]
    DomainNotClosed { gen: GeneratorName },
    #[error("generators do not act transitively on the domain")]
    NotTransitive,
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("genus bookkeeping failed: degree {degree} with branch contribution {branch} gives no nonnegative integer genus")]
    GenusInconsistency { degree: u64, branch: u64 },
    #[error("verification failed [{check}]: {witness}")]
    VerificationFailed { check: String, witness: String },
}

pub type Result<T> = std::result::Result<T, Error>;
