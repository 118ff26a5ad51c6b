use alloc::string::String;

use crate::ensembles::EnsembleKind;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("factor with exponent 0 (1 - q^0 vanishes)")]
    ZeroExponent,
    #[error("division by 1 - q^{divisor} leaves a nonzero remainder")]
    NonzeroRemainder { divisor: usize },
    #[error("polynomial degree {degree} exceeds the configured cap of {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("invalid ensemble parameters: {0}")]
    InvalidSpec(String),
    #[error("operation not supported for {0:?} ensembles")]
    UnsupportedSpec(EnsembleKind),
    #[error("brute-force enumeration cap exceeded: {0}")]
    OracleCapExceeded(String),
    #[error("half-perimeter parameter m = {m} exceeds the cap of {cap}")]
    PerimeterCapExceeded { m: usize, cap: usize },
    #[error("height {height} outside 1..={max}")]
    HeightOutOfRange { height: usize, max: usize },
    #[error("normalization and reference law are incompatible: {0}")]
    IncompatibleNormalization(String),
}

impl Error {
    /// True for errors caused by a configured size limit rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::DegreeCapExceeded { .. }
                | Error::OracleCapExceeded(_)
                | Error::PerimeterCapExceeded { .. }
        )
    }
}
