use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no factorization or valuation")]
    Zero,
    #[error("{0} is not a negative discriminant (d < 0, d = 0 or 1 mod 4)")]
    InvalidDiscriminant(i64),
    #[error("the two discriminants must differ")]
    EqualDiscriminants,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("input outside the domain of the map: {0}")]
    Domain(String),
    #[error("class_of requires an invertible ideal")]
    NotInvertible,
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("product did not round to an integer after {0} bits")]
    NonIntegral(u64),
    #[error("cofactor {0} survived trial division up to the corollary bound")]
    CofactorRemains(String),
    #[error("precision {0} bits is below the 64-bit minimum")]
    PrecisionTooLow(u64),
    #[error("epsilon undefined: {0} divides both discriminants")]
    EpsilonUndefined(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
