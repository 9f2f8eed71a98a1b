use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("coefficient overflow in polynomial arithmetic")]
    Overflow,
    #[error("cannot parse polynomial: {0}")]
    PolyParse(String),
    #[error("malformed code: {0}")]
    Malformed(String),
    #[error("crossing label {label} appears {count} times (expected 2)")]
    LabelCount { label: String, count: usize },
    #[error("code is not realizable as a planar diagram")]
    NonPlanar,
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("move not applicable: {0}")]
    Inapplicable(String),
    #[error("diagram has {crossings} crossings, limit is {limit}")]
    CrossingLimit { crossings: usize, limit: usize },
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("strand {0} does not cross the cut level")]
    NotThroughStrand(usize),
    #[error("closure not supported: {0}")]
    UnsupportedClosure(String),
    #[error("generation limit exceeded: {0}")]
    GenerationLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
