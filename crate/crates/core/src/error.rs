use alloc::string::String;

use crate::ring::Ring;

/// Errors raised by the exact-algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: Ring, found: Ring },
    #[error("operation `{op}` requires the integer ring, found {found}")]
    RequiresIntegers { op: &'static str, found: Ring },
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{0} is not a prime modulus")]
    InvalidModulus(u64),
    #[error("value {value} is not valid in {ring}")]
    InvalidScalar { ring: Ring, value: String },
    #[error("composite of consecutive differentials is nonzero")]
    NotAComplex,
    #[error("ambient ranks differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("matrix does not map relations into relations ({context})")]
    IllDefinedMap { context: String },
    #[error("invalid cube: {0}")]
    InvalidCube(String),
    #[error("unknown direction `{0}`")]
    UnknownDirection(String),
    #[error("cube has {0} directions; at most 8 are supported")]
    TooManyDirections(usize),
    #[error("vertex {0} is not a free module")]
    NonFreeVertex(String),
    #[error("annihilation exponent for direction {direction} exceeds bound {bound}")]
    BoundExceeded { direction: String, bound: u32 },
    #[error("maps t{i} and t{j} do not commute at degree {degree}")]
    NonCommuting { i: usize, j: usize, degree: usize },
    #[error("endomorphisms {i} and {j} do not commute")]
    NonCommutingEndos { i: usize, j: usize },
    #[error("truncation window too small: need at least {needed}, have {available}")]
    WindowTooSmall { needed: usize, available: usize },
    #[error("object is not t-regular: T_{index} is nonzero at degree {degree}")]
    NotTRegular { index: usize, degree: usize },
    #[error("object is not Nil within the truncation window")]
    NotNil,
    #[error("endomorphism family is not nilpotent")]
    NotNilpotent,
    #[error("not an f-filtration: f x_{step} is not contained in x_{next}", next = .step + 1)]
    InvalidFiltration { step: usize },
    #[error("filtration step {step} is not contained in its predecessor")]
    NotDecreasing { step: usize },
    #[error("sequence is not exact at degree {degree}: {reason}")]
    NotExact { degree: usize, reason: &'static str },
    #[error("submodule does not contain the relations of its parent at degree {degree}")]
    NotASubobject { degree: usize },
    #[error("submodule is not closed under t{var} at degree {degree}")]
    NotClosed { var: usize, degree: usize },
    #[error("linear system has no exact solution")]
    NoSolution,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = core::result::Result<T, Error>;
