//! Exact invariants of links of invertible weighted-homogeneous singularities.
//!
//! The pipeline starts from an [`InvertiblePolynomial`], solves its
//! [`WeightSystem`], expands the divisor of the Alexander polynomial as a
//! [`CyclotomicDivisor`], and derives Betti numbers, torsion, the Milnor number
//! and the obstruction verdicts in [`obstruct`]. Everything is exact integer or
//! rational arithmetic.

pub mod alexander;
pub mod analysis;
mod arith;
pub mod families;
pub mod obstruct;
pub mod orlik;
pub mod poly;
pub mod tables;
pub mod transpose;
pub mod weights;

use thiserror::Error;

pub use alexander::{CyclotomicDivisor, DensePoly, Evaluation, UvData};
pub use analysis::{HomologyProfile, LinkAnalysis};
pub use arith::determinant;
pub use obstruct::{LinkClass, ObstructionReport};
pub use orlik::TorsionResult;
pub use poly::{AtomicDecomposition, InvertiblePolynomial, PolyError};
pub use weights::{M2M3Split, SplitPattern, SuspensionForm, WeightSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("solved weight of variable {index} is not positive")]
    NonPositiveWeight { index: usize },
    #[error("weight system does not satisfy the polynomial: {0}")]
    InvalidWeights(String),
    #[error("{0} does not fit in 64 bits")]
    Overflow(String),
    #[error("m2 = {m2} and m3 = {m3} are not coprime")]
    NonCoprime { m2: u64, m3: u64 },
    #[error("input does not have the expected shape: {0}")]
    PatternMismatch(String),
    #[error("divisor has a non-integral coefficient")]
    NonIntegralDivisor,
    #[error("evaluation is not an integer: {0}")]
    NonIntegralEvaluation(String),
    #[error("weight of variable {index} is not smaller than the degree")]
    WeightExceedsDegree { index: usize },
    #[error("Milnor number product is not an integer")]
    NonIntegralMilnor,
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: u64, cap: u64 },
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("torsion quotient c for index set {0:?} is not an integer")]
    NonIntegralC(Vec<usize>),
    #[error("criterion does not apply: {0}")]
    NotApplicable(String),
    #[error("closed form disagrees with the solver: {0}")]
    ClosedFormMismatch(String),
    #[error("divisibility requirement failed: {0}")]
    DivisibilityFailure(String),
    #[error("invalid parameters: {0}")]
    ParameterViolation(String),
    #[error("hypothesis not satisfied: {0}")]
    HypothesisViolation(String),
    /// A family's expected conclusion failed on an input meeting its hypotheses.
    #[error("conclusion fails: {0}")]
    Counterexample(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
