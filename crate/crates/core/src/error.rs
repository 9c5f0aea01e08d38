use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("{p}^{precision} does not fit the 63-bit coefficient range")]
    PrecisionTooLarge { p: u64, precision: u32 },
    #[error("modulus {0:?} is not monic of the expected degree")]
    BadModulus(Vec<u64>),
    #[error("modulus {0:?} is reducible modulo p")]
    ReducibleModulus(Vec<u64>),
    #[error("operands belong to different p-adic contexts")]
    ContextMismatch,
    #[error("element has positive valuation {0} and is not invertible")]
    NotAUnit(u32),
    #[error("cannot embed a degree-{from} context into a degree-{to} context")]
    NoEmbedding { from: usize, to: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("the generator w needs an extension of degree > 1")]
    GeneratorInPrimeField,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("component {component} is not a p-th power modulo p: monomial {monomial} has exponent not divisible by p")]
    NotALift { component: usize, monomial: String },
    #[error("map is not syntactically a restricted lift of p-th power; pass the override to assume it")]
    NotRestricted,
    #[error("enumeration of {required} points exceeds the budget of {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error("points are not a cycle of the reduced map")]
    NotACycle,
    #[error("iteration did not converge to a periodic point at precision {0}")]
    NonConvergence(u32),
    #[error("points lie in different residue discs")]
    DifferentResidueDiscs,
    #[error("valuation {valuation} leaves no room at precision {precision}")]
    PrecisionExhausted { valuation: u32, precision: u32 },
    #[error("the reduced map does not send the reduced variety into itself over F_{p}^{degree}")]
    VarietyNotInvariant { p: u64, degree: usize },
    #[error("preimage set is not known to be complete")]
    IncompletePreimageSet,
    #[error("no coherent backward orbit of depth {depth} within extension degree bound {degree_bound}")]
    NoCoherentChain { depth: usize, degree_bound: usize },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Config(#[from] crate::config::ConfigError),
}
