use alloc::string::String;

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be monic of degree >= 1")]
    NonMonicModulus,
    #[error("polynomials live over different primes ({0} vs {1})")]
    PrimeMismatch(u64, u64),
    #[error("{0} is not a prime below 2^63")]
    InvalidPrime(u64),
    #[error("prime {0} divides a denominator")]
    DenominatorPrime(u64),
    #[error("root is singular modulo {0} (derivative vanishes)")]
    SingularRoot(u64),
    #[error("value is not a root modulo {0}")]
    NotARoot(u64),
    #[error("CRT moduli are not pairwise coprime")]
    NonCoprimeModuli,
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("defining polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("irreducibility could not be certified from factorization patterns; assert it explicitly")]
    IrreducibilityUnproven,
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("field is not Galois: {0}")]
    NotGalois(String),
    #[error("automorphism search is limited to degree <= {max}, got {degree}; supply automorphisms explicitly")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("invalid automorphism data: {0}")]
    InvalidAutomorphisms(String),
    #[error("element is not normal")]
    NotNormal,
    #[error("no normal element found with coordinates bounded by {0}")]
    NormalSearchExhausted(u32),
    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),
    #[error("prime {0} is excluded for this recurrence")]
    BadPrime(u64),
    #[error("idempotent target is invalid: {0}")]
    InvalidTarget(String),
    #[error("solver produced a non-rational value at index {0}")]
    NonRationalOutput(usize),
    #[error("linear system for the idempotent is singular")]
    SingularSystem,
    #[error("family parameter condition ({clause}) violated: {detail}")]
    FamilyCondition { clause: String, detail: String },
    #[error("closed form disagrees with the generic solver: {0}")]
    ClosedFormMismatch(String),
    #[error("prime {0} ramifies or divides a denominator of the field data")]
    RamifiedOrBad(u64),
    #[error("no automorphism matches the Frobenius at {0}")]
    NoFrobeniusMatch(u64),
    #[error("invalid prime range [{0}, {1}]")]
    InvalidRange(u64, u64),
    #[error("prime range up to {0} exceeds the supported bound 2^32")]
    RangeTooLarge(u64),
    #[error("inconsistent bundle: {0}")]
    InconsistentBundle(String),
}
