use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building or certifying a code.
///
/// Variants are split into two families: invalid input (a bad field size, an
/// out-of-range parameter, a malformed file) and failed verification (a
/// recomputed parameter that disagrees with its closed form). See
/// [`Error::is_verification_failure`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("field size {q} exceeds the configured bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {value} is outside GF({q})")]
    InvalidElement { value: u32, q: u32 },
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero vector is not a projective point")]
    ZeroVector,

    #[error("column {0} of the generator matrix is zero")]
    ZeroColumn(usize),
    #[error("the points span a space of rank {rank}, expected {k}")]
    NotFullRank { rank: usize, k: usize },
    #[error("the multiset is empty")]
    EmptyMultiset,
    #[error("codeword enumeration needs {needed} evaluations, bound is {bound}")]
    TooLarge { needed: u128, bound: u128 },

    #[error("arc condition violated: {0}")]
    ArcConditionViolated(String),
    #[error("degenerate line configuration: {0}")]
    ConfigDegenerate(String),
    #[error("spectrum mismatch: a_{multiplicity} is {computed}, expected {expected}")]
    SpectrumMismatch {
        multiplicity: u64,
        computed: u64,
        expected: u64,
    },
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("construction claim failed: {0}")]
    ClaimFailed(String),

    #[error("invalid divisor {m}: {reason}")]
    InvalidDivisor { m: u64, reason: String },
    #[error("hyperplane multiplicity {multiplicity} violates divisibility by {m}")]
    DivisibilityViolated { multiplicity: u64, m: u64 },
    #[error("every point of the ambient space has positive multiplicity")]
    NoZeroPoint,
    #[error("the hyperplanes below maximum multiplicity have a common point")]
    IntersectionNonempty,

    #[error("flat is not contained in the support")]
    FlatNotInSupport,
    #[error("point is not in the support")]
    PointNotInSupport,
    #[error("minimum distance {d} is not larger than {bound}")]
    DistanceTooSmall { d: u64, bound: u64 },
    #[error("puncturing dropped the rank to {rank}, expected {k}")]
    RankLost { rank: usize, k: usize },
    #[error("only {found} disjoint support lines found, {requested} requested")]
    NotEnoughLines { requested: usize, found: usize },
    #[error("line search gave up after {0} nodes")]
    SearchBudgetExceeded(u64),

    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("plan infeasible: {0}")]
    PlanInfeasible(String),
    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// True for errors that mean a claim was checked and did not hold, as
    /// opposed to errors caused by bad input.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::ConfigDegenerate(_)
                | Error::SpectrumMismatch { .. }
                | Error::ParamMismatch(_)
                | Error::ClaimFailed(_)
                | Error::PlanInfeasible(_)
                | Error::CertificationFailed(_)
                | Error::NotEnoughLines { .. }
                | Error::SearchBudgetExceeded(_)
                | Error::RankLost { .. }
        )
    }
}
