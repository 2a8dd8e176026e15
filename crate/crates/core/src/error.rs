use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("input is a root of unity")]
    RootOfUnityInput,
    #[error("polynomial is reducible")]
    ReducibleInput,
    #[error("root isolation did not certify at the precision cap")]
    RootIsolationFailure,
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("empty word has no monomial form")]
    EmptyWord,
    #[error("depth must be positive")]
    DepthNonPositive,
    #[error("orbit tree would exceed node cap {cap}")]
    TreeSizeCap { cap: usize },
    #[error("collision exponent N vanishes")]
    DegenerateCollision,
    #[error("enumeration exceeded budget of {cap} word pairs")]
    EnumerationCap { cap: usize },
    #[error("factor selection could not separate candidates")]
    SeparationFailure,
    #[error("exponent budget exceeded after {steps} steps (partial estimate {partial})")]
    OverflowGuard { steps: usize, partial: f64 },
    #[error("quadrature node coincides with the singular point")]
    QuadratureSingular,
    #[error("window requires 0 < delta < R")]
    BadWindow,
    #[error("zero entry in a linear form")]
    ZeroAlpha,
    #[error("linear form vanishes exactly")]
    LambdaZero,
    #[error("beta is a conjugate of alpha")]
    BetaIsConjugate,
    #[error("point is not S-integral relative to beta")]
    NotSIntegral,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("beta could not be certified non-preperiodic ({0})")]
    BetaNotCertified(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("degree one point: bound is trivial")]
    DegenerateDegree,
    #[error("integer could not be fully factored")]
    FactorizationIncomplete,
}

pub type Result<T> = std::result::Result<T, Error>;
