use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative or non-finite mass {value} at index {index}")]
    NegativeMass { index: usize, value: f64 },
    #[error("masses sum to {sum}, outside the normalization tolerance")]
    NotNormalized { sum: f64 },
    #[error("all masses are zero")]
    EmptySupport,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("score ratio at x = {x} divides by a zero mass")]
    DividedByZeroMass { x: usize },
    #[error("support reaches {max_index}, which exceeds degree {degree}")]
    DegreeTooSmall { max_index: usize, degree: u64 },
    #[error("function has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("Dirichlet form vanishes; quotient undefined")]
    ZeroDirichlet,
    #[error("single-point support has no admissible functions")]
    DegenerateSupport,
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("eigensolver did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("eigenpair residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error("witness quotient {quotient} disagrees with computed value {value}")]
    WitnessMismatch { value: f64, quotient: f64 },
    #[error("negative discriminant {0:e}; moments are outside the ULC class")]
    NegativeDiscriminant(f64),
    #[error("px - alpha * p1 has entry {value:e} at index {index}")]
    BadDecomposition { index: usize, value: f64 },
    #[error("pmf file line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
