use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A distribution or kernel parameter failed its positivity/finiteness check.
    #[error("{name} must be positive and finite, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    /// Kernel argument u must lie strictly inside (0, 1).
    #[error("kernel argument u must lie strictly in (0, 1), got {value}")]
    KernelArgOutOfRange { value: f64 },

    /// Evaluation abscissa outside the support (0, inf).
    #[error("x must be positive and finite, got {value}")]
    InvalidAbscissa { value: f64 },

    /// Survival underflowed to zero, so the hazard is not representable.
    #[error("survival underflowed to 0 at x = {x}; hazard not representable")]
    SurvivalUnderflow { x: f64 },

    /// Cdf underflowed to zero (x near 0), so the reversed hazard is not representable.
    #[error("cdf underflowed to 0 at x = {x}; reversed hazard not representable")]
    CdfUnderflow { x: f64 },

    /// Kernel value exceeded the configured cap (u too close to 1).
    #[error("kernel value {value:e} exceeded cap {cap:e}")]
    KernelOverflow { value: f64, cap: f64 },

    /// Component sets must hold at least one component.
    #[error("component set must not be empty")]
    EmptyComponentSet,

    /// Operation requires a common (theta, phi) across all components.
    #[error("operation requires common theta and phi across components")]
    HeterogeneousComponents,

    /// Vector lengths differ where equal lengths are required.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Non-finite entry where a finite real was required.
    #[error("{name} must be finite, got {value}")]
    NonFiniteEntry { name: &'static str, value: f64 },

    /// Matrix shape does not satisfy the operation's contract.
    #[error("matrix shape error: {0}")]
    Shape(String),

    /// T-transform order does not match the matrix it is applied to.
    #[error("transform order {transform} does not match matrix width {matrix}")]
    OrderMismatch { transform: usize, matrix: usize },

    /// Invalid transform coordinates or weight.
    #[error("invalid T-transform: {0}")]
    InvalidTransform(String),

    /// Grid specification violated 0 < x_min < x_max, count >= 2.
    #[error("grid requires 0 < x_min < x_max (finite) and count >= 2")]
    InvalidGrid,

    /// Tolerance must be positive.
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    /// Density vanished (or was not representable) at a grid point, so a
    /// likelihood ratio is undefined there.
    #[error("density not representable at grid point x = {x}; likelihood ratio undefined")]
    ZeroDensity { x: f64 },

    /// A functional handed to a finite-difference check failed to evaluate.
    #[error("functional evaluation failed: {0}")]
    FunctionalEvaluation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
