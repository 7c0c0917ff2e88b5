use thiserror::Error;

/// Failures raised by the physics and geometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The complex field whose argument is the phase vanishes, so the phase is undefined.
    #[error("degenerate result: coherent field amplitude vanishes (real = imag = 0)")]
    Boundary,

    /// A geometric region or profile has zero measure or zero norm.
    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    /// The denominator of a closed-form expression vanishes.
    #[error("pole: {0}")]
    Pole(String),

    /// A documented validity condition of an approximation is violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A relative measure was requested against a zero reference.
    #[error("undefined ratio: {0}")]
    UndefinedRatio(String),

    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e} after {intervals} intervals")]
    Quadrature {
        estimate: f64,
        error: f64,
        intervals: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_unit_interval(name: &str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {value} must lie in [0, 1]")))
    }
}

pub(crate) fn ensure_non_negative(name: &str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {value} must be finite and >= 0")))
    }
}
