use thiserror::Error;

/// Errors raised by the simulator, the gate tables and the synthesis search.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation (non-finite angle,
    /// out-of-range gate id, non-unitary propagator, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A scenario, grid or binding is malformed.
    #[error("configuration error: {0}")]
    Config(String),

    /// A result that should hold by construction did not (e.g. a non-real
    /// expectation value). Indicates a bug rather than bad input.
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {value}")))
    }
}
