use thiserror::Error;

/// Errors raised by grid construction, calculus, and the spinor pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("stencil needs at least {min} points along {axis}, grid has {len}")]
    Stencil { axis: char, len: usize, min: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("value array has {got} entries, grid expects {expected}")]
    Shape { expected: usize, got: usize },

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("expected a real-valued field, max |imaginary part| = {max_imag:e}")]
    NotReal { max_imag: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("Picard iteration did not converge after {iterations} iterations (last residual {last:e})", last = history.last().copied().unwrap_or(f64::NAN))]
    Divergence { iterations: usize, history: Vec<f64> },
}

pub type Result<T> = std::result::Result<T, Error>;
