use thiserror::Error;

/// Errors raised by the simulation and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The time grid is too coarse for the waveform or transform kernel.
    #[error("resolution error: {what} needs dt <= {required_dt:.6e} us, grid has dt = {actual_dt:.6e} us")]
    Resolution {
        what: String,
        required_dt: f64,
        actual_dt: f64,
    },

    /// Inputs that must agree (grids, axes, designs) do not.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Input carries no usable information (empty, all zero).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The filter's instantaneous frequency reaches zero inside the window.
    #[error("chirp through DC: instantaneous frequency f_j - q*t = {f_end} MHz at t = {t_end} us is not positive")]
    ChirpThroughDc { f_end: f64, t_end: f64 },

    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by invalid user input rather than numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Contract(_)
                | Error::Degenerate(_)
                | Error::ChirpThroughDc { .. }
                | Error::Config(_)
                | Error::Json(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
