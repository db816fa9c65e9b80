use thiserror::Error;

/// Errors produced by the spectroscopy pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid input parameters or malformed data.
    #[error("validation error: {0}")]
    Validation(String),

    /// A computation produced a non-finite or singular result.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// The molecular state has population inversion and cannot be mapped
    /// onto a harmonic surrogate bath.
    #[error(
        "population inversion at omega = {omega}: a state with population inversion \
         cannot be represented by a harmonic surrogate bath (requires beta_eff >= 0)"
    )]
    PopulationInversion { omega: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}
