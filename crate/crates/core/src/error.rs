use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("invalid state: eigenvalue {0:e} is below the positivity tolerance")]
    InvalidState(f64),

    /// A sweep failed at one grid point.
    #[error("at J = {j}{}: {source}", temperature.map(|t| format!(", T = {t}")).unwrap_or_default())]
    GridPoint {
        j: f64,
        temperature: Option<f64>,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for failures of the numerical pipeline rather than of the input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NoConvergence { .. } | Error::InvalidState(_) => true,
            Error::GridPoint { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}
