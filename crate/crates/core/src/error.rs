use thiserror::Error;

/// Errors raised by the zero, law and bound computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("bisection for eigenvalue {index} did not converge (interval width {width:e})")]
    Convergence { index: usize, width: f64 },

    #[error("density denominator vanishes at x = {x} on the closed support")]
    SingularEndpoint { x: f64 },

    #[error("adaptive quadrature missed tolerance {tol:e} (estimated error {estimate:e})")]
    QuadratureFailure { tol: f64, estimate: f64 },

    #[error("law has sub-unit mass {mass} (possible atoms outside support)")]
    SubUnitMass { mass: f64 },
}

impl Error {
    /// True for errors caused by invalid input rather than numerical trouble.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Parse(_)
                | Error::UnsupportedRegime(_)
                | Error::SingularEndpoint { .. }
                | Error::SubUnitMass { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
