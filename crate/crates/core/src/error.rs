use crate::numerics::HalfInt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{function}: argument {value} outside the domain ({requirement})")]
    Domain {
        function: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("radial integral of sinh^{a_exp}(t) cosh^{c_exp}(t) diverges (needs a > -1 and a + c < 0)")]
    DivergentRadial { a_exp: f64, c_exp: f64 },

    #[error("period integral diverges: lambda + target = {sum} is not > -1/2")]
    DivergentPeriod { sum: HalfInt },

    #[error("quadrature tolerance not met: value {value}, error estimate {err_est} > {tolerance}")]
    ToleranceNotMet {
        value: f64,
        err_est: f64,
        tolerance: f64,
    },

    #[error("invalid parameter: {invariant} ({detail})")]
    InvalidParameter {
        invariant: &'static str,
        detail: String,
    },

    #[error("invalid quadrature spec: {0}")]
    InvalidQuadratureSpec(&'static str),

    #[error("matrix is not in SO0({p},{q}): {reason}")]
    NotInGroup { p: usize, q: usize, reason: String },

    #[error("interlacing needs lengths n = m - 1 or n = m, got m = {m}, n = {n}")]
    LengthMismatch { m: usize, n: usize },

    #[error("assumption violated: {0}")]
    Assumption(String),
}

impl Error {
    pub(crate) fn invalid(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::InvalidParameter {
            invariant,
            detail: detail.into(),
        }
    }
}
