use thiserror::Error;

/// Errors produced by the spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid medium parameters: {0}")]
    InvalidParams(String),

    #[error("permittivity pole at omega = {omega} (lower gap edge)")]
    Pole { omega: f64 },

    #[error("{op}: {value} is outside the admissible domain ({reason})")]
    Domain {
        op: &'static str,
        value: f64,
        reason: String,
    },

    #[error("regime error: {0}")]
    Regime(String),

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("l = {l} exceeds l_max = {l_max} for this configuration")]
    LmaxExceeded { l: usize, l_max: usize },

    #[error("quadratic model invalid: offset {offset:e} exceeds valid_radius {valid_radius:e}")]
    Validity { offset: f64, valid_radius: f64 },

    #[error("frequency {xi} left the allowed window ({lo}, {hi})")]
    WindowViolation { xi: f64, lo: f64, hi: f64 },

    #[error(
        "no convergence after {iterations} iterations (pair {pair}): last xi = {xi}, eta = {eta}, \
         residuals re = {residual_re:e}, im = {residual_im:e}"
    )]
    NonConvergence {
        pair: usize,
        iterations: usize,
        xi: f64,
        eta: f64,
        residual_re: f64,
        residual_im: f64,
    },

    #[error("unmatched pole in Bethe product for particle {index} (deviation {deviation:e})")]
    UnmatchedPole { index: usize, deviation: f64 },

    #[error("length mismatch: {0}")]
    LengthMismatch(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, value: f64, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            value,
            reason: reason.into(),
        }
    }

    /// True for numerical non-convergence, as opposed to a violated precondition.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
