use thiserror::Error;

/// Errors surfaced by the library.
///
/// Pure algebra (Adem rewriting, GF(2) elimination, chart assembly) is total
/// and does not error; failures happen at contract boundaries: malformed
/// inputs, hypothesis violations, out-of-range queries, and integrity checks
/// against the embedded tables.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree cap {cap} exceeds top degree {max} of the module; no such classes exist")]
    CapExceedsTopDegree { cap: u32, max: u32 },

    #[error("bidegree (s={s}, t={t}) is outside the trusted range of the resolution (t must be <= {t_trusted} at this stage)")]
    OutOfTrustedRange { s: u32, t: u32, t_trusted: i64 },

    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    #[error("unknown chart label {0:?}; embedded chart data and computation disagree")]
    UnknownChartLabel(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("self-test failure: {0}")]
    SelfTest(String),
}

pub type Result<T> = std::result::Result<T, Error>;
