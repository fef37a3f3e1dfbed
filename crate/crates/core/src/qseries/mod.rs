//! Exact arithmetic in `Z[q, q^-1]` and in marker series over it.

mod laurent;
mod parse;
mod series;

pub use laurent::LaurentPoly;
pub use series::{MarkerExps, MarkerSeries, Truncation};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QSeriesError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("no exact Laurent-polynomial quotient exists")]
    NotDivisible,
    #[error("parse error: {0}")]
    Parse(String),
}

/// `1 / (1 - q^m)` expanded as a geometric series up to `q^q_max`, `m >= 1`.
pub fn geometric_inverse(m: i64, q_max: i64) -> LaurentPoly {
    assert!(m >= 1, "geometric expansion needs a positive step");
    if q_max < 0 {
        return LaurentPoly::zero();
    }
    LaurentPoly::from_terms((0..=q_max / m).map(|t| (t * m, 1)))
}
