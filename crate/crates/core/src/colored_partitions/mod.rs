//! Colored integers `a_n`, `b_n`, `ab_n`, Type-1 partitions and the counting
//! functions behind the Schur-type theorems.
//!
//! Symbols are ordered `a_1 < b_1 < ab_2 < a_2 < b_2 < ab_3 < ...`, which is
//! the natural order of the integers after the dilation
//! `a_n -> 3n-2`, `b_n -> 3n-1`, `ab_n -> 3n-3`.

mod counts;
mod durfee;
mod enumerate;
mod symbol;

pub use counts::{
    count_s, count_v, distinct_part_counts, goellnitz_counts, goellnitz_gap_ok, nu_statistics,
    partition_stats, schur_counts, theorem3_counts, PartitionStats, Theorem3Counts,
};
pub use durfee::{durfee_decompose, DurfeeDecomposition};
pub use enumerate::{
    enumerate_type1, for_each_gap_partition, for_each_type1, partitions_in_box, ColorCaps,
};
pub use symbol::{
    is_type1, satisfies_schur_gaps, satisfies_schur_gaps_literal, Color, ColoredPartition,
    ColoredSymbol,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("invalid symbol {0}")]
    InvalidSymbol(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("repeated symbol {0}")]
    RepeatedSymbol(String),
    #[error("no value of the boundary statistic fits this partition")]
    NoValidStatistic,
    #[error("boundary statistic is not unique: candidates {0:?}")]
    AmbiguousStatistic(Vec<u32>),
    #[error("no Durfee rectangle with the requested offset")]
    NoRectangle,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
