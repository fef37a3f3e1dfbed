//! Exact verification toolkit for the double bounded Schur key identity.
//!
//! The crate is organized bottom-up:
//!
//! - [`qseries`]: Laurent polynomials over big integers and formal marker
//!   series, with the dilation/translation substitution.
//! - [`qcoefficients`]: q-Pochhammer products, extended q-binomials,
//!   q-multinomials and generalized q-trinomials.
//! - [`colored_partitions`]: three-colored partitions, the Type-1 gap
//!   condition, exhaustive enumerators and the counting functions behind the
//!   partition theorems.
//! - [`bijection`]: the weighted-words correspondence between vector
//!   partitions and Type-1 partitions, with full traces.
//! - [`identity_lab`]: exact checks of every finite and truncated identity,
//!   plus grid sweeps.
//! - [`theorem_checks`]: count-equality reports for the partition theorems.
//! - [`cli`]: the `qschur` command-line front end.

pub mod bijection;
pub mod cli;
pub mod colored_partitions;
pub mod identity_lab;
pub mod qcoefficients;
pub mod qseries;
pub mod theorem_checks;
