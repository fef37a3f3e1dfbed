//! Exact verification of the finite identities, recurrences and truncated
//! infinite identities, one [`Verdict`] per parameter cell, plus grid sweeps.

mod finite;
mod goellnitz;
mod schur_gf;
mod truncated;

pub use finite::{lhs_21, lhs_44, rhs_21, rhs_44, verify_21, verify_32, verify_44, verify_46, verify_48};
pub use goellnitz::{
    compositions, lhs_63, rhs_63, verify_63, verify_63_closed_lm, GoellnitzComposition, SReading,
};
pub use schur_gf::{
    build_gl, build_gl_by_enumeration, build_gl_by_formula, build_pl, build_rl, trinomial_rhs,
    verify_516, verify_53, verify_recurrence, Recurrence,
};
pub use truncated::{verify_truncated, TruncatedVariant};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::qseries::{LaurentPoly, MarkerSeries};

/// Default marker-degree cap of the truncated identities.
pub const DEFAULT_MARKER_CAP: i64 = 8;
/// Default q-degree cap of the truncated identities.
pub const DEFAULT_Q_CAP: i64 = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("G_{l}: enumeration and double-sum constructions differ: {detail}")]
    InternalMismatch { l: i64, detail: String },
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("missing parameter {0}")]
    MissingParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityId {
    Eq21,
    Eq32,
    Eq44,
    Eq46,
    Eq48,
    Eq53,
    Eq516,
    Eq63,
    Eq63lm,
    Rec55,
    Rec58,
    Rec59,
    Rec512,
    Eq26,
    Eq11,
    Eq61,
}

impl IdentityId {
    pub const ALL: [IdentityId; 16] = [
        IdentityId::Eq21,
        IdentityId::Eq32,
        IdentityId::Eq44,
        IdentityId::Eq46,
        IdentityId::Eq48,
        IdentityId::Eq53,
        IdentityId::Eq516,
        IdentityId::Eq63,
        IdentityId::Eq63lm,
        IdentityId::Rec55,
        IdentityId::Rec58,
        IdentityId::Rec59,
        IdentityId::Rec512,
        IdentityId::Eq26,
        IdentityId::Eq11,
        IdentityId::Eq61,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Eq21 => "eq21",
            IdentityId::Eq32 => "eq32",
            IdentityId::Eq44 => "eq44",
            IdentityId::Eq46 => "eq46",
            IdentityId::Eq48 => "eq48",
            IdentityId::Eq53 => "eq53",
            IdentityId::Eq516 => "eq516",
            IdentityId::Eq63 => "eq63",
            IdentityId::Eq63lm => "eq63lm",
            IdentityId::Rec55 => "rec55",
            IdentityId::Rec58 => "rec58",
            IdentityId::Rec59 => "rec59",
            IdentityId::Rec512 => "rec512",
            IdentityId::Eq26 => "eq26",
            IdentityId::Eq11 => "eq11",
            IdentityId::Eq61 => "eq61",
        }
    }

    /// Parameter names, in grid iteration order.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            IdentityId::Eq21 | IdentityId::Eq44 | IdentityId::Eq48 => &["L", "M", "i", "j"],
            IdentityId::Eq32 => &["L", "i", "j"],
            IdentityId::Eq46 => &["L", "M"],
            IdentityId::Eq53 | IdentityId::Eq516 | IdentityId::Rec55 | IdentityId::Rec512 => &["L"],
            IdentityId::Eq63 => &["L", "M", "i", "j", "k"],
            IdentityId::Eq63lm => &["L", "i", "j", "k"],
            IdentityId::Rec58 | IdentityId::Rec59 => &["L", "i", "j"],
            IdentityId::Eq26 => &["i", "j", "qmax"],
            IdentityId::Eq11 => &["amax", "bmax", "qmax"],
            IdentityId::Eq61 => &["amax", "bmax", "cmax", "qmax"],
        }
    }

    /// Default inclusive range of a parameter when none is given.
    pub fn default_range(self, param: &str) -> (i64, i64) {
        use IdentityId::*;
        match (self, param) {
            (Eq21, _) => (-5, 10),
            (Eq32, _) => (0, 14),
            (Eq44, _) => (0, 10),
            (Eq48, _) => (0, 8),
            (Eq46, _) => (0, 6),
            (Eq53, _) => (0, 8),
            (Eq516, _) => (1, 4),
            (Eq63, "L") | (Eq63, "M") => (3, 7),
            (Eq63, _) => (0, 3),
            (Eq63lm, "L") => (0, 7),
            (Eq63lm, _) => (0, 3),
            (Rec55, _) => (2, 12),
            (Rec58, "L") => (2, 12),
            (Rec59, "L") => (1, 12),
            (Rec58, _) | (Rec59, _) => (0, 12),
            (Rec512, _) => (2, 8),
            (Eq26 | Eq11 | Eq61, "qmax") => (DEFAULT_Q_CAP, DEFAULT_Q_CAP),
            (Eq26, _) => (0, 6),
            (Eq11 | Eq61, _) => (DEFAULT_MARKER_CAP, DEFAULT_MARKER_CAP),
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| LabError::UnknownIdentity(s.to_string()))
    }
}

/// One side of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Poly(LaurentPoly),
    Series(MarkerSeries),
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Poly(p) => p.is_zero(),
            Value::Series(s) => s.is_zero(),
        }
    }

    fn minus(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a - b),
            (Value::Series(a), Value::Series(b)) => Value::Series(a.sub(b)),
            _ => panic!("comparing a polynomial with a marker series"),
        }
    }

    /// Adds 1 to the constant term.
    fn plus_one(&self) -> Value {
        match self {
            Value::Poly(p) => Value::Poly(p + &LaurentPoly::one()),
            Value::Series(s) => Value::Series(s.add(&MarkerSeries::one(s.arity()))),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => p.fmt(f),
            Value::Series(s) => s.fmt(f),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<LaurentPoly> for Value {
    fn from(p: LaurentPoly) -> Self {
        Value::Poly(p)
    }
}

impl From<MarkerSeries> for Value {
    fn from(s: MarkerSeries) -> Self {
        Value::Series(s)
    }
}

/// The first coefficient at which the two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Marker exponents, absent for plain polynomials.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub markers: Option<[u32; 3]>,
    pub exponent: i64,
    #[serde(serialize_with = "as_string")]
    pub lhs: BigInt,
    #[serde(serialize_with = "as_string")]
    pub rhs: BigInt,
}

fn as_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.markers {
            Some(m) => write!(f, "A^{} B^{} C^{} ", m[0], m[1], m[2])?,
            None => {}
        }
        write!(f, "q^{}: lhs {} vs rhs {}", self.exponent, self.lhs, self.rhs)
    }
}

fn first_difference(lhs: &Value, rhs: &Value) -> Option<Witness> {
    match (lhs, rhs) {
        (Value::Poly(a), Value::Poly(b)) => {
            let diff = a - b;
            let (e, _) = diff.terms().next()?;
            Some(Witness { markers: None, exponent: e, lhs: a.coeff(e), rhs: b.coeff(e) })
        }
        (Value::Series(a), Value::Series(b)) => {
            let diff = a.sub(b);
            let (m, e, _) = diff.flat_terms().into_iter().next()?;
            Some(Witness {
                markers: Some(m),
                exponent: e,
                lhs: a.coeff(&m).coeff(e),
                rhs: b.coeff(&m).coeff(e),
            })
        }
        _ => panic!("comparing a polynomial with a marker series"),
    }
}

pub type Params = BTreeMap<String, i64>;

pub fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Outcome of one identity check. `holds` is true exactly when the
/// difference is zero and every sub-check holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub identity: IdentityId,
    pub params: Params,
    pub holds: bool,
    pub lhs: Value,
    pub rhs: Value,
    pub difference: Value,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<SubCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A named auxiliary comparison attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn compare(identity: IdentityId, params: Params, lhs: impl Into<Value>, rhs: impl Into<Value>) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let difference = lhs.minus(&rhs);
        let witness = first_difference(&lhs, &rhs);
        Verdict {
            identity,
            params,
            holds: difference.is_zero(),
            lhs,
            rhs,
            difference,
            witness,
            checks: Vec::new(),
            note: None,
        }
    }

    /// Attaches the comparison `a = b` as a named sub-check.
    pub fn check(mut self, name: &str, a: impl Into<Value>, b: impl Into<Value>) -> Self {
        let (a, b) = (a.into(), b.into());
        let witness = first_difference(&a, &b);
        let holds = witness.is_none();
        self.holds &= holds;
        self.checks.push(SubCheck { name: name.to_string(), holds, witness });
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Same comparison with the right-hand side increased by 1.
    pub fn perturbed(self) -> Self {
        let rhs = self.rhs.plus_one();
        let mut v = Verdict::compare(self.identity, self.params, self.lhs, rhs);
        v.note = Some("right-hand side perturbed by +1".into());
        v
    }

    pub fn failure(identity: IdentityId, params: Params, note: impl Into<String>) -> Self {
        let zero = Value::Poly(LaurentPoly::zero());
        Verdict {
            identity,
            params,
            holds: false,
            lhs: zero.clone(),
            rhs: zero.clone(),
            difference: zero,
            witness: None,
            checks: Vec::new(),
            note: Some(note.into()),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Add 1 to every right-hand side (harness self-test).
    pub perturb: bool,
    /// Use the literal `s = alpha + beta + 2 delta + epsilon + phi` in (6.3)-type
    /// sums instead of the sum of all six components.
    pub literal_s: bool,
}

fn get(p: &Params, name: &str) -> Result<i64, LabError> {
    p.get(name).copied().ok_or_else(|| LabError::MissingParameter(name.into()))
}

/// Evaluates one cell. `Ok(None)` means the cell lies outside the identity's
/// domain and is skipped.
pub fn evaluate(id: IdentityId, p: &Params, opts: SweepOptions) -> Result<Option<Verdict>, LabError> {
    let v = |name: &str| get(p, name);
    let reading = if opts.literal_s { SReading::Literal } else { SReading::Symmetric };
    let verdict = match id {
        IdentityId::Eq21 => Some(verify_21(v("L")?, v("M")?, v("i")?, v("j")?)),
        IdentityId::Eq32 => verify_32(v("L")?, v("i")?, v("j")?),
        IdentityId::Eq44 => verify_44(v("L")?, v("M")?, v("i")?, v("j")?),
        IdentityId::Eq46 => verify_46(v("L")?, v("M")?),
        IdentityId::Eq48 => verify_48(v("L")?, v("M")?, v("i")?, v("j")?),
        IdentityId::Eq53 => verify_53(v("L")?),
        IdentityId::Eq516 => verify_516(v("L")?),
        IdentityId::Eq63 => verify_63(v("L")?, v("M")?, v("i")?, v("j")?, v("k")?, reading),
        IdentityId::Eq63lm => verify_63_closed_lm(v("L")?, v("i")?, v("j")?, v("k")?),
        IdentityId::Rec55 => verify_recurrence(Recurrence::G55 { l: v("L")? }),
        IdentityId::Rec512 => verify_recurrence(Recurrence::P512 { l: v("L")? }),
        IdentityId::Rec58 => verify_recurrence(Recurrence::Multinomial58 { l: v("L")?, i: v("i")?, j: v("j")? }),
        IdentityId::Rec59 => verify_recurrence(Recurrence::Multinomial59 { l: v("L")?, i: v("i")?, j: v("j")? }),
        IdentityId::Eq26 => verify_truncated(TruncatedVariant::Eq26 { i: v("i")?, j: v("j")?, q_max: v("qmax")? }),
        IdentityId::Eq11 => verify_truncated(TruncatedVariant::Eq11 {
            a_max: v("amax")?,
            b_max: v("bmax")?,
            q_max: v("qmax")?,
        }),
        IdentityId::Eq61 => verify_truncated(TruncatedVariant::Eq61 {
            a_max: v("amax")?,
            b_max: v("bmax")?,
            c_max: v("cmax")?,
            q_max: v("qmax")?,
            reading,
        }),
    };
    Ok(verdict.map(|v| if opts.perturb { v.perturbed() } else { v }))
}

/// Inclusive ranges per parameter; the grid is their Cartesian product.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParamGrid {
    pub ranges: BTreeMap<String, (i64, i64)>,
}

impl ParamGrid {
    /// Default ranges for `id`, overridden by `given`.
    pub fn for_identity(id: IdentityId, given: &BTreeMap<String, (i64, i64)>) -> Self {
        let ranges = id
            .parameters()
            .iter()
            .map(|&name| {
                let r = given.get(name).copied().unwrap_or_else(|| id.default_range(name));
                (name.to_string(), r)
            })
            .collect();
        ParamGrid { ranges }
    }

    /// All cells, varying the parameters in the given order (last fastest).
    pub fn cells(&self, order: &[&str]) -> Vec<Params> {
        let mut out = vec![Params::new()];
        for &name in order {
            let Some(&(lo, hi)) = self.ranges.get(name) else { continue };
            out = out
                .into_iter()
                .flat_map(|cell| {
                    (lo..=hi).map(move |x| {
                        let mut c = cell.clone();
                        c.insert(name.to_string(), x);
                        c
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub identity: IdentityId,
    pub ranges: BTreeMap<String, (i64, i64)>,
    pub cells: usize,
    pub evaluated: usize,
    pub skipped: usize,
    pub failures: Vec<Verdict>,
}

impl SweepReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates `id` on every cell of `grid` in parallel; failures are reported
/// in grid order.
pub fn sweep(id: IdentityId, grid: &ParamGrid, opts: SweepOptions) -> Result<SweepReport, LabError> {
    let cells = grid.cells(id.parameters());
    let results: Vec<Option<Verdict>> = cells
        .par_iter()
        .map(|p| evaluate(id, p, opts))
        .collect::<Result<_, _>>()?;
    let evaluated = results.iter().filter(|r| r.is_some()).count();
    let failures = results.into_iter().flatten().filter(|v| !v.holds).collect();
    Ok(SweepReport {
        identity: id,
        ranges: grid.ranges.clone(),
        cells: cells.len(),
        evaluated,
        skipped: cells.len() - evaluated,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!("bogus".parse::<IdentityId>().is_err());
    }

    #[test]
    fn grid_order_is_lexicographic() {
        let mut given = BTreeMap::new();
        given.insert("L".to_string(), (0, 1));
        given.insert("i".to_string(), (0, 0));
        given.insert("j".to_string(), (5, 6));
        let grid = ParamGrid::for_identity(IdentityId::Eq32, &given);
        let cells = grid.cells(IdentityId::Eq32.parameters());
        let tuples: Vec<(i64, i64)> = cells.iter().map(|c| (c["L"], c["j"])).collect();
        assert_eq!(tuples, vec![(0, 5), (0, 6), (1, 5), (1, 6)]);
    }

    #[test]
    fn witness_is_lowest_exponent() {
        let a: LaurentPoly = "1 + 2*q + q^3".parse().unwrap();
        let b: LaurentPoly = "1 + q + q^2".parse().unwrap();
        let v = Verdict::compare(IdentityId::Eq21, Params::new(), a, b);
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!((w.exponent, w.lhs, w.rhs), (1, 2.into(), 1.into()));
    }

    #[test]
    fn perturbation_fails_at_q0() {
        let v = verify_21(2, 2, 1, 1).perturbed();
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().exponent, 0);
    }

    #[test]
    fn sweep_reports_skips() {
        let grid = ParamGrid::for_identity(
            IdentityId::Eq32,
            &[("L", (0, 3)), ("i", (0, 3)), ("j", (0, 3))]
                .iter()
                .map(|(k, r)| (k.to_string(), *r))
                .collect(),
        );
        let r = sweep(IdentityId::Eq32, &grid, SweepOptions::default()).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.cells, 64);
        assert_eq!(r.evaluated, 20);
    }
}
