//! The six-step correspondence between vector partitions `(pi1; pi2)`
//! (distinct `a`-parts; distinct `b`-parts) and Type-1 partitions `pi3`.
//!
//! 1. Split `pi2` into `pi4` (parts `<= i = #pi1`) and `pi5` (the rest).
//! 2. Add the conjugate of `pi4` to `pi1` row by row; rows that end in the
//!    bottom node of a conjugate column become `ab`-parts, giving `pi6`.
//! 3. Stack `pi5` above `pi6`.
//! 4. Subtract the staircase `N-1, ..., 1, 0` top-down (`C1 | C2`).
//! 5. Sort `C1` into decreasing symbol order (`C1^R`).
//! 6. Add back the staircase to get `pi3`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::colored_partitions::{
    is_type1, nu_statistics, Color, ColoredPartition, ColoredSymbol, PartitionError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("bound violated: {0}")]
    BoundViolation(String),
}

/// A Ferrers graph whose cells may carry a circle.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FerrersGraph {
    /// `rows[r][c]` is `true` when cell `(r, c)` is circled.
    pub rows: Vec<Vec<bool>>,
}

impl FerrersGraph {
    /// Conjugate of the partition `parts` (weakly decreasing) with the bottom
    /// node of every column circled.
    pub fn conjugate_circled(parts: &[u32]) -> Self {
        let height = parts.first().copied().unwrap_or(0);
        let rows = (1..=height)
            .map(|r| {
                parts
                    .iter()
                    .take_while(|&&p| p >= r)
                    .map(|&p| p == r)
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn row_lengths(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.len() as u32).collect()
    }

    /// Whether row `r` (0-based) exists and ends in a circled node.
    pub fn ends_circled(&self, r: usize) -> bool {
        self.rows.get(r).and_then(|row| row.last()).copied().unwrap_or(false)
    }
}

impl fmt::Display for FerrersGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let line: String = row.iter().map(|&c| if c { 'o' } else { '*' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Every intermediate object of one run of the correspondence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionTrace {
    pub pi1: ColoredPartition,
    pub pi2: ColoredPartition,
    pub pi4: ColoredPartition,
    pub pi5: ColoredPartition,
    pub pi4_star: FerrersGraph,
    pub pi6: ColoredPartition,
    /// `pi5` stacked above `pi6` (Step 3).
    pub column: Vec<ColoredSymbol>,
    pub c1: Vec<ColoredSymbol>,
    pub c2: Vec<u32>,
    pub c1_r: Vec<ColoredSymbol>,
    pub pi3: ColoredPartition,
}

fn check_color(p: &ColoredPartition, color: Color, name: &str) -> Result<(), BijectionError> {
    match p.parts().iter().find(|s| s.color != color) {
        Some(s) => Err(BijectionError::InvalidInput(format!(
            "{name} must have only {}-parts, found {s}",
            color.name()
        ))),
        None => Ok(()),
    }
}

fn staircase(n: usize) -> Vec<u32> {
    (0..n as u32).rev().collect()
}

fn shifted(s: ColoredSymbol, delta: i64) -> Result<ColoredSymbol, BijectionError> {
    let w = s.weight as i64 + delta;
    u32::try_from(w)
        .ok()
        .and_then(|w| ColoredSymbol::new(s.color, w).ok())
        .ok_or_else(|| BijectionError::InvalidInput(format!("{s} shifted by {delta} is not a symbol")))
}

fn from_parts(parts: Vec<ColoredSymbol>) -> Result<ColoredPartition, BijectionError> {
    ColoredPartition::new(parts).map_err(|e| BijectionError::InvalidInput(e.to_string()))
}

/// Runs Steps 1-6 on a vector partition.
pub fn forward(pi1: &ColoredPartition, pi2: &ColoredPartition) -> Result<BijectionTrace, BijectionError> {
    check_color(pi1, Color::A, "pi1")?;
    check_color(pi2, Color::B, "pi2")?;
    let i = pi1.len() as u32;

    // Step 1
    let (small, large): (Vec<ColoredSymbol>, Vec<ColoredSymbol>) =
        pi2.parts().iter().partition(|s| s.weight <= i);
    let pi4 = from_parts(small)?;
    let pi5 = from_parts(large)?;

    // Step 2
    let pi4_star = FerrersGraph::conjugate_circled(&pi4.weights());
    let extra = pi4_star.row_lengths();
    let pi6_parts: Vec<ColoredSymbol> = pi1
        .parts()
        .iter()
        .enumerate()
        .map(|(r, s)| {
            let add = extra.get(r).copied().unwrap_or(0);
            let color = if pi4_star.ends_circled(r) { Color::AB } else { Color::A };
            ColoredSymbol::new(color, s.weight + add)
                .map_err(|e| BijectionError::InvalidInput(e.to_string()))
        })
        .collect::<Result<_, _>>()?;
    let pi6 = from_parts(pi6_parts)?;

    // Steps 3 and 4
    let column: Vec<ColoredSymbol> = pi5.parts().iter().chain(pi6.parts()).copied().collect();
    let c2 = staircase(column.len());
    let c1: Vec<ColoredSymbol> = column
        .iter()
        .zip(&c2)
        .map(|(&s, &d)| shifted(s, -(d as i64)))
        .collect::<Result<_, _>>()?;

    // Step 5
    let mut c1_r = c1.clone();
    c1_r.sort_by(|x, y| y.cmp(x));

    // Step 6
    let pi3_parts: Vec<ColoredSymbol> = c1_r
        .iter()
        .zip(&c2)
        .map(|(&s, &d)| shifted(s, d as i64))
        .collect::<Result<_, _>>()?;
    let pi3 = from_parts(pi3_parts)?;

    Ok(BijectionTrace {
        pi1: pi1.clone(),
        pi2: pi2.clone(),
        pi4,
        pi5,
        pi4_star,
        pi6,
        column,
        c1,
        c2,
        c1_r,
        pi3,
    })
}

/// Runs the steps backwards from a Type-1 partition, returning the full trace.
pub fn inverse_trace(pi3: &ColoredPartition) -> Result<BijectionTrace, BijectionError> {
    if !is_type1(pi3) {
        return Err(BijectionError::InvalidInput(format!("{pi3} violates the Type-1 gap condition")));
    }
    let c2 = staircase(pi3.len());
    let c1_r: Vec<ColoredSymbol> = pi3
        .parts()
        .iter()
        .zip(&c2)
        .map(|(&s, &d)| shifted(s, -(d as i64)))
        .collect::<Result<_, _>>()?;

    // b-elements came from pi5 at the top of the column; the relative order
    // inside each block is already decreasing.
    let (bs, rest): (Vec<ColoredSymbol>, Vec<ColoredSymbol>) =
        c1_r.iter().partition(|s| s.color == Color::B);
    let c1: Vec<ColoredSymbol> = bs.iter().chain(&rest).copied().collect();
    let column: Vec<ColoredSymbol> = c1
        .iter()
        .zip(&c2)
        .map(|(&s, &d)| shifted(s, d as i64))
        .collect::<Result<_, _>>()?;
    let pi5 = from_parts(column[..bs.len()].to_vec())?;
    let pi6 = from_parts(column[bs.len()..].to_vec())?;

    let i = pi6.len() as u32;
    let ab_rows: Vec<u32> = pi6
        .parts()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.color == Color::AB)
        .map(|(r, _)| r as u32 + 1)
        .collect();
    let pi4_weights: Vec<u32> = ab_rows.iter().rev().copied().collect();
    let pi4_star = FerrersGraph::conjugate_circled(&pi4_weights);
    let extra = pi4_star.row_lengths();
    let pi1_parts: Vec<ColoredSymbol> = pi6
        .parts()
        .iter()
        .enumerate()
        .map(|(r, s)| shifted(ColoredSymbol::a(s.weight), -(extra.get(r).copied().unwrap_or(0) as i64)))
        .collect::<Result<_, _>>()?;
    let pi1 = from_parts(pi1_parts)?;
    if pi5.parts().iter().any(|s| s.weight <= i) {
        return Err(BijectionError::InvalidInput(format!("recovered pi5 = {pi5} has a part <= {i}")));
    }
    let pi4 = from_parts(pi4_weights.iter().map(|&w| ColoredSymbol::b(w)).collect())?;
    let pi2 = from_parts(pi5.parts().iter().chain(pi4.parts()).copied().collect())?;

    Ok(BijectionTrace { pi1, pi2, pi4, pi5, pi4_star, pi6, column, c1, c2, c1_r, pi3: pi3.clone() })
}

/// Recovers `(pi1, pi2)` from a Type-1 partition.
pub fn inverse(pi3: &ColoredPartition) -> Result<(ColoredPartition, ColoredPartition), BijectionError> {
    inverse_trace(pi3).map(|t| (t.pi1, t.pi2))
}

/// Bound profile of the image of a bounded vector partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub l: i64,
    pub m: i64,
    pub nu_l: u32,
    pub nu_m: u32,
    /// Number of `ab`-parts of `pi3`.
    pub k: usize,
    pub a_parts: usize,
    pub b_parts: usize,
    pub a_bound: i64,
    pub b_bound: i64,
    pub ab_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedTrace {
    pub trace: BijectionTrace,
    pub certificate: BoundCertificate,
}

/// Runs [`forward`] on a vector partition with `i` distinct `a`-parts
/// `<= M - j` and `j` distinct `b`-parts `<= L`, and certifies that `pi3` has
/// `i - k` `a`-parts and `k` `ab`-parts `<= M - nu(M)` and `j - k` `b`-parts
/// `<= L - nu(L)`.
pub fn forward_bounded(
    pi1: &ColoredPartition,
    pi2: &ColoredPartition,
    l: i64,
    m: i64,
) -> Result<BoundedTrace, BijectionError> {
    let (i, j) = (pi1.len() as i64, pi2.len() as i64);
    if l.min(m) < i + j {
        return Err(BijectionError::InvalidInput(format!("need L, M >= i + j = {}", i + j)));
    }
    if let Some(s) = pi1.parts().first().filter(|s| s.weight as i64 > m - j) {
        return Err(BijectionError::InvalidInput(format!("a-part {s} exceeds M - j = {}", m - j)));
    }
    if let Some(s) = pi2.parts().first().filter(|s| s.weight as i64 > l) {
        return Err(BijectionError::InvalidInput(format!("b-part {s} exceeds L = {l}")));
    }
    let trace = forward(pi1, pi2)?;
    let pi3 = &trace.pi3;
    let (nu_l, nu_m) = nu_statistics(pi3, l, m).map_err(|e| match e {
        PartitionError::NoValidStatistic | PartitionError::AmbiguousStatistic(_) => {
            BijectionError::BoundViolation(format!("{pi3}: {e}"))
        }
        other => BijectionError::InvalidInput(other.to_string()),
    })?;
    let certificate = BoundCertificate {
        l,
        m,
        nu_l,
        nu_m,
        k: pi3.count(Color::AB),
        a_parts: pi3.count(Color::A),
        b_parts: pi3.count(Color::B),
        a_bound: m - nu_m as i64,
        b_bound: l - nu_l as i64,
        ab_bound: m - nu_m as i64,
    };
    let c = &certificate;
    if c.a_parts + c.k != i as usize || c.b_parts + c.k != j as usize {
        return Err(BijectionError::BoundViolation(format!(
            "{pi3} has color counts ({}, {}, {}) incompatible with (i, j) = ({i}, {j})",
            c.a_parts, c.b_parts, c.k
        )));
    }
    for s in pi3.parts() {
        let bound = match s.color {
            Color::A => c.a_bound,
            Color::B => c.b_bound,
            Color::AB => c.ab_bound,
        };
        if s.weight as i64 > bound {
            return Err(BijectionError::BoundViolation(format!(
                "{s} in {pi3} exceeds its bound {bound}"
            )));
        }
    }
    Ok(BoundedTrace { trace, certificate })
}

impl BijectionTrace {
    /// The Step 3 to Step 6 table: `pi5/pi6 | C1 | C2 | C1^R | C2 | pi3`.
    pub fn table(&self) -> String {
        let header = ["pi5/pi6", "C1", "C2", "C1^R", "C2", "pi3"];
        let rows: Vec<[String; 6]> = (0..self.column.len())
            .map(|r| {
                [
                    self.column[r].to_string(),
                    self.c1[r].to_string(),
                    self.c2[r].to_string(),
                    self.c1_r[r].to_string(),
                    self.c2[r].to_string(),
                    self.pi3.parts()[r].to_string(),
                ]
            })
            .collect();
        let widths: Vec<usize> = (0..6)
            .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[&str]| -> String {
            let padded: Vec<String> =
                cells.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            format!("{} | {} {} | {} {} | {}", padded[0], padded[1], padded[2], padded[3], padded[4], padded[5])
                .trim_end()
                .to_string()
        };
        let mut out = String::new();
        out.push_str(&line(&header));
        out.push('\n');
        for row in &rows {
            let cells: Vec<&str> = row.iter().map(String::as_str).collect();
            out.push_str(&line(&cells));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BijectionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pi1 = {}", self.pi1)?;
        writeln!(f, "pi2 = {}", self.pi2)?;
        writeln!(f, "pi4 = {}", self.pi4)?;
        writeln!(f, "pi5 = {}", self.pi5)?;
        writeln!(f, "pi6 = {}", self.pi6)?;
        writeln!(f, "pi3 = {}", self.pi3)?;
        writeln!(f)?;
        f.write_str(&self.table())
    }
}
