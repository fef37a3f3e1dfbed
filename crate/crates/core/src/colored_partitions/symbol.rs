use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PartitionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    A,
    B,
    AB,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::A, Color::B, Color::AB];

    /// Offset of the color within one weight class of the ordering
    /// `a_1 < b_1 < ab_2 < a_2 < b_2 < ab_3 < ...`.
    fn rank_offset(self) -> u64 {
        match self {
            Color::AB => 0,
            Color::A => 1,
            Color::B => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::A => "a",
            Color::B => "b",
            Color::AB => "ab",
        }
    }
}

/// An integer carrying one of the colors `a`, `b` or `ab`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredSymbol {
    pub color: Color,
    pub weight: u32,
}

impl ColoredSymbol {
    pub fn new(color: Color, weight: u32) -> Result<Self, PartitionError> {
        let min = if color == Color::AB { 2 } else { 1 };
        if weight < min {
            return Err(PartitionError::InvalidSymbol(format!("{}{}", color.name(), weight)));
        }
        Ok(Self { color, weight })
    }

    pub fn a(weight: u32) -> Self {
        Self::new(Color::A, weight).expect("a-symbols need weight >= 1")
    }

    pub fn b(weight: u32) -> Self {
        Self::new(Color::B, weight).expect("b-symbols need weight >= 1")
    }

    pub fn ab(weight: u32) -> Self {
        Self::new(Color::AB, weight).expect("ab-symbols need weight >= 2")
    }

    /// Position in the linear order: `a_n -> 3n+1`, `b_n -> 3n+2`, `ab_n -> 3n`.
    pub fn rank(self) -> u64 {
        3 * self.weight as u64 + self.color.rank_offset()
    }

    /// Image under the dilation: `a_n -> 3n-2`, `b_n -> 3n-1`, `ab_n -> 3n-3`.
    pub fn dilate(self) -> u64 {
        self.rank() - 3
    }

    /// Inverse of [`ColoredSymbol::dilate`] on the positive integers.
    pub fn from_dilated(value: u64) -> Self {
        let color = match value % 3 {
            1 => Color::A,
            2 => Color::B,
            _ => Color::AB,
        };
        let weight = ((value + 3 - color.rank_offset()) / 3) as u32;
        Self::new(color, weight).expect("every positive integer is a dilated symbol")
    }

    /// Minimal weight gap when `self` is directly above `below` in a Type-1
    /// partition.
    pub fn required_gap(self, below: ColoredSymbol) -> u32 {
        match (self.color, below.color) {
            (Color::AB, _) | (Color::A, Color::B) => 2,
            _ => 1,
        }
    }
}

impl Ord for ColoredSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for ColoredSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColoredSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.color.name(), self.weight)
    }
}

impl FromStr for ColoredSymbol {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || PartitionError::Parse(format!("bad symbol {s:?}"));
        let (color, rest) = if let Some(r) = s.strip_prefix("ab") {
            (Color::AB, r)
        } else if let Some(r) = s.strip_prefix('a') {
            (Color::A, r)
        } else if let Some(r) = s.strip_prefix('b') {
            (Color::B, r)
        } else {
            return Err(bad());
        };
        let rest = rest.trim_start_matches('_');
        let weight: u32 = rest.parse().map_err(|_| bad())?;
        ColoredSymbol::new(color, weight)
    }
}

/// Distinct colored symbols in strictly decreasing order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<ColoredSymbol>", into = "Vec<ColoredSymbol>")]
pub struct ColoredPartition {
    parts: Vec<ColoredSymbol>,
}

impl ColoredPartition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts the symbols into decreasing order; repeated symbols are rejected.
    pub fn new(mut parts: Vec<ColoredSymbol>) -> Result<Self, PartitionError> {
        parts.sort_by(|a, b| b.cmp(a));
        if let Some(w) = parts.windows(2).find(|w| w[0] == w[1]) {
            return Err(PartitionError::RepeatedSymbol(w[0].to_string()));
        }
        Ok(Self { parts })
    }

    pub(crate) fn from_sorted(parts: Vec<ColoredSymbol>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] > w[1]));
        Self { parts }
    }

    /// Single-color partition from weights, in any order.
    pub fn monochrome(color: Color, weights: &[u32]) -> Result<Self, PartitionError> {
        let parts = weights
            .iter()
            .map(|&w| ColoredSymbol::new(color, w))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[ColoredSymbol] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Total weight `sigma`.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|p| p.weight as u64).sum()
    }

    pub fn largest(&self) -> Option<ColoredSymbol> {
        self.parts.first().copied()
    }

    pub fn count(&self, color: Color) -> usize {
        self.parts.iter().filter(|p| p.color == color).count()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.parts.iter().map(|p| p.weight).collect()
    }

    /// Parts after the dilation, in decreasing order.
    pub fn dilated(&self) -> Vec<u64> {
        self.parts.iter().map(|p| p.dilate()).collect()
    }
}

impl TryFrom<Vec<ColoredSymbol>> for ColoredPartition {
    type Error = PartitionError;

    fn try_from(parts: Vec<ColoredSymbol>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

impl From<ColoredPartition> for Vec<ColoredSymbol> {
    fn from(p: ColoredPartition) -> Self {
        p.parts
    }
}

/// `+`-joined symbols, e.g. `ab12+b7+a1`; the empty partition is `∅`.
impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&text.join("+"))
    }
}

impl FromStr for ColoredPartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "0" || s.eq_ignore_ascii_case("empty") {
            return Ok(Self::empty());
        }
        let parts = s
            .split('+')
            .map(str::parse)
            .collect::<Result<Vec<ColoredSymbol>, _>>()?;
        Self::new(parts)
    }
}

/// The Type-1 gap condition: consecutive weights differ by at least 1, and by
/// at least 2 when the larger symbol is `ab`, or is `a` above a `b`.
pub fn is_type1(p: &ColoredPartition) -> bool {
    p.parts()
        .windows(2)
        .all(|w| w[0].weight >= w[1].weight + w[0].required_gap(w[1]))
}

/// Schur's gap condition on decreasing ordinary parts: differences `>= 3`,
/// and `>= 4` when the larger part is a multiple of 3.
pub fn satisfies_schur_gaps(parts: &[u64]) -> bool {
    parts.windows(2).all(|w| {
        let need = if w[0] % 3 == 0 { 4 } else { 3 };
        w[0] >= w[1] + need
    })
}

/// The "no consecutive multiples of 3" phrasing of the same condition.
pub fn satisfies_schur_gaps_literal(parts: &[u64]) -> bool {
    parts
        .windows(2)
        .all(|w| w[0] >= w[1] + 3 && !(w[0] % 3 == 0 && w[1] % 3 == 0 && w[0] - w[1] == 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> ColoredPartition {
        s.parse().unwrap()
    }

    #[test]
    fn ordering_matches_the_chain() {
        let chain = [
            ColoredSymbol::a(1),
            ColoredSymbol::b(1),
            ColoredSymbol::ab(2),
            ColoredSymbol::a(2),
            ColoredSymbol::b(2),
            ColoredSymbol::ab(3),
            ColoredSymbol::a(3),
            ColoredSymbol::b(3),
            ColoredSymbol::ab(4),
            ColoredSymbol::a(4),
            ColoredSymbol::b(4),
            ColoredSymbol::ab(5),
        ];
        assert!(chain.windows(2).all(|w| w[0] < w[1]));
        let dilated: Vec<u64> = chain.iter().map(|s| s.dilate()).collect();
        assert_eq!(dilated, (1..=12).collect::<Vec<_>>());
    }

    #[test]
    fn dilation_examples() {
        assert_eq!(ColoredSymbol::a(1).dilate(), 1);
        assert_eq!(ColoredSymbol::b(2).dilate(), 5);
        assert_eq!(ColoredSymbol::ab(2).dilate(), 3);
        for v in 1..200 {
            assert_eq!(ColoredSymbol::from_dilated(v).dilate(), v);
        }
    }

    #[test]
    fn ab_needs_weight_two() {
        assert!(ColoredSymbol::new(Color::AB, 1).is_err());
        assert!(ColoredSymbol::new(Color::A, 0).is_err());
        assert!("ab1".parse::<ColoredSymbol>().is_err());
    }

    #[test]
    fn type1_examples() {
        assert!(is_type1(&ColoredPartition::empty()));
        assert!(is_type1(&part("b2+a1")));
        assert!(!is_type1(&part("a2+b1")));
        assert!(!is_type1(&part("ab2+a1")));
        assert!(is_type1(&part("ab12+ab10+b7+b6+a5+ab4+b2+a1")));
    }

    #[test]
    fn text_format_normalizes_order() {
        let p = part("a1+ab4+b2+ab10+b6+b7+a5+ab12");
        assert_eq!(p.to_string(), "ab12+ab10+b7+b6+a5+ab4+b2+a1");
        assert_eq!(ColoredPartition::empty().to_string(), "∅");
        assert!(matches!("a1+a1".parse::<ColoredPartition>(), Err(PartitionError::RepeatedSymbol(_))));
        assert!("c3".parse::<ColoredPartition>().is_err());
    }

    #[test]
    fn json_is_a_list_of_color_weight_records() {
        let js = serde_json::to_string(&part("ab4+a1")).unwrap();
        assert_eq!(js, r#"[{"color":"ab","weight":4},{"color":"a","weight":1}]"#);
        let back: ColoredPartition = serde_json::from_str(&js).unwrap();
        assert_eq!(back, part("a1+ab4"));
    }
}
