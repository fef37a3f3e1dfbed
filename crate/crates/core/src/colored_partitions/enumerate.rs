use super::{Color, ColoredPartition, ColoredSymbol};

/// Optional per-color weight caps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ColorCaps {
    pub a: Option<u32>,
    pub b: Option<u32>,
    pub ab: Option<u32>,
}

impl ColorCaps {
    /// `a`- and `ab`-parts at most `m`, `b`-parts at most `l`.
    pub fn bounded(l: u32, m: u32) -> Self {
        Self { a: Some(m), b: Some(l), ab: Some(m) }
    }

    fn cap(&self, color: Color) -> Option<u32> {
        match color {
            Color::A => self.a,
            Color::B => self.b,
            Color::AB => self.ab,
        }
    }

    fn admits(&self, s: ColoredSymbol) -> bool {
        self.cap(s.color).is_none_or(|c| s.weight <= c)
    }
}

/// Calls `visit` on every Type-1 partition with total weight at most
/// `max_weight`, largest part at most `largest` in the symbol order, and
/// per-color weights within `caps`.
///
/// The symbol universe must be finite: `max_weight`, `largest` or a full set
/// of caps has to bound the weights.
pub fn for_each_type1(
    max_weight: u64,
    largest: Option<ColoredSymbol>,
    caps: Option<ColorCaps>,
    mut visit: impl FnMut(&[ColoredSymbol]),
) {
    let caps = caps.unwrap_or_default();
    let mut weight_cap = max_weight;
    if let Some(s) = largest {
        weight_cap = weight_cap.min(s.weight as u64);
    }
    if let (Some(a), Some(b), Some(ab)) = (caps.a, caps.b, caps.ab) {
        weight_cap = weight_cap.min(a.max(b).max(ab) as u64);
    }
    assert!(weight_cap <= 1_000_000, "Type-1 enumeration over an unbounded symbol universe");

    // Every admissible symbol, in decreasing order.
    let mut symbols: Vec<ColoredSymbol> = Vec::new();
    for w in (1..=weight_cap as u32).rev() {
        for color in [Color::B, Color::A, Color::AB] {
            if let Ok(s) = ColoredSymbol::new(color, w) {
                if caps.admits(s) && largest.is_none_or(|top| s <= top) {
                    symbols.push(s);
                }
            }
        }
    }
    let mut stack = Vec::new();
    descend(&symbols, 0, max_weight, &mut stack, &mut visit);
}

fn descend(
    symbols: &[ColoredSymbol],
    start: usize,
    budget: u64,
    stack: &mut Vec<ColoredSymbol>,
    visit: &mut impl FnMut(&[ColoredSymbol]),
) {
    visit(stack);
    for idx in start..symbols.len() {
        let s = symbols[idx];
        if s.weight as u64 > budget {
            continue;
        }
        if let Some(&prev) = stack.last() {
            if prev.weight < s.weight + prev.required_gap(s) {
                continue;
            }
        }
        stack.push(s);
        descend(symbols, idx + 1, budget - s.weight as u64, stack, visit);
        stack.pop();
    }
}

/// All Type-1 partitions with weight at most `max_weight` and the given
/// largest-part bound and per-color caps.
pub fn enumerate_type1(
    max_weight: u64,
    largest: Option<ColoredSymbol>,
    caps: Option<ColorCaps>,
) -> Vec<ColoredPartition> {
    let mut out = Vec::new();
    for_each_type1(max_weight, largest, caps, |parts| {
        out.push(ColoredPartition::from_sorted(parts.to_vec()))
    });
    out
}

/// Calls `visit` on every partition of exactly `n` into distinct parts from
/// `allowed` (at most `max_part`), where consecutive parts `x > y` satisfy
/// `gap_ok(x, y)`. Parts are passed in decreasing order.
pub fn for_each_gap_partition(
    n: u64,
    max_part: u64,
    allowed: &dyn Fn(u64) -> bool,
    gap_ok: &dyn Fn(u64, u64) -> bool,
    visit: &mut dyn FnMut(&[u64]),
) {
    fn go(
        remaining: u64,
        upper: u64,
        allowed: &dyn Fn(u64) -> bool,
        gap_ok: &dyn Fn(u64, u64) -> bool,
        stack: &mut Vec<u64>,
        visit: &mut dyn FnMut(&[u64]),
    ) {
        if remaining == 0 {
            visit(stack);
            return;
        }
        for part in (1..=upper.min(remaining)).rev() {
            if !allowed(part) {
                continue;
            }
            if let Some(&prev) = stack.last() {
                if !gap_ok(prev, part) {
                    continue;
                }
            }
            stack.push(part);
            go(remaining - part, part - 1, allowed, gap_ok, stack, visit);
            stack.pop();
        }
    }
    let mut stack = Vec::new();
    go(n, max_part, allowed, gap_ok, &mut stack, visit);
}

/// Ordinary partitions (weakly decreasing) with at most `max_parts` parts,
/// each at most `max_part`, i.e. the partitions in a box.
pub fn partitions_in_box(max_parts: u32, max_part: u32) -> Vec<Vec<u32>> {
    fn go(rows_left: u32, upper: u32, stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(stack.clone());
        if rows_left == 0 {
            return;
        }
        for part in (1..=upper).rev() {
            stack.push(part);
            go(rows_left - 1, part, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    go(max_parts, max_part, &mut Vec::new(), &mut out);
    out
}
