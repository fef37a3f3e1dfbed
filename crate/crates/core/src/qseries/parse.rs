//! Shared text syntax for polynomials and marker series.
//!
//! A term is a `*`-joined product of an optional integer, marker powers
//! (`A`, `B^2`, `C`) and a power of `q` (`q`, `q^-3`). Terms are joined by
//! ` + ` / ` - `.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::QSeriesError;

pub(crate) const MARKER_NAMES: [char; 3] = ['A', 'B', 'C'];

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ParsedTerm {
    pub coeff: BigInt,
    pub markers: [u32; 3],
    pub q_exp: i64,
}

/// Writes `coeff * markers * q^exp` for a nonnegative `coeff`, omitting unit
/// factors.
pub(crate) fn write_term(
    f: &mut impl fmt::Write,
    coeff: &BigInt,
    markers: &[u32],
    exp: i64,
) -> fmt::Result {
    let mut factors: Vec<String> = Vec::new();
    for (name, &m) in MARKER_NAMES.iter().zip(markers) {
        match m {
            0 => {}
            1 => factors.push(name.to_string()),
            _ => factors.push(format!("{name}^{m}")),
        }
    }
    match exp {
        0 => {}
        1 => factors.push("q".to_string()),
        _ => factors.push(format!("q^{exp}")),
    }
    if !coeff.is_one() || factors.is_empty() {
        factors.insert(0, coeff.to_string());
    }
    f.write_str(&factors.join("*"))
}

pub(crate) fn parse_terms(input: &str) -> Result<Vec<ParsedTerm>, QSeriesError> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(QSeriesError::Parse("empty expression".into()));
    }
    if compact == "0" {
        return Ok(Vec::new());
    }
    // Split at '+'/'-' that do not follow '^' (those belong to an exponent).
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut negative = false;
    let mut current = String::new();
    let mut prev: Option<char> = None;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && prev != Some('^') {
            if current.is_empty() {
                if prev.is_some() {
                    return Err(QSeriesError::Parse(format!("dangling sign in {input:?}")));
                }
            } else {
                chunks.push((negative, std::mem::take(&mut current)));
            }
            negative = ch == '-';
        } else {
            current.push(ch);
        }
        prev = Some(ch);
    }
    if current.is_empty() {
        return Err(QSeriesError::Parse(format!("trailing sign in {input:?}")));
    }
    chunks.push((negative, current));
    chunks
        .into_iter()
        .map(|(neg, body)| parse_term(&body, neg))
        .collect()
}

fn parse_term(body: &str, negative: bool) -> Result<ParsedTerm, QSeriesError> {
    let bad = || QSeriesError::Parse(format!("malformed term {body:?}"));
    let mut coeff = BigInt::one();
    let mut markers = [0u32; 3];
    let mut q_exp = 0i64;
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(bad());
        }
        let (base, power) = match factor.split_once('^') {
            Some((b, p)) => (b, Some(p)),
            None => (factor, None),
        };
        if base.chars().all(|c| c.is_ascii_digit()) {
            if power.is_some() {
                return Err(bad());
            }
            coeff *= base.parse::<BigInt>().map_err(|_| bad())?;
            continue;
        }
        if base == "q" {
            let e: i64 = match power {
                Some(p) => p.parse().map_err(|_| bad())?,
                None => 1,
            };
            q_exp += e;
            continue;
        }
        let idx = MARKER_NAMES
            .iter()
            .position(|n| base.len() == 1 && base.starts_with(*n))
            .ok_or_else(bad)?;
        let e: u32 = match power {
            Some(p) => p.parse().map_err(|_| bad())?,
            None => 1,
        };
        markers[idx] += e;
    }
    if negative {
        coeff = -coeff;
    }
    debug_assert!(!coeff.is_negative() || negative);
    Ok(ParsedTerm { coeff, markers, q_exp })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_signs_outside_exponents() {
        let t = parse_terms("-q^-1 + 2 - 3*A^2*B*q^-4").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].coeff, BigInt::from(-1));
        assert_eq!(t[0].q_exp, -1);
        assert_eq!(t[2].coeff, BigInt::from(-3));
        assert_eq!(t[2].markers, [2, 1, 0]);
        assert_eq!(t[2].q_exp, -4);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_terms("").is_err());
        assert!(parse_terms("1 +").is_err());
        assert!(parse_terms("x^2").is_err());
        assert!(parse_terms("q^").is_err());
        assert!(parse_terms("2**q").is_err());
    }
}
