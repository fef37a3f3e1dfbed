use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::parse::{parse_terms, write_term};
use super::{LaurentPoly, QSeriesError};

/// Exponents of the formal markers `A`, `B`, `C`. Arity-2 series keep the
/// `C` slot at zero.
pub type MarkerExps = [u32; 3];

/// Optional truncation caps. A cap of `None` means "not truncated".
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    /// Per-marker maximal degree.
    pub markers: Option<[u32; 3]>,
    /// Maximal retained q-exponent.
    pub q_max: Option<i64>,
}

impl Truncation {
    pub const NONE: Truncation = Truncation { markers: None, q_max: None };

    pub fn new(markers: Option<[u32; 3]>, q_max: Option<i64>) -> Self {
        Self { markers, q_max }
    }

    /// Componentwise minimum; an absent cap never loosens a present one.
    pub fn meet(&self, other: &Truncation) -> Truncation {
        let markers = match (self.markers, other.markers) {
            (Some(a), Some(b)) => Some([a[0].min(b[0]), a[1].min(b[1]), a[2].min(b[2])]),
            (a, b) => a.or(b),
        };
        let q_max = match (self.q_max, other.q_max) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Truncation { markers, q_max }
    }

    pub fn admits(&self, exps: &MarkerExps) -> bool {
        self.markers
            .is_none_or(|caps| exps.iter().zip(caps.iter()).all(|(e, c)| e <= c))
    }

    fn clip(&self, poly: LaurentPoly) -> LaurentPoly {
        match self.q_max {
            Some(q) => poly.truncate(q),
            None => poly,
        }
    }
}

/// A polynomial in formal markers with Laurent-polynomial coefficients,
/// e.g. a generating function `G_L(A, B; q)`.
#[derive(Clone, PartialEq, Eq)]
pub struct MarkerSeries {
    arity: u8,
    coeffs: BTreeMap<MarkerExps, LaurentPoly>,
    truncation: Truncation,
}

impl MarkerSeries {
    pub fn zero(arity: u8) -> Self {
        assert!(arity == 2 || arity == 3, "marker arity must be 2 or 3");
        Self {
            arity,
            coeffs: BTreeMap::new(),
            truncation: Truncation::NONE,
        }
    }

    pub fn one(arity: u8) -> Self {
        Self::term(arity, [0, 0, 0], LaurentPoly::one())
    }

    pub fn term(arity: u8, exps: MarkerExps, coeff: LaurentPoly) -> Self {
        let mut s = Self::zero(arity);
        s.add_term(exps, coeff);
        s
    }

    /// Applies (tightens) truncation caps, dropping terms beyond them.
    pub fn truncated(mut self, caps: Truncation) -> Self {
        self.truncation = self.truncation.meet(&caps);
        let trunc = self.truncation;
        let coeffs = std::mem::take(&mut self.coeffs);
        for (k, v) in coeffs {
            if trunc.admits(&k) {
                let v = trunc.clip(v);
                if !v.is_zero() {
                    self.coeffs.insert(k, v);
                }
            }
        }
        self
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored marker monomials.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MarkerExps, &LaurentPoly)> {
        self.coeffs.iter()
    }

    /// Adds `coeff * A^i B^j C^k`, honoring the caps.
    pub fn add_term(&mut self, exps: MarkerExps, coeff: LaurentPoly) {
        assert!(self.arity == 3 || exps[2] == 0, "C marker used in an arity-2 series");
        if !self.truncation.admits(&exps) {
            return;
        }
        let coeff = self.truncation.clip(coeff);
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exps).or_default();
        *entry += &coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exps);
        }
    }

    /// The coefficient of `A^i B^j [C^k]`, zero when absent.
    pub fn coeff(&self, exps: &MarkerExps) -> LaurentPoly {
        self.coeffs.get(exps).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &MarkerSeries) -> MarkerSeries {
        let mut out = self.clone_with_caps(other);
        for (k, v) in &other.coeffs {
            out.add_term(*k, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &MarkerSeries) -> MarkerSeries {
        let mut out = self.clone_with_caps(other);
        for (k, v) in &other.coeffs {
            out.add_term(*k, -v);
        }
        out
    }

    /// Product; under a q-cap the operands are assumed to have no negative
    /// q-exponents so that every retained coefficient is exact.
    pub fn mul(&self, other: &MarkerSeries) -> MarkerSeries {
        let arity = self.arity.max(other.arity);
        let mut out = MarkerSeries::zero(arity);
        out.truncation = self.truncation.meet(&other.truncation);
        for (ka, va) in &self.coeffs {
            for (kb, vb) in &other.coeffs {
                let k = [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]];
                if !out.truncation.admits(&k) {
                    continue;
                }
                let prod = match out.truncation.q_max {
                    Some(q) => va.mul_truncated(vb, q),
                    None => va * vb,
                };
                out.add_term(k, prod);
            }
        }
        out
    }

    /// Multiplies every coefficient by a polynomial in `q`.
    pub fn scale(&self, factor: &LaurentPoly) -> MarkerSeries {
        let mut out = MarkerSeries::zero(self.arity);
        out.truncation = self.truncation;
        for (k, v) in &self.coeffs {
            out.add_term(*k, v * factor);
        }
        out
    }

    /// Dilation/translation: `A^i B^j C^k q^e` maps to
    /// `A^i B^j C^k q^{d*e + i*s_A + j*s_B + k*s_C}`.
    ///
    /// A q-capped input with a negative shift must also carry marker caps,
    /// so that the new q-cap is known for every marker monomial.
    pub fn dilate(&self, q_power: i64, shifts: [i64; 3]) -> MarkerSeries {
        assert!(q_power > 0, "dilation power must be positive");
        let q_max = self.truncation.q_max.map(|q| {
            let mut cap = q_power * q;
            if shifts.iter().any(|&s| s < 0) {
                let marker_caps = self
                    .truncation
                    .markers
                    .expect("dilating a q-truncated series with a negative shift needs marker caps");
                for (c, s) in marker_caps.iter().zip(shifts) {
                    cap += *c as i64 * s.min(0);
                }
            }
            cap
        });
        let mut out = MarkerSeries::zero(self.arity);
        out.truncation = Truncation { markers: self.truncation.markers, q_max };
        for (k, v) in &self.coeffs {
            let shift: i64 = k.iter().zip(shifts).map(|(e, s)| *e as i64 * s).sum();
            out.add_term(*k, v.dilate(q_power).shift(shift));
        }
        out
    }

    fn clone_with_caps(&self, other: &MarkerSeries) -> MarkerSeries {
        let arity = self.arity.max(other.arity);
        let mut out = MarkerSeries { arity, ..self.clone() };
        if out.truncation != out.truncation.meet(&other.truncation) {
            out = out.truncated(other.truncation);
        }
        out
    }

    /// Flattened `(markers, q-exponent, coefficient)` terms in display order:
    /// ascending q-exponent, then descending marker exponents.
    pub fn flat_terms(&self) -> Vec<(MarkerExps, i64, BigInt)> {
        let mut out: Vec<(MarkerExps, i64, BigInt)> = self
            .coeffs
            .iter()
            .flat_map(|(k, v)| v.terms().map(move |(e, c)| (*k, e, c.clone())))
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
        out
    }

    /// Parses the canonical text form with the given arity.
    pub fn parse_with_arity(s: &str, arity: u8) -> Result<MarkerSeries, QSeriesError> {
        let mut out = MarkerSeries::zero(arity);
        for t in parse_terms(s)? {
            if arity == 2 && t.markers[2] != 0 {
                return Err(QSeriesError::Parse("C marker in an arity-2 series".into()));
            }
            out.add_term(t.markers, LaurentPoly::monomial(t.coeff, t.q_exp));
        }
        Ok(out)
    }
}

impl fmt::Display for MarkerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.flat_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, e, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_term(f, &c.abs(), &k[..self.arity as usize], *e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MarkerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MarkerSeries[{}]({self})", self.arity)
    }
}

/// Parses with arity 3 when a `C` appears, else arity 2.
impl FromStr for MarkerSeries {
    type Err = QSeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let arity = if s.contains('C') { 3 } else { 2 };
        MarkerSeries::parse_with_arity(s, arity)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    arity: u8,
    truncation: Truncation,
    terms: String,
}

impl Serialize for MarkerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesRepr {
            arity: self.arity,
            truncation: self.truncation,
            terms: self.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MarkerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.arity != 2 && repr.arity != 3 {
            return Err(serde::de::Error::custom("marker arity must be 2 or 3"));
        }
        let s = MarkerSeries::parse_with_arity(&repr.terms, repr.arity).map_err(serde::de::Error::custom)?;
        Ok(s.truncated(repr.truncation))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> MarkerSeries {
        text.parse().unwrap()
    }

    #[test]
    fn coefficient_lookup() {
        assert_eq!(MarkerSeries::one(2).coeff(&[0, 0, 0]), LaurentPoly::one());
        let x = s("1 + A*q + B*q");
        assert_eq!(x.coeff(&[1, 0, 0]), LaurentPoly::q_pow(1));
        assert!(x.coeff(&[2, 0, 0]).is_zero());
    }

    #[test]
    fn dilation_examples() {
        let a = s("A*q").dilate(3, [-2, -1, 0]);
        assert_eq!(a.to_string(), "A*q");
        let b = s("B*q").dilate(3, [-2, -1, 0]);
        assert_eq!(b.to_string(), "B*q^2");
        let x = s("1 + A*q + B*q^2 - 3*A*B*q^-1");
        assert_eq!(x.dilate(1, [0, 0, 0]), x);
    }

    #[test]
    fn display_order_is_exponent_first() {
        let x = s("B*q^5 + A^2*q^5 + 1 + A*B*q^3");
        assert_eq!(x.to_string(), "1 + A*B*q^3 + A^2*q^5 + B*q^5");
    }

    #[test]
    fn truncated_product_respects_caps() {
        let caps = Truncation::new(Some([1, 1, 0]), Some(3));
        let f = s("1 + A*q").truncated(caps);
        let g = s("1 + A*q^2 + B*q");
        let prod = f.mul(&g);
        // A^2*q^3 exceeds the marker cap
        assert_eq!(prod.to_string(), "1 + A*q + B*q + A*B*q^2 + A*q^2");
        assert_eq!(prod.truncation(), caps);
    }

    #[test]
    fn text_round_trip_with_c() {
        let x = s("1 - 2*A*C*q^4 + C^3*q");
        assert_eq!(x.arity(), 3);
        let again: MarkerSeries = x.to_string().parse().unwrap();
        assert_eq!(again, x);
    }

    #[test]
    fn json_round_trip() {
        let x = s("1 + A*q + B*q^2").truncated(Truncation::new(Some([4, 4, 0]), Some(20)));
        let js = serde_json::to_string(&x).unwrap();
        let back: MarkerSeries = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }
}
