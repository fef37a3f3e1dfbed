use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::parse::{parse_terms, write_term};
use super::QSeriesError;

/// A Laurent polynomial in `q` with arbitrary-precision integer coefficients.
///
/// Terms are kept sorted by ascending exponent and no stored coefficient is
/// zero, so the zero polynomial is the empty term list and structural
/// equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c.into(), 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: BigInt, exp: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(BigInt::one(), exp)
    }

    /// `1 - q^exp`; vanishes at `exp = 0`.
    pub fn one_minus_q_pow(exp: i64) -> Self {
        Self::from_terms([(0, BigInt::one()), (exp, -BigInt::one())])
    }

    /// Builds a polynomial from arbitrary (exponent, coefficient) pairs,
    /// merging repeated exponents and dropping zeros.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in iter {
            *acc.entry(e).or_default() += c.into();
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Builds from already sorted, zero-free, duplicate-free terms.
    fn from_sorted(terms: Vec<(i64, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + ExactSizeIterator {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(idx) => self.terms[idx].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::from_sorted(self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_sorted(self.terms.iter().map(|(e, x)| (*e, x * c)).collect())
    }

    /// The substitution `q -> q^d` for a positive integer `d`.
    pub fn dilate(&self, d: i64) -> Self {
        assert!(d > 0, "dilation power must be positive");
        Self::from_sorted(self.terms.iter().map(|(e, c)| (e * d, c.clone())).collect())
    }

    /// Drops every term with exponent above `max_exp`.
    pub fn truncate(&self, max_exp: i64) -> Self {
        let end = self.terms.partition_point(|(e, _)| *e <= max_exp);
        Self::from_sorted(self.terms[..end].to_vec())
    }

    /// Product restricted to exponents `<= max_exp`. Operands are assumed to
    /// have no negative exponents, so the retained terms are exact.
    pub fn mul_truncated(&self, other: &Self, max_exp: i64) -> Self {
        self.truncate(max_exp).mul_ref(&other.truncate(max_exp)).truncate(max_exp)
    }

    /// Value at `q = 1`; only meaningful for callers that know the result
    /// is a plain integer combination.
    pub fn at_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Evaluates at a nonzero rational point.
    pub fn eval(&self, q: &BigRational) -> BigRational {
        assert!(!q.is_zero(), "Laurent polynomials are not defined at q = 0");
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = q.pow(*e as i32);
            acc += p * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// True iff coefficient of `q^e` equals that of `q^{lo+hi-e}` over the span.
    pub fn is_palindromic(&self) -> bool {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return true;
        };
        self.terms.iter().all(|(e, c)| self.coeff(lo + hi - e) == *c)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.scale(c).shift(*e);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.scale(c).shift(*e);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let width = (hi - lo + 1) as u128;
        let pairs = (self.terms.len() * other.terms.len()) as u128;
        if width > 4 * pairs + 64 {
            return self.mul_sparse(other);
        }
        let width = width as usize;
        let (a_lo, b_lo) = (self.terms[0].0, other.terms[0].0);
        if let (Some(a), Some(b)) = (small_terms(&self.terms, a_lo), small_terms(&other.terms, b_lo)) {
            let bits = max_bits(&a) + max_bits(&b) + bit_len(a.len().min(b.len()) as u128);
            if bits <= 62 {
                let mut acc = vec![0i64; width];
                for &(oa, ca) in &a {
                    let row = &mut acc[oa..];
                    for &(ob, cb) in &b {
                        row[ob] += ca * cb;
                    }
                }
                return Self::from_dense(lo, acc.into_iter().map(BigInt::from));
            }
            if bits <= 126 {
                let mut acc = vec![0i128; width];
                for &(oa, ca) in &a {
                    let row = &mut acc[oa..];
                    for &(ob, cb) in &b {
                        row[ob] += ca as i128 * cb as i128;
                    }
                }
                return Self::from_dense(lo, acc.into_iter().map(BigInt::from));
            }
        }
        let mut acc = vec![BigInt::zero(); width];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        Self::from_dense(lo, acc.into_iter())
    }

    fn mul_sparse(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(ea + eb).or_default() += ca * cb;
            }
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn from_dense<I: Iterator<Item = BigInt>>(lo: i64, coeffs: I) -> Self {
        let terms = coeffs
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (lo + k as i64, c))
            .collect();
        Self::from_sorted(terms)
    }

    /// Exact division: returns `c` with `c * divisor == self`, or
    /// `NotDivisible` when no Laurent polynomial quotient exists.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, QSeriesError> {
        if divisor.is_zero() {
            return Err(QSeriesError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (a_lo, a_hi) = (self.min_exp().unwrap(), self.max_exp().unwrap());
        let (b_lo, b_hi) = (divisor.min_exp().unwrap(), divisor.max_exp().unwrap());
        let span_a = a_hi - a_lo;
        let span_b = b_hi - b_lo;
        if span_a < span_b {
            return Err(QSeriesError::NotDivisible);
        }
        if divisor.terms.len() == 1 {
            let (e, c) = &divisor.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (ea, ca) in &self.terms {
                let (quot, rem) = ca.div_rem(c);
                if !rem.is_zero() {
                    return Err(QSeriesError::NotDivisible);
                }
                out.push((ea - e, quot));
            }
            return Ok(Self::from_sorted(out));
        }
        // Low-order-first division against the normalized divisor, which has
        // a nonzero constant term; the quotient then spans span_a - span_b.
        let n = (span_a - span_b) as usize;
        let b: Vec<BigInt> = (0..=span_b).map(|k| divisor.coeff(b_lo + k)).collect();
        let mut rem: Vec<BigInt> = (0..=span_a).map(|k| self.coeff(a_lo + k)).collect();
        let mut quot = vec![BigInt::zero(); n + 1];
        for t in 0..=n {
            if rem[t].is_zero() {
                continue;
            }
            let (qt, r) = rem[t].div_rem(&b[0]);
            if !r.is_zero() {
                return Err(QSeriesError::NotDivisible);
            }
            for (s, bs) in b.iter().enumerate() {
                if !bs.is_zero() {
                    rem[t + s] -= &qt * bs;
                }
            }
            quot[t] = qt;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(QSeriesError::NotDivisible);
        }
        Ok(Self::from_dense(a_lo - b_lo, quot.into_iter()))
    }
}

/// Coefficients as `i64` with offsets relative to `lo`, if they all fit.
fn small_terms(terms: &[(i64, BigInt)], lo: i64) -> Option<Vec<(usize, i64)>> {
    terms
        .iter()
        .map(|(e, c)| c.to_i64().map(|c| ((e - lo) as usize, c)))
        .collect()
}

fn bit_len(x: u128) -> u32 {
    128 - x.leading_zeros()
}

fn max_bits(terms: &[(usize, i64)]) -> u32 {
    terms
        .iter()
        .map(|(_, c)| bit_len(c.unsigned_abs() as u128))
        .max()
        .unwrap_or(0)
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &rhs.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((*ea, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        LaurentPoly::from_sorted(out)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_sorted(self.terms.iter().map(|(e, c)| (*e, -c)).collect())
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self + rhs;
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| acc * p)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

/// Canonical rendering: ascending exponent, e.g. `-q^-1 + 2 + q^3`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_term(f, &c.abs(), &[], *e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = QSeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let terms = parse_terms(s)?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            if t.markers.iter().any(|&m| m != 0) {
                return Err(QSeriesError::Parse(format!("marker in a q-polynomial: {s:?}")));
            }
            out.push((t.q_exp, t.coeff));
        }
        Ok(Self::from_terms(out))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
