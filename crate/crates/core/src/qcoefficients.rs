//! Coefficient families: triangular numbers, q-Pochhammer products, the
//! extended q-binomial, order-3 q-multinomials and generalized q-trinomials.
//!
//! The q-binomial is defined for all integer arguments by
//! `[n+m; n] = (q^{m+1})_n / (q)_n` for `n >= 0` and `0` for `n < 0`, and is
//! evaluated by exact Laurent division. Results are memoized process-wide.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::{Arc, OnceLock, RwLock};

use crate::qseries::{geometric_inverse, LaurentPoly, MarkerSeries};

/// `n(n+1)/2`, for every integer `n` (so `T_{-1} = 0`).
pub fn triangular(n: i64) -> i64 {
    n * (n + 1) / 2
}

/// `(q^m; q)_n = prod_{j=0}^{n-1} (1 - q^{m+j})`; the empty product is 1.
pub fn poch_qpow(m: i64, n: u32) -> LaurentPoly {
    (0..n as i64)
        .map(|j| LaurentPoly::one_minus_q_pow(m + j))
        .product()
}

type Cache<K> = RwLock<HashMap<K, Arc<LaurentPoly>>>;

fn memo<K: Hash + Eq>(
    cache: &'static OnceLock<Cache<K>>,
    key: K,
    compute: impl FnOnce() -> LaurentPoly,
) -> Arc<LaurentPoly> {
    let cache = cache.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap().get(&key) {
        return Arc::clone(v);
    }
    let value = Arc::new(compute());
    cache.write().unwrap().entry(key).or_insert(value).clone()
}

/// Shared handle to the memoized extended q-binomial `[top; bottom]`.
pub fn qbinom_shared(top: i64, bottom: i64) -> Arc<LaurentPoly> {
    static CACHE: OnceLock<Cache<(i64, i64)>> = OnceLock::new();
    memo(&CACHE, (top, bottom), || {
        if bottom < 0 {
            return LaurentPoly::zero();
        }
        let n = bottom as u32;
        poch_qpow(top - bottom + 1, n)
            .div_exact(&poch_qpow(1, n))
            .expect("q-binomial ratio is always an exact Laurent polynomial")
    })
}

/// Extended q-binomial coefficient `[top; bottom]` for arbitrary integers.
pub fn qbinom(top: i64, bottom: i64) -> LaurentPoly {
    (*qbinom_shared(top, bottom)).clone()
}

/// Order-3 q-multinomial `(q)_L / ((q)_i (q)_j (q)_{L-i-j})`, zero unless
/// `i, j, L-i-j >= 0`.
pub fn qmultinomial3_shared(l: i64, i: i64, j: i64) -> Arc<LaurentPoly> {
    static CACHE: OnceLock<Cache<(i64, i64, i64)>> = OnceLock::new();
    if i < 0 || j < 0 || l - i - j < 0 {
        return Arc::new(LaurentPoly::zero());
    }
    memo(&CACHE, (l, i, j), || {
        let num = poch_qpow(1, l as u32);
        [i, j, l - i - j].iter().fold(num, |acc, &d| {
            acc.div_exact(&poch_qpow(1, d as u32))
                .expect("q-multinomial ratio is always an exact polynomial")
        })
    })
}

pub fn qmultinomial3(l: i64, i: i64, j: i64) -> LaurentPoly {
    (*qmultinomial3_shared(l, i, j)).clone()
}

/// A generalized q-trinomial `(L; q; tau)_c`, kept as a polynomial in the
/// formal variable `c`: entry `j` is the coefficient of `c^j`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrinomialValue {
    entries: BTreeMap<u32, LaurentPoly>,
}

impl TrinomialValue {
    pub fn entries(&self) -> impl Iterator<Item = (u32, &LaurentPoly)> {
        self.entries.iter().map(|(j, p)| (*j, p))
    }

    pub fn entry(&self, j: u32) -> LaurentPoly {
        self.entries.get(&j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Applies `q -> q^d` to every entry.
    pub fn dilate(&self, d: i64) -> TrinomialValue {
        TrinomialValue {
            entries: self.entries.iter().map(|(j, p)| (*j, p.dilate(d))).collect(),
        }
    }

    /// Substitutes `c = AB` and multiplies by `A^a_shift`, giving the marker
    /// series `sum_j A^{j + a_shift} B^j entry_j`. Requires `j + a_shift >= 0`
    /// on the support.
    pub fn substitute_ab(&self, a_shift: i64) -> MarkerSeries {
        let mut out = MarkerSeries::zero(2);
        for (j, p) in &self.entries {
            let a = *j as i64 + a_shift;
            assert!(a >= 0, "negative A exponent after c = AB substitution");
            out.add_term([a as u32, *j, 0], p.clone());
        }
        out
    }
}

/// `(L; q; tau)_c = sum_j c^j q^{j(j+tau)} [L; j+tau, j, L-2j-tau]`.
pub fn qtrinomial(l: i64, tau: i64) -> TrinomialValue {
    let mut entries = BTreeMap::new();
    let mut j = 0i64.max(-tau);
    while l - 2 * j - tau >= 0 {
        let m = qmultinomial3_shared(l, j + tau, j);
        if !m.is_zero() {
            entries.insert(j as u32, m.shift(j * (j + tau)));
        }
        j += 1;
    }
    TrinomialValue { entries }
}

/// `1 / (q)_n` expanded up to `q^q_max`.
pub fn inverse_poch_truncated(n: i64, q_max: i64) -> LaurentPoly {
    assert!(n >= 0, "negative Pochhammer length in a power-series inverse");
    (1..=n).fold(LaurentPoly::one().truncate(q_max), |acc, m| {
        acc.mul_truncated(&geometric_inverse(m, q_max), q_max)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn triangular_numbers() {
        assert_eq!(triangular(0), 0);
        assert_eq!(triangular(3), 6);
        assert_eq!(triangular(-1), 0);
        assert_eq!(triangular(-2), 1);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(poch_qpow(1, 0), LaurentPoly::one());
        assert_eq!(poch_qpow(1, 2), p("1 - q") * p("1 - q^2"));
        assert!(poch_qpow(-1, 2).is_zero());
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(qbinom(2, 1), p("1 + q"));
        assert!(qbinom(4, -1).is_zero());
        assert_eq!(qbinom(4, 2), p("1 + q + 2*q^2 + q^3 + q^4"));
        assert_eq!(qbinom(-1, 1), p("-q^-1"));
        assert_eq!(qbinom(-1, 0), LaurentPoly::one());
        assert!(qbinom(2, 3).is_zero());
    }

    /// Reflection oracle `[-n; k] = (-1)^k q^{-nk - k(k-1)/2} [n+k-1; k]`
    /// for `n >= 1`.
    #[test]
    fn negative_top_matches_reflection() {
        for n in 1..8i64 {
            for k in 0..7i64 {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let expected = qbinom(n + k - 1, k)
                    .shift(-n * k - k * (k - 1) / 2)
                    .scale(&sign.into());
                assert_eq!(qbinom(-n, k), expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(qmultinomial3(2, 1, 1), p("1 + q"));
        assert_eq!(qmultinomial3(3, 1, 1), p("1 + 2*q + 2*q^2 + q^3"));
        assert!(qmultinomial3(2, 1, 2).is_zero());
        assert!(qmultinomial3(2, -1, 1).is_zero());
    }

    #[test]
    fn trinomial_examples() {
        let t = qtrinomial(1, 0);
        assert_eq!(t.entries().count(), 1);
        assert_eq!(t.entry(0), LaurentPoly::one());

        let t = qtrinomial(2, 0);
        assert_eq!(t.entry(0), LaurentPoly::one());
        assert_eq!(t.entry(1), p("q + q^2"));
        assert_eq!(t.entries().count(), 2);

        assert!(qtrinomial(1, 2).is_zero());
        // negative tau starts at j = -tau
        let t = qtrinomial(1, -1);
        assert_eq!(t.entry(1), LaurentPoly::one());
    }

    #[test]
    fn truncated_inverse_pochhammer() {
        // 1/(q)_1 = 1 + q + q^2 + ...
        assert_eq!(inverse_poch_truncated(1, 4), p("1 + q + q^2 + q^3 + q^4"));
        // (q)_2 * 1/(q)_2 = 1 up to the cap
        let inv = inverse_poch_truncated(2, 10);
        assert_eq!(poch_qpow(1, 2).mul_truncated(&inv, 10), LaurentPoly::one());
    }
}
