use serde::Serialize;

use crate::qcoefficients::{qbinom_shared, qmultinomial3, triangular};
use crate::qseries::LaurentPoly;

use super::finite::lhs_44;
use super::{params, IdentityId, Verdict};

/// Which total `s` to use in the six-fold sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum SReading {
    /// `s = alpha + beta + gamma + delta + epsilon + phi`.
    #[default]
    Symmetric,
    /// `s = alpha + beta + 2 delta + epsilon + phi`.
    Literal,
}

/// Six nonnegative integers with `i = alpha + delta + epsilon`,
/// `j = beta + delta + phi`, `k = gamma + epsilon + phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GoellnitzComposition {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub epsilon: i64,
    pub phi: i64,
    pub s: i64,
}

/// All compositions of `(i, j, k)`, iterating `delta, epsilon, phi`.
pub fn compositions(i: i64, j: i64, k: i64, reading: SReading) -> Vec<GoellnitzComposition> {
    let mut out = Vec::new();
    for delta in 0..=i.min(j) {
        for epsilon in 0..=(i - delta).min(k) {
            for phi in 0..=(j - delta).min(k - epsilon) {
                let alpha = i - delta - epsilon;
                let beta = j - delta - phi;
                let gamma = k - epsilon - phi;
                let s = match reading {
                    SReading::Symmetric => alpha + beta + gamma + delta + epsilon + phi,
                    SReading::Literal => alpha + beta + 2 * delta + epsilon + phi,
                };
                out.push(GoellnitzComposition { alpha, beta, gamma, delta, epsilon, phi, s });
            }
        }
    }
    out
}

/// Base exponent `T_s + T_delta + T_epsilon + T_{phi-1}`.
pub(super) fn base_exponent(c: &GoellnitzComposition) -> i64 {
    triangular(c.s) + triangular(c.delta) + triangular(c.epsilon) + triangular(c.phi - 1)
}

/// The six-fold sum with the two-term brace.
pub fn lhs_63(l: i64, m: i64, i: i64, j: i64, k: i64, reading: SReading) -> LaurentPoly {
    let qb = |t: i64, b: i64| qbinom_shared(t, b);
    compositions(i, j, k, reading)
        .iter()
        .map(|c| {
            let s = c.s;
            let common = &(&*qb(l - s + c.beta, c.beta) * &*qb(m - s + c.gamma, c.gamma))
                * &(&*qb(l - s, c.delta) * &*qb(m - s, c.epsilon));
            if common.is_zero() {
                return LaurentPoly::zero();
            }
            let first = (&*qb(l - s + c.alpha, c.alpha) * &*qb(m - s, c.phi)).shift(c.phi);
            let second = &*qb(l - s + c.alpha - 1, c.alpha - 1) * &*qb(m - s, c.phi - 1);
            (&common * &(first + second)).shift(base_exponent(c))
        })
        .sum()
}

/// `sum_{tau>=0} q^{tau(M+2) - T_tau + T_{i-tau} + T_{j-tau} + T_{k-tau}}
/// [L-tau; tau] [L-2tau; i-tau] [L-i-tau; j-tau] [M-i-j; k-tau]`.
pub fn rhs_63(l: i64, m: i64, i: i64, j: i64, k: i64) -> LaurentPoly {
    let qb = |t: i64, b: i64| qbinom_shared(t, b);
    (0..=i.min(j).min(k))
        .map(|tau| {
            let a = &*qb(l - tau, tau) * &*qb(l - 2 * tau, i - tau);
            let b = &*qb(l - i - tau, j - tau) * &*qb(m - i - j, k - tau);
            let e = tau * (m + 2) - triangular(tau)
                + triangular(i - tau)
                + triangular(j - tau)
                + triangular(k - tau);
            (&a * &b).shift(e)
        })
        .sum()
}

/// The double bounded Göllnitz-type identity for `i, j, k >= 0`. Sub-checks:
/// at `k = 0` both sides are the `A^i B^j` coefficient of `R_L` (for
/// `L >= 0`), and at `i = 0` the left side matches the triangular form of
/// the key identity with `(i, j) -> (k, j)` (for `L, M >= j + k`).
pub fn verify_63(l: i64, m: i64, i: i64, j: i64, k: i64, reading: SReading) -> Option<Verdict> {
    if i < 0 || j < 0 || k < 0 {
        return None;
    }
    let mut p = params(&[("L", l), ("M", m), ("i", i), ("j", j), ("k", k)]);
    if reading == SReading::Literal {
        p.insert("literal_s".into(), 1);
    }
    let lhs = lhs_63(l, m, i, j, k, reading);
    let mut v = Verdict::compare(IdentityId::Eq63, p, lhs.clone(), rhs_63(l, m, i, j, k));
    if k == 0 && l >= 0 {
        let coeff = qmultinomial3(l, i, j).shift(triangular(i) + triangular(j));
        v = v.check("k = 0 slice equals R_L coefficient", lhs.clone(), coeff);
    }
    if i == 0 && l >= j + k && m >= j + k {
        v = v.check("i = 0 slice equals lhs_44(L, M, k, j)", lhs, lhs_44(l, m, k, j));
    }
    Some(v)
}

/// At `M = L` the right side of the Göllnitz-type identity against
/// `q^{T_i+T_j+T_k} [L-k; i] [L-i; j] [L-j; k]`.
pub fn verify_63_closed_lm(l: i64, i: i64, j: i64, k: i64) -> Option<Verdict> {
    if i < 0 || j < 0 || k < 0 || l < 0 {
        return None;
    }
    let qb = |t: i64, b: i64| qbinom_shared(t, b);
    let closed = (&(&*qb(l - k, i) * &*qb(l - i, j)) * &*qb(l - j, k))
        .shift(triangular(i) + triangular(j) + triangular(k));
    let p = params(&[("L", l), ("i", i), ("j", j), ("k", k)]);
    Some(Verdict::compare(IdentityId::Eq63lm, p, rhs_63(l, l, i, j, k), closed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(0, 0, 0, SReading::Symmetric).len(), 1);
        // (1,1,1): delta, epsilon, phi each 0/1 with pairwise limits
        let c = compositions(1, 1, 1, SReading::Symmetric);
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|c| c.alpha + c.delta + c.epsilon == 1
            && c.beta + c.delta + c.phi == 1
            && c.gamma + c.epsilon + c.phi == 1));
    }

    #[test]
    fn trivial_cell() {
        for (l, m) in [(0, 0), (3, 5), (4, 2)] {
            let v = verify_63(l, m, 0, 0, 0, SReading::Symmetric).unwrap();
            assert!(v.holds);
            assert_eq!(v.lhs.to_string(), "1");
        }
    }

    #[test]
    fn k_zero_reduces_to_multinomial() {
        for l in 0..5 {
            for i in 0..3 {
                for j in 0..3 {
                    let v = verify_63(l, l, i, j, 0, SReading::Symmetric).unwrap();
                    assert!(v.holds, "L={l} i={i} j={j}: {:?}", v.witness);
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert!(verify_63_closed_lm(3, 0, 0, 0).unwrap().holds);
        let v = verify_63_closed_lm(2, 1, 0, 0).unwrap();
        assert!(v.holds);
        assert_eq!(v.rhs.to_string(), "q + q^2");
        assert!(verify_63_closed_lm(3, 1, 1, 1).unwrap().holds);
    }
}
