use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::colored_partitions::{for_each_type1, Color, ColoredSymbol};
use crate::qcoefficients::{qbinom_shared, qmultinomial3, qmultinomial3_shared, qtrinomial, triangular};
use crate::qseries::{LaurentPoly, MarkerSeries, Truncation};

use super::{params, IdentityId, LabError, Verdict};

/// `G_L` from the Type-1 partitions with largest part at most `b_L`: each
/// partition contributes `A^{nu_a + nu_ab} B^{nu_b + nu_ab} q^sigma`.
pub fn build_gl_by_enumeration(l: i64) -> MarkerSeries {
    let mut out = MarkerSeries::one(2);
    if l <= 0 {
        return out;
    }
    let top = ColoredSymbol::b(l as u32);
    // parts have distinct weights at most L, so sigma <= T_L
    for_each_type1(triangular(l) as u64, Some(top), None, |parts| {
        if parts.is_empty() {
            return;
        }
        let mut exps = [0u32; 3];
        let mut sigma = 0i64;
        for p in parts {
            match p.color {
                Color::A => exps[0] += 1,
                Color::B => exps[1] += 1,
                Color::AB => {
                    exps[0] += 1;
                    exps[1] += 1;
                }
            }
            sigma += p.weight as i64;
        }
        out.add_term(exps, LaurentPoly::q_pow(sigma));
    });
    out
}

/// `G_L` from the double sum
/// `sum_{i,j} A^i B^j sum_k q^{T_{i+j-k}+T_k} [L-i-j+k; k] [L-j; i-k] [L-i; j-k]`,
/// summed over `0 <= i, j <= L`. Cells with `i + j > L` are included and
/// must cancel.
pub fn build_gl_by_formula(l: i64) -> MarkerSeries {
    let mut out = MarkerSeries::zero(2);
    for i in 0..=l.max(0) {
        for j in 0..=l.max(0) {
            let c: LaurentPoly = (0..=i.min(j))
                .map(|k| {
                    let t = &*qbinom_shared(l - i - j + k, k) * &*qbinom_shared(l - j, i - k);
                    (&t * &*qbinom_shared(l - i, j - k)).shift(triangular(i + j - k) + triangular(k))
                })
                .sum();
            out.add_term([i as u32, j as u32, 0], c);
        }
    }
    out
}

fn gl_full(l: i64) -> Result<Arc<MarkerSeries>, LabError> {
    static CACHE: OnceLock<Mutex<HashMap<i64, Arc<MarkerSeries>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(g) = cache.lock().unwrap().get(&l) {
        return Ok(Arc::clone(g));
    }
    let by_enum = build_gl_by_enumeration(l);
    let by_formula = build_gl_by_formula(l);
    if by_enum != by_formula {
        let diff = by_enum.sub(&by_formula);
        return Err(LabError::InternalMismatch { l, detail: format!("enumeration - formula = {diff}") });
    }
    let g = Arc::new(by_enum);
    cache.lock().unwrap().insert(l, Arc::clone(&g));
    Ok(g)
}

/// `G_L(A, B; q)`, built by enumeration and by the double sum, which must
/// agree; `caps` is applied to the result.
pub fn build_gl(l: i64, caps: Truncation) -> Result<MarkerSeries, LabError> {
    Ok(gl_full(l)?.as_ref().clone().truncated(caps))
}

/// `R_L = sum_{i,j} A^i B^j q^{T_i+T_j} [L; i, j, L-i-j]`.
pub fn build_rl(l: i64, caps: Truncation) -> MarkerSeries {
    let mut out = MarkerSeries::zero(2).truncated(caps);
    for i in 0..=l.max(0) {
        for j in 0..=(l - i).max(0) {
            let c = qmultinomial3(l, i, j).shift(triangular(i) + triangular(j));
            out.add_term([i as u32, j as u32, 0], c);
        }
    }
    out
}

fn recurrence_step(prev: &MarkerSeries, prev2: &MarkerSeries, l: i64) -> MarkerSeries {
    let mut lead = MarkerSeries::one(2);
    lead.add_term([1, 0, 0], LaurentPoly::q_pow(l));
    lead.add_term([0, 1, 0], LaurentPoly::q_pow(l));
    let tail = MarkerSeries::term(
        2,
        [1, 1, 0],
        LaurentPoly::q_pow(l) * LaurentPoly::one_minus_q_pow(l - 1),
    );
    lead.mul(prev).add(&tail.mul(prev2))
}

/// Numerators `P_L` of the continued-fraction convergents, from
/// `P_0 = 1`, `P_1 = 1 + (A + B) q` and the three-term recurrence.
pub fn build_pl(l: i64) -> MarkerSeries {
    let p0 = MarkerSeries::one(2);
    let mut p1 = MarkerSeries::one(2);
    p1.add_term([1, 0, 0], LaurentPoly::q_pow(1));
    p1.add_term([0, 1, 0], LaurentPoly::q_pow(1));
    if l <= 0 {
        return p0;
    }
    let (mut prev2, mut prev) = (p0, p1);
    for n in 2..=l {
        let next = recurrence_step(&prev, &prev2, n);
        prev2 = std::mem::replace(&mut prev, next);
    }
    prev
}

/// `G_L = R_L` as marker series.
pub fn verify_53(l: i64) -> Option<Verdict> {
    if l < 0 {
        return None;
    }
    let p = params(&[("L", l)]);
    Some(match build_gl(l, Truncation::NONE) {
        Ok(g) => Verdict::compare(IdentityId::Eq53, p, g, build_rl(l, Truncation::NONE)),
        Err(e) => Verdict::failure(IdentityId::Eq53, p, e.to_string()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recurrence {
    /// `G_L = (1 + A q^L + B q^L) G_{L-1} + A B q^L (1 - q^{L-1}) G_{L-2}`.
    G55 { l: i64 },
    /// `P_L` from the same recurrence equals `G_L`.
    P512 { l: i64 },
    /// The symmetric second-order recurrence of the order-3 q-multinomial.
    Multinomial58 { l: i64, i: i64, j: i64 },
    /// The standard first-order q-multinomial recurrence.
    Multinomial59 { l: i64, i: i64, j: i64 },
}

pub fn verify_recurrence(rec: Recurrence) -> Option<Verdict> {
    let m3 = |l: i64, i: i64, j: i64| qmultinomial3_shared(l, i, j).as_ref().clone();
    match rec {
        Recurrence::G55 { l } => {
            if l < 2 {
                return None;
            }
            let p = params(&[("L", l)]);
            let gs: Result<Vec<MarkerSeries>, LabError> =
                [l, l - 1, l - 2].iter().map(|&n| build_gl(n, Truncation::NONE)).collect();
            Some(match gs {
                Ok(g) => Verdict::compare(IdentityId::Rec55, p, g[0].clone(), recurrence_step(&g[1], &g[2], l)),
                Err(e) => Verdict::failure(IdentityId::Rec55, p, e.to_string()),
            })
        }
        Recurrence::P512 { l } => {
            if l < 0 {
                return None;
            }
            let p = params(&[("L", l)]);
            Some(match build_gl(l, Truncation::NONE) {
                Ok(g) => Verdict::compare(IdentityId::Rec512, p, build_pl(l), g),
                Err(e) => Verdict::failure(IdentityId::Rec512, p, e.to_string()),
            })
        }
        Recurrence::Multinomial58 { l, i, j } => {
            if l < 2 || i < 0 || j < 0 {
                return None;
            }
            let lhs = m3(l, i, j);
            let rhs = m3(l - 1, i, j)
                + m3(l - 1, i - 1, j).shift(l - i)
                + m3(l - 1, i, j - 1).shift(l - j)
                + (m3(l - 2, i - 1, j - 1) * LaurentPoly::one_minus_q_pow(l - 1)).shift(l - i - j);
            let p = params(&[("L", l), ("i", i), ("j", j)]);
            Some(Verdict::compare(IdentityId::Rec58, p, lhs, rhs))
        }
        Recurrence::Multinomial59 { l, i, j } => {
            if l < 1 || i < 0 || j < 0 {
                return None;
            }
            let lhs = m3(l, i, j);
            let rhs = m3(l - 1, i, j) + m3(l - 1, i, j - 1).shift(l - i - j) + m3(l - 1, i - 1, j).shift(l - i);
            let p = params(&[("L", l), ("i", i), ("j", j)]);
            Some(Verdict::compare(IdentityId::Rec59, p, lhs, rhs))
        }
    }
}

/// `sum_{tau=-L}^{L} A^tau q^{tau(3 tau - 1)/2} (L; q^3; tau)_{c = AB}`.
pub fn trinomial_rhs(l: i64) -> MarkerSeries {
    let mut out = MarkerSeries::zero(2);
    for tau in -l..=l {
        let t = qtrinomial(l, tau).dilate(3);
        if t.is_zero() {
            continue;
        }
        out = out.add(&t.substitute_ab(tau).scale(&LaurentPoly::q_pow(tau * (3 * tau - 1) / 2)));
    }
    out
}

/// The image of `G_L` under `q -> q^3`, `A -> A q^-2`, `B -> B q^-1` against
/// the q-trinomial sum.
pub fn verify_516(l: i64) -> Option<Verdict> {
    if l < 0 {
        return None;
    }
    let p = params(&[("L", l)]);
    Some(match build_gl(l, Truncation::NONE) {
        Ok(g) => Verdict::compare(IdentityId::Eq516, p, g.dilate(3, [-2, -1, 0]), trinomial_rhs(l)),
        Err(e) => Verdict::failure(IdentityId::Eq516, p, e.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> MarkerSeries {
        text.parse().unwrap()
    }

    #[test]
    fn small_generating_functions() {
        assert_eq!(build_gl(0, Truncation::NONE).unwrap(), MarkerSeries::one(2));
        assert_eq!(build_gl(1, Truncation::NONE).unwrap().to_string(), "1 + A*q + B*q");
        let g2 = build_gl(2, Truncation::NONE).unwrap();
        assert_eq!(g2, s("1 + A*q + B*q + A*q^2 + B*q^2 + A*B*q^2 + A^2*q^3 + A*B*q^3 + B^2*q^3"));
        assert_eq!(g2.coeff(&[2, 0, 0]).to_string(), "q^3");
        assert_eq!(build_rl(1, Truncation::NONE).to_string(), "1 + A*q + B*q");
        assert_eq!(build_rl(2, Truncation::NONE).coeff(&[2, 0, 0]).to_string(), "q^3");
    }

    #[test]
    fn gl_equals_rl() {
        for l in 0..=5 {
            assert!(verify_53(l).unwrap().holds, "L={l}");
        }
    }

    #[test]
    fn recurrences_small() {
        assert!(verify_recurrence(Recurrence::G55 { l: 2 }).unwrap().holds);
        assert!(verify_recurrence(Recurrence::Multinomial58 { l: 2, i: 1, j: 1 }).unwrap().holds);
        assert!(verify_recurrence(Recurrence::Multinomial59 { l: 1, i: 0, j: 0 }).unwrap().holds);
        for l in 0..=4 {
            assert!(verify_recurrence(Recurrence::P512 { l }).unwrap().holds);
        }
        assert!(verify_recurrence(Recurrence::G55 { l: 1 }).is_none());
    }

    #[test]
    fn trinomial_representation_closed_forms() {
        assert_eq!(trinomial_rhs(1).to_string(), "1 + A*q + B*q^2");
        let v = verify_516(1).unwrap();
        assert!(v.holds);
        let expected = s("1 + A*q + B*q^2 + A*B*q^3 + A*q^4 + A^2*q^5 + B*q^5 + A*B*q^6 + B^2*q^7");
        assert_eq!(trinomial_rhs(2), expected);
        assert!(verify_516(2).unwrap().holds);
        for l in 0..=3 {
            assert_eq!(trinomial_rhs(l).coeff(&[0, 0, 0]), LaurentPoly::one());
        }
    }

    #[test]
    fn rl_is_symmetric() {
        for l in 0..=6 {
            let r = build_rl(l, Truncation::NONE);
            for (k, v) in r.iter() {
                assert_eq!(&r.coeff(&[k[1], k[0], 0]), v);
            }
        }
    }

    #[test]
    fn caps_truncate_gl() {
        let g = build_gl(3, Truncation::new(Some([1, 1, 0]), Some(3))).unwrap();
        assert!(g.iter().all(|(k, v)| k[0] <= 1 && k[1] <= 1 && v.max_exp().unwrap() <= 3));
    }
}
