use crate::qcoefficients::{inverse_poch_truncated, triangular};
use crate::qseries::{LaurentPoly, MarkerSeries, Truncation};

use super::goellnitz::{base_exponent, compositions, SReading};
use super::{params, IdentityId, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncatedVariant {
    /// `sum_k q^{T_{i+j-k}+T_k} / ((q)_{i-k} (q)_{j-k} (q)_k) = q^{T_i+T_j} / ((q)_i (q)_j)`.
    Eq26 { i: i64, j: i64, q_max: i64 },
    /// The double sum, the single sum and `(-Aq)_inf (-Bq)_inf` agree up to
    /// the caps.
    Eq11 { a_max: i64, b_max: i64, q_max: i64 },
    /// The six-fold sum, `sum q^{T_i+T_j+T_k} / ((q)_i (q)_j (q)_k)` and the
    /// triple product agree up to the caps.
    Eq61 { a_max: i64, b_max: i64, c_max: i64, q_max: i64, reading: SReading },
}

/// `1 / (q)_n` for `n = 0..=n_max`, each expanded up to `q^q_max`.
fn inverse_table(n_max: i64, q_max: i64) -> Vec<LaurentPoly> {
    (0..=n_max.max(0)).map(|n| inverse_poch_truncated(n, q_max)).collect()
}

fn product_of(polys: &[&LaurentPoly], q_max: i64) -> LaurentPoly {
    polys
        .iter()
        .fold(LaurentPoly::one(), |acc, p| acc.mul_truncated(p, q_max))
}

/// `prod_{m=1}^{q_max} (1 + X q^m)` for every marker slot in `slots`.
fn truncated_product(arity: u8, slots: &[usize], caps: Truncation, q_max: i64) -> MarkerSeries {
    let mut out = MarkerSeries::one(arity).truncated(caps);
    for &slot in slots {
        for m in 1..=q_max {
            let mut factor = MarkerSeries::one(arity);
            let mut exps = [0u32; 3];
            exps[slot] = 1;
            factor.add_term(exps, LaurentPoly::q_pow(m));
            out = out.mul(&factor);
        }
    }
    out
}

fn eq26_sides(i: i64, j: i64, q_max: i64, inv: &[LaurentPoly]) -> (LaurentPoly, LaurentPoly) {
    let lhs: LaurentPoly = (0..=i.min(j))
        .map(|k| {
            let e = triangular(i + j - k) + triangular(k);
            product_of(&[&inv[(i - k) as usize], &inv[(j - k) as usize], &inv[k as usize]], q_max - e).shift(e)
        })
        .sum();
    let e = triangular(i) + triangular(j);
    let rhs = product_of(&[&inv[i as usize], &inv[j as usize]], q_max - e).shift(e);
    (lhs.truncate(q_max), rhs.truncate(q_max))
}

pub fn verify_truncated(variant: TruncatedVariant) -> Option<Verdict> {
    match variant {
        TruncatedVariant::Eq26 { i, j, q_max } => {
            if i < 0 || j < 0 || q_max < 0 {
                return None;
            }
            let inv = inverse_table(i.max(j), q_max);
            let (lhs, rhs) = eq26_sides(i, j, q_max, &inv);
            let p = params(&[("i", i), ("j", j), ("qmax", q_max)]);
            Some(Verdict::compare(IdentityId::Eq26, p, lhs, rhs))
        }
        TruncatedVariant::Eq11 { a_max, b_max, q_max } => {
            if a_max < 0 || b_max < 0 || q_max < 0 {
                return None;
            }
            let caps = Truncation::new(Some([a_max as u32, b_max as u32, 0]), Some(q_max));
            let inv = inverse_table(a_max.max(b_max), q_max);
            let mut double = MarkerSeries::zero(2).truncated(caps);
            let mut single = MarkerSeries::zero(2).truncated(caps);
            for i in 0..=a_max {
                for j in 0..=b_max {
                    let (lhs, rhs) = eq26_sides(i, j, q_max, &inv);
                    double.add_term([i as u32, j as u32, 0], lhs);
                    single.add_term([i as u32, j as u32, 0], rhs);
                }
            }
            let product = truncated_product(2, &[0, 1], caps, q_max);
            let p = params(&[("amax", a_max), ("bmax", b_max), ("qmax", q_max)]);
            Some(
                Verdict::compare(IdentityId::Eq11, p, double.clone(), product)
                    .check("double sum = single sum", double, single),
            )
        }
        TruncatedVariant::Eq61 { a_max, b_max, c_max, q_max, reading } => {
            if a_max < 0 || b_max < 0 || c_max < 0 || q_max < 0 {
                return None;
            }
            let caps = Truncation::new(Some([a_max as u32, b_max as u32, c_max as u32]), Some(q_max));
            let inv = inverse_table(a_max.max(b_max).max(c_max), q_max);
            let mut sixfold = MarkerSeries::zero(3).truncated(caps);
            let mut single = MarkerSeries::zero(3).truncated(caps);
            for i in 0..=a_max {
                for j in 0..=b_max {
                    for k in 0..=c_max {
                        let exps = [i as u32, j as u32, k as u32];
                        let mut lhs = LaurentPoly::zero();
                        for c in compositions(i, j, k, reading) {
                            let e = base_exponent(&c);
                            if e > q_max {
                                continue;
                            }
                            let brace = LaurentPoly::one() - LaurentPoly::q_pow(c.alpha)
                                + LaurentPoly::q_pow(c.alpha + c.phi);
                            let dens = [c.alpha, c.beta, c.gamma, c.delta, c.epsilon, c.phi]
                                .map(|x| &inv[x as usize]);
                            let mut factors: Vec<&LaurentPoly> = dens.to_vec();
                            factors.push(&brace);
                            lhs += product_of(&factors, q_max - e).shift(e);
                        }
                        sixfold.add_term(exps, lhs);
                        let e = triangular(i) + triangular(j) + triangular(k);
                        let rhs = product_of(&[&inv[i as usize], &inv[j as usize], &inv[k as usize]], q_max - e)
                            .shift(e);
                        single.add_term(exps, rhs);
                    }
                }
            }
            let product = truncated_product(3, &[0, 1, 2], caps, q_max);
            let mut p = params(&[("amax", a_max), ("bmax", b_max), ("cmax", c_max), ("qmax", q_max)]);
            if reading == SReading::Literal {
                p.insert("literal_s".into(), 1);
            }
            Some(
                Verdict::compare(IdentityId::Eq61, p, sixfold.clone(), product)
                    .check("six-fold sum = single sum (termwise)", sixfold, single),
            )
        }
    }
}
