use crate::qcoefficients::{qbinom_shared, qmultinomial3_shared, triangular};
use crate::qseries::{LaurentPoly, MarkerSeries};

use super::{params, IdentityId, Verdict};

fn qb(top: i64, bottom: i64) -> std::sync::Arc<LaurentPoly> {
    qbinom_shared(top, bottom)
}

fn product3(a: &LaurentPoly, b: &LaurentPoly, c: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return LaurentPoly::zero();
    }
    &(a * b) * c
}

/// Left side of the key identity:
/// `sum_k q^{(i-k)(j-k)} [M-i-j+k; k] [M-j; i-k] [L-i; j-k]`.
pub fn lhs_21(l: i64, m: i64, i: i64, j: i64) -> LaurentPoly {
    (0..=i.min(j))
        .map(|k| {
            product3(&qb(m - i - j + k, k), &qb(m - j, i - k), &qb(l - i, j - k))
                .shift((i - k) * (j - k))
        })
        .sum()
}

/// `[L; j] [M-j; i]`.
pub fn rhs_21(l: i64, m: i64, i: i64, j: i64) -> LaurentPoly {
    &*qb(l, j) * &*qb(m - j, i)
}

/// Valid for all integers `L, M, i, j`.
pub fn verify_21(l: i64, m: i64, i: i64, j: i64) -> Verdict {
    let p = params(&[("L", l), ("M", m), ("i", i), ("j", j)]);
    Verdict::compare(IdentityId::Eq21, p, lhs_21(l, m, i, j), rhs_21(l, m, i, j))
}

/// `sum_k q^{(i-k)(j-k)} [i; k] [L-i; j-k] = [L; j]` for `i, j >= 0`,
/// `L >= i + j`.
pub fn verify_32(l: i64, i: i64, j: i64) -> Option<Verdict> {
    if i < 0 || j < 0 || l < i + j {
        return None;
    }
    let lhs: LaurentPoly = (0..=i.min(j))
        .map(|k| (&*qb(i, k) * &*qb(l - i, j - k)).shift((i - k) * (j - k)))
        .sum();
    let p = params(&[("L", l), ("i", i), ("j", j)]);
    Some(Verdict::compare(IdentityId::Eq32, p, lhs, qb(l, j).as_ref().clone()))
}

/// `sum_k q^{T_{i+j-k} + T_k} [M-i-j+k; k] [M-j; i-k] [L-i; j-k]`.
pub fn lhs_44(l: i64, m: i64, i: i64, j: i64) -> LaurentPoly {
    (0..=i.min(j))
        .map(|k| {
            product3(&qb(m - i - j + k, k), &qb(m - j, i - k), &qb(l - i, j - k))
                .shift(triangular(i + j - k) + triangular(k))
        })
        .sum()
}

/// `q^{T_i + T_j} [L; j] [M-j; i]`.
pub fn rhs_44(l: i64, m: i64, i: i64, j: i64) -> LaurentPoly {
    rhs_21(l, m, i, j).shift(triangular(i) + triangular(j))
}

/// The triangular-shifted form, for `L, M >= i + j >= 0`; also checks that
/// both sides are `q^{T_i + T_j}` times the corresponding sides of the key
/// identity.
pub fn verify_44(l: i64, m: i64, i: i64, j: i64) -> Option<Verdict> {
    if i + j < 0 || l < i + j || m < i + j {
        return None;
    }
    let shift = triangular(i) + triangular(j);
    let p = params(&[("L", l), ("M", m), ("i", i), ("j", j)]);
    let lhs = lhs_44(l, m, i, j);
    let rhs = rhs_44(l, m, i, j);
    Some(
        Verdict::compare(IdentityId::Eq44, p, lhs.clone(), rhs.clone())
            .check("lhs = q^(T_i+T_j) * lhs_21", lhs, lhs_21(l, m, i, j).shift(shift))
            .check("rhs = q^(T_i+T_j) * rhs_21", rhs, rhs_21(l, m, i, j).shift(shift)),
    )
}

/// `q^{T_i+T_j} [M; i] [L; j] = sum_k q^{T_{i+j-k}+T_k} [M; M-i, i-k, k] [L-i; j-k]`
/// for `0 <= i <= M`, `0 <= j <= L`.
pub fn verify_48(l: i64, m: i64, i: i64, j: i64) -> Option<Verdict> {
    if i < 0 || j < 0 || i > m || j > l {
        return None;
    }
    let lhs = (&*qb(m, i) * &*qb(l, j)).shift(triangular(i) + triangular(j));
    let rhs: LaurentPoly = (0..=i.min(j))
        .map(|k| {
            (&*qmultinomial3_shared(m, i - k, k) * &*qb(l - i, j - k))
                .shift(triangular(i + j - k) + triangular(k))
        })
        .sum();
    let p = params(&[("L", l), ("M", m), ("i", i), ("j", j)]);
    Some(Verdict::compare(IdentityId::Eq48, p, lhs, rhs))
}

/// `(-Aq)_M (-Bq)_L` expanded as a product against
/// `sum_{i<=M, j<=L} A^i B^j q^{T_i+T_j} [M; i] [L; j]`.
pub fn verify_46(l: i64, m: i64) -> Option<Verdict> {
    if l < 0 || m < 0 {
        return None;
    }
    let factor = |marker: usize, e: i64| {
        let mut exps = [0u32; 3];
        exps[marker] = 1;
        let mut f = MarkerSeries::one(2);
        f.add_term(exps, LaurentPoly::q_pow(e));
        f
    };
    let mut product = MarkerSeries::one(2);
    for e in 1..=m {
        product = product.mul(&factor(0, e));
    }
    for e in 1..=l {
        product = product.mul(&factor(1, e));
    }
    let mut sum = MarkerSeries::zero(2);
    for i in 0..=m {
        for j in 0..=l {
            let c = (&*qb(m, i) * &*qb(l, j)).shift(triangular(i) + triangular(j));
            sum.add_term([i as u32, j as u32, 0], c);
        }
    }
    Some(Verdict::compare(IdentityId::Eq46, params(&[("L", l), ("M", m)]), product, sum))
}
