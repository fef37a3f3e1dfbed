use std::collections::BTreeMap;

use serde::Serialize;

use super::{
    for_each_gap_partition, for_each_type1, satisfies_schur_gaps, Color, ColorCaps,
    ColoredPartition, ColoredSymbol, PartitionError,
};

/// Summary statistics of a colored partition relative to bounds `(L, M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartitionStats {
    pub sigma: u64,
    /// Rank of the largest part in the symbol order, 0 for the empty partition.
    pub lambda_rank: u64,
    pub nu_a: usize,
    pub nu_b: usize,
    pub nu_ab: usize,
    pub nu_l: u32,
    pub nu_m: u32,
}

pub fn partition_stats(p: &ColoredPartition, l: i64, m: i64) -> Result<PartitionStats, PartitionError> {
    let (nu_l, nu_m) = nu_statistics(p, l, m)?;
    Ok(PartitionStats {
        sigma: p.weight(),
        lambda_rank: p.largest().map_or(0, ColoredSymbol::rank),
        nu_a: p.count(Color::A),
        nu_b: p.count(Color::B),
        nu_ab: p.count(Color::AB),
        nu_l,
        nu_m,
    })
}

/// Finds the unique `l >= 0` with exactly `l` parts in `[bound-l+2, top]`,
/// every part of a `capped` color at most `bound-l`, and no part equal to
/// `bound-l+1`.
fn boundary_scan(
    parts: &[ColoredSymbol],
    bound: i64,
    top: i64,
    capped: impl Fn(Color) -> bool,
) -> Result<u32, PartitionError> {
    let mut found = Vec::new();
    for ell in 0..=parts.len() as i64 {
        let edge = bound - ell;
        let inside = parts
            .iter()
            .filter(|p| (edge + 2..=top).contains(&(p.weight as i64)))
            .count() as i64;
        let fits = inside == ell
            && parts
                .iter()
                .all(|p| !capped(p.color) || p.weight as i64 <= edge)
            && parts.iter().all(|p| p.weight as i64 != edge + 1);
        if fits {
            found.push(ell as u32);
        }
    }
    match found.as_slice() {
        [] => Err(PartitionError::NoValidStatistic),
        [one] => Ok(*one),
        _ => Err(PartitionError::AmbiguousStatistic(found)),
    }
}

/// The boundary statistics `(nu(L), nu(M))`. At most one of them is nonzero:
/// `nu(L)` is scanned when `L < M` (with `b`-parts capped), `nu(M)` when
/// `M < L` (with `a`- and `ab`-parts capped).
pub fn nu_statistics(p: &ColoredPartition, l: i64, m: i64) -> Result<(u32, u32), PartitionError> {
    if l < m {
        let nu_l = boundary_scan(p.parts(), l, m, |c| c == Color::B)?;
        Ok((nu_l, 0))
    } else if m < l {
        let nu_m = boundary_scan(p.parts(), m, l, |c| c != Color::B)?;
        Ok((0, nu_m))
    } else {
        Ok((0, 0))
    }
}

/// `table[c][s]` is the number of `c`-element subsets of `allowed` (distinct
/// values) summing to `s`, for `c <= max_count` and `s <= n_max`.
pub fn distinct_part_counts(allowed: &[u64], max_count: usize, n_max: u64) -> Vec<Vec<u64>> {
    let width = n_max as usize + 1;
    let mut table = vec![vec![0u64; width]; max_count + 1];
    table[0][0] = 1;
    for &part in allowed {
        let part = part as usize;
        if part == 0 || part >= width {
            continue;
        }
        for c in (1..=max_count).rev() {
            for s in (part..width).rev() {
                table[c][s] += table[c - 1][s - part];
            }
        }
    }
    table
}

fn count_distinct_any(allowed: &[u64], n: u64) -> u64 {
    let mut ways = vec![0u64; n as usize + 1];
    ways[0] = 1;
    for &part in allowed {
        let part = part as usize;
        if part == 0 || part > n as usize {
            continue;
        }
        for s in (part..=n as usize).rev() {
            ways[s] += ways[s - part];
        }
    }
    ways[n as usize]
}

fn range_parts(max: i64, keep: impl Fn(u64) -> bool) -> Vec<u64> {
    (1..=max.max(0) as u64).filter(|&x| keep(x)).collect()
}

/// Number of disjoint-sum pairs drawn from two exact-count tables.
fn convolve(first: &[u64], second: &[u64], n: u64) -> u64 {
    (0..=n as usize).map(|m| first[m] * second[n as usize - m]).sum()
}

/// `V(n; i, j, L, M)`: vector partitions `(pi1; pi2)` of `n`, `pi1` with
/// exactly `i` distinct parts `<= M - j`, `pi2` with exactly `j` distinct
/// parts `<= L`.
pub fn count_v(n: u64, i: usize, j: usize, l: i64, m: i64) -> u64 {
    let a = distinct_part_counts(&range_parts(m - j as i64, |_| true), i, n);
    let b = distinct_part_counts(&range_parts(l, |_| true), j, n);
    convolve(&a[i], &b[j], n)
}

/// `S(n; r, s, t, l, L, M)`: Type-1 partitions of `n` with `r` `a`-parts
/// `<= M`, `s` `b`-parts `<= L - l`, `t` `ab`-parts `<= M`, exactly `l`
/// `a`/`ab`-parts `>= L - l + 2`, and no part equal to `L - l + 1`.
#[allow(clippy::too_many_arguments)]
pub fn count_s(n: u64, r: usize, s: usize, t: usize, ell: u32, l: i64, m: i64) -> u64 {
    let edge = l - ell as i64;
    let clamp = |x: i64| x.max(0) as u32;
    let caps = ColorCaps { a: Some(clamp(m)), b: Some(clamp(edge)), ab: Some(clamp(m)) };
    let mut total = 0;
    for_each_type1(n, None, Some(caps), |parts| {
        let weight: u64 = parts.iter().map(|p| p.weight as u64).sum();
        if weight != n {
            return;
        }
        let count = |c| parts.iter().filter(|p| p.color == c).count();
        if (count(Color::A), count(Color::B), count(Color::AB)) != (r, s, t) {
            return;
        }
        let high = parts
            .iter()
            .filter(|p| p.color != Color::B && p.weight as i64 >= edge + 2)
            .count();
        if high == ell as usize && parts.iter().all(|p| p.weight as i64 != edge + 1) {
            total += 1;
        }
    });
    total
}

/// Schur's theorem at `n`: (distinct parts `= 1, 2 (mod 3)`, gap partitions).
pub fn schur_counts(n: u64) -> (u64, u64) {
    let distinct = count_distinct_any(&range_parts(n as i64, |x| x % 3 != 0), n);
    let mut gaps = 0;
    for_each_gap_partition(
        n,
        n,
        &|_| true,
        &|x, y| satisfies_schur_gaps(&[x, y]),
        &mut |_| gaps += 1,
    );
    (distinct, gaps)
}

/// Both sides of the double bounded refinement of Schur's theorem for fixed
/// `(n, i, j, L, M)`, with the gap side broken down by `(r, s, t, l)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Theorem3Counts {
    pub p: u64,
    pub g_sum: u64,
    pub breakdown: BTreeMap<(usize, usize, usize, u32), u64>,
    /// Gap partitions admitted at more than one `l`.
    pub ambiguous: u64,
}

pub fn theorem3_counts(n: u64, i: usize, j: usize, l: i64, m: i64) -> Theorem3Counts {
    let ones = distinct_part_counts(&range_parts(3 * (m - j as i64) - 2, |x| x % 3 == 1), i, n);
    let twos = distinct_part_counts(&range_parts(3 * l - 1, |x| x % 3 == 2), j, n);
    let mut out = Theorem3Counts { p: convolve(&ones[i], &twos[j], n), ..Default::default() };

    let max_part = (3 * m - 2).max(3 * l - 1).max(0) as u64;
    for_each_gap_partition(
        n,
        max_part,
        &|_| true,
        &|x, y| satisfies_schur_gaps(&[x, y]),
        &mut |parts| {
            let count = |res| parts.iter().filter(|&&x| x % 3 == res).count();
            let (r, s, t) = (count(1), count(2), count(0));
            if r + t != i || s + t != j {
                return;
            }
            let mut hits = 0;
            for ell in 0..=parts.len() as u32 {
                let edge = 3 * (l - ell as i64);
                let bounded = parts.iter().all(|&x| {
                    let x = x as i64;
                    match x % 3 {
                        1 => x <= 3 * m - 2,
                        2 => x <= edge - 1,
                        _ => x <= 3 * m - 3,
                    }
                });
                let high = parts
                    .iter()
                    .filter(|&&x| x % 3 != 2 && x as i64 > edge + 2)
                    .count();
                let clear = parts.iter().all(|&x| x as i64 != edge && x as i64 != edge + 1);
                if bounded && high == ell as usize && clear {
                    *out.breakdown.entry((r, s, t, ell)).or_default() += 1;
                    out.g_sum += 1;
                    hits += 1;
                }
            }
            if hits > 1 {
                out.ambiguous += 1;
            }
        },
    );
    out
}

/// Gap rule of the Göllnitz side: difference at least 6, strictly more when
/// the larger part is `= 0, 1, 3 (mod 6)`.
pub fn goellnitz_gap_ok(x: u64, y: u64) -> bool {
    let d = x - y;
    d > 6 || (d == 6 && !matches!(x % 6, 0 | 1 | 3))
}

/// Göllnitz's theorem at `n`: (distinct parts `= 2, 4, 5 (mod 6)`, gap
/// partitions with no part 1 or 3).
pub fn goellnitz_counts(n: u64) -> (u64, u64) {
    let p = count_distinct_any(&range_parts(n as i64, |x| matches!(x % 6, 2 | 4 | 5)), n);
    let mut g = 0;
    for_each_gap_partition(n, n, &|x| x != 1 && x != 3, &goellnitz_gap_ok, &mut |_| g += 1);
    (p, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> ColoredPartition {
        s.parse().unwrap()
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu_statistics(&part("ab5+b3+a1"), 4, 4).unwrap(), (0, 0));
        assert_eq!(nu_statistics(&part("b1"), 1, 3).unwrap(), (0, 0));
        assert_eq!(nu_statistics(&part("a3"), 1, 3).unwrap(), (1, 0));
        // b2 with L = 1 fits no l
        assert_eq!(nu_statistics(&part("b2"), 1, 3), Err(PartitionError::NoValidStatistic));
        // mirrored: a-parts capped
        assert_eq!(nu_statistics(&part("b3"), 3, 1).unwrap(), (0, 1));
    }

    #[test]
    fn stats_record() {
        let s = partition_stats(&part("ab4+b2+a1"), 4, 4).unwrap();
        assert_eq!((s.sigma, s.lambda_rank, s.nu_a, s.nu_b, s.nu_ab), (7, 12, 1, 1, 1));
    }

    #[test]
    fn count_v_examples() {
        assert_eq!(count_v(3, 1, 1, 2, 2), 1);
        assert_eq!(count_v(0, 0, 0, 5, 7), 1);
        assert_eq!(count_v(3, 1, 1, 3, 4), 2);
    }

    #[test]
    fn count_s_examples() {
        assert_eq!(count_s(3, 0, 0, 1, 0, 3, 3), 1);
        assert_eq!(count_s(3, 1, 1, 0, 0, 3, 3), 1);
        assert_eq!(count_s(4, 0, 0, 0, 0, 3, 3), 0);
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_counts(9), (3, 3));
        assert_eq!(schur_counts(0), (1, 1));
        assert_eq!(schur_counts(1), (1, 1));
    }

    #[test]
    fn theorem3_examples() {
        let c = theorem3_counts(3, 1, 1, 2, 2);
        assert_eq!((c.p, c.g_sum), (1, 1));
        let c = theorem3_counts(0, 0, 0, 0, 0);
        assert_eq!((c.p, c.g_sum), (1, 1));
        let c = theorem3_counts(6, 1, 1, 2, 3);
        assert_eq!(c.p, c.g_sum);
    }

    #[test]
    fn goellnitz_examples() {
        assert_eq!(goellnitz_counts(10), (2, 2));
        assert_eq!(goellnitz_counts(0), (1, 1));
        assert_eq!(goellnitz_counts(2), (1, 1));
    }

    #[test]
    fn distinct_table_small() {
        let t = distinct_part_counts(&[1, 2, 3], 2, 6);
        assert_eq!(t[2][3], 1);
        assert_eq!(t[2][4], 1);
        assert_eq!(t[1][3], 1);
        assert_eq!(t[0][0], 1);
    }
}
