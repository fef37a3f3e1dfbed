//! Count equalities for the Schur-type theorems: Schur's theorem (S), the
//! refinement into vector partitions (T1), its double bounded form (T2), the
//! dilated double bounded Schur refinement (T3) and Göllnitz's theorem (G).

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::colored_partitions::{
    count_v, for_each_type1, goellnitz_counts, nu_statistics, schur_counts, theorem3_counts, Color,
    ColorCaps, ColoredPartition, PartitionError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown theorem {0:?}")]
    UnknownTheorem(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TheoremId {
    S,
    T1,
    T2,
    T3,
    G,
}

impl TheoremId {
    pub fn name(self) -> &'static str {
        match self {
            TheoremId::S => "S",
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::G => "G",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = TheoremError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [TheoremId::S, TheoremId::T1, TheoremId::T2, TheoremId::T3, TheoremId::G]
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| TheoremError::UnknownTheorem(s.to_string()))
    }
}

/// Both sides of one count equality. `holds` is exactly `lhs == rhs`;
/// auxiliary comparisons and anomalies go to `cross_checks` and `findings`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub theorem: TheoremId,
    pub params: BTreeMap<String, i64>,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub breakdown: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub cross_checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<String>,
}

impl CountReport {
    fn new(theorem: TheoremId, params: &[(&str, i64)], lhs: u64, rhs: u64) -> Self {
        CountReport {
            theorem,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            lhs,
            rhs,
            holds: lhs == rhs,
            breakdown: BTreeMap::new(),
            cross_checks: BTreeMap::new(),
            findings: Vec::new(),
        }
    }

    /// Equality together with every cross-check.
    pub fn fully_holds(&self) -> bool {
        self.holds && self.cross_checks.values().all(|&ok| ok)
    }
}

fn bucket_key(names: [&str; 4], values: [u64; 4]) -> String {
    names
        .iter()
        .zip(values)
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn color_counts(parts: &[crate::colored_partitions::ColoredSymbol]) -> (usize, usize, usize) {
    let count = |c| parts.iter().filter(|p| p.color == c).count();
    (count(Color::A), count(Color::B), count(Color::AB))
}

/// Largest `k` with `T_k <= n`: no partition of `n` into distinct parts has
/// more parts.
fn max_distinct_parts(n: u64) -> usize {
    let mut k = 0u64;
    while (k + 1) * (k + 2) / 2 <= n {
        k += 1;
    }
    k as usize
}

/// Type-1 partitions of weight `<= n_max`, bucketed on `(weight, r, s, t)`.
fn type1_buckets(n_max: u64) -> BTreeMap<(u64, usize, usize, usize), u64> {
    let mut buckets = BTreeMap::new();
    for_each_type1(n_max, None, None, |parts| {
        let w = parts.iter().map(|p| p.weight as u64).sum();
        let (r, s, t) = color_counts(parts);
        *buckets.entry((w, r, s, t)).or_insert(0) += 1;
    });
    buckets
}

fn theorem1_report(n: u64, i: usize, j: usize, buckets: &BTreeMap<(u64, usize, usize, usize), u64>) -> CountReport {
    let lhs = count_v(n, i, j, n as i64, (n + j as u64) as i64);
    let mut breakdown = BTreeMap::new();
    for t in 0..=i.min(j) {
        let c = buckets.get(&(n, i - t, j - t, t)).copied().unwrap_or(0);
        if c > 0 {
            breakdown.insert(format!("r={},s={},t={t}", i - t, j - t), c);
        }
    }
    let rhs = breakdown.values().sum();
    let mut report = CountReport::new(TheoremId::T1, &[("n", n as i64), ("i", i as i64), ("j", j as i64)], lhs, rhs);
    report.breakdown = breakdown;
    report
}

/// `V(n; i, j)` against the Type-1 partitions of `n` with `r + t = i`,
/// `s + t = j`.
pub fn check_theorem1(n: u64, i: usize, j: usize) -> CountReport {
    theorem1_report(n, i, j, &type1_buckets(n))
}

/// Theorem 1 for every `n <= n_max` and every `(i, j)` with both counts
/// possibly nonzero.
pub fn theorem1_table(n_max: u64) -> Vec<CountReport> {
    let buckets = type1_buckets(n_max);
    let cells: Vec<(u64, usize, usize)> = (0..=n_max)
        .flat_map(|n| {
            let k = max_distinct_parts(n);
            (0..=k).flat_map(move |i| (0..=k).map(move |j| (n, i, j)))
        })
        .collect();
    cells.par_iter().map(|&(n, i, j)| theorem1_report(n, i, j, &buckets)).collect()
}

/// Buckets of bounded Type-1 partitions for one `(L, M)`:
/// `(weight, r, s, t, nu)` where `nu` is `nu(L)` (or `nu(M)` when mirrored).
struct BoundedBuckets {
    counts: BTreeMap<(u64, usize, usize, usize, u32), u64>,
    ambiguous: Vec<(ColoredPartition, Vec<u32>)>,
}

fn bounded_buckets(n_max: u64, l: i64, m: i64) -> BoundedBuckets {
    let caps = ColorCaps::bounded(l.max(0) as u32, m.max(0) as u32);
    let mut out = BoundedBuckets { counts: BTreeMap::new(), ambiguous: Vec::new() };
    for_each_type1(n_max, None, Some(caps), |parts| {
        let p = ColoredPartition::new(parts.to_vec()).expect("enumerated partitions are valid");
        let nu = match nu_statistics(&p, l, m) {
            Ok((nu_l, nu_m)) => nu_l.max(nu_m),
            Err(PartitionError::AmbiguousStatistic(c)) => {
                out.ambiguous.push((p, c));
                return;
            }
            Err(_) => return,
        };
        let (r, s, t) = color_counts(parts);
        *out.counts.entry((p.weight(), r, s, t, nu)).or_insert(0) += 1;
    });
    out
}

fn theorem2_report(n: u64, i: usize, j: usize, l: i64, m: i64, b: &BoundedBuckets) -> CountReport {
    let mirrored = l > m;
    let lhs = count_v(n, i, j, l, m);
    let stat = if mirrored { "m" } else { "l" };
    let mut breakdown = BTreeMap::new();
    for (&(w, r, s, t, nu), &c) in &b.counts {
        if w == n && r + t == i && s + t == j {
            breakdown.insert(bucket_key(["r", "s", "t", stat], [r as u64, s as u64, t as u64, nu as u64]), c);
        }
    }
    let rhs = breakdown.values().sum();
    let mut params = vec![("n", n as i64), ("i", i as i64), ("j", j as i64), ("L", l), ("M", m)];
    if mirrored {
        params.push(("mirrored", 1));
    }
    let mut report = CountReport::new(TheoremId::T2, &params, lhs, rhs);
    report.breakdown = breakdown;
    for (p, candidates) in b.ambiguous.iter().filter(|(p, _)| p.weight() == n) {
        report.findings.push(format!("{p}: boundary statistic admits {candidates:?}"));
    }
    report
}

fn theorem2_pre(i: usize, j: usize, l: i64, m: i64, mirrored: bool) -> Result<(), TheoremError> {
    let ij = (i + j) as i64;
    let ok = if mirrored { l > m && m >= ij } else { m >= l && l >= ij };
    if ok {
        Ok(())
    } else if mirrored {
        Err(TheoremError::Precondition(format!("need L > M >= i + j, got L={l} M={m} i={i} j={j}")))
    } else {
        Err(TheoremError::Precondition(format!("need M >= L >= i + j, got L={l} M={m} i={i} j={j}")))
    }
}

/// `V(n; i, j, L, M)` against `sum S(n; r, s, t, l, L, M)`, each bounded
/// Type-1 partition counted once at its own `l = nu(L)`. With `mirrored`
/// (`L > M`) the partitions are bucketed at `nu(M)` instead.
pub fn check_theorem2(n: u64, i: usize, j: usize, l: i64, m: i64, mirrored: bool) -> Result<CountReport, TheoremError> {
    theorem2_pre(i, j, l, m, mirrored)?;
    Ok(theorem2_report(n, i, j, l, m, &bounded_buckets(n, l, m)))
}

/// Theorem 2 for all `n <= n_max` and `i + j <= min(L, M)` at one `(L, M)`,
/// from a single enumeration.
pub fn theorem2_table(n_max: u64, l: i64, m: i64) -> Result<Vec<CountReport>, TheoremError> {
    theorem2_pre(0, 0, l, m, l > m)?;
    let buckets = bounded_buckets(n_max, l, m);
    let top = l.min(m) as usize;
    let cells: Vec<(u64, usize, usize)> = (0..=n_max)
        .flat_map(|n| (0..=top).flat_map(move |i| (0..=top - i).map(move |j| (n, i, j))))
        .collect();
    Ok(cells.par_iter().map(|&(n, i, j)| theorem2_report(n, i, j, l, m, &buckets)).collect())
}

/// `P(n; i, j, L, M)` against `sum G(n; r, s, t, l, L, M)`. Cross-checks the
/// breakdown against Theorem 2 at the undilated weight `(n + 2i + j) / 3`.
pub fn check_theorem3(n: u64, i: usize, j: usize, l: i64, m: i64) -> Result<CountReport, TheoremError> {
    theorem2_pre(i, j, l, m, false)?;
    let counts = theorem3_counts(n, i, j, l, m);
    let params = [("n", n as i64), ("i", i as i64), ("j", j as i64), ("L", l), ("M", m)];
    let mut report = CountReport::new(TheoremId::T3, &params, counts.p, counts.g_sum);
    report.breakdown = counts
        .breakdown
        .iter()
        .map(|(&(r, s, t, ell), &c)| (bucket_key(["r", "s", "t", "l"], [r as u64, s as u64, t as u64, ell as u64]), c))
        .collect();
    if counts.ambiguous > 0 {
        report.findings.push(format!("{} gap partitions admitted at more than one l", counts.ambiguous));
    }
    let shifted = n + 2 * i as u64 + j as u64;
    let consistent = if shifted % 3 == 0 {
        let t2 = check_theorem2(shifted / 3, i, j, l, m, false)?;
        t2.lhs == report.lhs && t2.breakdown == report.breakdown
    } else {
        report.lhs == 0 && report.rhs == 0
    };
    report.cross_checks.insert("dilated Theorem 2".into(), consistent);
    Ok(report)
}

/// Theorem 3 for all `n <= n_max` and `i + j <= L` at one `(L, M)`.
pub fn theorem3_table(n_max: u64, l: i64, m: i64) -> Result<Vec<CountReport>, TheoremError> {
    theorem2_pre(0, 0, l, m, false)?;
    let top = l as usize;
    let cells: Vec<(u64, usize, usize)> = (0..=n_max)
        .flat_map(|n| (0..=top).flat_map(move |i| (0..=top - i).map(move |j| (n, i, j))))
        .collect();
    cells.par_iter().map(|&(n, i, j)| check_theorem3(n, i, j, l, m)).collect()
}

/// Schur's theorem for every `n <= n_max`.
pub fn check_schur(n_max: u64) -> Vec<CountReport> {
    (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let (distinct, gaps) = schur_counts(n);
            CountReport::new(TheoremId::S, &[("n", n as i64)], distinct, gaps)
        })
        .collect()
}

/// Göllnitz's theorem for every `n <= n_max`.
pub fn check_goellnitz(n_max: u64) -> Vec<CountReport> {
    (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let (p, g) = goellnitz_counts(n);
            CountReport::new(TheoremId::G, &[("n", n as i64)], p, g)
        })
        .collect()
}

const CSV_PARAMS: [&str; 5] = ["n", "i", "j", "L", "M"];

/// Writes `theorem,n,i,j,L,M,lhs,rhs,holds` rows; absent parameters are empty.
pub fn write_csv<W: io::Write>(reports: &[CountReport], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["theorem", "n", "i", "j", "L", "M", "lhs", "rhs", "holds"])?;
    for r in reports {
        let mut row = vec![r.theorem.name().to_string()];
        row.extend(CSV_PARAMS.iter().map(|k| r.params.get(*k).map_or(String::new(), |v| v.to_string())));
        row.extend([r.lhs.to_string(), r.rhs.to_string(), r.holds.to_string()]);
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem1_examples() {
        let r = check_theorem1(3, 1, 1);
        assert_eq!((r.lhs, r.rhs), (2, 2));
        assert_eq!(r.breakdown["r=0,s=0,t=1"], 1);
        assert_eq!(r.breakdown["r=1,s=1,t=0"], 1);
        let r = check_theorem1(0, 0, 0);
        assert_eq!((r.lhs, r.rhs), (1, 1));
        // (a2+a1; b2) and (a3+a1; b1)
        let r = check_theorem1(5, 2, 1);
        assert!(r.holds);
        assert_eq!(r.lhs, 2);
    }

    #[test]
    fn theorem2_examples() {
        // only (a1; b2): a-parts are at most M - j = 1
        let r = check_theorem2(3, 1, 1, 2, 2, false).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, 1);
        let r = check_theorem2(0, 0, 0, 0, 0, false).unwrap();
        assert_eq!((r.lhs, r.rhs), (1, 1));
        assert!(check_theorem2(8, 1, 2, 3, 5, false).unwrap().holds);
        assert!(check_theorem2(3, 1, 1, 3, 2, false).is_err());
    }

    #[test]
    fn theorem3_examples() {
        let r = check_theorem3(3, 1, 1, 2, 2).unwrap();
        assert!(r.fully_holds());
        // 3 = 3 (ab_2 dilated) and 1 + 2 (a_1 + b_1)
        assert_eq!(r.lhs, 1);
        let t2 = check_theorem2(2, 1, 1, 2, 2, false).unwrap();
        assert_eq!(t2.lhs, r.lhs);
        let r = check_theorem3(0, 0, 0, 0, 0).unwrap();
        assert_eq!((r.lhs, r.rhs), (1, 1));
        assert!(check_theorem3(12, 1, 1, 2, 3).unwrap().fully_holds());
    }

    #[test]
    fn schur_and_goellnitz_examples() {
        let s = check_schur(9);
        assert_eq!(s.len(), 10);
        assert_eq!((s[9].lhs, s[9].rhs), (3, 3));
        assert_eq!((s[0].lhs, s[0].rhs), (1, 1));
        let g = check_goellnitz(10);
        assert_eq!((g[10].lhs, g[10].rhs), (2, 2));
        assert!(s.iter().chain(&g).all(|r| r.holds));
    }

    /// Bounds at least `n` are inactive.
    #[test]
    fn theorem2_limit_is_theorem1() {
        for n in 0..=8u64 {
            let k = max_distinct_parts(n);
            for i in 0..=k {
                for j in 0..=k {
                    let big = (n + 2 * (i + j) as u64) as i64;
                    let t2 = check_theorem2(n, i, j, big, big + 1, false).unwrap();
                    let t1 = check_theorem1(n, i, j);
                    assert_eq!((t2.lhs, t2.rhs), (t1.lhs, t1.rhs), "n={n} i={i} j={j}");
                }
            }
        }
    }

    /// Marginalizing over `(i, j)` gives all distinct-part pairs; collecting
    /// the dilated weights `3n - 2i - j` gives Schur's distinct side.
    #[test]
    fn refinement_consistency() {
        let table = theorem1_table(20);
        let mut by_n = vec![0u64; 21];
        let mut dilated = vec![0u64; 61];
        for r in &table {
            let (n, i, j) = (r.params["n"], r.params["i"], r.params["j"]);
            by_n[n as usize] += r.lhs;
            dilated[(3 * n - 2 * i - j) as usize] += r.lhs;
        }
        let table_d = crate::colored_partitions::distinct_part_counts(&(1..=20).collect::<Vec<_>>(), 20, 20);
        let q: Vec<u64> = (0..=20).map(|s| table_d.iter().map(|row| row[s]).sum()).collect();
        for n in 0..=20usize {
            let pairs: u64 = (0..=n).map(|a| q[a] * q[n - a]).sum();
            assert_eq!(by_n[n], pairs, "n={n}");
        }
        // every dilated weight up to 20 is reached only from n <= 20
        for (big_n, &c) in dilated.iter().enumerate().take(21) {
            assert_eq!(c, schur_counts(big_n as u64).0, "N={big_n}");
        }
    }

    #[test]
    fn csv_columns() {
        let mut buf = Vec::new();
        write_csv(&check_schur(1), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "theorem,n,i,j,L,M,lhs,rhs,holds\nS,0,,,,,1,1,true\nS,1,,,,,1,1,true\n");
    }

    #[test]
    fn mirrored_regime_small_grid() {
        for (l, m) in [(3, 2), (4, 2), (5, 3)] {
            for r in theorem2_table(10, l, m).unwrap() {
                assert!(r.holds, "{r:?}");
            }
        }
    }
}
