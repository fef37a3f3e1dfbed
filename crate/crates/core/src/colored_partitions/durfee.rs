use serde::Serialize;

use super::PartitionError;

/// Splitting of a Ferrers graph with at most `j` rows around its maximal
/// rectangle of `j - k` rows and `i - k` columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DurfeeDecomposition {
    pub k: u32,
    pub rectangle_rows: u32,
    pub rectangle_cols: u32,
    /// At most `k` parts, each at most `i - k`.
    pub below: Vec<u32>,
    /// At most `j - k` parts, each at most `L - i - j + k`.
    pub right: Vec<u32>,
}

impl DurfeeDecomposition {
    pub fn rectangle_size(&self) -> u64 {
        self.rectangle_rows as u64 * self.rectangle_cols as u64
    }

    /// Glues rectangle, right part and below part back into one partition.
    pub fn reassemble(&self) -> Vec<u32> {
        let mut parts: Vec<u32> = (0..self.rectangle_rows as usize)
            .map(|r| self.rectangle_cols + self.right.get(r).copied().unwrap_or(0))
            .collect();
        parts.extend(self.below.iter().copied());
        parts.retain(|&x| x > 0);
        parts
    }
}

/// Decomposes a partition `p` (weakly decreasing, at most `j` parts, each at
/// most `L - j`) along the maximal rectangle whose row length minus column
/// length is `i - j`.
pub fn durfee_decompose(p: &[u32], i: u32, j: u32, l: u32) -> Result<DurfeeDecomposition, PartitionError> {
    if p.windows(2).any(|w| w[0] < w[1]) || p.contains(&0) {
        return Err(PartitionError::InvalidInput("parts must be positive and weakly decreasing".into()));
    }
    if p.len() > j as usize || i + j > l || p.first().is_some_and(|&x| x > l - j) {
        return Err(PartitionError::InvalidInput(format!(
            "partition {p:?} does not fit a {j} x {} box with i = {i}",
            l.saturating_sub(j)
        )));
    }
    let part = |idx: u32| p.get(idx as usize - 1).copied().unwrap_or(0);
    // The smallest k gives the largest rectangle (j-k) x (i-k).
    let k = (0..=i.min(j))
        .find(|&k| j == k || i == k || part(j - k) >= i - k)
        .ok_or(PartitionError::NoRectangle)?;
    let rows = j - k;
    let cols = i - k;
    let right: Vec<u32> = (1..=rows).map(|r| part(r) - cols).filter(|&x| x > 0).collect();
    let below: Vec<u32> = p.iter().skip(rows as usize).copied().collect();
    Ok(DurfeeDecomposition { k, rectangle_rows: rows, rectangle_cols: cols, below, right })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_partition_gets_degenerate_rectangle() {
        let d = durfee_decompose(&[], 2, 1, 5).unwrap();
        assert_eq!((d.k, d.rectangle_rows, d.rectangle_cols), (1, 0, 1));
        assert!(d.below.is_empty() && d.right.is_empty());
        assert_eq!(d.reassemble(), Vec::<u32>::new());
    }

    #[test]
    fn two_one_in_two_by_two() {
        let d = durfee_decompose(&[2, 1], 2, 2, 4).unwrap();
        assert_eq!((d.k, d.rectangle_rows, d.rectangle_cols), (1, 1, 1));
        assert_eq!(d.below, vec![1]);
        assert_eq!(d.right, vec![1]);
        assert_eq!(d.reassemble(), vec![2, 1]);
    }

    #[test]
    fn single_cell() {
        let d = durfee_decompose(&[1], 1, 1, 2).unwrap();
        assert_eq!((d.k, d.rectangle_rows, d.rectangle_cols), (0, 1, 1));
        assert!(d.below.is_empty() && d.right.is_empty());
    }

    #[test]
    fn rejects_oversized_input() {
        assert!(durfee_decompose(&[3], 0, 1, 3).is_err());
        assert!(durfee_decompose(&[1, 1], 0, 1, 3).is_err());
    }
}
