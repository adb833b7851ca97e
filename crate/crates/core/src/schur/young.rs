use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition, stored as weakly decreasing positive row lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct YoungDiagram(Vec<u32>);

impl YoungDiagram {
    /// Accepts trailing zeros, rejects increasing rows.
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) || rows.contains(&0) {
            return Err(Error::ConfigError(format!("not a partition: {rows:?}")));
        }
        Ok(YoungDiagram(rows))
    }

    pub fn empty() -> Self {
        YoungDiagram(Vec::new())
    }

    /// `Y_{n+1}`: two rows each of lengths `n, n−1, …, 1`.
    pub fn staircase_full(n: u32) -> Self {
        YoungDiagram((1..=n).rev().flat_map(|k| [k, k]).collect())
    }

    /// `Y'_n`: one row of length `n`, then two rows each of `n−1, …, 1`.
    pub fn staircase_primed(n: u32) -> Self {
        let mut rows = Vec::new();
        if n > 0 {
            rows.push(n);
        }
        rows.extend((1..n).rev().flat_map(|k| [k, k]));
        YoungDiagram(rows)
    }

    /// `Y_n`: `Y'_n` without its first row.
    pub fn staircase_plain(n: u32) -> Self {
        YoungDiagram((1..n).rev().flat_map(|k| [k, k]).collect())
    }

    pub fn rows(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.0.first().copied().unwrap_or(0);
        YoungDiagram((1..=width).map(|c| self.0.iter().filter(|&&r| r >= c).count() as u32).collect())
    }

    /// Removes one box from every row.
    pub fn strip_column(&self) -> Self {
        YoungDiagram(self.0.iter().filter(|&&r| r > 1).map(|r| r - 1).collect())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let rows = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("row {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }
}

impl TryFrom<Vec<u32>> for YoungDiagram {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<YoungDiagram> for Vec<u32> {
    fn from(y: YoungDiagram) -> Self {
        y.0
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircases() {
        assert_eq!(YoungDiagram::staircase_full(2).rows(), &[2, 2, 1, 1]);
        assert_eq!(YoungDiagram::staircase_full(1).rows(), &[1, 1]);
        assert_eq!(YoungDiagram::staircase_primed(2).rows(), &[2, 1, 1]);
        assert_eq!(YoungDiagram::staircase_primed(1).rows(), &[1]);
        assert_eq!(YoungDiagram::staircase_plain(2).rows(), &[1, 1]);
        assert!(YoungDiagram::staircase_plain(1).is_empty());
        // Y_{n+1} and Y'_n rotated by 180° tile a (2n+1) × n rectangle.
        for n in 1..6 {
            assert_eq!(
                YoungDiagram::staircase_full(n).size() + YoungDiagram::staircase_primed(n).size(),
                (2 * n + 1) * n
            );
        }
    }

    #[test]
    fn validation() {
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        assert_eq!(YoungDiagram::parse("3,1,0").unwrap().rows(), &[3, 1]);
        assert_eq!(YoungDiagram::parse("3,1,1").unwrap().conjugate().rows(), &[3, 1, 1]);
        assert_eq!(YoungDiagram::parse("2,2,1").unwrap().strip_column().rows(), &[1, 1]);
        let j = serde_json::to_string(&YoungDiagram::staircase_full(2)).unwrap();
        assert_eq!(j, "[2,2,1,1]");
        assert!(serde_json::from_str::<YoungDiagram>("[1,3]").is_err());
    }
}
