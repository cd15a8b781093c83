use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A symmetric matrix of pairwise distance requirements with a zero diagonal.
///
/// Serialized as `{"dim": M, "entries": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct DistanceMatrix {
    dim: usize,
    entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    dim: usize,
    entries: Vec<Vec<u32>>,
}

impl TryFrom<RawMatrix> for DistanceMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        if raw.entries.len() != raw.dim {
            return Err(Error::InvalidMatrix(format!("dim is {} but {} rows were given", raw.dim, raw.entries.len())));
        }
        DistanceMatrix::from_rows(raw.entries)
    }
}

impl From<DistanceMatrix> for RawMatrix {
    fn from(m: DistanceMatrix) -> Self {
        RawMatrix { dim: m.dim, entries: m.rows() }
    }
}

impl DistanceMatrix {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidMatrix(format!("row {i} has {} entries, expected {dim}", row.len())));
            }
            entries.extend_from_slice(row);
        }
        let m = DistanceMatrix { dim, entries };
        for i in 0..dim {
            if m.get(i, i) != 0 {
                return Err(Error::InvalidMatrix(format!("diagonal entry {i} is nonzero")));
            }
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::InvalidMatrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        Ok(m)
    }

    /// Builds the matrix from `f(i, j)` evaluated for `i < j` and mirrored.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let v = f(i, j);
                entries[i * dim + j] = v;
                entries[j * dim + i] = v;
            }
        }
        DistanceMatrix { dim, entries }
    }

    /// All off-diagonal entries equal to `d`.
    pub fn regular(dim: usize, d: u32) -> Self {
        Self::from_fn(dim, |_, _| d)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Sum of the entries strictly above the diagonal.
    pub fn upper_sum(&self) -> u64 {
        (0..self.dim).flat_map(|i| (i + 1..self.dim).map(move |j| (i, j))).map(|(i, j)| u64::from(self.get(i, j))).sum()
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.row(i).iter().map(|&v| u64::from(v)).sum()
    }

    /// The matrix with rows and columns reordered: entry `(a, b)` of the
    /// result is entry `(order[a], order[b])` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        check_permutation(order, self.dim)?;
        Ok(Self::from_fn(self.dim, |a, b| self.get(order[a], order[b])))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub(crate) fn check_permutation(order: &[usize], dim: usize) -> Result<()> {
    let mut seen = vec![false; dim];
    if order.len() != dim {
        return Err(Error::InvalidParameter(format!(
            "order has {} entries for a matrix of dimension {dim}",
            order.len()
        )));
    }
    for &i in order {
        if i >= dim || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidParameter(format!("order is not a permutation of 0..{dim}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let m = DistanceMatrix::from_rows(vec![vec![0, 2, 1], vec![2, 0, 2], vec![1, 2, 0]]).unwrap();
        let text = m.to_json();
        assert_eq!(text, r#"{"dim":3,"entries":[[0,2,1],[2,0,2],[1,2,0]]}"#);
        assert_eq!(DistanceMatrix::from_json(&text).unwrap(), m);
    }

    #[test]
    fn rejects_asymmetric_or_nonzero_diagonal() {
        assert!(DistanceMatrix::from_rows(vec![vec![0, 1], vec![2, 0]]).is_err());
        assert!(DistanceMatrix::from_rows(vec![vec![1, 1], vec![1, 0]]).is_err());
        assert!(DistanceMatrix::from_json(r#"{"dim":3,"entries":[[0]]}"#).is_err());
    }

    #[test]
    fn permutation_reorders_rows_and_columns() {
        let m = DistanceMatrix::from_rows(vec![vec![0, 2, 1], vec![2, 0, 3], vec![1, 3, 0]]).unwrap();
        let p = m.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.rows(), vec![vec![0, 1, 3], vec![1, 0, 2], vec![3, 2, 0]]);
        assert!(m.permuted(&[0, 0, 1]).is_err());
    }
}
