use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Integer matrix in triplet form. Entries are kept sorted by `(row, col)`
/// with no zeros and no duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Duplicate positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::SizeMismatch(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            let e = acc.entry((r, c)).or_insert(0);
            *e = e.checked_add(v).ok_or(Error::Overflow)?;
        }
        Ok(SparseMatrix {
            rows,
            cols,
            entries: acc
                .into_iter()
                .filter(|&(_, v)| v != 0)
                .map(|((r, c), v)| (r, c, v))
                .collect(),
        })
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let entries = dense
            .iter()
            .enumerate()
            .flat_map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(_, &v)| v != 0)
                    .map(move |(c, &v)| (r, c, v))
            })
            .collect();
        SparseMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            d[r][c] = v;
        }
        d
    }

    /// Row-major lists of `(col, value)`.
    pub fn row_lists(&self) -> Vec<Vec<(usize, i64)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            rows[r].push((c, v));
        }
        rows
    }

    /// `self * rhs`, with overflow detection.
    pub fn multiply(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let rhs_rows = rhs.row_lists();
        let mut triplets = Vec::new();
        for &(r, k, a) in &self.entries {
            for &(c, b) in &rhs_rows[k] {
                triplets.push((r, c, a.checked_mul(b).ok_or(Error::Overflow)?));
            }
        }
        SparseMatrix::from_triplets(self.rows, rhs.cols, triplets)
    }

    /// Text dump: a `dims R C` header, then one `row col value` line per
    /// nonzero entry.
    pub fn to_triplet_text(&self) -> String {
        let mut out = format!("dims {} {}\n", self.rows, self.cols);
        for &(r, c, v) in &self.entries {
            writeln!(out, "{r} {c} {v}").expect("writing to a String");
        }
        out
    }

    pub fn from_triplet_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let (rows, cols) = match dims.as_slice() {
            ["dims", r, c] => (parse_num(r)?, parse_num(c)?),
            _ => return Err(Error::Parse(format!("bad header {header:?}"))),
        };
        let mut triplets = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = parts.as_slice() else {
                return Err(Error::Parse(format!("bad entry line {line:?}")));
            };
            let v: i64 = v.parse().map_err(|e| Error::Parse(format!("{line:?}: {e}")))?;
            triplets.push((parse_num(r)?, parse_num(c)?, v));
        }
        SparseMatrix::from_triplets(rows, cols, triplets)
    }
}

fn parse_num(s: &str) -> Result<usize> {
    s.parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}
