//! Dense boolean grids with 1-based `(row, col)` accessors.
//!
//! JSON form is `{"K": rows, "L": cols, "rows": ["0101", ...]}`, shared by
//! staircase encodings, path-cost inputs and adversary matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct GridFile {
    #[serde(rename = "K")]
    k: usize,
    #[serde(rename = "L")]
    l: usize,
    rows: Vec<String>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            cells: vec![false; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(BitMatrix {
            rows: rows.len(),
            cols,
            cells: rows.iter().flatten().copied().collect(),
        })
    }

    /// Row-major cell vector of length `rows * cols`.
    pub fn from_cells(rows: usize, cols: usize, cells: Vec<bool>) -> Result<Self> {
        if cells.len() != rows * cols {
            return Err(Error::Parse(format!(
                "{} cells for a {rows}x{cols} matrix",
                cells.len()
            )));
        }
        Ok(BitMatrix { rows, cols, cells })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 1-based access.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols);
        self.cells[(i - 1) * self.cols + (j - 1)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.cells[(i - 1) * self.cols + (j - 1)] = v;
    }

    /// 1-based row slice.
    pub fn row(&self, i: usize) -> &[bool] {
        &self.cells[(i - 1) * self.cols..i * self.cols]
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn count_ones(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    pub fn to_json(&self) -> String {
        let file = GridFile {
            k: self.rows,
            l: self.cols,
            rows: (1..=self.rows).map(|i| bits_to_string(self.row(i))).collect(),
        };
        serde_json::to_string(&file).expect("grid serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GridFile = serde_json::from_str(text)?;
        if file.rows.len() != file.k {
            return Err(Error::Parse(format!(
                "K={} but {} rows given",
                file.k,
                file.rows.len()
            )));
        }
        let rows = file
            .rows
            .iter()
            .map(|r| parse_bits(r))
            .collect::<Result<Vec<_>>>()?;
        if rows.iter().any(|r| r.len() != file.l) {
            return Err(Error::Parse(format!("row length differs from L={}", file.l)));
        }
        Ok(BitMatrix {
            rows: file.k,
            cols: file.l,
            cells: rows.into_iter().flatten().collect(),
        })
    }
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Parse(format!("non-bit character {other:?}"))),
        })
        .collect()
}
