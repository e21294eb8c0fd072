//! Dense {0,1} matrix with row-major storage.
//!
//! One byte per cell. The logical model is per-element; nothing here packs
//! bits into words.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<u8>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            bits: vec![0; rows * cols],
        }
    }

    /// The 1×`width` matrix with every entry equal to `value`.
    pub fn constant_row(value: bool, width: usize) -> Self {
        Self {
            rows: 1,
            cols: width,
            bits: vec![value as u8; width],
        }
    }

    /// Builds a matrix from explicit rows. All rows must have the same
    /// length and contain only 0 and 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut bits = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|&&b| b > 1) {
                return Err(Error::Parse {
                    line: i,
                    message: format!("entry {bad} is not a bit"),
                });
            }
            bits.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            bits,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.cols == 0 || self.rows == 0
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.bits[row * self.cols + col] == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.bits[row * self.cols + col] = value as u8;
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[u8] {
        &self.bits[row * self.cols..(row + 1) * self.cols]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, row: usize) -> &mut [u8] {
        &mut self.bits[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.bits[r * self.cols + col]).collect()
    }

    pub fn row_weight(&self, row: usize) -> usize {
        self.row(row).iter().map(|&b| b as usize).sum()
    }

    pub fn column_weight(&self, col: usize) -> usize {
        (0..self.rows)
            .map(|r| self.bits[r * self.cols + col] as usize)
            .sum()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows).map(|r| self.row_weight(r)).collect()
    }

    pub fn column_weights(&self) -> Vec<usize> {
        let mut weights = vec![0; self.cols];
        for r in 0..self.rows {
            for (w, &b) in weights.iter_mut().zip(self.row(r)) {
                *w += b as usize;
            }
        }
        weights
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|&b| b as usize).sum()
    }

    /// Left-right union `[self other]`.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows {
            return Err(Error::RowMismatch {
                left: self.rows,
                right: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut bits = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            bits.extend_from_slice(self.row(r));
            bits.extend_from_slice(other.row(r));
        }
        Ok(BitMatrix {
            rows: self.rows,
            cols,
            bits,
        })
    }

    /// Up-down union, `self` on top.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: other.cols,
            });
        }
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Ok(BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            bits,
        })
    }

    /// Returns a matrix whose row `i` is row `order[i]` of `self`.
    pub fn permute_rows(&self, order: &[usize]) -> BitMatrix {
        assert_eq!(order.len(), self.rows, "permutation length");
        let mut bits = Vec::with_capacity(self.bits.len());
        for &src in order {
            bits.extend_from_slice(self.row(src));
        }
        BitMatrix {
            rows: self.rows,
            cols: self.cols,
            bits,
        }
    }

    /// Row order reversed ("upside down").
    pub fn flipped(&self) -> BitMatrix {
        let order: Vec<usize> = (0..self.rows).rev().collect();
        self.permute_rows(&order)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bits
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for &b in self.row(r) {
                f.write_str(if b == 1 { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
