//! Minimal compressed-sparse-row matrix for the derivative operators.

use crate::error::{Error, Result};
use std::io::Write;

/// Coordinate-triplet builder; finalize into a `SparseMatrix`.
#[derive(Debug, Clone)]
pub struct Triplets {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl Triplets {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        Triplets {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, row: usize, col: usize, value: f64) {
        debug_assert!(row < self.nrows && col < self.ncols);
        self.entries.push((row, col, value));
    }

    /// Sorts, sums duplicates, and compresses to CSR.
    pub fn finalize(mut self) -> SparseMatrix {
        self.entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut counts = vec![0usize; self.nrows];
        let mut col_idx: Vec<usize> = Vec::with_capacity(self.entries.len());
        let mut values: Vec<f64> = Vec::with_capacity(self.entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in self.entries {
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                col_idx.push(c);
                values.push(v);
                counts[r] += 1;
                last = Some((r, c));
            }
        }
        let mut row_ptr = vec![0usize; self.nrows + 1];
        for r in 0..self.nrows {
            row_ptr[r + 1] = row_ptr[r] + counts[r];
        }
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            row_ptr,
            col_idx,
            values,
        }
    }
}

/// Immutable CSR matrix.
#[derive(Debug, Clone)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, r: usize) -> (&[usize], &[f64]) {
        let (lo, hi) = (self.row_ptr[r], self.row_ptr[r + 1]);
        (&self.col_idx[lo..hi], &self.values[lo..hi])
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let (cols, vals) = self.row(r);
        match cols.binary_search(&c) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// y = A x.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.ncols);
        assert_eq!(y.len(), self.nrows);
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            let mut acc = 0.0;
            for (c, v) in cols.iter().zip(vals.iter()) {
                acc += v * x[*c];
            }
            y[r] = acc;
        }
    }

    /// A copy with every stored value multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> SparseMatrix {
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= factor;
        }
        out
    }

    pub fn matvec_alloc(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.nrows];
        self.matvec(x, &mut y);
        y
    }

    /// Largest asymmetry |A_ij - A_ji| over the stored pattern.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            for (c, v) in cols.iter().zip(vals.iter()) {
                worst = worst.max((v - self.get(*c, r)).abs());
            }
        }
        worst
    }

    /// Checks the symmetry contract: square and with asymmetry below
    /// 1e-12 of the largest entry.
    pub fn check_symmetric(&self) -> Result<()> {
        if self.nrows != self.ncols {
            return Err(Error::Validation(format!(
                "matrix is {}x{}, not square",
                self.nrows, self.ncols
            )));
        }
        let bound = 1e-12 * self.max_abs();
        let asym = self.asymmetry();
        if asym > bound {
            return Err(Error::Validation(format!(
                "matrix is not symmetric: max |A_ij - A_ji| = {asym:e} > {bound:e}"
            )));
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> bool {
        self.check_symmetric().is_ok()
    }

    /// Coordinate text format: header `nrows ncols nnz`, then one
    /// `row col value` line per stored entry in row-major order.
    pub fn write_coordinate<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "{} {} {}", self.nrows, self.ncols, self.nnz())?;
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            for (c, v) in cols.iter().zip(vals.iter()) {
                writeln!(w, "{} {} {}", r, c, v)?;
            }
        }
        Ok(())
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.nrows, self.ncols);
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            for (c, v) in cols.iter().zip(vals.iter()) {
                m[(r, *c)] = *v;
            }
        }
        m
    }
}
