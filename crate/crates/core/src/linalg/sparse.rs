use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::LinScalar;
use crate::scalar::Coefficient;

/// Compressed sparse row matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix<T> {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    values: Vec<T>,
}

impl<T: Clone> CsrMatrix<T> {
    pub fn builder(cols: usize) -> CsrBuilder<T> {
        CsrBuilder {
            cols,
            row_ptr: alloc::vec![0],
            col_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &T)> {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.col_idx[span.clone()]
            .iter()
            .map(|&c| c as usize)
            .zip(&self.values[span])
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> CsrMatrix<U> {
        CsrMatrix {
            rows: self.rows,
            cols: self.cols,
            row_ptr: self.row_ptr.clone(),
            col_idx: self.col_idx.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

impl<T: Coefficient> CsrMatrix<T> {
    /// Exact sparse product `self · other`; entries that cancel are dropped.
    pub fn matmul(&self, other: &CsrMatrix<T>) -> CsrMatrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut b = CsrMatrix::builder(other.cols);
        for r in 0..self.rows {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, a) in self.row(r) {
                for (c, v) in other.row(k) {
                    let e = acc.entry(c).or_insert_with(T::zero);
                    *e = e.clone() + a.clone() * v.clone();
                }
            }
            b.push_row(acc.into_iter().filter(|(_, v)| !v.is_zero()));
        }
        b.finish()
    }

    /// Entry lookup; `O(row length)`.
    pub fn get(&self, r: usize, c: usize) -> T {
        self.row(r)
            .find(|&(cc, _)| cc == c)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(T::zero)
    }
}

impl<S: LinScalar> CsrMatrix<S> {
    /// `y = A x`.
    pub fn matvec(&self, x: &[S], y: &mut [S]) {
        for (r, out) in y.iter_mut().enumerate().take(self.rows) {
            let mut acc = S::zero();
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[k] * x[self.col_idx[k] as usize];
            }
            *out = acc;
        }
    }

    /// `y = A* x` (conjugate transpose).
    pub fn adjoint_matvec(&self, x: &[S], y: &mut [S]) {
        y.iter_mut().for_each(|v| *v = S::zero());
        for (r, &xr) in x.iter().enumerate().take(self.rows) {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                y[self.col_idx[k] as usize] += self.values[k].conj() * xr;
            }
        }
    }
}

/// Row-by-row CSR assembly.
pub struct CsrBuilder<T> {
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    values: Vec<T>,
}

impl<T: Clone> CsrBuilder<T> {
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, T)>) {
        for (c, v) in entries {
            debug_assert!(c < self.cols);
            self.col_idx.push(c as u32);
            self.values.push(v);
        }
        self.row_ptr.push(self.col_idx.len());
    }

    pub fn finish(self) -> CsrMatrix<T> {
        CsrMatrix {
            rows: self.row_ptr.len() - 1,
            cols: self.cols,
            row_ptr: self.row_ptr,
            col_idx: self.col_idx,
            values: self.values,
        }
    }
}
