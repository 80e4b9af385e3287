//! Dense matrices over a [`Field`]: row reduction, rank, kernels, products,
//! and Frobenius-twisted transposes.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<u32> = self.row(i).iter().map(|e| e.0).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// dst <- dst - factor * src
#[inline]
fn axpy(field: &Field, dst: &mut [Elem], src: &[Elem], factor: Elem) {
    if factor.is_zero() {
        return;
    }
    let neg = field.neg(factor);
    for (d, &s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = field.add(*d, field.mul(neg, s));
        }
    }
}

impl GfMatrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| !field.contains(**e)) {
            return Err(Error::DimensionMismatch(format!(
                "entry {bad:?} outside {field}"
            )));
        }
        Ok(Self {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Self::new(field, n, cols, data)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        self.conj_transpose(0)
    }

    /// Entrywise x -> x^{p^e}.
    pub fn frobenius_map(&self, e: u64) -> Self {
        let f = &self.field;
        Self {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f.frobenius(x, e)).collect(),
        }
    }

    /// (i, j) entry = M(j, i)^{p^e}.
    pub fn conj_transpose(&self, e: u64) -> Self {
        let f = &self.field;
        let mut out = Self::zeros(f, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, f.frobenius(self.get(i, j), e));
            }
        }
        out
    }

    pub fn matmul(&self, other: &GfMatrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                // dst += a * other.row(k)
                axpy(f, dst, other.row(k), f.neg(a));
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &GfMatrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::DimensionMismatch(format!(
                "stacking {} and {} columns",
                self.cols, other.cols
            )));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            let row = self.row(i);
            data.extend(cols.iter().map(|&j| row[j]));
        }
        Self {
            field: self.field.clone(),
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Self {
            field: self.field.clone(),
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn delete_column(&self, j: usize) -> Self {
        let keep: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.select_columns(&keep)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (pivot_row, rest) = tail.split_at_mut(cols);
            for i in 0..r {
                let row = &mut head[i * cols..(i + 1) * cols];
                let factor = row[c];
                axpy(&f, &mut row[c..], &pivot_row[c..], factor);
            }
            for i in 0..self.rows - r - 1 {
                let row = &mut rest[i * cols..(i + 1) * cols];
                let factor = row[c];
                axpy(&f, &mut row[c..], &pivot_row[c..], factor);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Row-equivalent reduced echelon form (same shape) and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut r = self.clone();
        let pivots = r.rref_in_place();
        (r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The nonzero rows of the reduced echelon form.
    pub fn row_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        r.select_rows(&keep)
    }

    /// Basis (as rows) of { v : M v^T = 0 }.
    pub fn kernel(&self) -> Self {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, Elem::ONE);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(r.get(i, fc)));
            }
        }
        out
    }

    /// Whether `v` lies in the row space, by rank comparison with the
    /// matrix extended by `v`.
    pub fn row_space_contains(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let extra = Self::new(&self.field, 1, self.cols, v.to_vec())?;
        Ok(self.vstack(&extra)?.rank() == self.rank())
    }

    /// Whether every row of `other` lies in this row space.
    pub fn contains_row_space(&self, other: &GfMatrix) -> Result<bool> {
        Ok(self.vstack(other)?.rank() == self.rank())
    }

    pub fn same_row_space(&self, other: &GfMatrix) -> Result<bool> {
        let stacked = self.vstack(other)?.rank();
        Ok(stacked == self.rank() && stacked == other.rank())
    }

    /// Entrywise image under a map into another field.
    pub fn map_into(&self, target: &Field, mut f: impl FnMut(Elem) -> Elem) -> Self {
        Self {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}
