//! Dense row-major matrices over an exact field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "new",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        if let Some(bad) = data.iter().find(|e| !field.contains(e)) {
            return Err(Error::InvalidEntry(format!("{bad:?}")));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, k: usize) -> Self {
        let mut m = Self::zeros(field, k, k);
        for i in 0..k {
            m.data[i * k + i] = m.field.one();
        }
        m
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from small integers, reduced into the field.
    pub fn from_i64(field: F, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        let data = entries.iter().map(|&v| field.from_i64(v)).collect();
        Self::new(field, rows, cols, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch {
                op: "from_columns",
                left: (rows, columns.len()),
                right: (c.len(), 1),
            });
        }
        let cols = columns.len();
        Ok(Self::from_fn(field, rows, cols, |i, j| columns[j][i].clone()))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<F::Elem>> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.field.clone(), self.rows)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The `nr x nc` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of bounds");
        Self::from_fn(self.field.clone(), nr, nc, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.field.clone(), self.rows, idx.len(), |i, j| {
            self.get(i, idx[j]).clone()
        })
    }

    /// The first `k` columns (all of them if `k >= cols`).
    pub fn leading_columns(&self, k: usize) -> Self {
        self.block(0, 0, self.rows, k.min(self.cols))
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Horizontal concatenation `(A B ...)`. All parts need the same row count.
    pub fn hcat(parts: &[&Self]) -> Result<Self> {
        let first = parts.first().expect("hcat of nothing");
        let rows = first.rows;
        for p in parts {
            first.check_field(p)?;
            if p.rows != rows {
                return Err(Error::DimensionMismatch {
                    op: "hcat",
                    left: first.shape(),
                    right: p.shape(),
                });
            }
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for p in parts {
                data.extend_from_slice(p.row(i));
            }
        }
        Ok(Matrix {
            field: first.field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Vertical stacking. All parts need the same column count.
    pub fn vcat(parts: &[&Self]) -> Result<Self> {
        let first = parts.first().expect("vcat of nothing");
        let cols = first.cols;
        let mut data = Vec::new();
        for p in parts {
            first.check_field(p)?;
            if p.cols != cols {
                return Err(Error::DimensionMismatch {
                    op: "vcat",
                    left: first.shape(),
                    right: p.shape(),
                });
            }
            data.extend_from_slice(&p.data);
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        Ok(Matrix {
            field: first.field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// 2x2 block assembly `((a b) (c d))`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        Self::vcat(&[&Self::hcat(&[a, b])?, &Self::hcat(&[c, d])?])
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let brow = other.row(k);
                let orow = out.row_mut(i);
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o = f.add(o, &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "mul_vec",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    fn zip_with(&self, other: &Self, op: &'static str, g: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem) -> Result<Self> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| g(&self.field, a, b))
            .collect();
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |f, a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Entries formatted in the text conventions, one string per row.
    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| self.field.format_elem(e))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }

    pub fn from_row_strings(field: F, cols: usize, rows: &[String]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let entries: Vec<&str> = r.split_whitespace().collect();
            if entries.len() != cols {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected {cols} entries, found {}", entries.len()),
                });
            }
            for e in entries {
                data.push(field.parse_elem(e)?);
            }
        }
        Self::new(field, rows.len(), cols, data)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for r in self.to_row_strings() {
            writeln!(f, "  [{r}]")?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.to_row_strings() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
