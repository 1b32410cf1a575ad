//! Elimination kernels: rank, inverse, echelon forms, generalized inverse.
//!
//! Pivoting is deterministic everywhere: leftmost column first, and within a
//! column the topmost eligible row. Downstream subspace constructions depend
//! on basis choices, so this order is part of the observable behavior.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// Reduces `m` in place to reduced row echelon form, pivoting only in the
/// first `pivot_cols` columns. Returns the pivot columns in order.
pub(crate) fn rref_in_place<F: Field>(m: &mut Matrix<F>, pivot_cols: usize) -> Vec<usize> {
    let f = m.field().clone();
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols.min(cols) {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, p);
        let lead = m.get(r, c).clone();
        if !f.is_one(&lead) {
            let inv = f.inv(&lead).expect("nonzero pivot");
            for e in m.row_mut(r)[c..].iter_mut() {
                *e = f.mul(e, &inv);
            }
        }
        let pivot_row: Vec<F::Elem> = m.row(r)[c..].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (e, b) in m.row_mut(i)[c..].iter_mut().zip(&pivot_row) {
                *e = f.sub_mul(e, &factor, b);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form and its pivot columns.
pub fn reduced_row_echelon<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut r = m.clone();
    let pivots = rref_in_place(&mut r, m.cols());
    (r, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    // Eliminate along the shorter side.
    if m.rows() < m.cols() {
        rref_in_place(&mut m.transpose(), m.rows()).len()
    } else {
        rref_in_place(&mut m.clone(), m.cols()).len()
    }
}

pub fn is_invertible<F: Field>(m: &Matrix<F>) -> bool {
    m.is_square() && rank(m) == m.rows()
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let k = m.rows();
    let mut aug = Matrix::hcat(&[m, &Matrix::identity(m.field().clone(), k)])?;
    let pivots = rref_in_place(&mut aug, k);
    if pivots.len() != k {
        return Err(Error::SingularMatrix);
    }
    Ok(aug.block(0, k, k, k))
}

/// Reduced column echelon form with the zero columns dropped: a
/// `rows x rank` matrix whose columns span the column space of `m`.
pub fn reduced_column_echelon<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let mut t = m.transpose();
    let cols = t.cols();
    let pivots = rref_in_place(&mut t, cols);
    t.block(0, 0, pivots.len(), t.cols()).transpose()
}

/// Reduced column echelon form keeping the full column count, zero columns last.
pub(crate) fn rcef_full<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut t = m.transpose();
    let cols = t.cols();
    let pivots = rref_in_place(&mut t, cols);
    (t.transpose(), pivots)
}

/// A generalized inverse `G` with `m * G * m = m`.
///
/// Built from the rank decomposition exposed by elimination: if `E m = R`
/// is the reduced row echelon form with pivot columns `c_1..c_k`, then `G`
/// places row `i` of `E` at row `c_i`.
pub fn generalized_inverse<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let (rows, cols) = m.shape();
    let field = m.field().clone();
    let mut aug = Matrix::hcat(&[m, &Matrix::identity(field.clone(), rows)]).expect("same rows");
    let pivots = rref_in_place(&mut aug, cols);
    let mut g = Matrix::zeros(field, cols, rows);
    for (i, &c) in pivots.iter().enumerate() {
        for j in 0..rows {
            g.set(c, j, aug.get(i, cols + j).clone());
        }
    }
    g
}

/// Incrementally maintained echelon basis of a subspace of `F^dim`.
///
/// Each stored vector is normalized at its pivot (its first nonzero entry)
/// and reduced against all earlier vectors, so membership tests and
/// insertions cost `O(dim * len)`.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    dim: usize,
    vectors: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: F, dim: usize) -> Self {
        EchelonBasis {
            field,
            dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_columns(m: &Matrix<F>) -> Self {
        let mut b = Self::new(m.field().clone(), m.rows());
        for c in m.columns() {
            b.insert(c);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (e, x) in v[p..].iter_mut().zip(&b[p..]) {
                *e = f.sub_mul(e, &c, x);
            }
        }
    }

    /// Adds `v` if it is outside the current span. Returns whether the span grew.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length");
        self.reduce(&mut v);
        let f = &self.field;
        let Some(p) = v.iter().position(|e| !f.is_zero(e)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        for e in v[p..].iter_mut() {
            *e = f.mul(e, &inv);
        }
        self.vectors.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|e| self.field.is_zero(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gfp, Rationals};

    fn gf2(rows: usize, cols: usize, e: &[i64]) -> Matrix<Gf2> {
        Matrix::from_i64(Gf2, rows, cols, e).unwrap()
    }

    #[test]
    fn identity_facts() {
        for k in 0..5 {
            let i = Matrix::identity(Gf2, k);
            assert_eq!(rank(&i), k);
            assert_eq!(inverse(&i).unwrap(), i);
            assert_eq!(reduced_column_echelon(&i), i);
            assert_eq!(generalized_inverse(&i), i);
        }
    }

    #[test]
    fn singular_inverse_is_an_error() {
        assert_eq!(inverse(&Matrix::zeros(Gf2, 3, 3)), Err(Error::SingularMatrix));
        assert_eq!(inverse(&Matrix::zeros(Gf2, 2, 3)), Err(Error::NotSquare(2, 3)));
    }

    #[test]
    fn rank_of_zero_column_matrix() {
        assert_eq!(rank(&Matrix::<Gf2>::zeros(Gf2, 4, 0)), 0);
        assert_eq!(reduced_column_echelon(&Matrix::zeros(Gf2, 3, 2)).shape(), (3, 0));
    }

    #[test]
    fn rational_inverse() {
        let m = Matrix::from_i64(Rationals, 2, 2, &[2, 1, 1, 1]).unwrap();
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, Matrix::from_i64(Rationals, 2, 2, &[1, -1, -1, 2]).unwrap());
        let h = Matrix::from_fn(Rationals, 3, 3, |i, j| {
            num::BigRational::new(1.into(), ((i + j + 1) as i64).into())
        });
        let hi = inverse(&h).unwrap();
        assert!(h.mul(&hi).unwrap().is_identity());
    }

    #[test]
    fn rcef_pivots_leftmost_topmost() {
        let m = gf2(3, 3, &[0, 1, 1, 1, 1, 0, 1, 0, 1]);
        let r = reduced_column_echelon(&m);
        // columns: (0,1,1) + (1,1,0) = (1,0,1), rank 2
        assert_eq!(r, gf2(3, 2, &[1, 0, 0, 1, 1, 1]));
    }

    #[test]
    fn generalized_inverse_identity_holds_over_gfp() {
        let f = Gfp::new(5).unwrap();
        let m = Matrix::from_i64(f, 3, 4, &[1, 2, 3, 4, 2, 4, 1, 3, 3, 1, 4, 2]).unwrap();
        let g = generalized_inverse(&m);
        assert_eq!(m.mul(&g).unwrap().mul(&m).unwrap(), m);
    }

    #[test]
    fn echelon_basis_membership() {
        let mut b = EchelonBasis::new(Gf2, 3);
        assert!(b.contains(&[false, false, false]));
        assert!(b.insert(vec![true, true, false]));
        assert!(!b.contains(&[true, false, false]));
        assert!(b.insert(vec![false, true, true]));
        assert!(b.contains(&[true, false, true]));
        assert!(!b.insert(vec![true, false, true]));
        assert_eq!(b.len(), 2);
    }
}
