use serde::Serialize;

use super::blocked::BlockedMatrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{inverse, is_invertible, rank};
use crate::matrix::Matrix;

/// `P = ((I 0) (L I)) · ((C4 C3) (0 C1)) · ((I 0) (R I))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<F: Field> {
    pub l: Matrix<F>,
    pub c4: Matrix<F>,
    pub c3: Matrix<F>,
    pub c1: Matrix<F>,
    pub r: Matrix<F>,
    pub rank_l: usize,
    pub rank_r: usize,
}

fn lower_unitriangular<F: Field>(off: &Matrix<F>) -> Matrix<F> {
    let (n, m) = off.shape();
    let field = off.field().clone();
    Matrix::from_blocks(
        &Matrix::identity(field.clone(), m),
        &Matrix::zeros(field.clone(), m, n),
        off,
        &Matrix::identity(field, n),
    )
    .expect("consistent block shapes")
}

impl<F: Field> Decomposition<F> {
    /// Assembles a decomposition from its blocks, computing the cached ranks.
    pub fn from_parts(l: Matrix<F>, c4: Matrix<F>, c3: Matrix<F>, c1: Matrix<F>, r: Matrix<F>) -> Self {
        let rank_l = rank(&l);
        let rank_r = rank(&r);
        Decomposition {
            l,
            c4,
            c3,
            c1,
            r,
            rank_l,
            rank_r,
        }
    }

    pub fn m(&self) -> usize {
        self.c4.rows()
    }

    pub fn n(&self) -> usize {
        self.c1.rows()
    }

    fn shapes_ok(&self) -> bool {
        let (m, n) = (self.m(), self.n());
        self.c4.shape() == (m, m)
            && self.c3.shape() == (m, n)
            && self.c1.shape() == (n, n)
            && self.l.shape() == (n, m)
            && self.r.shape() == (n, m)
    }

    pub fn left_factor(&self) -> Matrix<F> {
        lower_unitriangular(&self.l)
    }

    pub fn middle_factor(&self) -> Matrix<F> {
        let zero = Matrix::zeros(self.c4.field().clone(), self.n(), self.m());
        Matrix::from_blocks(&self.c4, &self.c3, &zero, &self.c1).expect("consistent block shapes")
    }

    pub fn right_factor(&self) -> Matrix<F> {
        lower_unitriangular(&self.r)
    }

    pub fn product(&self) -> Result<Matrix<F>> {
        self.left_factor().mul(&self.middle_factor())?.mul(&self.right_factor())
    }
}

/// Completes an admissible `L` to the full factorization:
/// `C1 = P1 - L P3`, `R = C1⁻¹ (P2 - L P4)`, `C4 = P4 - P3 R`, `C3 = P3`.
pub fn complete_decomposition<F: Field>(bm: &BlockedMatrix<F>, l: &Matrix<F>) -> Result<Decomposition<F>> {
    if l.shape() != (bm.n(), bm.m()) {
        return Err(Error::DimensionMismatch {
            op: "complete_decomposition",
            left: (bm.n(), bm.m()),
            right: l.shape(),
        });
    }
    let c1 = bm.p1().sub(&l.mul(bm.p3())?)?;
    let c1_inv = inverse(&c1).map_err(|_| Error::SingularCore)?;
    let residual = bm.p2().sub(&l.mul(bm.p4())?)?;
    let r = c1_inv.mul(&residual)?;
    let c4 = bm.p4().sub(&bm.p3().mul(&r)?)?;
    Ok(Decomposition::from_parts(l.clone(), c4, bm.p3().clone(), c1, r))
}

/// The form `P = ((I 0) (L C1)) · ((C4 C3) (0 I)) · ((I 0) (R I))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Deco4<F: Field> {
    pub left: Matrix<F>,
    pub middle: Matrix<F>,
    pub right: Matrix<F>,
}

impl<F: Field> Deco4<F> {
    pub fn product(&self) -> Result<Matrix<F>> {
        self.left.mul(&self.middle)?.mul(&self.right)
    }
}

pub fn to_deco4<F: Field>(d: &Decomposition<F>) -> Deco4<F> {
    let (m, n) = (d.m(), d.n());
    let field = d.c4.field().clone();
    let left = Matrix::from_blocks(
        &Matrix::identity(field.clone(), m),
        &Matrix::zeros(field.clone(), m, n),
        &d.l,
        &d.c1,
    )
    .expect("consistent block shapes");
    let middle = Matrix::from_blocks(
        &d.c4,
        &d.c3,
        &Matrix::zeros(field.clone(), n, m),
        &Matrix::identity(field, n),
    )
    .expect("consistent block shapes");
    Deco4 {
        left,
        middle,
        right: d.right_factor(),
    }
}

/// Two-factor form `P = left · right` where `left` has invertible upper-left
/// block `C4` and `right` has invertible lower-right block.
#[derive(Clone, Debug, PartialEq)]
pub struct Deco5<F: Field> {
    pub left: Matrix<F>,
    pub right: Matrix<F>,
}

impl<F: Field> Deco5<F> {
    pub fn product(&self) -> Result<Matrix<F>> {
        self.left.mul(&self.right)
    }
}

pub fn to_deco5<F: Field>(d: &Decomposition<F>) -> Deco5<F> {
    let d4 = to_deco4(d);
    Deco5 {
        left: d4.left.mul(&d4.middle).expect("square factors"),
        right: d4.right,
    }
}

/// Outcome of checking a decomposition against its source matrix. Failures
/// are recorded as flags, never raised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub shapes_ok: bool,
    pub product_ok: bool,
    pub c4_invertible: bool,
    pub c1_invertible: bool,
    pub rank_l: usize,
    pub rank_r: usize,
    pub rank_c3: usize,
    /// rank C3 = p3
    pub c3_rank_ok: bool,
    /// rank L >= n - p1
    pub l_bound_ok: bool,
    /// rank R >= m - p4
    pub r_bound_ok: bool,
    /// rank L + rank R >= p2
    pub p2_bound_ok: bool,
    /// rank L + rank R >= max(p2, m+n-p1-p4)
    pub sum_bound_ok: bool,
    pub valid: bool,
    pub optimal: bool,
}

impl VerificationReport {
    pub fn bounds_ok(&self) -> bool {
        self.c3_rank_ok && self.l_bound_ok && self.r_bound_ok && self.p2_bound_ok && self.sum_bound_ok
    }
}

pub fn verify_decomposition<F: Field>(bm: &BlockedMatrix<F>, d: &Decomposition<F>) -> VerificationReport {
    let profile = bm.rank_profile();
    let bounds = bm.bounds();
    let shapes_ok = d.m() == bm.m() && d.n() == bm.n() && d.shapes_ok();
    let rank_l = rank(&d.l);
    let rank_r = rank(&d.r);
    let rank_c3 = rank(&d.c3);
    let product_ok = shapes_ok && d.product().map(|p| p == *bm.matrix()).unwrap_or(false);
    let c4_invertible = is_invertible(&d.c4);
    let c1_invertible = is_invertible(&d.c1);
    let valid = shapes_ok && product_ok && c4_invertible && c1_invertible;
    let sum = rank_l + rank_r;
    VerificationReport {
        shapes_ok,
        product_ok,
        c4_invertible,
        c1_invertible,
        rank_l,
        rank_r,
        rank_c3,
        c3_rank_ok: rank_c3 == bounds.c3_rank,
        l_bound_ok: rank_l >= bounds.l_min,
        r_bound_ok: rank_r >= bounds.r_min,
        p2_bound_ok: sum >= profile.p2,
        sum_bound_ok: sum >= bounds.sum_min,
        valid,
        optimal: valid && sum == bounds.sum_min,
    }
}
