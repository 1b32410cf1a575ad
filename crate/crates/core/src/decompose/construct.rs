//! Construction of an optimal left factor `L` with `rank L = n - p1`.
//!
//! Both cases build `L` as a linear map assembled on a direct-sum
//! decomposition of `F^m`: `L · L_R = L_L`, where the columns of `L_R` form a
//! basis of `F^m` and `L_L` lists their prescribed images.

use super::blocked::BlockedMatrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{generalized_inverse, inverse};
use crate::matrix::Matrix;
use crate::subspace::{complement_within, double_complement, intersect, kernel_basis, SubspaceBasis};

/// Subspaces shared by both constructions.
struct Shared<F: Field> {
    ker_p4: SubspaceBasis<F>,
    ker_p2: SubspaceBasis<F>,
    /// `P3 (ker P1)`
    p3_ker_p1: SubspaceBasis<F>,
    /// `P4 (ker P2)`, as raw images of the `ker_p2` basis.
    p4_ker_p2: Matrix<F>,
    /// `P2 (ker P4)`
    p2_ker_p4: SubspaceBasis<F>,
    im_p2: SubspaceBasis<F>,
    im_p1: SubspaceBasis<F>,
    p4_ginv: Matrix<F>,
    p2_ginv: Matrix<F>,
    /// `P3 (ker P1) ∩ im P4`
    x2: SubspaceBasis<F>,
    /// complement of `P4 (ker P2) ⊕ X2` in `im P4`
    x3: SubspaceBasis<F>,
}

impl<F: Field> Shared<F> {
    fn new(bm: &BlockedMatrix<F>) -> Result<Self> {
        let (p1, p2, p3, p4) = (bm.p1(), bm.p2(), bm.p3(), bm.p4());
        let ker_p4 = kernel_basis(p4);
        let ker_p2 = kernel_basis(p2);
        let ker_p1 = kernel_basis(p1);
        let p3_ker_p1 = ker_p1.image(p3)?;
        let p4_ker_p2 = p4.mul(ker_p2.basis())?;
        let p2_ker_p4 = ker_p4.image(p2)?;
        let im_p4 = SubspaceBasis::span(p4);
        let x2 = intersect(&p3_ker_p1, &im_p4)?;
        let x3 = complement_within(&im_p4, &SubspaceBasis::span(&Matrix::hcat(&[&p4_ker_p2, x2.basis()])?))?;
        Ok(Shared {
            ker_p4,
            ker_p2,
            p3_ker_p1,
            p4_ker_p2,
            p2_ker_p4,
            im_p2: SubspaceBasis::span(p2),
            im_p1: SubspaceBasis::span(p1),
            p4_ginv: generalized_inverse(p4),
            p2_ginv: generalized_inverse(p2),
            x2,
            x3,
        })
    }

    /// Basis of `P4⁻¹(X2 ⊕ X3) ∩ P2⁻¹(image)`, on which `P4 v ↦ P2 v` is an
    /// isomorphism from `X2 ⊕ X3` (or part of it) onto `image`.
    fn domain(&self, image: &SubspaceBasis<F>) -> Result<SubspaceBasis<F>> {
        let t = Matrix::hcat(&[self.x2.basis(), self.x3.basis()])?;
        let pre_t = Matrix::hcat(&[self.ker_p4.basis(), &self.p4_ginv.mul(&t)?])?;
        let pre_v = Matrix::hcat(&[self.ker_p2.basis(), &self.p2_ginv.mul(image.basis())?])?;
        intersect(&SubspaceBasis::span(&pre_t), &SubspaceBasis::span(&pre_v))
    }

    /// `P4⁻¹(X2)`
    fn preimage_x2(&self) -> Result<SubspaceBasis<F>> {
        Ok(SubspaceBasis::span(&Matrix::hcat(&[
            self.ker_p4.basis(),
            &self.p4_ginv.mul(self.x2.basis())?,
        ])?))
    }
}

fn assemble<F: Field>(bm: &BlockedMatrix<F>, l_right: &[&Matrix<F>], l_left: &[&Matrix<F>]) -> Result<Matrix<F>> {
    let (m, n) = (bm.m(), bm.n());
    let l_r = Matrix::hcat(l_right)?;
    let mapped: usize = l_left.iter().map(|x| x.cols()).sum();
    if l_r.shape() != (m, m) || mapped > m {
        return Err(Error::Precondition(format!(
            "domain decomposition has {} columns, expected {m}",
            l_r.cols()
        )));
    }
    let pad = Matrix::zeros(bm.field().clone(), n, m - mapped);
    let mut parts = l_left.to_vec();
    parts.push(&pad);
    let l_l = Matrix::hcat(&parts)?;
    l_l.mul(&inverse(&l_r)?)
}

fn case_mismatch<F: Field>(bm: &BlockedMatrix<F>) -> Error {
    let profile = bm.rank_profile();
    Error::CaseMismatch {
        p2: profile.p2,
        threshold: profile.threshold(bm.m(), bm.n()),
    }
}

/// Optimal `L` when `p2 <= m + n - p1 - p4`: `rank L = n - p1`,
/// `P1 - L P3` invertible and `rank (P2 - L P4) = m - p4`.
pub fn construct_l_case1<F: Field>(bm: &BlockedMatrix<F>) -> Result<Matrix<F>> {
    if !bm.rank_profile().is_case1(bm.m(), bm.n()) {
        return Err(case_mismatch(bm));
    }
    if bm.m() == 0 || bm.n() == 0 {
        return Ok(Matrix::zeros(bm.field().clone(), bm.n(), bm.m()));
    }
    let s = Shared::new(bm)?;
    let field = bm.field().clone();
    let (m, n) = (bm.m(), bm.n());

    // Image: Y1 complements P2(ker P4) in im P2 while avoiding im P1; Y
    // extends it to a complement of im P1 in F^n.
    let y1 = double_complement(&s.p2_ker_p4, &intersect(&s.im_p1, &s.im_p2)?, &s.im_p2)?;
    let y_extra = complement_within(&SubspaceBasis::whole(field.clone(), n), &y1.sum(&s.im_p1)?)?;
    let y = SubspaceBasis::new(Matrix::hcat(&[y1.basis(), y_extra.basis()])?)?;

    // Domain: F^m = X1 ⊕ X2 ⊕ X3 ⊕ P4(ker P2) ⊕ X4.
    let x1 = complement_within(&s.p3_ker_p1, &s.x2)?;
    let x4 = complement_within(
        &SubspaceBasis::whole(field, m),
        &SubspaceBasis::span(&Matrix::hcat(&[bm.p4(), s.p3_ker_p1.basis()])?),
    )?;

    let f = s.domain(&y1)?;
    let f_x2 = intersect(&s.preimage_x2()?, &f)?;
    let y2 = complement_within(&y, &f_x2.image(bm.p2())?)?;

    let p4f = bm.p4().mul(f.basis())?;
    let p2f = bm.p2().mul(f.basis())?;
    assemble(bm, &[&p4f, x1.basis(), &s.p4_ker_p2, x4.basis()], &[&p2f, y2.basis()])
}

/// `L` when `p2 > m + n - p1 - p4`: `rank L = n - p1`, `P1 - L P3`
/// invertible and `rank (P2 - L P4) = p1 + p2 - n`.
pub fn construct_l_case2<F: Field>(bm: &BlockedMatrix<F>) -> Result<Matrix<F>> {
    if bm.rank_profile().is_case1(bm.m(), bm.n()) {
        return Err(case_mismatch(bm));
    }
    let s = Shared::new(bm)?;
    let field = bm.field().clone();
    let m = bm.m();

    // Image: Y complements im P1 ∩ im P2 in im P2 and avoids P2(ker P4).
    let y = double_complement(&intersect(&s.im_p1, &s.im_p2)?, &s.p2_ker_p4, &s.im_p2)?;

    let f = s.domain(&y)?;
    let p4f = bm.p4().mul(f.basis())?;
    let p2f = bm.p2().mul(f.basis())?;

    let t_x2 = intersect(&SubspaceBasis::span(&p4f), &s.x2)?;
    let x1 = complement_within(&s.p3_ker_p1, &t_x2)?;
    let x4 = complement_within(
        &SubspaceBasis::whole(field, m),
        &SubspaceBasis::span(&Matrix::hcat(&[x1.basis(), &p4f, &s.p4_ker_p2])?),
    )?;
    let f_x2 = intersect(&f, &s.preimage_x2()?)?;
    let y2 = complement_within(&y, &f_x2.image(bm.p2())?)?;

    assemble(bm, &[&p4f, x1.basis(), &s.p4_ker_p2, x4.basis()], &[&p2f, y2.basis()])
}

/// Dispatches on the rank profile; the boundary `p2 = m + n - p1 - p4`
/// goes to the first case.
pub fn construct_l<F: Field>(bm: &BlockedMatrix<F>) -> Result<Matrix<F>> {
    if bm.rank_profile().is_case1(bm.m(), bm.n()) {
        construct_l_case1(bm)
    } else {
        construct_l_case2(bm)
    }
}
