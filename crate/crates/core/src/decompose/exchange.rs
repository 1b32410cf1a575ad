use super::blocked::BlockedMatrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{inverse, rank};
use crate::matrix::Matrix;
use crate::subspace::{complement_within, double_complement, kernel_basis, SubspaceBasis};

/// Trades one unit of `rank R` for one unit of `rank L` along the frontier.
///
/// Given an admissible `L` with `rank L + rank (P2 - L P4) = p2` and
/// `rank (P2 - L P4) > m - p4`, returns `L + L'` where `L'` has rank one,
/// vanishes on `P4 ker(P2 - L P4)` and sends `P4 z` to `(P2 - L P4) z` for
/// a suitable `z`.
pub fn rank_exchange<F: Field>(bm: &BlockedMatrix<F>, l: &Matrix<F>) -> Result<Matrix<F>> {
    let (m, field) = (bm.m(), bm.field().clone());
    let profile = bm.rank_profile();
    let r_min = m - profile.p4;

    let residual = bm.p2().sub(&l.mul(bm.p4())?)?;
    let r = rank(&residual);
    let core = bm.p1().sub(&l.mul(bm.p3())?)?;
    let core_inv = inverse(&core).map_err(|_| Error::SingularCore)?;
    if r <= r_min {
        return Err(Error::AtBound(r_min));
    }
    if rank(l) + r != profile.p2 {
        return Err(Error::Precondition(format!(
            "rank L + rank(P2 - L P4) = {} must equal p2 = {}",
            rank(l) + r,
            profile.p2
        )));
    }

    let k = kernel_basis(&residual);
    let c = bm.p4().sub(&bm.p3().mul(&core_inv.mul(&residual)?)?)?;
    let p4k = bm.p4().mul(k.basis())?;

    let avoid_a = SubspaceBasis::span(&Matrix::hcat(&[k.basis(), kernel_basis(bm.p4()).basis()])?);
    let avoid_b = SubspaceBasis::span(&inverse(&c)?.mul(&p4k)?);
    let zs = double_complement(&avoid_a, &avoid_b, &SubspaceBasis::whole(field.clone(), m))?;
    let z = zs.basis().leading_columns(1);
    debug_assert_eq!(z.cols(), 1, "rank above bound leaves room for z");

    let p4z = bm.p4().mul(&z)?;
    let cz = c.mul(&z)?;
    let whole = SubspaceBasis::whole(field.clone(), m);
    let spanned = SubspaceBasis::span(&Matrix::hcat(&[&p4k, &p4z])?);
    let rest = if spanned.contains_vector(&cz.column(0)) {
        complement_within(&whole, &spanned)?.into_matrix()
    } else {
        let a = cz.sub(&p4z)?;
        let comp = complement_within(&whole, &SubspaceBasis::span(&Matrix::hcat(&[&p4k, &p4z, &a])?))?;
        Matrix::hcat(&[comp.basis(), &a])?
    };

    let lp_r = Matrix::hcat(&[&p4z, &p4k, &rest])?;
    let lp_l = Matrix::hcat(&[&residual.mul(&z)?, &Matrix::zeros(field, bm.n(), m - 1)])?;
    l.add(&lp_l.mul(&inverse(&lp_r)?)?)
}
