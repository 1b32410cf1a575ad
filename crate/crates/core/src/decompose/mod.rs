//! The `L · U · L` block factorization with minimal off-diagonal ranks.

mod blocked;
mod construct;
mod exchange;
mod factors;
pub mod strategy;

pub use blocked::{lower_bounds, BlockedMatrix, Bounds, ParetoTarget, RankProfile};
pub use construct::{construct_l, construct_l_case1, construct_l_case2};
pub use exchange::rank_exchange;
pub use factors::{
    complete_decomposition, to_deco4, to_deco5, verify_decomposition, Deco4, Deco5, Decomposition, VerificationReport,
};

use crate::error::Result;
use crate::field::Field;

/// A factorization with `rank L = n - p1` and
/// `rank L + rank R = max(p2, m + n - p1 - p4)`.
pub fn decompose_optimal<F: Field>(bm: &BlockedMatrix<F>) -> Result<Decomposition<F>> {
    complete_decomposition(bm, &construct_l(bm)?)
}

/// A factorization realizing exactly the frontier point `target`, reached
/// from the optimal construction by `target.l - (n - p1)` rank exchanges.
pub fn decompose_pareto<F: Field>(bm: &BlockedMatrix<F>, target: ParetoTarget) -> Result<Decomposition<F>> {
    let bounds = bm.bounds();
    target.check(&bounds)?;
    let mut l = construct_l(bm)?;
    for _ in bounds.l_min..target.l {
        l = rank_exchange(bm, &l)?;
    }
    complete_decomposition(bm, &l)
}
