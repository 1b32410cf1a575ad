//! Exact `L · U · L` block factorizations with minimal off-diagonal ranks.
//!
//! An invertible `(m+n) x (m+n)` matrix `P = ((P4 P3) (P2 P1))` over an exact
//! field factors as
//!
//! ```text
//! P = ((I 0) (L I)) · ((C4 C3) (0 C1)) · ((I 0) (R I))
//! ```
//!
//! with `C4`, `C1` invertible. This crate finds `L`, `R` with the smallest
//! possible `rank L + rank R`, walks the whole Pareto frontier of
//! `(rank L, rank R)`, and turns the GF(2) case into streaming permutation
//! circuits (switch network, RAM banks, switch network).
//!
//! ```
//! use lul_core::{decompose_optimal, BlockedMatrix, Gf2, Matrix};
//!
//! let p = Matrix::from_i64(Gf2, 2, 2, &[0, 1, 1, 0]).unwrap();
//! let bm = BlockedMatrix::new(p, 1).unwrap();
//! let d = decompose_optimal(&bm).unwrap();
//! assert_eq!(d.rank_l + d.rank_r, 2);
//! assert_eq!(d.product().unwrap(), *bm.matrix());
//! ```

pub mod decompose;
pub mod error;
pub mod field;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod report;
pub mod slp;
pub mod subspace;
pub mod text;

pub use decompose::strategy::{Strategy, StrategyRegistry};
pub use decompose::{
    complete_decomposition, construct_l, decompose_optimal, decompose_pareto, lower_bounds, rank_exchange, to_deco4,
    to_deco5, verify_decomposition, BlockedMatrix, Bounds, Decomposition, ParetoTarget, RankProfile,
    VerificationReport,
};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Gf2, Gfp, Rationals};
pub use matrix::Matrix;
pub use subspace::SubspaceBasis;
