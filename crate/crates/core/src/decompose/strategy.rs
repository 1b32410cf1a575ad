//! Named strategies for choosing the left factor `L`, selectable at runtime.
//!
//! Every factorization is determined by an admissible `L` (one with
//! `P1 - L P3` invertible), so a strategy only has to pick `L`; the rest
//! follows from [`complete_decomposition`].

use std::collections::BTreeMap;

use super::{complete_decomposition, construct_l, rank_exchange, BlockedMatrix, Decomposition};
use crate::error::{Error, Result};
use crate::field::{Field, Gf2};
use crate::linalg::{inverse, is_invertible};
use crate::matrix::Matrix;
use crate::oracle::min_offdiag_bruteforce;

pub trait Strategy<F: Field>: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn left_factor(&self, bm: &BlockedMatrix<F>) -> Result<Matrix<F>>;

    fn decompose(&self, bm: &BlockedMatrix<F>) -> Result<Decomposition<F>> {
        complete_decomposition(bm, &self.left_factor(bm)?)
    }
}

/// Minimal rank sum with the smallest possible `rank L`.
pub struct MinLeft;

impl<F: Field> Strategy<F> for MinLeft {
    fn name(&self) -> &'static str {
        "optimal"
    }
    fn description(&self) -> &'static str {
        "minimal rank L + rank R, with rank L = n - p1"
    }
    fn left_factor(&self, bm: &BlockedMatrix<F>) -> Result<Matrix<F>> {
        construct_l(bm)
    }
}

/// Minimal rank sum with the smallest possible `rank R`: the optimal
/// construction followed by rank exchanges until `rank R = m - p4`.
pub struct MinRight;

impl<F: Field> Strategy<F> for MinRight {
    fn name(&self) -> &'static str {
        "min-right"
    }
    fn description(&self) -> &'static str {
        "minimal rank L + rank R, with rank R as small as possible"
    }
    fn left_factor(&self, bm: &BlockedMatrix<F>) -> Result<Matrix<F>> {
        let mut l = construct_l(bm)?;
        loop {
            match rank_exchange(bm, &l) {
                Ok(next) => l = next,
                Err(Error::AtBound(_)) => return Ok(l),
                Err(e) => return Err(e),
            }
        }
    }
}

/// Classical block LU: `L = P2 P4⁻¹`, `R = 0`. Needs `P4` invertible.
pub struct BlockLu;

impl<F: Field> Strategy<F> for BlockLu {
    fn name(&self) -> &'static str {
        "block-lu"
    }
    fn description(&self) -> &'static str {
        "block LU with Schur complement of P4 (R = 0), needs P4 invertible"
    }
    fn left_factor(&self, bm: &BlockedMatrix<F>) -> Result<Matrix<F>> {
        let p4_inv = inverse(bm.p4()).map_err(|_| Error::Precondition("block LU needs an invertible P4".into()))?;
        bm.p2().mul(&p4_inv)
    }
}

/// Block UL: `L = 0`, `R = P1⁻¹ P2`. Needs `P1` invertible.
pub struct BlockUl;

impl<F: Field> Strategy<F> for BlockUl {
    fn name(&self) -> &'static str {
        "block-ul"
    }
    fn description(&self) -> &'static str {
        "upper block-triangular times lower unitriangular (L = 0), needs P1 invertible"
    }
    fn left_factor(&self, bm: &BlockedMatrix<F>) -> Result<Matrix<F>> {
        if !is_invertible(bm.p1()) {
            return Err(Error::Precondition("block UL needs an invertible P1".into()));
        }
        Ok(Matrix::zeros(bm.field().clone(), bm.n(), bm.m()))
    }
}

/// Exhaustive search over GF(2); returns the lowest-encoded witness of the
/// minimal-sum Pareto pair with smallest `rank L`.
pub struct BruteForce;

impl Strategy<Gf2> for BruteForce {
    fn name(&self) -> &'static str {
        "brute-force"
    }
    fn description(&self) -> &'static str {
        "exhaustive search over all L (GF(2), n*m <= 20)"
    }
    fn left_factor(&self, bm: &BlockedMatrix<Gf2>) -> Result<Matrix<Gf2>> {
        let res = min_offdiag_bruteforce(bm)?;
        let idx = res
            .pareto_set
            .iter()
            .position(|t| t.l + t.r == res.min_sum)
            .expect("minimum is attained on the frontier");
        Ok(res.witnesses[idx].clone())
    }
}

pub struct StrategyRegistry<F: Field> {
    entries: BTreeMap<&'static str, Box<dyn Strategy<F>>>,
}

impl<F: Field> Default for StrategyRegistry<F> {
    fn default() -> Self {
        StrategyRegistry {
            entries: BTreeMap::new(),
        }
    }
}

impl<F: Field> StrategyRegistry<F> {
    /// Registry holding the field-generic strategies.
    pub fn with_builtins() -> Self {
        let mut reg = Self::default();
        reg.register(Box::new(MinLeft));
        reg.register(Box::new(MinRight));
        reg.register(Box::new(BlockLu));
        reg.register(Box::new(BlockUl));
        reg
    }

    /// Adds a strategy, replacing any previous one with the same name.
    pub fn register(&mut self, strategy: Box<dyn Strategy<F>>) {
        self.entries.insert(strategy.name(), strategy);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Strategy<F>> {
        self.entries
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Strategy<F>> + '_ {
        self.entries.values().map(|s| s.as_ref())
    }
}

impl StrategyRegistry<Gf2> {
    /// The generic strategies plus the GF(2) brute force.
    pub fn for_gf2() -> Self {
        let mut reg = Self::with_builtins();
        reg.register(Box::new(BruteForce));
        reg
    }
}
