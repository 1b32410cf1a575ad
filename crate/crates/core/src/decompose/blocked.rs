use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{is_invertible, rank};
use crate::matrix::Matrix;

/// An invertible `(m+n) x (m+n)` matrix split as `((P4 P3) (P2 P1))` with
/// `P4` of size `m x m`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockedMatrix<F: Field> {
    m: usize,
    n: usize,
    p: Matrix<F>,
    p4: Matrix<F>,
    p3: Matrix<F>,
    p2: Matrix<F>,
    p1: Matrix<F>,
}

impl<F: Field> BlockedMatrix<F> {
    pub fn new(p: Matrix<F>, m: usize) -> Result<Self> {
        if !p.is_square() {
            return Err(Error::NotSquare(p.rows(), p.cols()));
        }
        let size = p.rows();
        if size == 0 {
            return Err(Error::InvalidSplit("matrix must have m + n >= 1".into()));
        }
        if m > size {
            return Err(Error::InvalidSplit(format!("m = {m} exceeds size {size}")));
        }
        if !is_invertible(&p) {
            return Err(Error::SingularMatrix);
        }
        let n = size - m;
        Ok(BlockedMatrix {
            m,
            n,
            p4: p.block(0, 0, m, m),
            p3: p.block(0, m, m, n),
            p2: p.block(m, 0, n, m),
            p1: p.block(m, m, n, n),
            p,
        })
    }

    pub fn from_blocks(p4: &Matrix<F>, p3: &Matrix<F>, p2: &Matrix<F>, p1: &Matrix<F>) -> Result<Self> {
        Self::new(Matrix::from_blocks(p4, p3, p2, p1)?, p4.rows())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &F {
        self.p.field()
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.p
    }

    pub fn p1(&self) -> &Matrix<F> {
        &self.p1
    }

    pub fn p2(&self) -> &Matrix<F> {
        &self.p2
    }

    pub fn p3(&self) -> &Matrix<F> {
        &self.p3
    }

    pub fn p4(&self) -> &Matrix<F> {
        &self.p4
    }

    pub fn rank_profile(&self) -> RankProfile {
        RankProfile {
            p1: rank(&self.p1),
            p2: rank(&self.p2),
            p3: rank(&self.p3),
            p4: rank(&self.p4),
        }
    }

    pub fn bounds(&self) -> Bounds {
        lower_bounds(&self.rank_profile(), self.m, self.n)
    }
}

/// Ranks of the four blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankProfile {
    pub p1: usize,
    pub p2: usize,
    pub p3: usize,
    pub p4: usize,
}

impl RankProfile {
    /// `m + n - p1 - p4`, the sum of the two individual lower bounds.
    pub fn threshold(&self, m: usize, n: usize) -> i64 {
        (m + n) as i64 - self.p1 as i64 - self.p4 as i64
    }

    /// Whether the individual bounds dominate, i.e. `p2 <= m + n - p1 - p4`.
    pub fn is_case1(&self, m: usize, n: usize) -> bool {
        self.p2 as i64 <= self.threshold(m, n)
    }
}

/// Lower bounds on the off-diagonal ranks of any factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    /// Rank of the upper-right block of the middle factor; fixed at `p3`.
    pub c3_rank: usize,
    /// `n - p1`
    pub l_min: usize,
    /// `m - p4`
    pub r_min: usize,
    /// `max(p2, m + n - p1 - p4)`
    pub sum_min: usize,
}

pub fn lower_bounds(profile: &RankProfile, m: usize, n: usize) -> Bounds {
    let l_min = n - profile.p1;
    let r_min = m - profile.p4;
    Bounds {
        c3_rank: profile.p3,
        l_min,
        r_min,
        sum_min: profile.p2.max(l_min + r_min),
    }
}

/// A point on the Pareto frontier of achievable `(rank L, rank R)` pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParetoTarget {
    pub l: usize,
    pub r: usize,
}

impl ParetoTarget {
    pub fn new(l: usize, r: usize) -> Self {
        ParetoTarget { l, r }
    }

    /// Checks the target against the bounds, naming the violated one.
    pub fn check(&self, bounds: &Bounds) -> Result<()> {
        let fail = |reason: String| {
            Err(Error::InfeasibleTarget {
                l: self.l,
                r: self.r,
                reason,
            })
        };
        if self.l < bounds.l_min {
            return fail(format!("rank L >= n - p1 = {} is violated", bounds.l_min));
        }
        if self.r < bounds.r_min {
            return fail(format!("rank R >= m - p4 = {} is violated", bounds.r_min));
        }
        if self.l + self.r != bounds.sum_min {
            return fail(format!(
                "rank L + rank R must equal max(p2, m+n-p1-p4) = {} on the frontier",
                bounds.sum_min
            ));
        }
        Ok(())
    }

    /// All frontier points, ordered by increasing `l`.
    pub fn frontier(bounds: &Bounds) -> Vec<ParetoTarget> {
        (bounds.l_min..=bounds.sum_min.saturating_sub(bounds.r_min))
            .map(|l| ParetoTarget::new(l, bounds.sum_min - l))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf2;

    #[test]
    fn rejects_singular_and_bad_split() {
        let z = Matrix::zeros(Gf2, 3, 3);
        assert_eq!(BlockedMatrix::new(z, 1), Err(Error::SingularMatrix));
        let i = Matrix::identity(Gf2, 3);
        assert!(matches!(BlockedMatrix::new(i.clone(), 4), Err(Error::InvalidSplit(_))));
        assert!(BlockedMatrix::new(i.clone(), 0).is_ok());
        assert!(BlockedMatrix::new(i, 3).is_ok());
    }

    #[test]
    fn antidiagonal_bound_is_2n() {
        let profile = RankProfile {
            p1: 0,
            p2: 3,
            p3: 3,
            p4: 0,
        };
        let b = lower_bounds(&profile, 3, 3);
        assert_eq!((b.l_min, b.r_min, b.sum_min), (3, 3, 6));
        assert_eq!(ParetoTarget::frontier(&b), vec![ParetoTarget::new(3, 3)]);
    }

    #[test]
    fn invertible_p1_needs_no_left_rank() {
        let profile = RankProfile {
            p1: 2,
            p2: 1,
            p3: 1,
            p4: 1,
        };
        assert_eq!(lower_bounds(&profile, 2, 2).l_min, 0);
    }

    #[test]
    fn frontier_and_checks() {
        let b = Bounds {
            c3_rank: 1,
            l_min: 1,
            r_min: 1,
            sum_min: 3,
        };
        assert_eq!(
            ParetoTarget::frontier(&b),
            vec![ParetoTarget::new(1, 2), ParetoTarget::new(2, 1)]
        );
        assert!(ParetoTarget::new(2, 1).check(&b).is_ok());
        assert!(matches!(
            ParetoTarget::new(3, 1).check(&b),
            Err(Error::InfeasibleTarget { .. })
        ));
        assert!(ParetoTarget::new(0, 3).check(&b).is_err());
    }
}
