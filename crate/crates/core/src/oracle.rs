//! Brute-force ground truth over GF(2).
//!
//! Nothing here calls the constructive routines of [`crate::decompose`]. The
//! exhaustive search works on bit-packed rows with its own elimination, and
//! relies only on the fact that a factorization exists exactly for those `L`
//! with `P1 - L P3` invertible, in which case `rank R = rank (P2 - L P4)`.

use serde::Serialize;

use crate::decompose::{BlockedMatrix, ParetoTarget};
use crate::error::{Error, Result};
use crate::field::Gf2;
use crate::linalg::rank;
use crate::matrix::Matrix;
use crate::subspace::SubspaceBasis;

/// Largest `n * m` for which all candidate `L` are enumerated.
pub const MAX_CANDIDATE_BITS: usize = 20;

/// Largest size for [`enumerate_gl`].
pub const MAX_GL_SIZE: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleResult {
    /// Smallest `rank L + rank R` over all admissible `L`.
    pub min_sum: usize,
    /// Pareto-minimal `(rank L, rank R)` pairs, ordered by `l`.
    pub pareto_set: Vec<ParetoTarget>,
    /// For each Pareto pair, the admissible `L` with the lowest encoding.
    #[serde(skip)]
    pub witnesses: Vec<Matrix<Gf2>>,
    /// Number of admissible `L` (those with `P1 - L P3` invertible).
    pub admissible: u64,
}

fn row_masks(m: &Matrix<Gf2>) -> Vec<u32> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .fold(0u32, |acc, (j, &b)| acc | ((b as u32) << j))
        })
        .collect()
}

fn rank_of_rows(rows: &mut [u32]) -> usize {
    let mut r = 0;
    for i in 0..rows.len() {
        let v = rows[i];
        if v == 0 {
            continue;
        }
        let low = v & v.wrapping_neg();
        for w in rows[i + 1..].iter_mut() {
            if *w & low != 0 {
                *w ^= v;
            }
        }
        r += 1;
    }
    r
}

/// `rows(A) · B` for bit-packed rows, `B` given by its row masks.
fn mul_rows(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter()
        .map(|&row| {
            b.iter()
                .enumerate()
                .filter(|(j, _)| row >> j & 1 == 1)
                .fold(0, |acc, (_, &br)| acc ^ br)
        })
        .collect()
}

/// Decodes a candidate: entry `(i, j)` of the `n x m` matrix is bit
/// `n*m - 1 - (i*m + j)` of `code`, so ascending codes are row-major
/// lexicographic order.
fn decode(code: u64, n: usize, m: usize) -> Vec<u32> {
    (0..n)
        .map(|i| {
            (0..m).fold(0u32, |acc, j| {
                let bit = (code >> (n * m - 1 - (i * m + j))) & 1;
                acc | ((bit as u32) << j)
            })
        })
        .collect()
}

fn rows_to_matrix(rows: &[u32], cols: usize) -> Matrix<Gf2> {
    Matrix::from_fn(Gf2, rows.len(), cols, |i, j| rows[i] >> j & 1 == 1)
}

/// Exhaustive minimization of the off-diagonal ranks over every `L ∈ GF(2)^{n×m}`.
pub fn min_offdiag_bruteforce(bm: &BlockedMatrix<Gf2>) -> Result<OracleResult> {
    let (m, n) = (bm.m(), bm.n());
    if n * m > MAX_CANDIDATE_BITS {
        return Err(Error::TooLarge(format!(
            "{n}x{m} candidate space exceeds 2^{MAX_CANDIDATE_BITS}"
        )));
    }
    let (p1, p2, p3, p4) = (
        row_masks(bm.p1()),
        row_masks(bm.p2()),
        row_masks(bm.p3()),
        row_masks(bm.p4()),
    );
    // best[(l, r)] = lowest code achieving it
    let mut best: std::collections::BTreeMap<(usize, usize), u64> = Default::default();
    let mut admissible = 0u64;
    for code in 0..1u64 << (n * m) {
        let l = decode(code, n, m);
        let mut core: Vec<u32> = mul_rows(&l, &p3).iter().zip(&p1).map(|(a, b)| a ^ b).collect();
        if rank_of_rows(&mut core) != n {
            continue;
        }
        admissible += 1;
        let mut resid: Vec<u32> = mul_rows(&l, &p4).iter().zip(&p2).map(|(a, b)| a ^ b).collect();
        let pair = (rank_of_rows(&mut l.clone()), rank_of_rows(&mut resid));
        best.entry(pair).or_insert(code);
    }
    let pairs: Vec<(usize, usize)> = best.keys().copied().collect();
    let pareto: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|&(l, r)| !pairs.iter().any(|&(l2, r2)| l2 <= l && r2 <= r && (l2, r2) != (l, r)))
        .collect();
    let min_sum = pareto.iter().map(|(l, r)| l + r).min().expect("P itself is invertible");
    Ok(OracleResult {
        min_sum,
        witnesses: pareto
            .iter()
            .map(|p| rows_to_matrix(&decode(best[p], n, m), m))
            .collect(),
        pareto_set: pareto.into_iter().map(|(l, r)| ParetoTarget::new(l, r)).collect(),
        admissible,
    })
}

/// Order of `GL_k(GF(2))`: `∏ (2^k - 2^i)`.
pub fn gl_order(k: usize) -> u64 {
    (0..k).map(|i| (1u64 << k) - (1u64 << i)).product()
}

/// Every invertible `k x k` matrix over GF(2) exactly once, in ascending
/// row-major encoding (entry `(0,0)` most significant).
pub fn enumerate_gl(k: usize) -> Result<GlIter> {
    if k > MAX_GL_SIZE {
        return Err(Error::TooLarge(format!("GL_{k}(F2) has {} elements", gl_order(k))));
    }
    Ok(GlIter {
        k,
        rows: Vec::new(),
        started: false,
    })
}

pub struct GlIter {
    k: usize,
    rows: Vec<u32>,
    started: bool,
}

fn independent(prefix: &[u32], v: u32) -> bool {
    let mut all = prefix.to_vec();
    all.push(v);
    rank_of_rows(&mut all) == all.len()
}

impl GlIter {
    fn next_valid(&self, level: usize, from: u32) -> Option<u32> {
        (from..1u32 << self.k).find(|&v| independent(&self.rows[..level], v))
    }

    fn fill_from(&mut self, level: usize) {
        for lv in level..self.k {
            let v = self.next_valid(lv, 1).expect("a partial basis always extends");
            self.rows.push(v);
        }
    }

    // Column j sits at bit k - 1 - j, so numeric order of a row mask is
    // lexicographic order of the row.
    fn to_matrix(&self) -> Matrix<Gf2> {
        let k = self.k;
        Matrix::from_fn(Gf2, k, k, |i, j| self.rows[i] >> (k - 1 - j) & 1 == 1)
    }
}

impl Iterator for GlIter {
    type Item = Matrix<Gf2>;

    fn next(&mut self) -> Option<Matrix<Gf2>> {
        if !self.started {
            self.started = true;
            self.fill_from(0);
            return Some(self.to_matrix());
        }
        loop {
            let level = self.rows.len().checked_sub(1)?;
            let cur = self.rows.pop().expect("nonempty");
            if let Some(v) = self.next_valid(level, cur + 1) {
                self.rows.push(v);
                self.fill_from(level + 1);
                return Some(self.to_matrix());
            }
        }
    }
}

/// Membership by rank comparison: `v ∈ ⟨S⟩` iff appending `v` keeps the rank.
pub fn subspace_membership_oracle(s: &SubspaceBasis<Gf2>, v: &[bool]) -> bool {
    let col = Matrix::from_fn(Gf2, v.len(), 1, |i, _| v[i]);
    let basis = s.basis();
    let extended = Matrix::hcat(&[basis, &col]).expect("same ambient dimension");
    rank(&extended) == rank(basis)
}

/// All `2^dim` vectors of `GF(2)^dim`, most significant entry first.
pub fn all_vectors(dim: usize) -> impl Iterator<Item = Vec<bool>> {
    assert!(dim < 32, "vector space too large to enumerate");
    (0u32..1 << dim).map(move |x| (0..dim).map(|i| x >> (dim - 1 - i) & 1 == 1).collect())
}

/// Every vector in the column span of `m`, by enumerating all combinations.
pub fn enumerate_span(m: &Matrix<Gf2>) -> std::collections::BTreeSet<Vec<bool>> {
    let cols: Vec<Vec<bool>> = m.columns().collect();
    assert!(cols.len() < 32, "span too large to enumerate");
    (0u32..1 << cols.len())
        .map(|sel| {
            let mut v = vec![false; m.rows()];
            for (j, c) in cols.iter().enumerate() {
                if sel >> j & 1 == 1 {
                    for (x, y) in v.iter_mut().zip(c) {
                        *x ^= y;
                    }
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_counts() {
        assert_eq!(enumerate_gl(1).unwrap().count(), 1);
        assert_eq!(enumerate_gl(2).unwrap().count(), 6);
        assert_eq!(enumerate_gl(3).unwrap().count() as u64, gl_order(3));
        assert_eq!(gl_order(4), 20160);
        assert!(matches!(enumerate_gl(6), Err(Error::TooLarge(_))));
    }

    #[test]
    fn gl_enumeration_is_ascending_and_invertible() {
        let all: Vec<Matrix<Gf2>> = enumerate_gl(3).unwrap().collect();
        assert_eq!(
            all[0],
            Matrix::from_i64(Gf2, 3, 3, &[0, 0, 1, 0, 1, 0, 1, 0, 0]).unwrap()
        );
        let code = |m: &Matrix<Gf2>| (0..9).fold(0u32, |acc, t| acc << 1 | *m.get(t / 3, t % 3) as u32);
        assert!(all.windows(2).all(|w| code(&w[0]) < code(&w[1])));
        assert!(all.iter().all(crate::linalg::is_invertible));
    }

    #[test]
    fn antidiagonal_1x1() {
        let p = Matrix::from_i64(Gf2, 2, 2, &[0, 1, 1, 0]).unwrap();
        let res = min_offdiag_bruteforce(&BlockedMatrix::new(p, 1).unwrap()).unwrap();
        assert_eq!(res.min_sum, 2);
        assert_eq!(res.pareto_set, vec![ParetoTarget::new(1, 1)]);
    }

    #[test]
    fn candidate_cap() {
        let p = Matrix::identity(Gf2, 10);
        let bm = BlockedMatrix::new(p, 5).unwrap();
        assert!(matches!(min_offdiag_bruteforce(&bm), Err(Error::TooLarge(_))));
    }

    #[test]
    fn membership_basics() {
        let e2 = SubspaceBasis::new(Matrix::from_i64(Gf2, 2, 1, &[0, 1]).unwrap()).unwrap();
        assert!(subspace_membership_oracle(&e2, &[false, false]));
        assert!(!subspace_membership_oracle(&e2, &[true, false]));
        assert_eq!(enumerate_span(e2.basis()).len(), 2);
    }
}
