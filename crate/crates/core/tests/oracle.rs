mod common;

use common::*;
use lul_core::oracle::*;
use lul_core::{complete_decomposition, verify_decomposition, BlockedMatrix, Gf2, Matrix, ParetoTarget};

#[test]
fn case1_fixture_has_a_single_optimum() {
    let bm = fixture(CASE1);
    let res = min_offdiag_bruteforce(&bm).unwrap();
    assert_eq!(res.min_sum, 3);
    assert_eq!(res.pareto_set, vec![ParetoTarget::new(2, 1)]);
}

#[test]
fn case2_fixture_has_two_optima() {
    let bm = fixture(CASE2);
    let res = min_offdiag_bruteforce(&bm).unwrap();
    assert_eq!(res.min_sum, 3);
    assert_eq!(res.pareto_set, vec![ParetoTarget::new(1, 2), ParetoTarget::new(2, 1)]);
}

#[test]
fn witnesses_validate() {
    for bm in [fixture(CASE1), fixture(CASE2)] {
        let res = min_offdiag_bruteforce(&bm).unwrap();
        assert_eq!(res.witnesses.len(), res.pareto_set.len());
        for (w, t) in res.witnesses.iter().zip(&res.pareto_set) {
            let d = complete_decomposition(&bm, w).unwrap();
            let rep = verify_decomposition(&bm, &d);
            assert!(rep.optimal && rep.bounds_ok());
            assert_eq!((d.rank_l, d.rank_r), (t.l, t.r));
        }
    }
}

#[test]
fn gl4_count() {
    assert_eq!(enumerate_gl(4).unwrap().count(), 20160);
}

#[test]
fn witness_is_lowest_encoding() {
    // m = n = 1, P = ((1 1) (1 0)): admissible L are those with 0 - L*1 != 0,
    // i.e. L = 1 only.
    let bm = BlockedMatrix::new(Matrix::from_i64(Gf2, 2, 2, &[1, 1, 1, 0]).unwrap(), 1).unwrap();
    let res = min_offdiag_bruteforce(&bm).unwrap();
    assert_eq!(res.admissible, 1);
    assert_eq!(res.witnesses[0], Matrix::from_i64(Gf2, 1, 1, &[1]).unwrap());
    // the identity admits both L = 0 and L = 1; L = 0 is lower
    let id = BlockedMatrix::new(Matrix::identity(Gf2, 2), 1).unwrap();
    let res = min_offdiag_bruteforce(&id).unwrap();
    assert_eq!(res.admissible, 2);
    assert!(res.witnesses[0].is_zero());
}
