mod common;

use common::*;
use lul_core::report::DecompositionReport;
use lul_core::*;

#[test]
fn decomposition_report_round_trip() {
    let bm = fixture(CASE1);
    let d = decompose_optimal(&bm).unwrap();
    let rep = DecompositionReport::new(&bm, &d);
    assert_eq!((rep.rank_l, rep.rank_r, rep.optimal), (2, 1, true));
    assert_eq!(rep.to_decomposition(Gf2).unwrap(), d);
    assert_eq!(rep.to_decomposition(Rationals), Err(Error::FieldMismatch));
}

#[test]
fn rational_report_round_trip() {
    let p = Matrix::from_i64(Rationals, 3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 5]).unwrap();
    let bm = BlockedMatrix::new(p, 2).unwrap();
    let d = decompose_optimal(&bm).unwrap();
    let rep = DecompositionReport::new(&bm, &d);
    assert_eq!(rep.field, "q");
    assert_eq!(rep.to_decomposition(Rationals).unwrap(), d);
}

#[test]
fn malformed_report_rows() {
    let bm = fixture(CASE2);
    let mut rep = DecompositionReport::new(&bm, &decompose_optimal(&bm).unwrap());
    rep.c4.pop();
    assert!(rep.to_decomposition(Gf2).unwrap_err().is_parse());
}
