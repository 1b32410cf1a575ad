mod common;

use common::bits;
use lul_core::linalg::*;
use lul_core::subspace::kernel_basis;
use lul_core::{Field, Gf2, Gfp, Matrix, Rationals};
use proptest::prelude::*;

fn gf2_matrix(max: usize) -> impl Strategy<Value = Matrix<Gf2>> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(any::<bool>(), r * c).prop_map(move |v| Matrix::new(Gf2, r, c, v).unwrap())
    })
}

fn int_matrix<F: Field>(field: F, max: usize, range: i64) -> impl Strategy<Value = Matrix<F>> {
    (0..=max, 0..=max).prop_flat_map(move |(r, c)| {
        let field = field.clone();
        proptest::collection::vec(-range..=range, r * c)
            .prop_map(move |v| Matrix::from_i64(field.clone(), r, c, &v).unwrap())
    })
}

fn check_basics<F: Field>(m: &Matrix<F>) {
    let k = kernel_basis(m);
    assert_eq!(rank(m) + k.dim(), m.cols(), "rank-nullity");
    assert!(m.mul(k.basis()).unwrap().is_zero());
    let g = generalized_inverse(m);
    assert_eq!(g.shape(), (m.cols(), m.rows()));
    assert_eq!(m.mul(&g).unwrap().mul(m).unwrap(), *m, "M G M = M");
    let e = reduced_column_echelon(m);
    assert_eq!(reduced_column_echelon(&e), e, "RCEF is idempotent");
    assert_eq!(e.cols(), rank(m));
    assert_eq!(
        rank(&Matrix::hcat(&[m, &e]).unwrap()),
        rank(m),
        "RCEF keeps the column span"
    );
    assert_eq!(rank(&m.transpose()), rank(m));
}

fn check_inverse<F: Field>(m: &Matrix<F>) {
    if !m.is_square() {
        return;
    }
    match inverse(m) {
        Ok(inv) => {
            assert!(m.mul(&inv).unwrap().is_identity());
            assert!(inv.mul(m).unwrap().is_identity());
        }
        Err(_) => assert!(rank(m) < m.rows()),
    }
}

proptest! {
    #[test]
    fn gf2_invariants(m in gf2_matrix(8)) {
        check_basics(&m);
        check_inverse(&m);
    }

    #[test]
    fn gf5_invariants(m in int_matrix(Gfp::new(5).unwrap(), 6, 4)) {
        check_basics(&m);
        check_inverse(&m);
    }

    #[test]
    fn rational_invariants(m in int_matrix(Rationals, 5, 3)) {
        check_basics(&m);
        check_inverse(&m);
    }

    #[test]
    fn square_gf2_inverse(v in proptest::collection::vec(any::<bool>(), 36)) {
        check_inverse(&Matrix::new(Gf2, 6, 6, v).unwrap());
    }
}

#[test]
fn printed_generalized_inverses_are_valid() {
    // Blocks of the 4x3 case-1 fixture and the generalized inverses printed
    // alongside it; not the ones our pivoting picks, but valid.
    let p4 = bits(4, 4, &[1, 1, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 0]);
    let p4_g = bits(4, 4, &[0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0]);
    assert_eq!(p4.mul(&p4_g).unwrap().mul(&p4).unwrap(), p4);
    let p2 = bits(3, 4, &[1, 0, 1, 1, 1, 1, 0, 0, 0, 1, 0, 0]);
    let p2_g = bits(4, 3, &[0, 1, 1, 0, 0, 1, 0, 0, 0, 1, 1, 1]);
    assert_eq!(p2.mul(&p2_g).unwrap().mul(&p2).unwrap(), p2);
    for m in [&p4, &p2] {
        let g = generalized_inverse(m);
        assert_eq!(m.mul(&g).unwrap().mul(m).unwrap(), *m);
    }
}

#[test]
fn singular_inverse_errors() {
    let m = bits(2, 2, &[1, 1, 1, 1]);
    assert_eq!(inverse(&m), Err(lul_core::Error::SingularMatrix));
    assert!(matches!(
        inverse(&bits(2, 3, &[0; 6])),
        Err(lul_core::Error::NotSquare(2, 3))
    ));
}

#[test]
fn empty_shapes() {
    let e = Matrix::<Gf2>::zeros(Gf2, 0, 3);
    assert_eq!(rank(&e), 0);
    assert_eq!(kernel_basis(&e).dim(), 3);
    assert!(is_invertible(&Matrix::<Gf2>::identity(Gf2, 0)));
}
