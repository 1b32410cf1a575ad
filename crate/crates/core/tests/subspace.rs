mod common;

use common::*;
use lul_core::oracle::{all_vectors, enumerate_span, subspace_membership_oracle};
use lul_core::subspace::*;
use lul_core::{BlockedMatrix, Error, Gf2, Matrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf2_cols(dim: usize, max_cols: usize) -> impl Strategy<Value = Matrix<Gf2>> {
    (0..=max_cols).prop_flat_map(move |c| {
        proptest::collection::vec(any::<bool>(), dim * c).prop_map(move |v| Matrix::new(Gf2, dim, c, v).unwrap())
    })
}

fn members(s: &SubspaceBasis<Gf2>) -> Vec<Vec<bool>> {
    all_vectors(s.ambient_dim())
        .filter(|v| subspace_membership_oracle(s, v))
        .collect()
}

proptest! {
    #[test]
    fn grassmann_and_intersection(a in gf2_cols(5, 4), b in gf2_cols(5, 4)) {
        let (a, b) = (SubspaceBasis::span(&a), SubspaceBasis::span(&b));
        let cap = intersect(&a, &b).unwrap();
        let sum = a.sum(&b).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), a.dim() + b.dim());
        for v in all_vectors(5) {
            prop_assert_eq!(
                cap.contains_vector(&v),
                subspace_membership_oracle(&a, &v) && subspace_membership_oracle(&b, &v)
            );
        }
        prop_assert_eq!(enumerate_span(cap.basis()).len(), 1 << cap.dim());
    }

    #[test]
    fn complement_conditions(a in gf2_cols(6, 5), extra in gf2_cols(6, 3)) {
        let sub = SubspaceBasis::span(&a);
        let ambient = SubspaceBasis::span(&Matrix::hcat(&[&a, &extra]).unwrap());
        let c = complement_within(&ambient, &sub).unwrap();
        prop_assert!(ambient.contains(&c));
        prop_assert!(intersect(&c, &sub).unwrap().is_trivial());
        prop_assert_eq!(c.dim() + sub.dim(), ambient.dim());
        prop_assert!(direct_sum(&c, &sub).unwrap().same_span(&ambient));
    }

    #[test]
    fn double_complement_conditions(a in gf2_cols(6, 4), b in gf2_cols(6, 4), extra in gf2_cols(6, 2)) {
        let (mut a, mut b) = (SubspaceBasis::span(&a), SubspaceBasis::span(&b));
        if a.dim() < b.dim() {
            std::mem::swap(&mut a, &mut b);
        }
        let c = SubspaceBasis::span(&Matrix::hcat(&[a.basis(), b.basis(), &extra]).unwrap());
        let s = double_complement(&a, &b, &c).unwrap();
        prop_assert!(c.contains(&s));
        prop_assert_eq!(s.dim() + a.dim(), c.dim());
        prop_assert!(intersect(&s, &a).unwrap().is_trivial());
        prop_assert!(intersect(&s, &b).unwrap().is_trivial());
    }
}

#[test]
fn intersection_agrees_with_membership_on_all_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let (ca, cb) = (rng.gen_range(0..4), rng.gen_range(0..4));
        let a = SubspaceBasis::span(&random_bits(&mut rng, 4, ca));
        let b = SubspaceBasis::span(&random_bits(&mut rng, 4, cb));
        let cap = members(&intersect(&a, &b).unwrap());
        let both: Vec<Vec<bool>> = members(&a)
            .into_iter()
            .filter(|v| subspace_membership_oracle(&b, v))
            .collect();
        assert_eq!(cap, both);
    }
}

#[test]
fn block_identities_hold_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let k = rng.gen_range(2..=8);
        let m = rng.gen_range(0..=k);
        let bm = BlockedMatrix::new(random_gl(&mut rng, k), m).unwrap();
        assert_eq!(block_identity_failures(&bm), Vec::<&str>::new(), "{:?}", bm.matrix());
    }
}

#[test]
fn case1_domain_pieces() {
    // P3 (ker P1) and its part inside im P4, for the 4x3 case-1 fixture.
    let bm = fixture(CASE1);
    let p3_ker_p1 = kernel_basis(bm.p1()).image(bm.p3()).unwrap();
    let x2 = intersect(&p3_ker_p1, &SubspaceBasis::span(bm.p4())).unwrap();
    assert!(x2.same_span(&SubspaceBasis::new(bits(4, 1, &[1, 1, 0, 0])).unwrap()));
    let x1 = complement_within(&p3_ker_p1, &x2).unwrap();
    assert!(x1.same_span(&SubspaceBasis::new(bits(4, 1, &[0, 0, 0, 1])).unwrap()));
    let p2_ker_p4 = kernel_basis(bm.p4()).image(bm.p2()).unwrap();
    assert!(p2_ker_p4.same_span(&SubspaceBasis::new(bits(3, 1, &[1, 0, 1])).unwrap()));
    let im_cap = intersect(&SubspaceBasis::span(bm.p1()), &SubspaceBasis::span(bm.p2())).unwrap();
    assert!(im_cap.same_span(&SubspaceBasis::new(bits(3, 1, &[0, 1, 0])).unwrap()));
}

#[test]
fn subspace_errors() {
    let e1 = SubspaceBasis::new(bits(2, 1, &[1, 0])).unwrap();
    let e2 = SubspaceBasis::new(bits(2, 1, &[0, 1])).unwrap();
    assert_eq!(complement_within(&e1, &e2), Err(Error::NotSubspaceOf));
    let whole = SubspaceBasis::whole(Gf2, 2);
    assert!(matches!(
        double_complement(&e1, &whole, &whole),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        intersect(&e1, &SubspaceBasis::whole(Gf2, 3)),
        Err(Error::DimensionMismatch { .. })
    ));
}
