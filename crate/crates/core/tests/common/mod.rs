#![allow(dead_code)]

use lul_core::text::MatrixText;
use lul_core::{BlockedMatrix, Gf2, Matrix};
use rand::Rng;

pub const CASE1: &str = include_str!("../../../../fixtures/case1-4x3.txt");
pub const CASE2: &str = include_str!("../../../../fixtures/case2-4x3.txt");

pub fn fixture(text: &str) -> BlockedMatrix<Gf2> {
    MatrixText::parse(text).unwrap().to_blocked(Gf2).unwrap()
}

pub fn bits(rows: usize, cols: usize, entries: &[u8]) -> Matrix<Gf2> {
    let v: Vec<i64> = entries.iter().map(|&x| x as i64).collect();
    Matrix::from_i64(Gf2, rows, cols, &v).unwrap()
}

pub fn random_bits(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix<Gf2> {
    Matrix::from_fn(Gf2, rows, cols, |_, _| rng.gen())
}

/// Uniform element of GL_k(F2) by rejection.
pub fn random_gl(rng: &mut impl Rng, k: usize) -> Matrix<Gf2> {
    loop {
        let m = random_bits(rng, k, k);
        if lul_core::linalg::is_invertible(&m) {
            return m;
        }
    }
}

use lul_core::subspace::{intersect, kernel_basis, SubspaceBasis};
use lul_core::Field;

/// The structural identities every invertible blocked matrix satisfies;
/// returns the names of those that fail.
pub fn block_identity_failures<F: Field>(bm: &BlockedMatrix<F>) -> Vec<&'static str> {
    let (m, n) = (bm.m(), bm.n());
    let (p1, p2, p3, p4) = (bm.p1(), bm.p2(), bm.p3(), bm.p4());
    let prof = bm.rank_profile();
    let (k1, k2, k3, k4) = (kernel_basis(p1), kernel_basis(p2), kernel_basis(p3), kernel_basis(p4));
    let im = |x: &Matrix<F>| SubspaceBasis::span(x);
    let img = |k: &SubspaceBasis<F>, x: &Matrix<F>| k.image(x).unwrap();
    let meet = |a: &SubspaceBasis<F>, b: &SubspaceBasis<F>| intersect(a, b).unwrap();
    let mut fails = Vec::new();
    let mut check = |ok: bool, name| {
        if !ok {
            fails.push(name)
        }
    };
    check(meet(&k1, &k3).is_trivial(), "ker P1 ∩ ker P3 = 0");
    check(meet(&k2, &k4).is_trivial(), "ker P2 ∩ ker P4 = 0");
    check(im(p1).sum(&im(p2)).unwrap().dim() == n, "im P1 + im P2 = whole");
    check(im(p3).sum(&im(p4)).unwrap().dim() == m, "im P3 + im P4 = whole");
    check(
        meet(&img(&k4, p2), &img(&k3, p1)).is_trivial(),
        "P2 ker P4 ∩ P1 ker P3 = 0",
    );
    check(
        meet(&img(&k2, p4), &img(&k1, p3)).is_trivial(),
        "P4 ker P2 ∩ P3 ker P1 = 0",
    );
    check(img(&k1, p3).dim() == n - prof.p1, "dim P3 ker P1 = n - p1");
    check(img(&k2, p4).dim() == m - prof.p2, "dim P4 ker P2 = m - p2");
    check(img(&k3, p1).dim() == n - prof.p3, "dim P1 ker P3 = n - p3");
    check(img(&k4, p2).dim() == m - prof.p4, "dim P2 ker P4 = m - p4");
    check(
        meet(&im(p1), &im(p2)).dim() + n == prof.p1 + prof.p2,
        "dim im P1 ∩ im P2 = p1 + p2 - n",
    );
    check(
        meet(&im(p3), &im(p4)).dim() + m == prof.p3 + prof.p4,
        "dim im P3 ∩ im P4 = p3 + p4 - m",
    );
    fails
}
