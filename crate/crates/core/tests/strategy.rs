mod common;

use common::*;
use lul_core::decompose::strategy::*;
use lul_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn registry_lookup() {
    let reg = StrategyRegistry::for_gf2();
    let names: Vec<&str> = reg.names().collect();
    assert_eq!(
        names,
        vec!["block-lu", "block-ul", "brute-force", "min-right", "optimal"]
    );
    assert!(matches!(reg.get("nope"), Err(Error::UnknownStrategy(_))));
    let generic = StrategyRegistry::<Rationals>::with_builtins();
    assert!(generic.get("brute-force").is_err());
}

#[test]
fn optimal_strategies_agree_on_sum() {
    let reg = StrategyRegistry::for_gf2();
    for bm in [fixture(CASE1), fixture(CASE2)] {
        let sum = bm.bounds().sum_min;
        for name in ["optimal", "min-right", "brute-force"] {
            let d = reg.get(name).unwrap().decompose(&bm).unwrap();
            assert!(verify_decomposition(&bm, &d).optimal, "{name}");
            assert_eq!(d.rank_l + d.rank_r, sum);
        }
    }
    let d = reg.get("min-right").unwrap().decompose(&fixture(CASE2)).unwrap();
    assert_eq!((d.rank_l, d.rank_r), (2, 1));
}

#[test]
fn block_lu_and_ul() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let reg = StrategyRegistry::<Gf2>::with_builtins();
    let (lu, ul) = (reg.get("block-lu").unwrap(), reg.get("block-ul").unwrap());
    let mut seen = (0, 0);
    for _ in 0..300 {
        let k = rng.gen_range(2..=7);
        let m = rng.gen_range(1..k);
        let bm = BlockedMatrix::new(random_gl(&mut rng, k), m).unwrap();
        match lu.decompose(&bm) {
            Ok(d) => {
                seen.0 += 1;
                assert!(d.r.is_zero());
                assert_eq!(d.product().unwrap(), *bm.matrix());
            }
            Err(e) => assert!(matches!(e, Error::Precondition(_))),
        }
        match ul.decompose(&bm) {
            Ok(d) => {
                seen.1 += 1;
                assert!(d.l.is_zero());
                assert_eq!(d.product().unwrap(), *bm.matrix());
            }
            Err(e) => assert!(matches!(e, Error::Precondition(_))),
        }
    }
    assert!(seen.0 > 0 && seen.1 > 0);
}

struct Zero;

impl Strategy<Rationals> for Zero {
    fn name(&self) -> &'static str {
        "zero"
    }
    fn description(&self) -> &'static str {
        "always L = 0"
    }
    fn left_factor(&self, bm: &BlockedMatrix<Rationals>) -> Result<Matrix<Rationals>> {
        Ok(Matrix::zeros(Rationals, bm.n(), bm.m()))
    }
}

#[test]
fn custom_strategy() {
    let mut reg = StrategyRegistry::<Rationals>::with_builtins();
    reg.register(Box::new(Zero));
    let p = Matrix::from_i64(Rationals, 2, 2, &[1, 2, 3, 4]).unwrap();
    let bm = BlockedMatrix::new(p, 1).unwrap();
    let d = reg.get("zero").unwrap().decompose(&bm).unwrap();
    assert_eq!(d.product().unwrap(), *bm.matrix());
}
