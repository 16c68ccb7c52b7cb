use conelab::chow::ChowClass;
use conelab::cone::{dual, Cone};
use conelab::lattice::{discriminant_group, IntLattice};
use conelab::linalg::{snf, IntMatrix, RatMatrix};
use conelab::scenarios::Scenario;
use num_bigint::BigInt;
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn generators() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=4).prop_flat_map(|d| {
        let ray = prop::collection::vec(-4i64..=4, d).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0));
        (Just(d), prop::collection::vec(ray, 1..=6))
    })
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, n), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn facets_hold_on_generators((d, gens) in generators()) {
        let c = Cone::from_rays(d, &gens.iter().map(|g| big(g)).collect::<Vec<_>>()).unwrap();
        for g in &gens {
            prop_assert!(c.member(&big(g)).unwrap());
        }
        prop_assert!(c.contains_cone(&c).unwrap());
        let back = Cone::from_constraints(d, c.facets(), c.equations()).unwrap();
        prop_assert_eq!(&back, &c);
    }

    #[test]
    fn dual_reverses_inclusion((d, gens) in generators(), drop in 0usize..6) {
        let all: Vec<Vec<BigInt>> = gens.iter().map(|g| big(g)).collect();
        let big_cone = Cone::from_rays(d, &all).unwrap();
        let mut fewer = all.clone();
        if fewer.len() > 1 {
            fewer.remove(drop % fewer.len());
        }
        let small_cone = Cone::from_rays(d, &fewer).unwrap();
        let id = RatMatrix::identity(d);
        prop_assert!(big_cone.contains_cone(&small_cone).unwrap());
        prop_assert!(dual(&small_cone, &id).unwrap().contains_cone(&dual(&big_cone, &id).unwrap()).unwrap());
    }

    #[test]
    fn smith_form_preserves_determinant(rows in square(3)) {
        let m = IntMatrix::from_i64_rows(&rows).unwrap();
        let s = snf(&m);
        prop_assert_eq!(s.left.checked_mul(&m).unwrap().checked_mul(&s.right).unwrap(), s.diagonal_matrix());
        prop_assert!(s.left.is_unimodular() && s.right.is_unimodular());
        let prod = s.diag.iter().fold(BigInt::from(1), |a, b| a * b);
        let det = m.det().unwrap();
        prop_assert_eq!(prod, if det < BigInt::from(0) { -det } else { det });
        for w in s.diag.windows(2) {
            if w[0] != BigInt::from(0) {
                prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
            }
        }
    }

    #[test]
    fn discriminant_order_is_abs_det(a in -8i64..=8, b in -8i64..=8, c in -8i64..=8) {
        let g = IntMatrix::from_i64_rows(&[[2 * a, b], [b, 2 * c]]).unwrap();
        prop_assume!(g.det().unwrap() != BigInt::from(0));
        let l = IntLattice::new(g.clone()).unwrap();
        let det = g.det().unwrap();
        prop_assert_eq!(discriminant_group(&l).order, if det < BigInt::from(0) { -det } else { det });
    }

    #[test]
    fn chow_power_matches_repeated_product(e1 in 0u32..3, e2 in 0u32..3, k in 0u32..4) {
        let ring = Scenario::builtin("p1xp3").unwrap().chow.unwrap().ring;
        let a = ChowClass::from_terms(&ring, [(vec![e1, e2], BigInt::from(3)), (vec![0, 1], BigInt::from(-1))]);
        let mut p = ChowClass::constant(&ring, BigInt::from(1));
        for _ in 0..k {
            p = p.multiply(&a).unwrap();
        }
        prop_assert_eq!(a.power(k), p);
    }
}
