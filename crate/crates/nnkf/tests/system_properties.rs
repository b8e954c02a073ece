mod common;

use common::*;
use nnkf::arith::{Int, Rat};
use nnkf::asymptotic::Entry;
use nnkf::system::{difference_volume, dual_polytope, rho_gap, solve_system};
use proptest::prelude::*;
use std::collections::BTreeSet;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplicities_sum_to_the_difference_volume((fs, gs) in pair_in_dims(6)) {
        let total: Int = solve_system(&fs, &gs).unwrap().iter().map(|r| r.multiplicity.clone()).sum();
        prop_assert_eq!(total, difference_volume(&fs, &gs).unwrap());
    }

    #[test]
    fn records_are_normalized_full_dimensional_strata((fs, gs) in pair_in_dims(6)) {
        let n = fs[0].len();
        let mut directions = BTreeSet::new();
        for r in solve_system(&fs, &gs).unwrap() {
            let v: Vec<Rat> = r.covector.iter().map(|e| match e {
                Entry::Finite(x) => x.clone(),
                Entry::Infinite => panic!("system asymptotics are finite"),
            }).collect();
            prop_assert!(v.iter().all(|x| *x > Rat::from_integer(Int::from(0))));
            prop_assert_eq!(rho_gap(&v, &fs, &gs), Rat::from_integer(Int::from(1)));
            let dual = dual_polytope(&v, &fs, &gs).unwrap();
            prop_assert_eq!(&dual.volume_in_dim(n), &r.multiplicity);
            prop_assert!(r.multiplicity > Int::from(0));
            prop_assert_eq!(dual.dim(), n);
            let first = v[0].clone();
            let direction: Vec<Rat> = v.iter().map(|x| x / &first).collect();
            prop_assert!(directions.insert(direction), "two records share a direction");
        }
    }
}
