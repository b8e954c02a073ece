mod common;

use common::*;
use nnkf::arith::{Int, IVec};
use nnkf::asymptotic::{AsymptoticClass, Entry};
use nnkf::critical::{solve_critical, total_multiplicity};
use nnkf::error::Error;
use nnkf::newton::{milnor_generic, newton_number_of_support};
use nnkf::nonneg::{build_h, evaluate, FormulaOptions};
use proptest::prelude::*;

fn with_units(fs: &[IVec]) -> Vec<IVec> {
    let n = fs[0].len();
    let mut gs = fs.to_vec();
    gs.extend((0..n).map(|i| (0..n).map(|j| Int::from(u8::from(i == j))).collect::<IVec>()));
    gs.sort();
    gs.dedup();
    gs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn critical_totals_match_the_formula_and_the_classical_difference((fs, gs) in pair_in_dims(5)) {
        let hs = build_h(&fs, &gs).unwrap();
        let records = match solve_critical(&hs) {
            Err(Error::NotConvenientProjection { .. }) => return Err(TestCaseError::reject("projection not convenient")),
            r => r.unwrap(),
        };
        let total = total_multiplicity(&records);
        prop_assert_eq!(&total, &evaluate(&hs, &FormulaOptions::default()).unwrap().total);
        let classical = newton_number_of_support(&fs).unwrap() - newton_number_of_support(&gs).unwrap();
        prop_assert_eq!(total, classical);
    }

    #[test]
    fn unit_deformation_counts_every_critical_point(fs in prop_oneof![convenient_support(2, 6), convenient_support(3, 4)]) {
        let hs = build_h(&fs, &with_units(&fs)).unwrap();
        let records = solve_critical(&hs).unwrap();
        prop_assert_eq!(total_multiplicity(&records), milnor_generic(&fs).unwrap());
        prop_assert!(records.iter().all(|r| r.class != AsymptoticClass::Dropped));
    }

    #[test]
    fn raised_records_extend_their_base((fs, gs) in pair_in_dims(5)) {
        let hs = build_h(&fs, &gs).unwrap();
        let Ok(records) = solve_critical(&hs) else { return Err(TestCaseError::reject("out of scope")) };
        for r in &records {
            prop_assert!(r.multiplicity > Int::from(0));
            match r.class {
                AsymptoticClass::Raised | AsymptoticClass::Dropped => {
                    let base = r.base.as_ref().expect("base covector");
                    prop_assert_eq!(base.len(), r.subspace.len());
                    for (b, &i) in base.iter().zip(&r.subspace) {
                        prop_assert_eq!(&r.covector[i], b);
                    }
                    let infinite = r.covector.iter().enumerate().filter(|(i, _)| !r.subspace.contains(i)).all(|(_, e)| *e == Entry::Infinite);
                    prop_assert_eq!(infinite, r.class == AsymptoticClass::Dropped);
                }
                _ => prop_assert!(r.base.is_none()),
            }
        }
    }
}
