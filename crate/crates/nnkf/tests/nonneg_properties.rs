mod common;

use common::*;
use nnkf::arith::{Int, IVec};
use nnkf::newton::newton_number_of_support;
use nnkf::nonneg::{build_h, evaluate, first_jump_with, FormulaOptions};
use nnkf::par::Execution;
use proptest::prelude::*;

fn options(keep_support: bool, execution: Execution) -> FormulaOptions {
    FormulaOptions { keep_support, execution }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn summands_are_non_negative((fs, gs) in pair_in_dims(5)) {
        let res = evaluate(&build_h(&fs, &gs).unwrap(), &FormulaOptions::default()).unwrap();
        for s in &res.summands {
            prop_assert!(s.index.multiplicity >= Int::from(0));
            prop_assert!(s.nu >= Int::from(0));
            prop_assert_eq!(&s.contribution, &(&s.nu * &s.index.multiplicity));
        }
        prop_assert!(res.verification.unwrap().matched);
    }

    #[test]
    fn vertex_reduction_keeps_the_total((fs, gs) in pair_in_dims(5)) {
        let hs = build_h(&fs, &gs).unwrap();
        let reduced = evaluate(&hs, &options(false, Execution::Sequential)).unwrap();
        let raw = evaluate(&hs, &options(true, Execution::Sequential)).unwrap();
        prop_assert_eq!(reduced.total, raw.total);
    }

    #[test]
    fn execution_modes_agree((fs, gs) in pair_in_dims(5)) {
        let hs = build_h(&fs, &gs).unwrap();
        let par = evaluate(&hs, &options(false, Execution::Parallel)).unwrap();
        let seq = evaluate(&hs, &options(false, Execution::Sequential)).unwrap();
        prop_assert_eq!(par, seq);
    }

    #[test]
    fn jump_candidates_match_the_classical_difference(fs in convenient_support(2, 5)) {
        prop_assume!(newton_number_of_support(&fs).unwrap() > Int::from(0));
        let report = first_jump_with(&fs, Execution::Sequential).unwrap();
        for (p, d) in &report.candidates {
            let mut gs = fs.clone();
            gs.push(p.clone());
            prop_assert_eq!(d, &(&report.base - newton_number_of_support(&gs).unwrap()));
        }
        prop_assert!(report.minimizers.iter().all(|m| report.candidates.contains(&(m.clone(), report.difference.clone()))));
    }
}

#[test]
fn doubling_the_deformation_level_keeps_the_total() {
    for (name, hs) in golden_lifted() {
        let doubled: Vec<IVec> = hs
            .iter()
            .map(|p| {
                let mut q = p.clone();
                *q.last_mut().unwrap() *= 2;
                q
            })
            .collect();
        let a = evaluate(&hs, &FormulaOptions::default()).unwrap().total;
        let b = evaluate(&doubled, &FormulaOptions::default()).unwrap().total;
        assert_eq!(a, b, "{name}");
    }
}
