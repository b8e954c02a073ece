//! Shared fixtures and proptest strategies for the integration suites.
#![allow(dead_code)]

use nnkf::arith::{Int, IVec};
use nnkf::io::{Instance, InstanceFile};
use nnkf::linalg::rank;
use nnkf::nonneg::build_h;
use num_traits::Zero;
use proptest::prelude::*;
use std::path::PathBuf;

pub fn pts(v: &[&[i64]]) -> Vec<IVec> {
    v.iter().map(|p| p.iter().map(|&c| Int::from(c)).collect()).collect()
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../nnkf-cli/examples")
}

pub fn golden(name: &str) -> Instance {
    let text = std::fs::read_to_string(golden_dir().join(name)).expect("golden file");
    InstanceFile::parse(&text).expect("valid golden file").1
}

pub fn golden_pair(name: &str) -> (Vec<IVec>, Vec<IVec>) {
    match golden(name) {
        Instance::Pair { fs, gs } => (fs, gs),
        other => panic!("{name} is not a pair instance: {other:?}"),
    }
}

/// Every golden instance that defines a lifted support, by file name.
pub fn golden_lifted() -> Vec<(String, Vec<IVec>)> {
    let mut names: Vec<String> = std::fs::read_dir(golden_dir())
        .expect("golden directory")
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    names
        .into_iter()
        .filter_map(|name| match golden(&name) {
            Instance::Pair { fs, gs } if !fs.is_empty() => Some((name, build_h(&fs, &gs).expect("liftable golden pair"))),
            Instance::Lifted { hs } => Some((name, hs)),
            _ => None,
        })
        .collect()
}

fn to_ivecs(v: Vec<Vec<i64>>) -> Vec<IVec> {
    v.into_iter().map(|p| p.into_iter().map(Int::from).collect()).collect()
}

/// Non-zero lattice points of `[0, max]^n`.
pub fn nonzero_points(n: usize, max: i64, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<IVec>> {
    prop::collection::vec(prop::collection::vec(0..=max, n).prop_filter("non-zero", |p| p.iter().any(|&c| c != 0)), len)
        .prop_map(to_ivecs)
}

/// Convenient support with axis exponents in `1..=max` and a few extra points.
pub fn convenient_support(n: usize, max: i64) -> impl Strategy<Value = Vec<IVec>> {
    (prop::collection::vec(1..=max, n), nonzero_points(n, max, 0..=3)).prop_map(move |(axes, extra)| {
        let mut s: Vec<IVec> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Int::from(axes[i]) } else { Int::zero() }).collect())
            .collect();
        s.extend(extra);
        s.sort();
        s.dedup();
        s
    })
}

/// Convenient embedded pair `Γ_f ⊆ Γ_g` with `Gs = Fs ∪ extra`.
pub fn convenient_pair(n: usize, max: i64) -> impl Strategy<Value = (Vec<IVec>, Vec<IVec>)> {
    (convenient_support(n, max), nonzero_points(n, max, 1..=2)).prop_map(|(fs, extra)| {
        let mut gs = fs.clone();
        gs.extend(extra);
        gs.sort();
        gs.dedup();
        (fs, gs)
    })
}

pub fn pair_in_dims(max: i64) -> impl Strategy<Value = (Vec<IVec>, Vec<IVec>)> {
    prop_oneof![convenient_pair(2, max), convenient_pair(3, max)]
}

/// Full-dimensional point set in `[0, max]^n`.
pub fn full_dim_points(n: usize, max: i64, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<IVec>> {
    prop::collection::vec(prop::collection::vec(0..=max, n), len).prop_map(to_ivecs).prop_filter("full-dimensional", move |p| {
        let d: Vec<IVec> = p.iter().skip(1).map(|q| nnkf::arith::sub(q, &p[0])).collect();
        !d.is_empty() && rank(&d) == n
    })
}

/// Unimodular matrix `L·U` with unit triangular factors, entries bounded by 3.
pub fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (prop::collection::vec(-1i64..=1, n * n), prop::collection::vec(-1i64..=1, n * n))
        .prop_map(move |(l, u)| {
            let lo = |i: usize, j: usize| if i == j { 1 } else if i > j { l[i * n + j] } else { 0 };
            let up = |i: usize, j: usize| if i == j { 1 } else if i < j { u[i * n + j] } else { 0 };
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| lo(i, k) * up(k, j)).sum()).collect()).collect()
        })
        .prop_filter("entries bounded by 3", |m: &Vec<Vec<i64>>| m.iter().flatten().all(|x| x.abs() <= 3))
}

pub fn apply(m: &[Vec<i64>], p: &IVec) -> IVec {
    m.iter().map(|row| row.iter().zip(p).map(|(a, x)| Int::from(*a) * x).sum()).collect()
}

/// Support not contained in any coordinate hyperplane with a full-dimensional hull.
pub fn lemma_family(n: usize, max: i64) -> impl Strategy<Value = Vec<IVec>> {
    full_dim_points(n, max, (n + 1)..=(n + 4))
        .prop_filter("meets every open half-space x_i > 0", move |p| (0..n).all(|i| p.iter().any(|q| !q[i].is_zero())))
}
