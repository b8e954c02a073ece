mod common;

use common::*;
use nnkf::arith::{dot, sub, to_rvec, Int, IVec};
use nnkf::hull::triangulate;
use nnkf::linalg::{abs_det, affine_rank, nullspace};
use nnkf::polytope::{mixed_volume, LatticePolytope};
use proptest::prelude::*;

fn polytope_case() -> impl Strategy<Value = (Vec<IVec>, Vec<Vec<i64>>, Vec<i64>)> {
    (1usize..=4).prop_flat_map(|n| {
        (full_dim_points(n, 5, (n + 1)..=(n + 4)), unimodular(n), prop::collection::vec(-6i64..=6, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn volume_is_unimodular_and_translation_invariant((points, u, t) in polytope_case()) {
        let v = LatticePolytope::new(&points).unwrap().normalized_volume();
        let mapped: Vec<IVec> = points.iter().map(|p| apply(&u, p)).collect();
        prop_assert_eq!(&LatticePolytope::new(&mapped).unwrap().normalized_volume(), &v);
        let moved: Vec<IVec> = points.iter().map(|p| p.iter().zip(&t).map(|(a, b)| a + Int::from(*b)).collect()).collect();
        prop_assert_eq!(&LatticePolytope::new(&moved).unwrap().normalized_volume(), &v);
    }

    #[test]
    fn lower_dimensional_volume_is_unimodular_invariant(
        (points, u) in (2usize..=4).prop_flat_map(|n| (prop::collection::vec(prop::collection::vec(0i64..=5, n), 2..=4), unimodular(n)))
    ) {
        let points: Vec<IVec> = points.into_iter().map(|p| p.into_iter().map(Int::from).collect()).collect();
        let p = LatticePolytope::new(&points).unwrap();
        let mapped: Vec<IVec> = points.iter().map(|x| apply(&u, x)).collect();
        let q = LatticePolytope::new(&mapped).unwrap();
        prop_assert_eq!(p.dim(), q.dim());
        prop_assert_eq!(p.normalized_volume(), q.normalized_volume());
    }

    #[test]
    fn pyramids_over_facets_subdivide_the_polytope((points, _, _) in polytope_case()) {
        let p = LatticePolytope::new(&points).unwrap();
        let n = p.dim();
        let m = Int::from(p.local.len() as u64);
        let apex: IVec = (0..n).map(|i| p.local.iter().map(|v| v[i].clone()).sum()).collect();
        let scaled: Vec<IVec> = p.local.iter().map(|v| v.iter().map(|c| c * &m).collect()).collect();
        let mut total = Int::from(0);
        for f in 0..p.faces.len() {
            if p.faces[f].dim + 1 != n {
                continue;
            }
            for s in triangulate(&p.faces, f) {
                total += abs_det(s.iter().map(|&i| sub(&scaled[i], &apex)).collect());
            }
        }
        let mut want = p.normalized_volume();
        for _ in 0..n {
            want *= &m;
        }
        prop_assert_eq!(total, want);
    }

    #[test]
    fn support_faces_match_brute_force(
        (points, gamma) in (1usize..=4).prop_flat_map(|n| (full_dim_points(n, 5, (n + 1)..=(n + 4)), prop::collection::vec(-3i64..=3, n)))
    ) {
        let p = LatticePolytope::new(&points).unwrap();
        let g: IVec = gamma.iter().map(|&c| Int::from(c)).collect();
        let vals: Vec<Int> = p.vertices.iter().map(|v| dot(&g, v)).collect();
        let min = vals.iter().min().unwrap();
        let argmin: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == *min).collect();
        let f = p.support_face(&to_rvec(&g));
        prop_assert_eq!(&p.faces[f].verts, &argmin);
        let verts: Vec<&IVec> = argmin.iter().map(|&i| &p.vertices[i]).collect();
        prop_assert_eq!(affine_rank(&verts), p.faces[f].dim as isize);
        let on_face = points.iter().filter(|x| dot(&g, x) == *min).count();
        prop_assert!(on_face >= argmin.len());
    }

    #[test]
    fn facet_normals_select_their_facets(
        points in (2usize..=4).prop_flat_map(|n| full_dim_points(n, 5, (n + 1)..=(n + 4)))
    ) {
        let p = LatticePolytope::new(&points).unwrap();
        let n = p.ambient();
        for f in 0..p.faces.len() {
            if p.faces[f].dim + 1 != n {
                continue;
            }
            let verts = p.face_vertices(f);
            let dirs: Vec<IVec> = verts.iter().skip(1).map(|v| sub(v, &verts[0])).collect();
            let mut normal = nullspace(&dirs, n).remove(0);
            let level = dot(&normal, &verts[0]);
            if p.vertices.iter().any(|v| dot(&normal, v) < level) {
                normal = normal.iter().map(|c| -c).collect();
            }
            prop_assert_eq!(p.support_face(&to_rvec(&normal)), f);
        }
    }

    #[test]
    fn mixed_volume_of_equal_arguments_is_the_volume(
        points in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0i64..=5, n), 1..=5))
    ) {
        let points: Vec<IVec> = points.into_iter().map(|p| p.into_iter().map(Int::from).collect()).collect();
        let p = LatticePolytope::new(&points).unwrap();
        let n = p.ambient();
        prop_assert_eq!(mixed_volume(&vec![&p; n], n).unwrap(), p.volume_in_dim(n));
    }
}
