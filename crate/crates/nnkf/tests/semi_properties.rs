mod common;

use common::*;
use nnkf::semi::{
    analyze, coordinate_daughters, daughter_of_points, mv_polarization, restricted_mixed_volume, suture_table,
    SupportedPolytope,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn suture_paths_agree_with_polarization(points in prop_oneof![lemma_family(2, 4), lemma_family(3, 3)]) {
        let parent = SupportedPolytope::new(&points).unwrap();
        let ds = coordinate_daughters(&parent).unwrap();
        let analysis = analyze(&parent, &ds).unwrap();
        prop_assert!(analysis.semi_interlaced);
        let table = suture_table(&parent, &analysis).unwrap();
        prop_assert_eq!(&table.tilde_v, &table.tilde_v_recursive);
        prop_assert_eq!(&table.tilde_v[0], &mv_polarization(&ds).unwrap());
        for (i, &s) in table.sutures.iter().enumerate() {
            prop_assert_eq!(&restricted_mixed_volume(&parent, &ds, s).unwrap(), &table.tilde_v[i]);
        }
    }

    #[test]
    fn daughters_are_recovered_from_their_vertices(points in prop_oneof![lemma_family(2, 4), lemma_family(3, 3)]) {
        let parent = SupportedPolytope::new(&points).unwrap();
        for d in coordinate_daughters(&parent).unwrap() {
            prop_assert_eq!(&daughter_of_points(&parent, &d.polytope.vertices).unwrap(), &d);
        }
    }

    #[test]
    fn suture_faces_meet_exactly_their_dimension_of_daughters(points in prop_oneof![lemma_family(2, 4), lemma_family(3, 3)]) {
        let parent = SupportedPolytope::new(&points).unwrap();
        let ds = coordinate_daughters(&parent).unwrap();
        let analysis = analyze(&parent, &ds).unwrap();
        let faces = &parent.polytope.faces;
        for &s in &analysis.sutures[1..] {
            prop_assert_eq!(analysis.counts[s], faces[s].dim);
        }
        for f in 1..faces.len() {
            prop_assert!(analysis.counts[f] >= faces[f].dim);
            if analysis.counts[f] == faces[f].dim {
                prop_assert!(analysis.sutures.contains(&f));
            }
        }
    }
}
