mod common;

use common::*;
use proptest::prelude::*;

#[test]
fn ruler_matches_tracing_on_every_rotation_up_to_five_vertices() {
    let (checked, triangular) = exhaustive_ruler().unwrap();
    assert!(checked > 10_000);
    assert!(triangular > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ruler_matches_tracing_on_random_rotations(g in random_graph()) {
        check_ruler_random(g)?;
    }

    #[test]
    fn ruler_matches_tracing_near_triangulations(
        rot in triangular_embedding(),
        v in any::<usize>(),
        i in any::<usize>(),
        j in any::<usize>(),
    ) {
        check_ruler_perturbed((rot, v, i, j))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn construction1_adds_a_handle_and_a_nine_gon(p in row_pick()) {
        check_construction1(p)?;
    }

    #[test]
    fn construction2_adds_a_handle_and_two_hexagons(p in row_pick()) {
        check_construction2(p)?;
    }

    #[test]
    fn construction3_merges_two_faces(p in row_pick()) {
        check_construction3(p)?;
    }

    #[test]
    fn edge_flip_is_an_involution(rot in triangular_embedding(), e in any::<usize>()) {
        check_flip_involution((rot, e))?;
    }
}

#[test]
fn handle_subtraction_is_order_independent() {
    assert!(subtraction_order_independent().unwrap() > 0);
}
