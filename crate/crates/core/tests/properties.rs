mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn boundary_of_boundary_vanishes(case in coloring_case()) {
        boundary_squares_to_zero(&case)?;
    }

    #[test]
    fn closed_components_satisfy_duality(case in glue_case()) {
        poincare_duality(&case)?;
    }

    #[test]
    fn coset_representatives(
        width in 1usize..=12,
        gens in prop::collection::vec(any::<u64>(), 0..6),
        v in any::<u64>(),
        pick in any::<u64>(),
    ) {
        coset_rep_well_defined(width, &gens, v, pick)?;
    }

    #[test]
    fn translations_commute_with_boundary(case in coloring_case(), g in any::<u64>()) {
        translation_commutes(&case, g)?;
    }

    #[test]
    fn rank_is_transpose_invariant((rows, cols, entries) in matrix_case()) {
        rank_equals_transpose_rank(rows, cols, &entries)?;
    }

    #[test]
    fn label_isomorphism_matches_relations(
        width in 1usize..=4,
        pairs in prop::collection::vec((0u64..16, 0u64..16), 1..7),
    ) {
        let (a, b): (Vec<u64>, Vec<u64>) = pairs.into_iter().unzip();
        label_isomorphism_iff_relations(width, &a, &b)?;
    }

    #[test]
    fn span_is_idempotent(width in 1usize..=16, vs in prop::collection::vec(any::<u64>(), 0..10)) {
        span_idempotent(width, &vs)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reports_do_not_depend_on_thread_count(m in 1usize..=2, seed in any::<u64>(), limit in 1usize..12) {
        reports_deterministic(m, seed, limit)?;
    }
}
