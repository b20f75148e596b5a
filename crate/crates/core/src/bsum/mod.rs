mod evaluate;
mod lemmas;
mod moments;
mod region;
mod theorems;
mod truncated;

pub use evaluate::{
    bq_brute, bq_brute_bounded, bq_closed, bq_delta, bq_recursive, chord_factor, BqEvaluator,
};
pub use lemmas::{
    formula_lhs, lemma_checks, lemma_records, prop_double_sum, prop_identity, prop_identity_check,
    prop_records, prop_single_sum, LemmaKind, PropCheck, LEMMA_RANGE,
};
pub use region::{Region, RegionPath, TruncTile, TruncatedTiling};
pub use truncated::{
    bands_to_layers, enumerate_region_paths, enumerate_region_paths_bounded,
    enumerate_truncated_bands, enumerate_truncated_region, enumerate_truncated_region_bounded,
    Band, RegionLimits,
};
pub use moments::{
    hermite_recurrence, hermite_records, moment_route_records, moments_dn, special_moment_checks,
    special_moment_records, MomentRoute, MomentTable, XPoly, ENUMERATION_MOMENT_LIMIT,
    HERMITE_LIMIT, PATH_DP_LIMIT,
};
pub use theorems::{
    height_product, theorem_checks, theorem_records, thm1_records, thm1_sides, thm2_records,
    thm2_sides, thm_gen_records, TheoremKind, THEOREM_LIMIT,
};
