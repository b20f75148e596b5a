mod common;

use common::*;
use dyck_tilings::bijections::{collapse_slice, expand_slice, psi, psi_inv, shape_cross_nest, zeta, zeta_inv, HermiteHistory};
use dyck_tilings::suites::{example_big_tiling, example_matching, EXAMPLE_BIG_LABELS, EXAMPLE_MATCHING_LABELS};
use dyck_tilings::tilings::{cell_u, truncate, untruncate};

#[test]
fn corners_parse_to_steps() {
    assert_eq!(path_from_corners(&[(0, 0), (0, 2), (2, 2)]).to_string(), "UUDD");
    assert_eq!(slice_example_before().upper().half_length(), 11);
    assert_eq!(slice_example_after().upper().half_length(), 10);
}

#[test]
fn slice_example_truncates_and_back() {
    let t = slice_example_before();
    assert_eq!(t.size(), 18);
    assert_eq!(t.area(), 42);
    let tr = truncate(&t).unwrap();
    assert_eq!(tr.tiles().len(), 4);
    assert_eq!(tr.norm(), t.norm());
    assert_eq!(untruncate(&tr).unwrap(), t);
}

#[test]
fn slice_example_collapses() {
    let before = slice_example_before();
    let after = collapse_slice(&before, SLICE_CELL).unwrap();
    assert_eq!(after, slice_example_after());
    assert_eq!(after.size(), before.size());
    let u0 = cell_u(SLICE_CELL) as usize - 1;
    assert_eq!(expand_slice(&after, u0).unwrap(), before);
}

#[test]
fn big_example_labels() {
    let t = example_big_tiling();
    let h = psi(&t).unwrap();
    assert_eq!(h.labels(), EXAMPLE_BIG_LABELS);
    assert_eq!(h.norm(), t.size());
    let back = psi_inv(&HermiteHistory::new(t.upper().clone(), EXAMPLE_BIG_LABELS.to_vec()).unwrap()).unwrap();
    assert_eq!(back, t);
}

#[test]
fn matching_example_labels() {
    let m = example_matching();
    let (shape, st) = shape_cross_nest(&m);
    assert_eq!(shape.to_string(), "UUDUDUDD");
    assert_eq!((st.crossings, st.nestings), (2, 1));
    let h = zeta(&m);
    assert_eq!(h.labels(), EXAMPLE_MATCHING_LABELS);
    assert_eq!(zeta_inv(&h).unwrap(), m);
}
