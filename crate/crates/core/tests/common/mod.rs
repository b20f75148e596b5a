#![allow(dead_code)]

use dyck_tilings::paths::DyckPath;
use dyck_tilings::tilings::{DyckTile, DyckTiling};

/// Reads a path from its lattice corners; vertical runs are up steps.
pub fn path_from_corners(points: &[(i32, i32)]) -> DyckPath {
    let mut s = String::new();
    for w in points.windows(2) {
        let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        assert!(dx == 0 || dy == 0, "corner run {w:?} is not axis-parallel");
        s.push_str(&"U".repeat(dy.max(0) as usize));
        s.push_str(&"D".repeat(dx.max(0) as usize));
    }
    s.parse().expect("corner list is a Dyck path")
}

fn build(lower: DyckPath, upper: DyckPath, long: &[&[(i32, i32)]], singles: &[(i32, i32)]) -> DyckTiling {
    let mut tiles: Vec<DyckTile> = long.iter().map(|c| DyckTile::new(c.to_vec()).expect("tile")).collect();
    tiles.extend(singles.iter().map(|&c| DyckTile::new(vec![c]).expect("cell")));
    DyckTiling::new(lower, upper, tiles).expect("fixture tiling")
}

/// Half-length 11, four long tiles.
pub fn slice_example_before() -> DyckTiling {
    build(
        path_from_corners(&[(0, 0), (0, 2), (2, 2), (2, 3), (3, 3), (3, 6), (5, 6), (5, 7), (7, 7), (7, 9), (9, 9), (9, 10), (10, 10), (10, 11), (11, 11)]),
        path_from_corners(&[(0, 0), (0, 7), (1, 7), (1, 9), (2, 9), (2, 10), (3, 10), (3, 11), (11, 11)]),
        &[
            &[(1, 5), (1, 6), (1, 7), (2, 7), (3, 7), (3, 8), (4, 8)],
            &[(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (2, 6), (3, 6), (4, 6), (4, 7), (5, 7), (6, 7), (6, 8), (6, 9), (7, 9), (8, 9)],
            &[(5, 9), (5, 10), (6, 10)],
            &[(2, 8), (2, 9), (3, 9)],
        ],
        &[(0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (1, 4), (1, 8), (5, 8), (4, 9), (4, 10), (3, 10), (7, 10), (8, 10), (9, 10)],
    )
}

/// Cell whose slice is removed from [`slice_example_before`].
pub const SLICE_CELL: (i32, i32) = (2, 9);

/// The same tiling with the slice through [`SLICE_CELL`] collapsed.
pub fn slice_example_after() -> DyckTiling {
    build(
        path_from_corners(&[(0, 0), (0, 2), (2, 2), (2, 3), (3, 3), (3, 6), (5, 6), (6, 6), (6, 8), (8, 8), (8, 9), (9, 9), (9, 10), (10, 10)]),
        path_from_corners(&[(0, 0), (0, 7), (1, 7), (1, 9), (2, 9), (2, 10), (10, 10)]),
        &[
            &[(1, 5), (1, 6), (1, 7), (2, 7), (3, 7)],
            &[(4, 8), (4, 9), (5, 9)],
            &[(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (2, 6), (3, 6), (4, 6), (5, 6), (5, 7), (5, 8), (6, 8), (7, 8)],
        ],
        &[(0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (1, 4), (1, 8), (2, 8), (2, 9), (3, 8), (3, 9), (4, 7), (6, 9), (7, 9), (8, 9)],
    )
}
