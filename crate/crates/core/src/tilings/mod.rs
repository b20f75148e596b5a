//! Skew shapes between two Dyck paths and their cover-inclusive Dyck tilings.
//!
//! Cells are named by the lattice coordinates `(x, y)` of their lower-left
//! corner. Walking a tile from its southwest cell to its northeast cell uses
//! north `(0,1)` and east `(1,0)` moves only.

mod enumerate;
mod matrix;
mod truncate;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{is_above, DyckPath};

pub use enumerate::{enumerate_tilings, enumerate_tilings_bounded, DEFAULT_TILING_LIMIT};
pub use matrix::{
    build_matrix_m, formula_inverse, invert_and_check, invert_unitriangular, MatrixCheck,
    PolyMatrix, DEFAULT_MATRIX_LIMIT,
};
pub use truncate::{truncate, untruncate};

pub type Cell = (i32, i32);

/// Diagonal index `x + y + 1` of a cell's center.
pub fn cell_u(c: Cell) -> i64 {
    (c.0 + c.1 + 1) as i64
}

/// Signed distance `y - x` of a cell's center from the diagonal.
pub fn cell_v(c: Cell) -> i64 {
    (c.1 - c.0) as i64
}

/// Inverse of `(cell_u, cell_v)`.
pub fn cell_at(u: i64, v: i64) -> Cell {
    (((u - v - 1) / 2) as i32, ((u + v - 1) / 2) as i32)
}

pub(crate) fn southeast(c: Cell) -> Cell {
    (c.0 + 1, c.1 - 1)
}

pub(crate) fn northwest(c: Cell) -> Cell {
    (c.0 - 1, c.1 + 1)
}

/// The cells strictly between a lower path and an upper path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewShape {
    lower: DyckPath,
    upper: DyckPath,
    cells: BTreeSet<Cell>,
}

impl SkewShape {
    pub fn new(lower: DyckPath, upper: DyckPath) -> Result<Self> {
        if !is_above(&upper, &lower)? {
            return Err(Error::Domain(format!("{upper} is not above {lower}")));
        }
        let mut cells = BTreeSet::new();
        for (x, (hl, hu)) in lower
            .column_heights()
            .into_iter()
            .zip(upper.column_heights())
            .enumerate()
        {
            for y in hl..hu {
                cells.insert((x as i32, y as i32));
            }
        }
        Ok(Self {
            lower,
            upper,
            cells,
        })
    }

    pub fn lower(&self) -> &DyckPath {
        &self.lower
    }

    pub fn upper(&self) -> &DyckPath {
        &self.upper
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    /// Number of cells.
    pub fn area(&self) -> usize {
        self.cells.len()
    }

    /// Cells ordered by diagonal and then from northwest to southeast.
    pub fn scan_order(&self) -> Vec<Cell> {
        let mut v: Vec<Cell> = self.cells.iter().copied().collect();
        v.sort_by_key(|&c| (cell_u(c), c.0));
        v
    }
}

/// A ribbon whose cell centers trace a Dyck path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckTile {
    cells: Vec<Cell>,
}

impl DyckTile {
    pub fn new(mut cells: Vec<Cell>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Domain("a tile needs at least one cell".into()));
        }
        cells.sort_by_key(|&c| cell_u(c));
        let base = cell_v(cells[0]);
        for w in cells.windows(2) {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            if !matches!((dx, dy), (0, 1) | (1, 0)) {
                return Err(Error::Domain(format!(
                    "cells {:?} and {:?} are not joined by a north or east move",
                    w[0], w[1]
                )));
            }
            if cell_v(w[1]) < base {
                return Err(Error::Domain(format!(
                    "tile centers dip below their start at {:?}",
                    w[1]
                )));
            }
        }
        if cell_v(*cells.last().unwrap()) != base {
            return Err(Error::Domain(
                "tile centers do not end at the starting level".into(),
            ));
        }
        Ok(Self { cells })
    }

    pub(crate) fn from_sorted_unchecked(cells: Vec<Cell>) -> Self {
        Self { cells }
    }

    /// Cells from southwest to northeast.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn length(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn half_length(&self) -> usize {
        self.length() / 2
    }

    pub fn southwest(&self) -> Cell {
        self.cells[0]
    }

    pub fn northeast(&self) -> Cell {
        *self.cells.last().unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingStats {
    pub size: usize,
    pub norm: usize,
    pub ht: usize,
}

/// A cover-inclusive Dyck tiling of a skew shape, tiles in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyckTiling {
    shape: SkewShape,
    tiles: Vec<DyckTile>,
}

impl DyckTiling {
    /// Validates that `tiles` partition the shape and are cover-inclusive.
    pub fn new(lower: DyckPath, upper: DyckPath, tiles: Vec<DyckTile>) -> Result<Self> {
        let shape = SkewShape::new(lower, upper)?;
        let mut owner: HashMap<Cell, usize> = HashMap::new();
        for (t, tile) in tiles.iter().enumerate() {
            for &c in tile.cells() {
                if !shape.contains(c) {
                    return Err(Error::Domain(format!("cell {c:?} lies outside the shape")));
                }
                if owner.insert(c, t).is_some() {
                    return Err(Error::Domain(format!("cell {c:?} is covered twice")));
                }
            }
        }
        if owner.len() != shape.area() {
            return Err(Error::Domain(format!(
                "tiles cover {} of {} cells",
                owner.len(),
                shape.area()
            )));
        }
        if let Some((t1, t2)) = cover_violation(&tiles, &owner) {
            return Err(Error::Domain(format!(
                "tiles {:?} and {:?} break cover-inclusiveness",
                tiles[t1].cells(),
                tiles[t2].cells()
            )));
        }
        Ok(Self::from_parts(shape, tiles))
    }

    pub(crate) fn from_parts(shape: SkewShape, mut tiles: Vec<DyckTile>) -> Self {
        tiles.sort_by_key(|t| {
            let sw = t.southwest();
            (cell_u(sw), sw.0)
        });
        Self { shape, tiles }
    }

    /// The empty tiling of `path / path`.
    pub fn empty(path: DyckPath) -> Self {
        let shape = SkewShape::new(path.clone(), path).expect("a path is above itself");
        Self {
            shape,
            tiles: Vec::new(),
        }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn lower(&self) -> &DyckPath {
        &self.shape.lower
    }

    pub fn upper(&self) -> &DyckPath {
        &self.shape.upper
    }

    pub fn tiles(&self) -> &[DyckTile] {
        &self.tiles
    }

    pub fn size(&self) -> usize {
        self.tiles.len()
    }

    pub fn norm(&self) -> usize {
        self.tiles.iter().map(DyckTile::half_length).sum()
    }

    pub fn area(&self) -> usize {
        self.shape.area()
    }

    pub fn stats(&self) -> TilingStats {
        TilingStats {
            size: self.size(),
            norm: self.norm(),
            ht: self.upper().ht(),
        }
    }

    /// Tile index owning each cell.
    pub fn owners(&self) -> HashMap<Cell, usize> {
        let mut owner = HashMap::new();
        for (t, tile) in self.tiles.iter().enumerate() {
            for &c in tile.cells() {
                owner.insert(c, t);
            }
        }
        owner
    }
}

/// First pair `(t1, t2)` where some cell of `t1` sits directly northwest of
/// a cell of `t2` but the southeast translate of `t1` is not inside `t2`.
fn cover_violation(tiles: &[DyckTile], owner: &HashMap<Cell, usize>) -> Option<(usize, usize)> {
    for (t, tile) in tiles.iter().enumerate() {
        for &c in tile.cells() {
            let Some(&below) = owner.get(&southeast(c)) else {
                continue;
            };
            if below == t {
                continue;
            }
            let contained = tile
                .cells()
                .iter()
                .all(|&d| owner.get(&southeast(d)) == Some(&below));
            if !contained {
                return Some((t, below));
            }
        }
    }
    None
}

#[derive(Serialize, Deserialize)]
struct TilingJson {
    lower: DyckPath,
    upper: DyckPath,
    tiles: Vec<Vec<[i32; 2]>>,
}

impl Serialize for DyckTiling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TilingJson {
            lower: self.lower().clone(),
            upper: self.upper().clone(),
            tiles: self
                .tiles
                .iter()
                .map(|t| t.cells().iter().map(|&(x, y)| [x, y]).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DyckTiling {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TilingJson::deserialize(d)?;
        let tiles = raw
            .tiles
            .into_iter()
            .map(|cells| DyckTile::new(cells.into_iter().map(|[x, y]| (x, y)).collect()))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        DyckTiling::new(raw.lower, raw.upper, tiles).map_err(serde::de::Error::custom)
    }
}
