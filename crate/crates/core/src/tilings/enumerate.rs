use std::collections::HashMap;

use super::{cell_u, cell_v, northwest, southeast, Cell, DyckTile, DyckTiling, SkewShape};
use crate::error::{check_capacity, Result};
use crate::paths::DyckPath;

/// Default largest half-length accepted by [`enumerate_tilings`].
pub const DEFAULT_TILING_LIMIT: usize = 6;

/// All cover-inclusive Dyck tilings of `lower / upper`.
pub fn enumerate_tilings(lower: &DyckPath, upper: &DyckPath) -> Result<Vec<DyckTiling>> {
    enumerate_tilings_bounded(lower, upper, DEFAULT_TILING_LIMIT)
}

pub fn enumerate_tilings_bounded(
    lower: &DyckPath,
    upper: &DyckPath,
    limit: usize,
) -> Result<Vec<DyckTiling>> {
    check_capacity("tiling half-length", lower.half_length(), limit)?;
    let shape = SkewShape::new(lower.clone(), upper.clone())?;
    let order = shape.scan_order();
    let mut search = Search {
        shape: &shape,
        order: &order,
        owner: HashMap::new(),
        tiles: Vec::new(),
        out: Vec::new(),
    };
    search.run(0);
    Ok(search.out)
}

struct Search<'a> {
    shape: &'a SkewShape,
    order: &'a [Cell],
    owner: HashMap<Cell, usize>,
    tiles: Vec<Vec<Cell>>,
    out: Vec<DyckTiling>,
}

impl Search<'_> {
    fn run(&mut self, mut pos: usize) {
        while pos < self.order.len() && self.owner.contains_key(&self.order[pos]) {
            pos += 1;
        }
        if pos == self.order.len() {
            let tiles = self
                .tiles
                .iter()
                .map(|c| DyckTile::from_sorted_unchecked(c.clone()))
                .collect();
            self.out.push(DyckTiling::from_parts(self.shape.clone(), tiles));
            return;
        }
        let anchor = self.order[pos];
        let mut candidates = Vec::new();
        let mut buf = vec![anchor];
        self.grow(&mut buf, &mut candidates);
        candidates.sort_by_key(|c: &Vec<Cell>| c.len());
        for cells in candidates {
            if !self.compatible(&cells) {
                continue;
            }
            let id = self.tiles.len();
            for &c in &cells {
                self.owner.insert(c, id);
            }
            self.tiles.push(cells);
            self.run(pos + 1);
            let cells = self.tiles.pop().unwrap();
            for c in &cells {
                self.owner.remove(c);
            }
        }
    }

    fn free(&self, c: Cell) -> bool {
        self.shape.contains(c) && !self.owner.contains_key(&c)
    }

    /// Collects every Dyck-shaped ribbon of free cells extending `buf`.
    fn grow(&self, buf: &mut Vec<Cell>, out: &mut Vec<Vec<Cell>>) {
        let last = *buf.last().unwrap();
        let rel = cell_v(last) - cell_v(buf[0]);
        if rel == 0 {
            out.push(buf.clone());
        }
        let north = (last.0, last.1 + 1);
        if self.free(north) {
            buf.push(north);
            self.grow(buf, out);
            buf.pop();
        }
        let east = (last.0 + 1, last.1);
        if rel > 0 && self.free(east) {
            buf.push(east);
            self.grow(buf, out);
            buf.pop();
        }
    }

    /// Checks the new tile against every already placed neighbour.
    fn compatible(&self, cells: &[Cell]) -> bool {
        debug_assert!(cells.windows(2).all(|w| cell_u(w[1]) == cell_u(w[0]) + 1));
        for &c in cells {
            if let Some(&below) = self.owner.get(&southeast(c)) {
                if !cells
                    .iter()
                    .all(|&d| self.owner.get(&southeast(d)) == Some(&below))
                {
                    return false;
                }
            }
            if let Some(&above) = self.owner.get(&northwest(c)) {
                if !self.tiles[above]
                    .iter()
                    .all(|&d| cells.contains(&southeast(d)))
                {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{p, tile};
    use super::*;
    use crate::paths::{enumerate_dyck, is_above};
    use crate::qpoly::odd_double_factorial;
    use num_bigint::BigInt;

    #[test]
    fn trivial_shapes() {
        for path in enumerate_dyck(3).unwrap() {
            let ts = enumerate_tilings(&path, &path).unwrap();
            assert_eq!(ts, vec![DyckTiling::empty(path.clone())]);
        }
        let ts = enumerate_tilings(&p("UDUD"), &p("UUDD")).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].tiles(), &[tile(&[(0, 1)])]);
        assert!(enumerate_tilings(&p("UUDD"), &p("UDUD")).is_err());
    }

    #[test]
    fn totals_are_odd_double_factorials() {
        for n in 0..=4 {
            let all = enumerate_dyck(n).unwrap();
            let mut total = 0usize;
            for l in &all {
                for m in &all {
                    if is_above(m, l).unwrap() {
                        total += enumerate_tilings(l, m).unwrap().len();
                    }
                }
            }
            assert_eq!(BigInt::from(total), odd_double_factorial(n as u64), "n={n}");
        }
    }

    #[test]
    fn enumerated_tilings_validate() {
        let all = enumerate_dyck(4).unwrap();
        for l in &all {
            for m in &all {
                if !is_above(m, l).unwrap() {
                    continue;
                }
                let ts = enumerate_tilings(l, m).unwrap();
                for t in &ts {
                    let again =
                        DyckTiling::new(l.clone(), m.clone(), t.tiles().to_vec()).unwrap();
                    assert_eq!(&again, t);
                    // Each cell is counted once by size + twice the norm.
                    assert_eq!(t.area(), t.size() + 2 * t.norm());
                }
                let mut sorted = ts.clone();
                sorted.sort_by(|a, b| a.tiles().cmp(b.tiles()));
                sorted.dedup();
                assert_eq!(sorted.len(), ts.len());
            }
        }
    }

    #[test]
    fn capacity_bound() {
        let big = DyckPath::zigzag(7);
        assert!(enumerate_tilings(&big, &big).is_err());
    }
}
