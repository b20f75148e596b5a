use super::{cell_at, cell_u, cell_v, DyckTile, DyckTiling, SkewShape};
use crate::bsum::{Region, TruncTile, TruncatedTiling};
use crate::error::{Error, Result};

/// Cuts the end half-cells off every tile of positive length; single cells
/// vanish.
pub fn truncate(tiling: &DyckTiling) -> Result<TruncatedTiling> {
    let lam = tiling.lower().levels();
    let region = Region::skew(tiling.lower(), tiling.upper())?;
    let mut tiles = Vec::new();
    for tile in tiling.tiles().iter().filter(|t| t.length() > 0) {
        let first = cell_u(tile.southwest());
        let offset = cell_v(tile.southwest()) - lam[first as usize];
        for &c in tile.cells() {
            if cell_v(c) - lam[cell_u(c) as usize] != offset {
                return Err(Error::Invariant(format!(
                    "tile {:?} does not follow a translate of {}",
                    tile.cells(),
                    tiling.lower()
                )));
            }
        }
        tiles.push(TruncTile {
            layer: ((offset + 1) / 2) as usize,
            start: first as usize,
            end: cell_u(tile.northeast()) as usize,
        });
    }
    TruncatedTiling::new(region, tiles)
        .map_err(|e| Error::Invariant(format!("truncation left an illegal tiling: {e}")))
}

/// Restores the half-cells and fills the rest of the shape with single cells.
pub fn untruncate(truncated: &TruncatedTiling) -> Result<DyckTiling> {
    let region = truncated.region();
    let upper = region.upper().as_dyck().ok_or_else(|| {
        Error::Domain("only regions with a = b = 0 are skew shapes".into())
    })?;
    let lower = region.lower().clone();
    let shape = SkewShape::new(lower.clone(), upper.clone())?;
    let lam = lower.levels();
    let mut used = std::collections::BTreeSet::new();
    let mut tiles = Vec::new();
    for t in truncated.tiles() {
        let cells: Vec<_> = (t.start..=t.end)
            .map(|u| cell_at(u as i64, lam[u] + 2 * t.layer as i64 - 1))
            .collect();
        used.extend(cells.iter().copied());
        tiles.push(DyckTile::new(cells)?);
    }
    for &c in shape.cells() {
        if !used.contains(&c) {
            tiles.push(DyckTile::from_sorted_unchecked(vec![c]));
        }
    }
    DyckTiling::new(lower, upper, tiles)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{p, tile};
    use super::*;
    use crate::paths::{enumerate_dyck, is_above};
    use crate::tilings::enumerate_tilings;

    #[test]
    fn trivial_cases() {
        let e = DyckTiling::empty(p("UUDD"));
        let t = truncate(&e).unwrap();
        assert!(t.tiles().is_empty());
        assert_eq!(untruncate(&t).unwrap(), e);

        let lower = p("UDUDUD");
        let upper = p("UUUDDD");
        let singles = DyckTiling::new(
            lower.clone(),
            upper.clone(),
            vec![tile(&[(0, 1)]), tile(&[(0, 2)]), tile(&[(1, 2)])],
        )
        .unwrap();
        let t = truncate(&singles).unwrap();
        assert!(t.tiles().is_empty());
        assert_eq!(untruncate(&t).unwrap(), singles);
    }

    #[test]
    fn bijection_on_all_small_shapes() {
        for n in 0..=4 {
            let all = enumerate_dyck(n).unwrap();
            for l in &all {
                for m in &all {
                    if !is_above(m, l).unwrap() {
                        continue;
                    }
                    for t in enumerate_tilings(l, m).unwrap() {
                        let tt = truncate(&t).unwrap();
                        assert_eq!(tt.norm(), t.norm());
                        assert_eq!(untruncate(&tt).unwrap(), t);
                    }
                }
            }
        }
    }
}
