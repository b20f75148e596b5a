//! Lattice paths above a Dyck path with shifted endpoints, the regions they
//! cut out, and truncated tilings of those regions.
//!
//! Everything here works in diagonal coordinates: `u = x + y` runs along the
//! diagonal and `v = y - x` measures the distance from it. A path step Up
//! moves `v` by `+1`, a Right step by `-1`. Shifting a path by `(-i, i)` adds
//! `2i` to every `v`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{level_profile, steps_to_string, DyckPath, Step};

/// A monotone path from `(-a, a)` to `(n - b, n + b)` that stays weakly above
/// its base Dyck path. `Step::Down` plays the role of a Right step.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegionPath {
    base: DyckPath,
    a: usize,
    b: usize,
    steps: Vec<Step>,
}

impl RegionPath {
    pub fn new(base: DyckPath, a: usize, b: usize, steps: Vec<Step>) -> Result<Self> {
        if steps.len() != base.steps().len() {
            return Err(Error::Domain(format!(
                "region path has {} steps, base has {}",
                steps.len(),
                base.steps().len()
            )));
        }
        let levels = level_profile(&steps, 2 * a as i64);
        if *levels.last().unwrap() != 2 * b as i64 {
            return Err(Error::Domain(format!(
                "{} does not end at offset {b}",
                steps_to_string(&steps)
            )));
        }
        if levels.iter().zip(base.levels()).any(|(m, l)| *m < l) {
            return Err(Error::Domain(format!(
                "{} dips below {base}",
                steps_to_string(&steps)
            )));
        }
        Ok(Self { base, a, b, steps })
    }

    /// The Dyck path itself viewed as a region path with `a = b = 0`.
    pub fn from_dyck(base: DyckPath, upper: &DyckPath) -> Result<Self> {
        Self::new(base, 0, 0, upper.steps().to_vec())
    }

    pub fn base(&self) -> &DyckPath {
        &self.base
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn levels(&self) -> Vec<i64> {
        level_profile(&self.steps, 2 * self.a as i64)
    }

    /// Lattice points in the `(x, y)` plane from `P` to `Q`.
    pub fn points(&self) -> Vec<(i64, i64)> {
        let mut pt = (-(self.a as i64), self.a as i64);
        let mut out = vec![pt];
        for s in &self.steps {
            match s {
                Step::Up => pt.1 += 1,
                Step::Down => pt.0 += 1,
            }
            out.push(pt);
        }
        out
    }

    /// The upper path as a Dyck path, when `a = b = 0`.
    pub fn as_dyck(&self) -> Option<DyckPath> {
        (self.a == 0 && self.b == 0)
            .then(|| DyckPath::new(self.steps.clone()).expect("region path above a Dyck path"))
    }

    /// Area of the region between base and path, in units of half a cell,
    /// from the shoelace formula on the closed boundary.
    pub fn shoelace_area_halves(&self) -> i64 {
        let mut poly: Vec<(i64, i64)> = Vec::new();
        let mut pt = (0i64, 0i64);
        poly.push(pt);
        for s in self.base.steps() {
            match s {
                Step::Up => pt.1 += 1,
                Step::Down => pt.0 += 1,
            }
            poly.push(pt);
        }
        // N -> Q is a straight segment; then back along the path to P.
        poly.extend(self.points().into_iter().rev());
        // P -> O closes the loop.
        let twice: i64 = (0..poly.len())
            .map(|k| {
                let (x1, y1) = poly[k];
                let (x2, y2) = poly[(k + 1) % poly.len()];
                x1 * y2 - x2 * y1
            })
            .sum();
        twice
    }

    /// The same area by the trapezoid rule in diagonal coordinates.
    pub fn trapezoid_area_halves(&self) -> i64 {
        let d: Vec<i64> = self
            .levels()
            .iter()
            .zip(self.base.levels())
            .map(|(m, l)| m - l)
            .collect();
        d.windows(2).map(|w| (w[0] + w[1]) / 2).sum()
    }
}

impl fmt::Display for RegionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&steps_to_string(&self.steps))
    }
}

impl fmt::Debug for RegionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RegionPath({}; {}, {}; {self})", self.base, self.a, self.b)
    }
}

/// A region between a Dyck path and a region path above it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Region {
    upper: RegionPath,
    area_halves: i64,
}

impl Region {
    pub fn new(upper: RegionPath) -> Self {
        let area_halves = upper.shoelace_area_halves();
        Self { upper, area_halves }
    }

    /// The skew shape `lower / upper` as a region with `a = b = 0`.
    pub fn skew(lower: &DyckPath, upper: &DyckPath) -> Result<Self> {
        Ok(Self::new(RegionPath::from_dyck(lower.clone(), upper)?))
    }

    pub fn lower(&self) -> &DyckPath {
        self.upper.base()
    }

    pub fn upper(&self) -> &RegionPath {
        &self.upper
    }

    pub fn area_halves(&self) -> i64 {
        self.area_halves
    }

    /// Whether `(layer, start, end)` is a legal truncated tile of this region.
    pub fn admits(&self, tile: &TruncTile) -> bool {
        let lam = self.lower().levels();
        let mu = self.upper.levels();
        let (s, e) = (tile.start, tile.end);
        if tile.layer == 0 || s >= e || e >= lam.len() || lam[s] != lam[e] {
            return false;
        }
        let top = 2 * tile.layer as i64;
        (s..=e).all(|u| lam[u] >= lam[s] && mu[u] >= lam[u] + top)
    }
}

#[derive(Serialize)]
struct RegionJson<'a> {
    lower: &'a DyckPath,
    upper: String,
    a: usize,
    b: usize,
    area_halves: i64,
}

impl Serialize for Region {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RegionJson {
            lower: self.lower(),
            upper: self.upper.to_string(),
            a: self.upper.a,
            b: self.upper.b,
            area_halves: self.area_halves,
        }
        .serialize(s)
    }
}

/// A truncated tile: the part of layer `layer` (the strip between the base
/// shifted by `layer - 1` and by `layer` diagonal steps) over `start..=end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TruncTile {
    pub layer: usize,
    pub start: usize,
    pub end: usize,
}

impl TruncTile {
    /// Area in cells, equal to the length of the untruncated tile.
    pub fn area(&self) -> usize {
        self.end - self.start
    }
}

/// A set of truncated tiles satisfying the support and separation rules.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedTiling {
    region: Region,
    tiles: Vec<TruncTile>,
}

impl TruncatedTiling {
    pub fn new(region: Region, mut tiles: Vec<TruncTile>) -> Result<Self> {
        tiles.sort();
        for t in &tiles {
            if !region.admits(t) {
                return Err(Error::Domain(format!("{t:?} does not fit the region")));
            }
        }
        for w in tiles.windows(2) {
            if w[0].layer == w[1].layer && w[0].end >= w[1].start {
                return Err(Error::Domain(format!(
                    "{:?} and {:?} overlap or share a border",
                    w[0], w[1]
                )));
            }
        }
        for t in tiles.iter().filter(|t| t.layer > 1) {
            let supported = tiles
                .iter()
                .any(|s| s.layer + 1 == t.layer && s.start <= t.start && t.end <= s.end);
            if !supported {
                return Err(Error::Domain(format!("{t:?} has no tile beneath it")));
            }
        }
        Ok(Self { region, tiles })
    }

    pub(crate) fn from_sorted_unchecked(region: Region, tiles: Vec<TruncTile>) -> Self {
        Self { region, tiles }
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn tiles(&self) -> &[TruncTile] {
        &self.tiles
    }

    /// Sum of half-lengths.
    pub fn norm(&self) -> usize {
        self.tiles.iter().map(|t| t.area() / 2).sum()
    }

    /// Exponent `area - norm` of the weight, in half-units.
    pub fn weight_halves(&self) -> i64 {
        self.region.area_halves - 2 * self.norm() as i64
    }
}

impl Serialize for TruncatedTiling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TruncatedTiling", 2)?;
        st.serialize_field("region", &self.region)?;
        st.serialize_field("tiles", &self.tiles)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::parse_steps;

    fn rp(base: &str, a: usize, b: usize, steps: &str) -> RegionPath {
        RegionPath::new(base.parse().unwrap(), a, b, parse_steps(steps).unwrap()).unwrap()
    }

    #[test]
    fn areas_agree_on_small_regions() {
        let low = rp("UD", 1, 1, "DU");
        let high = rp("UD", 1, 1, "UD");
        assert_eq!(low.shoelace_area_halves(), 2);
        assert_eq!(high.shoelace_area_halves(), 4);
        assert_eq!(low.trapezoid_area_halves(), 2);
        assert_eq!(high.trapezoid_area_halves(), 4);
        let skew = rp("UDUD", 0, 0, "UUDD");
        assert_eq!(skew.shoelace_area_halves(), 2);
    }

    #[test]
    fn rejects_bad_region_paths() {
        let base: DyckPath = "UD".parse().unwrap();
        assert!(RegionPath::new(base.clone(), 0, 0, parse_steps("DU").unwrap()).is_err());
        assert!(RegionPath::new(base.clone(), 1, 0, parse_steps("UD").unwrap()).is_err());
        assert!(RegionPath::new(base, 0, 0, parse_steps("U").unwrap()).is_err());
    }

    #[test]
    fn truncated_tiling_rules() {
        let region = Region::new(rp("UD", 1, 1, "UD"));
        let tile = TruncTile {
            layer: 1,
            start: 0,
            end: 2,
        };
        assert!(region.admits(&tile));
        let t = TruncatedTiling::new(region.clone(), vec![tile]).unwrap();
        assert_eq!(t.norm(), 1);
        assert_eq!(t.weight_halves(), 2);
        let lifted = TruncTile { layer: 2, ..tile };
        assert!(TruncatedTiling::new(region, vec![lifted]).is_err());
    }
}
