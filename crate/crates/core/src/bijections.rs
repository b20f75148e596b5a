//! Perfect matchings, Hermite histories, and the maps linking them to Dyck
//! tilings.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_capacity, Error, Result};
use crate::paths::{DyckPath, Step};
use crate::tilings::{cell_at, cell_u, cell_v, DyckTile, DyckTiling};

/// Default largest half-length for matching and history enumeration.
pub const DEFAULT_MATCHING_LIMIT: usize = 6;

/// A perfect matching of `1..=2n`, pairs sorted by their smaller end.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchStats {
    pub crossings: usize,
    pub nestings: usize,
}

impl Matching {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let n2 = 2 * pairs.len();
        let mut seen = vec![false; n2 + 1];
        let mut norm = Vec::with_capacity(pairs.len());
        for (i, j) in pairs {
            let (i, j) = (i.min(j), i.max(j));
            if i == j || i == 0 || j > n2 || seen[i] || seen[j] {
                return Err(Error::Domain(format!(
                    "({i},{j}) does not fit a perfect matching of 1..={n2}"
                )));
            }
            seen[i] = true;
            seen[j] = true;
            norm.push((i, j));
        }
        norm.sort();
        Ok(Self { pairs: norm })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn half_length(&self) -> usize {
        self.pairs.len()
    }

    /// Up at each smaller end, Down at each larger end.
    pub fn shape(&self) -> DyckPath {
        let mut steps = vec![Step::Down; 2 * self.pairs.len()];
        for &(i, _) in &self.pairs {
            steps[i - 1] = Step::Up;
        }
        DyckPath::new(steps).expect("openers precede closers")
    }

    pub fn stats(&self) -> MatchStats {
        let mut s = MatchStats {
            crossings: 0,
            nestings: 0,
        };
        for (k, &(_, j)) in self.pairs.iter().enumerate() {
            for &(i2, j2) in &self.pairs[k + 1..] {
                // i < i2 by sorting.
                if i2 < j && j < j2 {
                    s.crossings += 1;
                } else if j2 < j {
                    s.nestings += 1;
                }
            }
        }
        s
    }
}

impl Serialize for Matching {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[usize; 2]> = self.pairs.iter().map(|&(i, j)| [i, j]).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<[usize; 2]>::deserialize(d)?;
        Matching::new(v.into_iter().map(|[i, j]| (i, j)).collect())
            .map_err(serde::de::Error::custom)
    }
}

pub fn shape_cross_nest(m: &Matching) -> (DyckPath, MatchStats) {
    (m.shape(), m.stats())
}

/// All matchings of `1..=2n`, lexicographic in the sorted pair list.
pub fn enumerate_matchings(n: usize) -> Result<Vec<Matching>> {
    enumerate_matchings_bounded(n, DEFAULT_MATCHING_LIMIT)
}

pub fn enumerate_matchings_bounded(n: usize, limit: usize) -> Result<Vec<Matching>> {
    check_capacity("matching half-length", n, limit)?;
    fn rec(used: &mut Vec<bool>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
        let Some(i) = (1..used.len()).find(|&i| !used[i]) else {
            out.push(Matching { pairs: acc.clone() });
            return;
        };
        used[i] = true;
        for j in i + 1..used.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            acc.push((i, j));
            rec(used, acc, out);
            acc.pop();
            used[j] = false;
        }
        used[i] = false;
    }
    let mut out = Vec::new();
    rec(&mut vec![false; 2 * n + 1], &mut Vec::new(), &mut out);
    Ok(out)
}

/// A Dyck path with a label below the height on every down step.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "HistoryJson")]
pub struct HermiteHistory {
    path: DyckPath,
    labels: Vec<usize>,
}

#[derive(Deserialize)]
struct HistoryJson {
    path: DyckPath,
    labels: Vec<usize>,
}

impl TryFrom<HistoryJson> for HermiteHistory {
    type Error = Error;
    fn try_from(h: HistoryJson) -> Result<Self> {
        HermiteHistory::new(h.path, h.labels)
    }
}

/// Height of every down step: the level just before it.
fn down_heights(path: &DyckPath) -> Vec<usize> {
    let levels = path.levels();
    path.steps()
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == Step::Down)
        .map(|(k, _)| levels[k] as usize)
        .collect()
}

impl HermiteHistory {
    pub fn new(path: DyckPath, labels: Vec<usize>) -> Result<Self> {
        let heights = down_heights(&path);
        if heights.len() != labels.len() {
            return Err(Error::Domain(format!(
                "{} labels for {} down steps",
                labels.len(),
                heights.len()
            )));
        }
        if let Some(k) = (0..labels.len()).find(|&k| labels[k] >= heights[k]) {
            return Err(Error::Domain(format!(
                "label {} on down step {} of height {}",
                labels[k],
                k + 1,
                heights[k]
            )));
        }
        Ok(Self { path, labels })
    }

    pub fn path(&self) -> &DyckPath {
        &self.path
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Sum of labels.
    pub fn norm(&self) -> usize {
        self.labels.iter().sum()
    }
}

/// Labels each closer by the number of pairs crossing it from the left.
pub fn zeta(m: &Matching) -> HermiteHistory {
    let n2 = 2 * m.half_length();
    let mut label_at = vec![0usize; n2 + 1];
    for &(i, j) in m.pairs() {
        label_at[j] = m
            .pairs()
            .iter()
            .filter(|&&(i2, j2)| i < i2 && i2 < j && j < j2)
            .count();
    }
    let path = m.shape();
    let labels = path
        .steps()
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == Step::Down)
        .map(|(k, _)| label_at[k + 1])
        .collect();
    HermiteHistory::new(path, labels).expect("crossing counts stay below the height")
}

/// Label `l` closes the open pair with exactly `l` later-opened pairs still open.
pub fn zeta_inv(h: &HermiteHistory) -> Result<Matching> {
    let mut open: Vec<usize> = Vec::new();
    let mut labels = h.labels.iter();
    let mut pairs = Vec::new();
    for (k, s) in h.path.steps().iter().enumerate() {
        match s {
            Step::Up => open.push(k + 1),
            Step::Down => {
                let l = *labels.next().expect("one label per down step");
                if l >= open.len() {
                    return Err(Error::Domain(format!(
                        "label {l} with only {} open pairs",
                        open.len()
                    )));
                }
                let i = open.remove(open.len() - 1 - l);
                pairs.push((i, k + 1));
            }
        }
    }
    Matching::new(pairs)
}

/// Every history on `path`, labels in lexicographic order.
pub fn enumerate_hermite(path: &DyckPath) -> Result<Vec<HermiteHistory>> {
    check_capacity("history half-length", path.half_length(), DEFAULT_MATCHING_LIMIT)?;
    let heights = down_heights(path);
    let mut out = Vec::new();
    let mut labels = vec![0usize; heights.len()];
    loop {
        out.push(HermiteHistory {
            path: path.clone(),
            labels: labels.clone(),
        });
        // Odometer increment, last position fastest.
        let mut k = heights.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            labels[k] += 1;
            if labels[k] < heights[k] {
                break;
            }
            labels[k] = 0;
        }
    }
}

/// Walks south from every down step of the upper path, hopping from each
/// tile's northeast cell to below its southwest cell; the label is the number
/// of hops.
pub fn psi(t: &DyckTiling) -> Result<HermiteHistory> {
    let owner = t.owners();
    let mut traversed = vec![0usize; t.size()];
    let mut labels = Vec::new();
    for (x, h) in t.upper().column_heights().into_iter().enumerate() {
        let mut cell = (x as i32, h as i32 - 1);
        let mut hops = 0;
        while let Some(&id) = owner.get(&cell) {
            let tile = &t.tiles()[id];
            if tile.northeast() != cell {
                break;
            }
            hops += 1;
            traversed[id] += 1;
            let sw = tile.southwest();
            cell = (sw.0, sw.1 - 1);
        }
        labels.push(hops);
    }
    if let Some(id) = traversed.iter().position(|&c| c != 1) {
        return Err(Error::Invariant(format!(
            "tile {:?} was traversed {} times",
            t.tiles()[id].cells(),
            traversed[id]
        )));
    }
    HermiteHistory::new(t.upper().clone(), labels)
        .map_err(|e| Error::Invariant(format!("walk produced an invalid history: {e}")))
}

/// First peak of `path` high enough to have a cell beneath it above the
/// zigzag: returns the index of its up step.
fn first_high_peak(path: &DyckPath) -> Option<usize> {
    let levels = path.levels();
    let s = path.steps();
    (0..s.len().saturating_sub(1))
        .find(|&k| s[k] == Step::Up && s[k + 1] == Step::Down && levels[k + 1] >= 2)
}

/// Rebuilds the tiling from a history by undoing the cell-addition recursion.
pub fn psi_inv(h: &HermiteHistory) -> Result<DyckTiling> {
    let mu = &h.path;
    let Some(k) = first_high_peak(mu) else {
        if h.norm() != 0 {
            return Err(Error::Invariant(format!("nonzero labels on {mu}")));
        }
        return Ok(DyckTiling::empty(mu.clone()));
    };
    let d = mu.steps()[..k].iter().filter(|s| **s == Step::Down).count();
    let label = h.labels[d];
    let levels = mu.levels();
    if label >= 1 {
        // The cell under the peak is a tile of its own.
        let mut steps = mu.steps().to_vec();
        steps.swap(k, k + 1);
        let mut labels = h.labels.clone();
        labels[d] -= 1;
        let smaller = psi_inv(&HermiteHistory::new(DyckPath::new(steps)?, labels)?)?;
        let mut tiles = smaller.tiles().to_vec();
        tiles.push(DyckTile::new(vec![cell_at(k as i64 + 1, levels[k])])?);
        DyckTiling::new(smaller.lower().clone(), mu.clone(), tiles)
    } else {
        let mut steps = mu.steps().to_vec();
        steps.drain(k..k + 2);
        let mut labels = h.labels.clone();
        labels.remove(d);
        let smaller = psi_inv(&HermiteHistory::new(DyckPath::new(steps)?, labels)?)?;
        expand_slice(&smaller, k)
    }
}

/// Removes the diagonal slice through the cell `s` under a peak of the upper
/// path, shortening both paths by one chord.
pub fn collapse_slice(t: &DyckTiling, s: (i32, i32)) -> Result<DyckTiling> {
    let u0 = (cell_u(s) - 1) as usize;
    let mu = t.upper().steps();
    let lam = t.lower().steps();
    if u0 + 1 >= mu.len() || mu[u0] != Step::Up || mu[u0 + 1] != Step::Down {
        return Err(Error::Domain(format!(
            "cell {s:?} is not under a peak of {}",
            t.upper()
        )));
    }
    let owner = t.owners();
    if let Some(&id) = owner.get(&s) {
        if t.tiles()[id].length() == 0 {
            return Err(Error::Domain(format!("cell {s:?} is a tile by itself")));
        }
    }
    if lam[u0] != Step::Up || lam[u0 + 1] != Step::Down {
        return Err(Error::Domain(format!(
            "lower path {} has no peak at the slice",
            t.lower()
        )));
    }
    let (a, b) = (u0 as i64, u0 as i64 + 2);
    let mut tiles = Vec::with_capacity(t.size());
    for tile in t.tiles() {
        let by_u: HashMap<i64, i64> = tile.cells().iter().map(|&c| (cell_u(c), cell_v(c))).collect();
        let meets = (a..=b).any(|u| by_u.contains_key(&u));
        if meets {
            let ok = matches!(
                (by_u.get(&a), by_u.get(&(a + 1)), by_u.get(&b)),
                (Some(&x), Some(&y), Some(&z)) if y == x + 1 && z == x
            );
            if !ok {
                return Err(Error::Domain(format!(
                    "tile {:?} does not cross the slice as a bump",
                    tile.cells()
                )));
            }
        }
        let cells: Vec<_> = tile
            .cells()
            .iter()
            .filter_map(|&c| {
                let u = cell_u(c);
                match u {
                    _ if u <= a => Some(c),
                    _ if u <= b => None,
                    _ => Some(cell_at(u - 2, cell_v(c))),
                }
            })
            .collect();
        tiles.push(DyckTile::new(cells)?);
    }
    let cut = |path: &[Step]| -> Result<DyckPath> {
        let mut v = path.to_vec();
        v.drain(u0..u0 + 2);
        DyckPath::new(v)
    };
    DyckTiling::new(cut(lam)?, cut(mu)?, tiles)
}

/// Inverse of [`collapse_slice`]: inserts a peak at step index `u0` in both
/// paths and stretches every cell centred on that diagonal into a bump.
pub fn expand_slice(t: &DyckTiling, u0: usize) -> Result<DyckTiling> {
    if u0 > t.upper().steps().len() {
        return Err(Error::Domain(format!("slice index {u0} is past the end")));
    }
    let a = u0 as i64;
    let tiles = t
        .tiles()
        .iter()
        .map(|tile| {
            let mut cells = Vec::with_capacity(tile.cells().len() + 2);
            for &c in tile.cells() {
                let (u, v) = (cell_u(c), cell_v(c));
                if u < a {
                    cells.push(c);
                } else if u == a {
                    cells.push(c);
                    cells.push(cell_at(a + 1, v + 1));
                    cells.push(cell_at(a + 2, v));
                } else {
                    cells.push(cell_at(u + 2, v));
                }
            }
            DyckTile::new(cells)
        })
        .collect::<Result<Vec<_>>>()?;
    let grow = |path: &DyckPath| -> Result<DyckPath> {
        let mut v = path.steps().to_vec();
        v.splice(u0..u0, [Step::Up, Step::Down]);
        DyckPath::new(v)
    };
    DyckTiling::new(grow(t.lower())?, grow(t.upper())?, tiles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{enumerate_dyck, is_above};
    use crate::qpoly::odd_double_factorial;
    use crate::tilings::enumerate_tilings;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn m(pairs: &[(usize, usize)]) -> Matching {
        Matching::new(pairs.to_vec()).unwrap()
    }

    fn p(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    fn tile(cells: &[(i32, i32)]) -> DyckTile {
        DyckTile::new(cells.to_vec()).unwrap()
    }

    fn tilings_under(mu: &DyckPath) -> Vec<DyckTiling> {
        let mut out = Vec::new();
        for l in enumerate_dyck(mu.half_length()).unwrap() {
            if is_above(mu, &l).unwrap() {
                out.extend(enumerate_tilings(&l, mu).unwrap());
            }
        }
        out
    }

    #[test]
    fn shapes_and_statistics() {
        let fig = m(&[(1, 5), (2, 3), (4, 7), (6, 8)]);
        let (shape, st) = shape_cross_nest(&fig);
        assert_eq!(shape, p("UUDUDUDD"));
        assert_eq!((st.crossings, st.nestings), (2, 1));
        let (shape, st) = shape_cross_nest(&m(&[(1, 2), (3, 4), (5, 6)]));
        assert_eq!(shape, p("UDUDUD"));
        assert_eq!((st.crossings, st.nestings), (0, 0));
        let (shape, st) = shape_cross_nest(&m(&[(1, 4), (2, 3)]));
        assert_eq!(shape, p("UUDD"));
        assert_eq!((st.crossings, st.nestings), (0, 1));
        assert!(Matching::new(vec![(1, 2), (2, 3)]).is_err());
    }

    #[test]
    fn zeta_examples() {
        let fig = m(&[(1, 5), (2, 3), (4, 7), (6, 8)]);
        let h = zeta(&fig);
        assert_eq!(h.labels(), &[0, 1, 1, 0]);
        assert_eq!(zeta_inv(&h).unwrap(), fig);
        assert_eq!(zeta(&m(&[(1, 2), (3, 4)])).labels(), &[0, 0]);
        let cross = m(&[(1, 3), (2, 4)]);
        let h = zeta(&cross);
        assert_eq!((h.path().clone(), h.labels().to_vec()), (p("UUDD"), vec![1, 0]));
        assert_eq!(zeta_inv(&h).unwrap(), cross);
        let zig = HermiteHistory::new(p("UDUDUD"), vec![0, 0, 0]).unwrap();
        assert_eq!(zeta_inv(&zig).unwrap(), m(&[(1, 2), (3, 4), (5, 6)]));
    }

    #[test]
    fn matching_counts() {
        assert_eq!(enumerate_matchings(1).unwrap(), vec![m(&[(1, 2)])]);
        assert_eq!(enumerate_matchings(2).unwrap().len(), 3);
        assert_eq!(enumerate_matchings(5).unwrap().len(), 945);
        assert!(enumerate_matchings(7).is_err());
    }

    #[test]
    fn hermite_counts() {
        assert_eq!(enumerate_hermite(&p("UDUDUD")).unwrap().len(), 1);
        assert_eq!(enumerate_hermite(&p("UUDD")).unwrap().len(), 2);
        assert_eq!(enumerate_hermite(&DyckPath::delta(3)).unwrap().len(), 6);
        assert!(HermiteHistory::new(p("UUDD"), vec![0, 1]).is_err());
    }

    #[test]
    fn zeta_roundtrip_and_statistics() {
        for n in 0..=5 {
            let ms = enumerate_matchings(n).unwrap();
            assert_eq!(BigInt::from(ms.len()), odd_double_factorial(n as u64));
            for mm in &ms {
                let h = zeta(mm);
                let st = mm.stats();
                assert_eq!(h.norm(), st.crossings);
                assert_eq!(h.path().ht(), st.crossings + st.nestings);
                assert_eq!(&zeta_inv(&h).unwrap(), mm);
            }
            let mut count = 0;
            for path in enumerate_dyck(n).unwrap() {
                for h in enumerate_hermite(&path).unwrap() {
                    assert_eq!(zeta(&zeta_inv(&h).unwrap()), h);
                    count += 1;
                }
            }
            assert_eq!(count, ms.len());
        }
    }

    #[test]
    fn psi_small_examples() {
        let e = DyckTiling::empty(p("UUDUDD"));
        assert_eq!(psi(&e).unwrap().labels(), &[0, 0, 0]);
        let one = DyckTiling::new(p("UDUD"), p("UUDD"), vec![tile(&[(0, 1)])]).unwrap();
        let h = psi(&one).unwrap();
        assert_eq!(h.labels(), &[1, 0]);
        assert_eq!(psi_inv(&h).unwrap(), one);
        let zero = HermiteHistory::new(p("UUDUDD"), vec![0, 0, 0]).unwrap();
        assert_eq!(psi_inv(&zero).unwrap(), e);
    }

    #[test]
    fn psi_is_a_bijection() {
        for n in 0..=4 {
            for mu in enumerate_dyck(n).unwrap() {
                let ts = tilings_under(&mu);
                let mut hs = Vec::new();
                for t in &ts {
                    let h = psi(t).unwrap();
                    assert_eq!(h.norm(), t.size());
                    assert_eq!(&psi_inv(&h).unwrap(), t);
                    hs.push(h);
                }
                hs.sort();
                assert_eq!(hs, enumerate_hermite(&mu).unwrap(), "mu={mu}");
            }
        }
    }

    #[test]
    fn collapse_examples() {
        // A single length-2 tile over one slice shrinks to one cell.
        let lower = p("UDUDUD");
        let upper = p("UUUDDD");
        let t = enumerate_tilings(&lower, &upper)
            .unwrap()
            .into_iter()
            .find(|t| t.size() == 1)
            .unwrap();
        assert_eq!(t.tiles()[0].length(), 2);
        let c = collapse_slice(&t, (0, 2)).unwrap();
        assert_eq!((c.lower().clone(), c.upper().clone()), (p("UDUD"), p("UUDD")));
        assert_eq!(c.size(), 1);
        assert_eq!(c.tiles()[0].length(), 0);
        assert_eq!(expand_slice(&c, 2).unwrap(), t);

        // Slice outside the shape: both paths share the peak.
        let e = DyckTiling::empty(p("UUDD"));
        let c = collapse_slice(&e, (0, 1)).unwrap();
        assert_eq!(c, DyckTiling::empty(p("UD")));
    }

    #[test]
    fn collapse_rejects_single_cells() {
        let one = DyckTiling::new(p("UDUD"), p("UUDD"), vec![tile(&[(0, 1)])]).unwrap();
        assert!(collapse_slice(&one, (0, 1)).is_err());
    }

    #[test]
    fn collapse_expand_roundtrip() {
        for n in 1..=4 {
            for mu in enumerate_dyck(n).unwrap() {
                let lv = mu.levels();
                for t in tilings_under(&mu) {
                    for k in 0..2 * n - 1 {
                        let st = mu.steps();
                        if !(st[k] == Step::Up && st[k + 1] == Step::Down) {
                            continue;
                        }
                        let s = cell_at(k as i64 + 1, lv[k]);
                        if let Ok(c) = collapse_slice(&t, s) {
                            assert_eq!(c.size(), t.size());
                            assert_eq!(expand_slice(&c, k).unwrap(), t);
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn zeta_inverse_on_random_matchings(
            pts in (0usize..=6).prop_flat_map(|n| Just((1..=2 * n).collect::<Vec<_>>()).prop_shuffle())
        ) {
            let pairs = pts.chunks(2).map(|c| (c[0], c[1])).collect();
            let mm = Matching::new(pairs).unwrap();
            prop_assert_eq!(zeta_inv(&zeta(&mm)).unwrap(), mm);
        }
    }
}
