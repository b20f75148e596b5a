//! Enumeration of region paths and of truncated tilings.

use crate::bsum::region::{Region, RegionPath, TruncTile, TruncatedTiling};
use crate::error::{check_capacity, Result};
use crate::paths::{DyckPath, Step};

/// Size limits for the region enumerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionLimits {
    pub half_length: usize,
    pub offset: usize,
}

impl Default for RegionLimits {
    fn default() -> Self {
        Self {
            half_length: 4,
            offset: 3,
        }
    }
}

impl RegionLimits {
    pub fn check(&self, lower: &DyckPath, a: usize, b: usize) -> Result<()> {
        check_capacity("region half-length", lower.half_length(), self.half_length)?;
        check_capacity("region start offset", a, self.offset)?;
        check_capacity("region end offset", b, self.offset)
    }
}

/// Every region path in `L(lower; a, b)` with its region, lexicographic with
/// Up before Right.
pub fn enumerate_region_paths(lower: &DyckPath, a: usize, b: usize) -> Result<Vec<Region>> {
    enumerate_region_paths_bounded(lower, a, b, RegionLimits::default())
}

pub fn enumerate_region_paths_bounded(
    lower: &DyckPath,
    a: usize,
    b: usize,
    limits: RegionLimits,
) -> Result<Vec<Region>> {
    limits.check(lower, a, b)?;
    let lam = lower.levels();
    let len = lower.steps().len();
    let target = 2 * b as i64;
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(len);
    fn rec(
        lam: &[i64],
        target: i64,
        v: i64,
        buf: &mut Vec<Step>,
        out: &mut Vec<Vec<Step>>,
    ) {
        let k = buf.len();
        if k + 1 == lam.len() {
            if v == target {
                out.push(buf.clone());
            }
            return;
        }
        let remaining = (lam.len() - k - 2) as i64;
        for (step, next) in [(Step::Up, v + 1), (Step::Down, v - 1)] {
            if next >= lam[k + 1] && (next - target).abs() <= remaining {
                buf.push(step);
                rec(lam, target, next, buf, out);
                buf.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(&lam, target, 2 * a as i64, &mut buf, &mut raw);
    debug_assert!(raw.iter().all(|s| s.len() == len));
    for steps in raw {
        out.push(Region::new(RegionPath::new(lower.clone(), a, b, steps)?));
    }
    Ok(out)
}

/// Every truncated tiling of `region`, built one layer at a time.
pub fn enumerate_truncated_region(region: &Region) -> Result<Vec<TruncatedTiling>> {
    enumerate_truncated_region_bounded(region, RegionLimits::default())
}

pub fn enumerate_truncated_region_bounded(
    region: &Region,
    limits: RegionLimits,
) -> Result<Vec<TruncatedTiling>> {
    let up = region.upper();
    limits.check(region.lower(), up.a(), up.b())?;
    let lam = region.lower().levels();
    let mu = up.levels();
    let mut out = Vec::new();
    let mut acc = Vec::new();
    layer_step(region, &lam, &mu, 1, None, &mut acc, &mut out);
    Ok(out)
}

/// Intervals `[s, e]` over which the base is a Dyck subpath and the region
/// is tall enough for layer `layer`.
fn layer_candidates(lam: &[i64], mu: &[i64], layer: usize) -> Vec<(usize, usize)> {
    let top = 2 * layer as i64;
    let mut out = Vec::new();
    for s in 0..lam.len() {
        if mu[s] < lam[s] + top {
            continue;
        }
        for e in s + 1..lam.len() {
            if lam[e] < lam[s] || mu[e] < lam[e] + top {
                break;
            }
            if lam[e] == lam[s] {
                out.push((s, e));
            }
        }
    }
    out
}

fn layer_step(
    region: &Region,
    lam: &[i64],
    mu: &[i64],
    layer: usize,
    parents: Option<&[(usize, usize)]>,
    acc: &mut Vec<TruncTile>,
    out: &mut Vec<TruncatedTiling>,
) {
    let cands: Vec<(usize, usize)> = layer_candidates(lam, mu, layer)
        .into_iter()
        .filter(|&(s, e)| match parents {
            None => true,
            Some(ps) => ps.iter().any(|&(ps_, pe)| ps_ <= s && e <= pe),
        })
        .collect();
    let mut chosen = Vec::new();
    choose(region, lam, mu, layer, &cands, 0, None, &mut chosen, acc, out);
}

#[allow(clippy::too_many_arguments)]
fn choose(
    region: &Region,
    lam: &[i64],
    mu: &[i64],
    layer: usize,
    cands: &[(usize, usize)],
    from: usize,
    last_end: Option<usize>,
    chosen: &mut Vec<(usize, usize)>,
    acc: &mut Vec<TruncTile>,
    out: &mut Vec<TruncatedTiling>,
) {
    if chosen.is_empty() {
        let mut tiles = acc.clone();
        tiles.sort();
        out.push(TruncatedTiling::from_sorted_unchecked(region.clone(), tiles));
    } else {
        let base = acc.len();
        acc.extend(chosen.iter().map(|&(start, end)| TruncTile { layer, start, end }));
        let parents = chosen.clone();
        layer_step(region, lam, mu, layer + 1, Some(&parents), acc, out);
        acc.truncate(base);
    }
    for j in from..cands.len() {
        let (s, e) = cands[j];
        if last_end.is_some_and(|le| s <= le) {
            continue;
        }
        chosen.push((s, e));
        choose(region, lam, mu, layer, cands, j + 1, Some(e), chosen, acc, out);
        chosen.pop();
    }
}

/// A truncated tile in free position: its center line over `start..=end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    pub start: usize,
    pub centers: Vec<i64>,
}

impl Band {
    pub fn end(&self) -> usize {
        self.start + self.centers.len() - 1
    }

    fn at(&self, u: usize) -> i64 {
        self.centers[u - self.start]
    }

    fn overlaps(&self, other: &Band) -> bool {
        let lo = self.start.max(other.start);
        let hi = self.end().min(other.end());
        lo < hi && (lo..=hi).any(|u| self.at(u) == other.at(u))
    }

    fn shares_side(&self, other: &Band) -> bool {
        (self.end() == other.start && self.at(self.end()) == other.at(other.start))
            || (other.end() == self.start && other.at(other.end()) == self.at(self.start))
    }

    /// Whether the band is this one moved one unit toward the diagonal.
    fn contains_shift_of(&self, other: &Band) -> bool {
        self.start <= other.start
            && other.end() <= self.end()
            && (other.start..=other.end()).all(|u| self.at(u) == other.at(u) - 2)
    }
}

/// Brute-force truncated tilings: any Dyck-shaped band inside the region is
/// a candidate, and subsets are filtered by the two tiling rules directly.
/// Only used to cross-check [`enumerate_truncated_region`].
pub fn enumerate_truncated_bands(region: &Region) -> Vec<Vec<Band>> {
    let lam = region.lower().levels();
    let mu = region.upper().levels();
    let fits = |u: usize, c: i64| c > lam[u] && c < mu[u];
    let mut cands = Vec::new();
    for s in 0..lam.len() {
        let base_parity = (s as i64 + 1).rem_euclid(2);
        for c0 in lam[s] + 1..mu[s] {
            if c0.rem_euclid(2) != base_parity || !fits(s, c0) {
                continue;
            }
            let mut stack = vec![vec![c0]];
            while let Some(path) = stack.pop() {
                let u = s + path.len() - 1;
                let c = *path.last().unwrap();
                if path.len() > 1 && c == c0 {
                    cands.push(Band {
                        start: s,
                        centers: path.clone(),
                    });
                }
                if u + 1 >= lam.len() {
                    continue;
                }
                for next in [c + 1, c - 1] {
                    if next >= c0 && fits(u + 1, next) {
                        let mut p = path.clone();
                        p.push(next);
                        stack.push(p);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        cands: &[Band],
        lam: &[i64],
        from: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<Band>>,
    ) {
        let supported = chosen.iter().all(|&t| {
            let band = &cands[t];
            let touches_interior =
                (band.start..=band.end()).any(|u| band.at(u) - 1 > lam[u]);
            !touches_interior || chosen.iter().any(|&o| cands[o].contains_shift_of(band))
        });
        if supported {
            out.push(chosen.iter().map(|&t| cands[t].clone()).collect());
        }
        for j in from..cands.len() {
            let ok = chosen
                .iter()
                .all(|&t| !cands[t].overlaps(&cands[j]) && !cands[t].shares_side(&cands[j]));
            if ok {
                chosen.push(j);
                rec(cands, lam, j + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(&cands, &lam, 0, &mut chosen, &mut out);
    out
}

/// Converts bands to layer form when every band follows a shifted base.
pub fn bands_to_layers(region: &Region, bands: &[Band]) -> Option<Vec<TruncTile>> {
    let lam = region.lower().levels();
    let mut tiles = Vec::new();
    for band in bands {
        let offset = band.centers[0] - lam[band.start];
        if (band.start..=band.end()).any(|u| band.at(u) - lam[u] != offset) {
            return None;
        }
        tiles.push(TruncTile {
            layer: ((offset + 1) / 2) as usize,
            start: band.start,
            end: band.end(),
        });
    }
    tiles.sort();
    Some(tiles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::enumerate_dyck;
    use crate::tilings::{enumerate_tilings, truncate};

    fn p(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    #[test]
    fn region_paths_small() {
        let rs = enumerate_region_paths(&p("UD"), 1, 1).unwrap();
        let areas: Vec<i64> = rs.iter().map(|r| r.area_halves()).collect();
        assert_eq!(areas, vec![4, 2]);
        assert!(enumerate_region_paths(&p("UD"), 0, 2).unwrap().is_empty());
        let lower = p("UDUD");
        let rs = enumerate_region_paths(&lower, 0, 0).unwrap();
        let uppers: Vec<String> = rs.iter().map(|r| r.upper().to_string()).collect();
        assert_eq!(uppers, vec!["UUDD", "UDUD"]);
        assert_eq!(rs[0].area_halves(), 2);
        assert!(enumerate_region_paths(&lower, 4, 0).is_err());
    }

    #[test]
    fn truncated_tilings_small() {
        let rs = enumerate_region_paths(&p("UD"), 1, 1).unwrap();
        let high = enumerate_truncated_region(&rs[0]).unwrap();
        let low = enumerate_truncated_region(&rs[1]).unwrap();
        assert_eq!(low.len(), 1);
        assert!(low[0].tiles().is_empty());
        assert_eq!(high.len(), 2);
        assert_eq!(high[1].tiles().len(), 1);
        assert_eq!(high[1].tiles()[0].area(), 2);
    }

    #[test]
    fn layer_form_matches_free_bands() {
        for n in 0..=3 {
            for lower in enumerate_dyck(n).unwrap() {
                for a in 0..=2 {
                    for b in 0..=2 {
                        for region in enumerate_region_paths(&lower, a, b).unwrap() {
                            let mut layered: Vec<Vec<TruncTile>> = enumerate_truncated_region(&region)
                                .unwrap()
                                .into_iter()
                                .map(|t| t.tiles().to_vec())
                                .collect();
                            let mut free: Vec<Vec<TruncTile>> = enumerate_truncated_bands(&region)
                                .iter()
                                .map(|bs| bands_to_layers(&region, bs).expect("layer lemma"))
                                .collect();
                            layered.sort();
                            free.sort();
                            assert_eq!(layered, free, "{:?}", region.upper());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn skew_truncations_match_tilings() {
        for n in 0..=4 {
            for lower in enumerate_dyck(n).unwrap() {
                for region in enumerate_region_paths(&lower, 0, 0).unwrap() {
                    let upper = region.upper().as_dyck().unwrap();
                    let mut from_tilings: Vec<_> = enumerate_tilings(&lower, &upper)
                        .unwrap()
                        .iter()
                        .map(|t| truncate(t).unwrap())
                        .collect();
                    let mut direct = enumerate_truncated_region(&region).unwrap();
                    from_tilings.sort_by(|x, y| x.tiles().cmp(y.tiles()));
                    direct.sort_by(|x, y| x.tiles().cmp(y.tiles()));
                    assert_eq!(from_tilings, direct);
                }
            }
        }
    }

    #[test]
    fn enumerated_tilings_pass_validation() {
        let rs = enumerate_region_paths(&p("UUDUDD"), 2, 1).unwrap();
        for region in rs {
            for t in enumerate_truncated_region(&region).unwrap() {
                let again = TruncatedTiling::new(region.clone(), t.tiles().to_vec()).unwrap();
                assert_eq!(again, t);
            }
        }
    }
}
