//! Exhaustive checks of the intermediate identities behind the closed form.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use super::evaluate::{bq_brute, bq_delta, BqEvaluator};
use super::region::{Region, RegionPath, TruncTile, TruncatedTiling};
use super::truncated::{
    bands_to_layers, enumerate_region_paths, enumerate_region_paths_bounded, enumerate_truncated_bands,
    enumerate_truncated_region, enumerate_truncated_region_bounded, RegionLimits,
};
use crate::error::{Error, Result};
use crate::paths::{enumerate_dyck, DyckPath};
use crate::qpoly::{qbinom, qmultinom, QPoly};
use crate::report::CheckRecord;

/// Default ranges: sizes, offsets and peak shifts up to 3, at most 3 peaks.
pub const LEMMA_RANGE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaKind {
    Layer,
    Split,
    Tile,
    Area,
    Formula,
    Induct,
    TwoPeak,
}

impl LemmaKind {
    pub const ALL: [LemmaKind; 7] = [
        LemmaKind::Layer,
        LemmaKind::Split,
        LemmaKind::Tile,
        LemmaKind::Area,
        LemmaKind::Formula,
        LemmaKind::Induct,
        LemmaKind::TwoPeak,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaKind::Layer => "layer",
            LemmaKind::Split => "split",
            LemmaKind::Tile => "tile",
            LemmaKind::Area => "area",
            LemmaKind::Formula => "formula",
            LemmaKind::Induct => "induct",
            LemmaKind::TwoPeak => "two_peak",
        }
    }
}

impl fmt::Display for LemmaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One record per checked instance.
pub fn lemma_records(kind: LemmaKind) -> Result<Vec<CheckRecord>> {
    match kind {
        LemmaKind::Layer => check_layer(),
        LemmaKind::Split => check_split(),
        LemmaKind::Tile => check_tile(),
        LemmaKind::Area => check_area(),
        LemmaKind::Formula => Ok(check_formula()),
        LemmaKind::Induct => check_induct(),
        LemmaKind::TwoPeak => check_two_peak(),
    }
}

pub fn lemma_checks(kind: LemmaKind) -> Result<bool> {
    Ok(lemma_records(kind)?.iter().all(|r| r.equal))
}

/// Calls `f` on every region over a Dyck path of half-length at most `n`
/// with offsets at most `ab`.
fn for_regions(
    n: usize,
    ab: usize,
    mut f: impl FnMut(&DyckPath, usize, usize, Region) -> Result<()>,
) -> Result<()> {
    for k in 0..=n {
        for lower in enumerate_dyck(k)? {
            for a in 0..=ab {
                for b in 0..=ab {
                    for region in enumerate_region_paths(&lower, a, b)? {
                        f(&lower, a, b, region)?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn params(region: &Region) -> serde_json::Value {
    let up = region.upper();
    json!({"lower": region.lower().to_string(), "upper": up.to_string(), "a": up.a(), "b": up.b()})
}

/// Tilings found with unrestricted tile shapes all follow shifted copies of
/// the base, and agree with the layer-by-layer enumeration.
fn check_layer() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for_regions(LEMMA_RANGE, 2, |_, _, _, region| {
        let free = enumerate_truncated_bands(&region);
        let converted: Option<Vec<Vec<TruncTile>>> =
            free.iter().map(|bs| bands_to_layers(&region, bs)).collect();
        let mut layered: Vec<Vec<TruncTile>> = enumerate_truncated_region(&region)?
            .into_iter()
            .map(|t| t.tiles().to_vec())
            .collect();
        layered.sort();
        let equal = match converted {
            Some(mut c) => {
                c.sort();
                c == layered
            }
            None => false,
        };
        out.push(CheckRecord::with_verdict(
            "lemma_layer",
            params(&region),
            free.len(),
            layered.len(),
            equal,
        ));
        Ok(())
    })?;
    Ok(out)
}

fn norm_poly(tilings: &[TruncatedTiling]) -> QPoly {
    tilings.iter().map(|t| QPoly::q_pow(t.norm() as i64)).sum()
}

/// Cuts every tile of `t` along the diagonal through the junction `cut`.
fn split_tiling(t: &TruncatedTiling, cut: usize) -> (Vec<TruncTile>, Vec<TruncTile>) {
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for &tile in t.tiles() {
        if tile.end <= cut {
            left.push(tile);
        } else if tile.start >= cut {
            right.push(TruncTile {
                start: tile.start - cut,
                end: tile.end - cut,
                ..tile
            });
        } else {
            left.push(TruncTile { end: cut, ..tile });
            right.push(TruncTile {
                start: 0,
                end: tile.end - cut,
                ..tile
            });
        }
    }
    (left, right)
}

fn check_split() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for_regions(4, 2, |lower, a, b, region| {
        let parts = lower.decompose();
        if parts.len() < 2 {
            return Ok(());
        }
        let first = &parts[0];
        let rest = parts[1..].iter().fold(DyckPath::empty(), |acc, p| acc.concat(p));
        let cut = first.steps().len();
        let steps = region.upper().steps();
        let mid = region.upper().levels()[cut];
        let i = (mid / 2) as usize;
        let r1 = Region::new(RegionPath::new(first.clone(), a, i, steps[..cut].to_vec())?);
        let r2 = Region::new(RegionPath::new(rest, i, b, steps[cut..].to_vec())?);
        let whole = enumerate_truncated_region(&region)?;
        // The junction offset can exceed the default bound.
        let wide = RegionLimits {
            half_length: 4,
            offset: 6,
        };
        let t1 = enumerate_truncated_region_bounded(&r1, wide)?;
        let t2 = enumerate_truncated_region_bounded(&r2, wide)?;
        let mut images = std::collections::BTreeSet::new();
        let mut ok = region.area_halves() == r1.area_halves() + r2.area_halves();
        for t in &whole {
            let (left, right) = split_tiling(t, cut);
            let pieces = (
                TruncatedTiling::new(r1.clone(), left),
                TruncatedTiling::new(r2.clone(), right),
            );
            match pieces {
                (Ok(x), Ok(y)) => {
                    ok &= x.norm() + y.norm() == t.norm();
                    images.insert((x.tiles().to_vec(), y.tiles().to_vec()));
                }
                _ => ok = false,
            }
        }
        ok &= images.len() == whole.len() && whole.len() == t1.len() * t2.len();
        let lhs = norm_poly(&whole);
        let rhs = norm_poly(&t1) * norm_poly(&t2);
        ok &= lhs == rhs;
        out.push(CheckRecord::with_verdict("lemma_split", params(&region), lhs, rhs, ok));
        Ok(())
    })?;
    Ok(out)
}

/// Over a single peak, the tilings under a path through the peak shifted by
/// `t` are counted by partitions in a `t × n` box.
fn check_tile() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for n in 0..=LEMMA_RANGE {
        let lower = DyckPath::delta(n);
        for a in 0..=LEMMA_RANGE {
            for b in 0..=LEMMA_RANGE {
                for region in enumerate_region_paths(&lower, a, b)? {
                    let t = ((region.upper().levels()[n] - n as i64) / 2) as usize;
                    let lhs = norm_poly(&enumerate_truncated_region(&region)?);
                    let rhs = qbinom((n + t) as u32, n as i64);
                    let mut p = params(&region);
                    p["t"] = json!(t);
                    out.push(CheckRecord::new("lemma_tile", p, lhs, rhs));
                }
            }
        }
    }
    Ok(out)
}

/// All compositions of length `k` with parts in `0..=max`.
fn compositions(k: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Positions (in steps) of the peak of every block of `Δ_{n_1,…,n_k}`.
fn peak_positions(ns: &[usize]) -> Vec<usize> {
    let mut start = 0;
    ns.iter()
        .map(|&n| {
            let p = start + n;
            start += 2 * n;
            p
        })
        .collect()
}

fn area_formula(ns: &[usize], ts: &[usize]) -> QPoly {
    let mut total = QPoly::one();
    for i in 0..ns.len() - 1 {
        let (ni, nj) = (ns[i] as i64, ns[i + 1] as i64);
        let (ti, tj) = (ts[i] as i64, ts[i + 1] as i64);
        let halves = 2 * ni * ti + 2 * nj * tj + (ti - tj) * (ti - tj);
        total = total * qbinom((ni + nj) as u32, ni + ti - tj).shift_halves(halves);
    }
    total
}

/// Areas of skew shapes grouped by how far the upper path sits above each
/// peak, against the product formula.
fn check_area() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for k in 1..=LEMMA_RANGE {
        for ns in compositions(k, LEMMA_RANGE) {
            let total: usize = ns.iter().sum();
            if total > 4 && ns.iter().any(|&n| n > 2) {
                continue;
            }
            let lower = DyckPath::delta_multi(&ns);
            let peaks = peak_positions(&ns);
            let mut grouped: BTreeMap<Vec<usize>, QPoly> = BTreeMap::new();
            let skew_only = RegionLimits {
                half_length: 6,
                offset: 0,
            };
            for region in enumerate_region_paths_bounded(&lower, 0, 0, skew_only)? {
                let mu = region.upper().levels();
                let ts: Vec<usize> = peaks
                    .iter()
                    .zip(&ns)
                    .map(|(&p, &n)| ((mu[p] - n as i64) / 2) as usize)
                    .collect();
                *grouped.entry(ts).or_insert_with(QPoly::zero) +=
                    QPoly::monomial_halves(1, region.area_halves());
            }
            let mut inner = compositions(k.saturating_sub(2), total);
            if k == 1 {
                inner = vec![vec![]];
            }
            for mid in inner {
                let ts: Vec<usize> = if k == 1 {
                    vec![0]
                } else {
                    std::iter::once(0).chain(mid).chain(std::iter::once(0)).collect()
                };
                let lhs = grouped.get(&ts).cloned().unwrap_or_else(QPoly::zero);
                let rhs = area_formula(&ns, &ts);
                out.push(CheckRecord::new(
                    "lemma_area",
                    json!({"blocks": ns, "shifts": ts}),
                    lhs,
                    rhs,
                ));
            }
        }
    }
    Ok(out)
}

pub fn formula_lhs(ns: &[usize]) -> QPoly {
    let k = ns.len();
    let bound: usize = ns.iter().sum();
    let inner = if k <= 2 {
        vec![vec![]]
    } else {
        compositions(k - 2, bound)
    };
    let mut total = QPoly::zero();
    for mid in inner {
        let ts: Vec<i64> = if k == 1 {
            vec![0]
        } else {
            std::iter::once(0)
                .chain(mid.into_iter().map(|t| t as i64))
                .chain(std::iter::once(0))
                .collect()
        };
        let mut term = QPoly::one();
        for i in 0..k - 1 {
            let (ni, nj) = (ns[i] as i64, ns[i + 1] as i64);
            let exp = ts[i + 1] * (nj - ts[i] + ts[i + 1]);
            term = term
                * qbinom((ni + ts[i]) as u32, ni)
                * qbinom((ni + nj) as u32, ni + ts[i] - ts[i + 1]);
            term = term.shift_halves(2 * exp);
        }
        total += term;
    }
    total
}

fn check_formula() -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for k in 1..=LEMMA_RANGE {
        for ns in compositions(k, LEMMA_RANGE) {
            let parts: Vec<u32> = ns.iter().map(|&n| n as u32).collect();
            out.push(CheckRecord::new(
                "lemma_formula",
                json!({"blocks": ns}),
                formula_lhs(&ns),
                qmultinom(&parts),
            ));
        }
    }
    out
}

/// Brute force while the instance is small enough, recursion beyond.
fn bq_best(ev: &mut BqEvaluator, lower: &DyckPath, a: usize, b: usize) -> Result<QPoly> {
    if lower.half_length() <= 4 {
        bq_brute(lower, a, b)
    } else {
        Ok(ev.eval(lower, a, b))
    }
}

fn check_induct() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let mut ev = BqEvaluator::new();
    for a in 0..=LEMMA_RANGE {
        for i in 0..=a {
            let lhs = bq_brute(&DyckPath::delta(a), 0, i)?;
            let rhs = qbinom(a as u32, i as i64).shift_halves((i * i) as i64);
            out.push(CheckRecord::new(
                "lemma_induct_base",
                json!({"a": a, "i": i}),
                lhs,
                rhs,
            ));
        }
        for n in 0..=LEMMA_RANGE {
            for lower in enumerate_dyck(n)? {
                let joined = DyckPath::delta(a).concat(&lower);
                for b in 0..=LEMMA_RANGE {
                    let lhs = bq_best(&mut ev, &joined, 0, b)?;
                    let rhs: QPoly = (0..=a)
                        .map(|i| {
                            let w = qbinom(a as u32, i as i64).shift_halves((i * i) as i64);
                            bq_best(&mut ev, &lower, i, b).map(|v| w * v)
                        })
                        .sum::<Result<QPoly>>()?;
                    out.push(CheckRecord::new(
                        "lemma_induct",
                        json!({"a": a, "lower": lower.to_string(), "b": b}),
                        lhs,
                        rhs,
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn check_two_peak() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let mut ev = BqEvaluator::new();
    for n1 in 0..=LEMMA_RANGE {
        for n2 in 0..=LEMMA_RANGE {
            let lower = DyckPath::delta_multi(&[n1, n2]);
            for a in 0..=LEMMA_RANGE {
                for b in 0..=LEMMA_RANGE {
                    let lhs = bq_best(&mut ev, &lower, a, b)?;
                    let rhs = qbinom((n1 + n2) as u32, n1 as i64) * bq_delta(n1 + n2, a, b);
                    out.push(CheckRecord::new(
                        "two_peak",
                        json!({"n1": n1, "n2": n2, "a": a, "b": b}),
                        lhs,
                        rhs,
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of the double-sum identity for two peaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropCheck {
    pub double_sum: QPoly,
    pub single_sum: QPoly,
    /// `B_q(Δ_{n1,n2}; a, b)` computed directly.
    pub direct: QPoly,
    pub sums_equal: bool,
    pub matches_direct: bool,
}

pub fn prop_double_sum(n1: usize, n2: usize, a: usize, b: usize) -> QPoly {
    let (n1, n2, a, b) = (n1 as i64, n2 as i64, a as i64, b as i64);
    let mut total = QPoly::zero();
    for i in 0..=a {
        for j in 0..=b {
            let exp = (n1 - a) * i + (n2 - b) * j - i * j + i * i + j * j;
            let term = qbinom(n1 as u32, a - i)
                * qbinom(n2 as u32, b - j)
                * qbinom((n1 + n2) as u32, n1 + i - j)
                * qbinom((n1 + i) as u32, n1)
                * qbinom((n2 + j) as u32, n2);
            total += term.shift_halves(2 * exp);
        }
    }
    total
}

pub fn prop_single_sum(n1: usize, n2: usize, a: usize, b: usize) -> QPoly {
    let n = (n1 + n2) as i64;
    let (a, b) = (a as i64, b as i64);
    let mut total = QPoly::zero();
    for i in 0..=a.min(b) {
        let exp = (n - a - b) * i + i * i;
        let term = qbinom((n + i) as u32, i) * qbinom(n as u32, a - i) * qbinom(n as u32, b - i);
        total += term.shift_halves(2 * exp);
    }
    qbinom(n as u32, n1 as i64) * total
}

pub fn prop_identity(n1: usize, n2: usize, a: usize, b: usize) -> Result<PropCheck> {
    let lower = DyckPath::delta_multi(&[n1, n2]);
    let direct = if n1 + n2 <= 4 && a.max(b) <= 3 {
        bq_brute(&lower, a, b)?
    } else {
        BqEvaluator::new().eval(&lower, a, b)
    };
    let double_sum = prop_double_sum(n1, n2, a, b);
    let single_sum = prop_single_sum(n1, n2, a, b);
    let scaled = double_sum.shift_halves((a * a + b * b) as i64);
    Ok(PropCheck {
        sums_equal: double_sum == single_sum,
        matches_direct: scaled == direct,
        double_sum,
        single_sum,
        direct,
    })
}

pub fn prop_identity_check(n1: usize, n2: usize, a: usize, b: usize) -> Result<bool> {
    let c = prop_identity(n1, n2, a, b)?;
    Ok(c.sums_equal && c.matches_direct)
}

pub fn prop_records(range: usize) -> Result<Vec<CheckRecord>> {
    if range > 6 {
        return Err(Error::Capacity {
            what: "two-peak identity range",
            requested: range,
            limit: 6,
        });
    }
    let mut out = Vec::new();
    for n1 in 0..=range {
        for n2 in 0..=range {
            for a in 0..=range {
                for b in 0..=range {
                    let c = prop_identity(n1, n2, a, b)?;
                    out.push(CheckRecord::with_verdict(
                        "prop_two_peak_sum",
                        json!({"n1": n1, "n2": n2, "a": a, "b": b}),
                        &c.double_sum,
                        &c.single_sum,
                        c.sums_equal && c.matches_direct,
                    ));
                }
            }
        }
    }
    Ok(out)
}
