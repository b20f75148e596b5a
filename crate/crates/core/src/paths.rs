//! Dyck paths, their chords, and the exchange order between paths.
//!
//! A path of half-length `n` steps from `(0,0)` to `(n,n)` with Up = `(0,1)`
//! and Down = `(1,0)`, never dipping below the diagonal. Internally a path
//! is often read through its *level profile*: `level[k]` is `#Up - #Down`
//! among the first `k` steps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_capacity, Error, Result};

/// Default largest half-length accepted by [`enumerate_dyck`].
pub const DEFAULT_PATH_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }

    pub fn flip(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }
}

/// Parses a `U`/`D` word without checking the Dyck condition.
pub fn parse_steps(s: &str) -> Result<Vec<Step>> {
    s.chars()
        .map(|c| match c {
            'U' | 'u' | 'N' | 'n' => Ok(Step::Up),
            'D' | 'd' | 'E' | 'e' | 'R' | 'r' => Ok(Step::Down),
            other => Err(Error::Domain(format!("invalid step letter {other:?}"))),
        })
        .collect()
}

pub fn steps_to_string(steps: &[Step]) -> String {
    steps.iter().map(|s| s.letter()).collect()
}

/// Level after each prefix, starting from `start`; length is `steps.len() + 1`.
pub fn level_profile(steps: &[Step], start: i64) -> Vec<i64> {
    let mut out = Vec::with_capacity(steps.len() + 1);
    let mut v = start;
    out.push(v);
    for s in steps {
        v += s.delta();
        out.push(v);
    }
    out
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

/// Matched up/down pair of a Dyck path. Positions are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chord {
    pub up: usize,
    pub down: usize,
    pub length: usize,
    pub height: usize,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut level = 0i64;
        for (k, s) in steps.iter().enumerate() {
            level += s.delta();
            if level < 0 {
                return Err(Error::Domain(format!(
                    "{} dips below the diagonal at step {}",
                    steps_to_string(&steps),
                    k + 1
                )));
            }
        }
        if level != 0 {
            return Err(Error::Domain(format!(
                "{} does not end on the diagonal",
                steps_to_string(&steps)
            )));
        }
        Ok(Self { steps })
    }

    pub fn empty() -> Self {
        Self { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn half_length(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn levels(&self) -> Vec<i64> {
        level_profile(&self.steps, 0)
    }

    /// `y`-coordinate of the horizontal step in each column `x = 0..n`.
    pub fn column_heights(&self) -> Vec<i64> {
        let mut ups = 0;
        let mut out = Vec::with_capacity(self.half_length());
        for s in &self.steps {
            match s {
                Step::Up => ups += 1,
                Step::Down => out.push(ups),
            }
        }
        out
    }

    /// 0-based index of the partner of every step.
    pub fn partners(&self) -> Vec<usize> {
        let mut out = vec![0; self.steps.len()];
        let mut stack = Vec::new();
        for (k, s) in self.steps.iter().enumerate() {
            match s {
                Step::Up => stack.push(k),
                Step::Down => {
                    let u = stack.pop().expect("validated Dyck path");
                    out[u] = k;
                    out[k] = u;
                }
            }
        }
        out
    }

    /// Chords ordered by their up step.
    pub fn chords(&self) -> Vec<Chord> {
        let partners = self.partners();
        let levels = self.levels();
        let mut downs_before = Vec::with_capacity(self.steps.len() + 1);
        let mut d = 0;
        for s in &self.steps {
            downs_before.push(d);
            if *s == Step::Down {
                d += 1;
            }
        }
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Step::Up)
            .map(|(k, _)| {
                let j = partners[k];
                Chord {
                    up: k + 1,
                    down: j + 1,
                    length: downs_before[j] + 1 - downs_before[k],
                    height: levels[k + 1] as usize,
                }
            })
            .collect()
    }

    /// `HT(path)`: sum over chords of `height - 1`.
    pub fn ht(&self) -> usize {
        self.chords().iter().map(|c| c.height - 1).sum()
    }

    pub fn concat(&self, other: &DyckPath) -> DyckPath {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        DyckPath { steps }
    }

    /// `U^k D^k`.
    pub fn delta(k: usize) -> DyckPath {
        let mut steps = vec![Step::Up; k];
        steps.extend(std::iter::repeat_n(Step::Down, k));
        DyckPath { steps }
    }

    /// Concatenation of single peaks of the given sizes.
    pub fn delta_multi(ks: &[usize]) -> DyckPath {
        ks.iter()
            .fold(DyckPath::empty(), |acc, &k| acc.concat(&DyckPath::delta(k)))
    }

    /// The zigzag `(UD)^n`.
    pub fn zigzag(n: usize) -> DyckPath {
        DyckPath::delta_multi(&vec![1; n])
    }

    /// Splits at every return to the diagonal.
    pub fn decompose(&self) -> Vec<DyckPath> {
        let mut parts = Vec::new();
        let mut start = 0;
        let mut level = 0;
        for (k, s) in self.steps.iter().enumerate() {
            level += s.delta();
            if level == 0 {
                parts.push(DyckPath {
                    steps: self.steps[start..=k].to_vec(),
                });
                start = k + 1;
            }
        }
        parts
    }

    pub fn is_indecomposable(&self) -> bool {
        !self.is_empty() && self.decompose().len() == 1
    }

    /// Drops the first and last step of an indecomposable path.
    pub fn strip(&self) -> Result<DyckPath> {
        if !self.is_indecomposable() {
            return Err(Error::Domain(format!(
                "{self} is empty or decomposable; cannot strip its outer chord"
            )));
        }
        Ok(DyckPath {
            steps: self.steps[1..self.steps.len() - 1].to_vec(),
        })
    }

    /// Number of cells between this path and the zigzag below it.
    pub fn cells_above_zigzag(&self) -> usize {
        self.column_heights()
            .iter()
            .enumerate()
            .map(|(x, &h)| (h - x as i64 - 1) as usize)
            .sum()
    }
}

/// True when `upper` weakly dominates `lower` everywhere.
pub fn is_above(upper: &DyckPath, lower: &DyckPath) -> Result<bool> {
    check_same_length(upper, lower)?;
    Ok(upper
        .levels()
        .iter()
        .zip(lower.levels())
        .all(|(u, l)| *u >= l))
}

fn check_same_length(a: &DyckPath, b: &DyckPath) -> Result<()> {
    if a.steps.len() != b.steps.len() {
        return Err(Error::Domain(format!(
            "paths {a} and {b} have different lengths"
        )));
    }
    Ok(())
}

/// Tests `lower ≻ upper`: `lower` arises from `upper` by exchanging the up
/// and down step of some set of chords. Returns the number of exchanged
/// chords when the relation holds.
pub fn order_succ(lower: &DyckPath, upper: &DyckPath) -> Result<Option<usize>> {
    check_same_length(lower, upper)?;
    let partners = upper.partners();
    let mut differing = 0;
    let mut exchanged = 0;
    for (k, (&l, &u)) in lower.steps.iter().zip(&upper.steps).enumerate() {
        if l == u {
            continue;
        }
        differing += 1;
        if u == Step::Up {
            let j = partners[k];
            if lower.steps[j] != Step::Up {
                return Ok(None);
            }
            exchanged += 1;
        }
    }
    Ok((differing == 2 * exchanged).then_some(exchanged))
}

/// All Dyck paths of half-length `n` in lexicographic order with `U < D`.
pub fn enumerate_dyck(n: usize) -> Result<Vec<DyckPath>> {
    enumerate_dyck_bounded(n, DEFAULT_PATH_LIMIT)
}

pub fn enumerate_dyck_bounded(n: usize, limit: usize) -> Result<Vec<DyckPath>> {
    check_capacity("Dyck path half-length", n, limit)?;
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(2 * n);
    fn rec(n: usize, ups: usize, downs: usize, buf: &mut Vec<Step>, out: &mut Vec<DyckPath>) {
        if downs == n {
            out.push(DyckPath { steps: buf.clone() });
            return;
        }
        if ups < n {
            buf.push(Step::Up);
            rec(n, ups + 1, downs, buf, out);
            buf.pop();
        }
        if downs < ups {
            buf.push(Step::Down);
            rec(n, ups, downs + 1, buf, out);
            buf.pop();
        }
    }
    rec(n, 0, 0, &mut buf, &mut out);
    Ok(out)
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&steps_to_string(&self.steps))
    }
}

impl fmt::Debug for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DyckPath({self})")
    }
}

impl FromStr for DyckPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DyckPath::new(parse_steps(s)?)
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DyckPath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    fn length_height(path: &str) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = p(path).chords().iter().map(|c| (c.length, c.height)).collect();
        v.sort();
        v
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_dyck(0).unwrap(), vec![DyckPath::empty()]);
        assert_eq!(enumerate_dyck(2).unwrap(), vec![p("UUDD"), p("UDUD")]);
        assert_eq!(enumerate_dyck(5).unwrap().len(), 42);
        assert!(matches!(enumerate_dyck(9), Err(Error::Capacity { .. })));
        let six = enumerate_dyck(6).unwrap();
        assert!(six.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn chord_statistics() {
        let mut fig = vec![(6, 1), (5, 2), (1, 3), (3, 3), (1, 4), (1, 4)];
        fig.sort();
        assert_eq!(length_height("UUUDUUDUDDDD"), fig);
        assert_eq!(length_height("UDUDUD"), vec![(1, 1); 3]);
        assert_eq!(length_height("UUDD"), vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn concat_delta_and_decompose() {
        assert_eq!(DyckPath::delta(2), p("UUDD"));
        assert_eq!(DyckPath::delta_multi(&[1, 1]), p("UDUD"));
        assert_eq!(p("UUDD").concat(&p("UD")), p("UUDDUD"));
        assert_eq!(p("UDUD").decompose(), vec![p("UD"), p("UD")]);
        assert_eq!(p("UUDD").decompose(), vec![p("UUDD")]);
        assert_eq!(p("UUDD").strip().unwrap(), p("UD"));
        assert_eq!(p("UUDDUD").decompose(), vec![p("UUDD"), p("UD")]);
        assert!(p("UDUD").strip().is_err());
        assert!(DyckPath::empty().strip().is_err());
    }

    #[test]
    fn exchange_order() {
        assert_eq!(order_succ(&p("UDUD"), &p("UUDD")).unwrap(), Some(1));
        assert_eq!(order_succ(&p("UUDD"), &p("UUDD")).unwrap(), Some(0));
        assert_eq!(order_succ(&p("UUDD"), &p("UDUD")).unwrap(), None);
        assert!(order_succ(&p("UD"), &p("UUDD")).is_err());
        // Exchanging two chords of UUUUDUDDDD.
        let upper = p("UUUUDUDDDD");
        let lower = p("UDUDUUDDUD");
        assert_eq!(order_succ(&lower, &upper).unwrap(), Some(2));
    }

    #[test]
    fn dominance() {
        assert!(is_above(&p("UUDD"), &p("UDUD")).unwrap());
        assert!(!is_above(&p("UDUD"), &p("UUDD")).unwrap());
        for l in enumerate_dyck(4).unwrap() {
            assert!(is_above(&l, &l).unwrap());
        }
    }

    #[test]
    fn rejects_invalid_words() {
        assert!("DU".parse::<DyckPath>().is_err());
        assert!("UUD".parse::<DyckPath>().is_err());
        assert!("UXD".parse::<DyckPath>().is_err());
    }

    #[test]
    fn chord_counts_and_bounds() {
        for n in 0..=6 {
            for path in enumerate_dyck(n).unwrap() {
                let cs = path.chords();
                assert_eq!(cs.len(), n);
                assert!(cs.iter().all(|c| c.length >= 1 && c.length <= n));
                let mut downs: Vec<_> = cs.iter().map(|c| c.down).collect();
                downs.sort();
                downs.dedup();
                assert_eq!(downs.len(), n);
            }
        }
    }

    #[test]
    fn exchange_implies_dominance() {
        for n in 0..=5 {
            let all = enumerate_dyck(n).unwrap();
            for l in &all {
                for m in &all {
                    if order_succ(l, m).unwrap().is_some() {
                        assert!(is_above(m, l).unwrap(), "{l} ≻ {m}");
                    }
                }
            }
        }
    }

    #[test]
    fn ht_counts_cells_above_zigzag() {
        for n in 0..=5 {
            for path in enumerate_dyck(n).unwrap() {
                assert_eq!(path.ht(), path.cells_above_zigzag(), "{path}");
                assert_eq!(path.ht() == 0, path == DyckPath::zigzag(n));
            }
        }
    }

    #[test]
    fn decompose_concat_roundtrip() {
        for n in 0..=6 {
            for path in enumerate_dyck(n).unwrap() {
                let parts = path.decompose();
                assert!(parts.iter().all(|q| q.is_indecomposable()));
                let joined = parts
                    .iter()
                    .fold(DyckPath::empty(), |acc, q| acc.concat(q));
                assert_eq!(joined, path);
            }
        }
    }

    #[test]
    fn single_peak_chord_lengths() {
        for n in 0..=8 {
            let mut lens: Vec<_> = DyckPath::delta(n).chords().iter().map(|c| c.length).collect();
            lens.sort();
            assert_eq!(lens, (1..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn serde_as_string() {
        let path = p("UUDUDD");
        let json = serde_json::to_string(&path).unwrap();
        assert_eq!(json, "\"UUDUDD\"");
        assert_eq!(serde_json::from_str::<DyckPath>(&json).unwrap(), path);
    }

    fn arb_path() -> impl Strategy<Value = DyckPath> {
        (0usize..=6).prop_flat_map(|n| {
            let all = enumerate_dyck(n).unwrap();
            let len = all.len();
            (0..len).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn parse_display_roundtrip(path in arb_path()) {
            prop_assert_eq!(path.to_string().parse::<DyckPath>().unwrap(), path);
        }

        #[test]
        fn chord_heights_match_levels(path in arb_path()) {
            let levels = path.levels();
            for c in path.chords() {
                prop_assert_eq!(levels[c.up - 1], levels[c.down]);
                prop_assert!(c.up < c.down);
            }
        }
    }
}
