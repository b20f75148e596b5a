//! Three ways to compute `B_q(λ; a, b)`: brute-force enumeration, the closed
//! form, and structural recursion.

use std::collections::HashMap;

use super::truncated::{enumerate_region_paths_bounded, enumerate_truncated_region_bounded};
use super::RegionLimits;
use crate::error::{Error, Result};
use crate::paths::DyckPath;
use crate::qpoly::{qbinom, qfact, qint, QPoly};

/// Sum of `q^(|λ/μ| - ‖T‖)` over region paths `μ` and truncated tilings `T`.
pub fn bq_brute(lower: &DyckPath, a: usize, b: usize) -> Result<QPoly> {
    bq_brute_bounded(lower, a, b, RegionLimits::default())
}

pub fn bq_brute_bounded(
    lower: &DyckPath,
    a: usize,
    b: usize,
    limits: RegionLimits,
) -> Result<QPoly> {
    let mut total = QPoly::zero();
    for region in enumerate_region_paths_bounded(lower, a, b, limits)? {
        for t in enumerate_truncated_region_bounded(&region, limits)? {
            total += QPoly::monomial_halves(1, t.weight_halves());
        }
    }
    if !total.is_zero() && total.is_integral() != (a % 2 == b % 2) {
        return Err(Error::Invariant(format!(
            "B_q({lower}; {a}, {b}) = {total} has the wrong exponent parity"
        )));
    }
    Ok(total)
}

/// Closed form for a single peak of size `n`.
pub fn bq_delta(n: usize, a: usize, b: usize) -> QPoly {
    let (n, a, b) = (n as i64, a as i64, b as i64);
    let mut total = QPoly::zero();
    for i in 0..=a.min(b) {
        let halves = a * a + b * b + 2 * (n - a - b) * i + 2 * i * i;
        let term = qbinom((n + i) as u32, i)
            * qbinom(n as u32, a - i)
            * qbinom(n as u32, b - i);
        total += term.shift_halves(halves);
    }
    total
}

/// `[n]! / Π_c [|c|]`, a polynomial for every Dyck path.
pub fn chord_factor(lower: &DyckPath) -> Result<QPoly> {
    let denom = lower
        .chords()
        .iter()
        .fold(QPoly::one(), |acc, c| acc * qint(c.length as u32));
    qfact(lower.half_length() as u32).exact_div(&denom)
}

pub fn bq_closed(lower: &DyckPath, a: usize, b: usize) -> Result<QPoly> {
    Ok(chord_factor(lower)? * bq_delta(lower.half_length(), a, b))
}

/// Memoized recursion over concatenation and stripping of the outer chord.
/// The memo table belongs to the evaluator, so separate evaluators never
/// share state.
#[derive(Debug, Default)]
pub struct BqEvaluator {
    memo: HashMap<(String, usize, usize), QPoly>,
}

impl BqEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn eval(&mut self, lower: &DyckPath, a: usize, b: usize) -> QPoly {
        let key = (lower.to_string(), a, b);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let value = self.compute(lower, a, b);
        self.memo.insert(key, value.clone());
        value
    }

    fn compute(&mut self, lower: &DyckPath, a: usize, b: usize) -> QPoly {
        if lower.is_empty() {
            return if a == b { QPoly::one() } else { QPoly::zero() };
        }
        let parts = lower.decompose();
        if parts.len() > 1 {
            let first = &parts[0];
            let rest = parts[1..]
                .iter()
                .fold(DyckPath::empty(), |acc, p| acc.concat(p));
            let top = (a + first.half_length()).min(b + rest.half_length());
            let mut total = QPoly::zero();
            for i in 0..=top {
                let left = self.eval(first, a, i);
                if left.is_zero() {
                    continue;
                }
                total += left * self.eval(&rest, i, b);
            }
            return total;
        }
        let inner = lower.strip().expect("indecomposable");
        let n = lower.half_length() as i64;
        let mut total = QPoly::zero();
        for i in 0..=a.min(b) {
            for r in 0..=1usize {
                for s in 0..=1usize {
                    let (Some(a2), Some(b2)) = (a.checked_sub(i + r), b.checked_sub(i + s)) else {
                        continue;
                    };
                    let halves =
                        2 * (n - 2) * i as i64 + 2 * a as i64 + 2 * b as i64 - (r + s) as i64;
                    total += self.eval(&inner, a2, b2).shift_halves(halves);
                }
            }
        }
        total
    }
}

pub fn bq_recursive(lower: &DyckPath, a: usize, b: usize) -> QPoly {
    BqEvaluator::new().eval(lower, a, b)
}
