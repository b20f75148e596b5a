//! The three main generating-function identities, checked exhaustively.

use std::fmt;

use serde_json::json;

use super::evaluate::{bq_brute, bq_closed, chord_factor, BqEvaluator};
use crate::bijections::enumerate_hermite;
use crate::error::{check_capacity, Result};
use crate::paths::{enumerate_dyck, is_above, DyckPath};
use crate::qpoly::{qint, QPoly};
use crate::report::CheckRecord;
use crate::tilings::enumerate_tilings;

/// Largest half-length for the exhaustive tiling sweeps.
pub const THEOREM_LIMIT: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremKind {
    Thm1,
    Thm2,
    ThmGen,
}

impl TheoremKind {
    pub const ALL: [TheoremKind; 3] = [TheoremKind::Thm1, TheoremKind::Thm2, TheoremKind::ThmGen];

    pub fn name(self) -> &'static str {
        match self {
            TheoremKind::Thm1 => "thm1",
            TheoremKind::Thm2 => "thm2",
            TheoremKind::ThmGen => "thm_gen",
        }
    }
}

impl fmt::Display for TheoremKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Records at the default ranges: half-length 4, and 3 with offsets up to 2
/// for the general identity.
pub fn theorem_records(kind: TheoremKind) -> Result<Vec<CheckRecord>> {
    match kind {
        TheoremKind::Thm1 => thm1_records(4),
        TheoremKind::Thm2 => thm2_records(4),
        TheoremKind::ThmGen => thm_gen_records(3, 2),
    }
}

pub fn theorem_checks(kind: TheoremKind) -> Result<bool> {
    Ok(theorem_records(kind)?.iter().all(|r| r.equal))
}

fn paths_above(lower: &DyckPath, all: &[DyckPath]) -> Result<Vec<DyckPath>> {
    let mut out = Vec::new();
    for m in all {
        if is_above(m, lower)? {
            out.push(m.clone());
        }
    }
    Ok(out)
}

/// Sum over tilings `T` of skew shapes `λ/μ` of `q^((|λ/μ| + |T|)/2)`, and the
/// same sum weighted by `q^(|λ/μ| - ‖T‖)`.
pub fn thm1_sides(lower: &DyckPath) -> Result<(QPoly, QPoly, bool)> {
    let all = enumerate_dyck(lower.half_length())?;
    let mut by_count = QPoly::zero();
    let mut by_norm = QPoly::zero();
    let mut termwise = true;
    for upper in paths_above(lower, &all)? {
        for t in enumerate_tilings(lower, &upper)? {
            let halves = (t.area() + t.size()) as i64;
            let other = 2 * (t.area() as i64 - t.norm() as i64);
            termwise &= halves == other;
            by_count += QPoly::monomial_halves(1, halves);
            by_norm += QPoly::monomial_halves(1, other);
        }
    }
    Ok((by_count, by_norm, termwise))
}

pub fn thm1_records(n_max: usize) -> Result<Vec<CheckRecord>> {
    check_capacity("theorem half-length", n_max, THEOREM_LIMIT)?;
    let mut out = Vec::new();
    for n in 0..=n_max {
        for lower in enumerate_dyck(n)? {
            let (lhs, other, termwise) = thm1_sides(&lower)?;
            let rhs = chord_factor(&lower)?;
            let equal = lhs == rhs && other == rhs && termwise;
            out.push(CheckRecord::with_verdict(
                "thm1",
                json!({"lower": lower.to_string()}),
                lhs,
                rhs,
                equal,
            ));
        }
    }
    Ok(out)
}

/// `Π_c [HT(c)]` over the chords of `upper`.
pub fn height_product(upper: &DyckPath) -> QPoly {
    upper
        .chords()
        .iter()
        .fold(QPoly::one(), |acc, c| acc * qint(c.height as u32))
}

pub fn thm2_sides(upper: &DyckPath) -> Result<(QPoly, QPoly)> {
    let all = enumerate_dyck(upper.half_length())?;
    let mut tilings = QPoly::zero();
    for lower in &all {
        if is_above(upper, lower)? {
            for t in enumerate_tilings(lower, upper)? {
                tilings += QPoly::q_pow(t.size() as i64);
            }
        }
    }
    let histories = enumerate_hermite(upper)?
        .iter()
        .map(|h| QPoly::q_pow(h.norm() as i64))
        .sum();
    Ok((tilings, histories))
}

pub fn thm2_records(n_max: usize) -> Result<Vec<CheckRecord>> {
    check_capacity("theorem half-length", n_max, THEOREM_LIMIT)?;
    let mut out = Vec::new();
    for n in 0..=n_max {
        for upper in enumerate_dyck(n)? {
            let (lhs, histories) = thm2_sides(&upper)?;
            let rhs = height_product(&upper);
            let equal = lhs == rhs && histories == rhs;
            out.push(CheckRecord::with_verdict(
                "thm2",
                json!({"upper": upper.to_string()}),
                lhs,
                rhs,
                equal,
            ));
        }
    }
    Ok(out)
}

pub fn thm_gen_records(n_max: usize, ab_max: usize) -> Result<Vec<CheckRecord>> {
    let mut ev = BqEvaluator::new();
    let mut out = Vec::new();
    for n in 0..=n_max {
        for lower in enumerate_dyck(n)? {
            for a in 0..=ab_max {
                for b in 0..=ab_max {
                    let brute = bq_brute(&lower, a, b)?;
                    let recursive = ev.eval(&lower, a, b);
                    let closed = bq_closed(&lower, a, b)?;
                    let equal = brute == recursive && recursive == closed;
                    out.push(CheckRecord::with_verdict(
                        "thm_gen",
                        json!({"lower": lower.to_string(), "a": a, "b": b, "recursive": recursive.to_string()}),
                        brute,
                        closed,
                        equal,
                    ));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{odd_double_factorial, qfact};
    use num_bigint::BigInt;

    fn p(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    #[test]
    fn thm1_examples() {
        let (lhs, other, termwise) = thm1_sides(&p("UDUD")).unwrap();
        assert_eq!(lhs, QPoly::from_coeffs(&[1, 1]));
        assert_eq!(other, lhs);
        assert!(termwise);
        assert_eq!(lhs, qfact(2));
        for n in 0..=4 {
            let (lhs, _, _) = thm1_sides(&DyckPath::delta(n)).unwrap();
            assert_eq!(lhs, QPoly::one());
        }
    }

    #[test]
    fn thm2_examples() {
        let (lhs, hist) = thm2_sides(&p("UUDD")).unwrap();
        assert_eq!(lhs, QPoly::from_coeffs(&[1, 1]));
        assert_eq!(hist, lhs);
        assert_eq!(height_product(&p("UUDD")), qint(1) * qint(2));
    }

    #[test]
    fn all_theorems_hold() {
        for kind in TheoremKind::ALL {
            let recs = theorem_records(kind).unwrap();
            assert!(recs.iter().all(|r| r.equal), "{kind}");
        }
        assert_eq!(thm2_records(4).unwrap().iter().filter(|r| r.parameters["upper"].as_str().unwrap().len() == 8).count(), 14);
    }

    #[test]
    fn height_products_count_histories() {
        for n in 0..=6 {
            let total: BigInt = enumerate_dyck(n)
                .unwrap()
                .iter()
                .map(|m| height_product(m).eval_at_one())
                .sum();
            assert_eq!(total, odd_double_factorial(n as u64));
        }
    }

    #[test]
    fn thm2_extends_to_five() {
        assert!(thm2_records(5).unwrap().iter().all(|r| r.equal));
        assert!(thm2_records(6).is_err());
    }
}
