//! The moments `D_n(p, q)` of the `(p, q)`-Hermite polynomials.

use std::fmt;

use num_bigint::Sign;
use serde::Serialize;
use serde_json::json;

use crate::bijections::enumerate_matchings;
use crate::error::{check_capacity, Result};
use crate::paths::{enumerate_dyck, is_above};
use crate::qpoly::{pq_int, q_odd_double_fact, touchard_riordan_rhs, PQPoly, QPoly};
use crate::report::CheckRecord;
use crate::tilings::enumerate_tilings;

pub const ENUMERATION_MOMENT_LIMIT: usize = 5;
pub const PATH_DP_LIMIT: usize = 30;
pub const HERMITE_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentRoute {
    Matchings,
    Tilings,
    PathDp,
}

impl MomentRoute {
    pub const ALL: [MomentRoute; 3] = [MomentRoute::Matchings, MomentRoute::Tilings, MomentRoute::PathDp];
}

impl fmt::Display for MomentRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MomentRoute::Matchings => "matchings",
            MomentRoute::Tilings => "tilings",
            MomentRoute::PathDp => "path_dp",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentTable {
    pub n: usize,
    pub value: PQPoly,
    pub route: MomentRoute,
}

impl Serialize for MomentTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({"n": self.n, "value": self.value.to_string(), "route": self.route}).serialize(s)
    }
}

pub fn moments_dn(n: usize, route: MomentRoute) -> Result<MomentTable> {
    let value = match route {
        MomentRoute::Matchings => {
            check_capacity("moment half-length", n, ENUMERATION_MOMENT_LIMIT)?;
            enumerate_matchings(n)?
                .iter()
                .map(|m| {
                    let s = m.stats();
                    PQPoly::monomial(1, s.nestings as u32, s.crossings as u32)
                })
                .sum()
        }
        MomentRoute::Tilings => {
            check_capacity("moment half-length", n, ENUMERATION_MOMENT_LIMIT)?;
            let all = enumerate_dyck(n)?;
            let mut total = PQPoly::zero();
            for upper in &all {
                let ht = upper.ht();
                for lower in &all {
                    if !is_above(upper, lower)? {
                        continue;
                    }
                    for t in enumerate_tilings(lower, upper)? {
                        total += PQPoly::monomial(1, (ht - t.size()) as u32, t.size() as u32);
                    }
                }
            }
            total
        }
        MomentRoute::PathDp => path_dp(n)?,
    };
    Ok(MomentTable { n, value, route })
}

/// Weighted Dyck paths where a down step from height `h` carries `[h]_{p,q}`.
fn path_dp(n: usize) -> Result<PQPoly> {
    check_capacity("moment half-length", n, PATH_DP_LIMIT)?;
    let weights: Vec<PQPoly> = (0..=n as u32).map(pq_int).collect();
    let mut dp = vec![PQPoly::zero(); n + 2];
    dp[0] = PQPoly::one();
    for k in 0..2 * n {
        let remaining = 2 * n - k - 1;
        let mut next = vec![PQPoly::zero(); n + 2];
        for h in 0..=n {
            if dp[h].is_zero() {
                continue;
            }
            if h < remaining {
                next[h + 1] += &dp[h];
            }
            if h > 0 {
                next[h - 1] += &(&dp[h] * &weights[h]);
            }
        }
        dp = next;
    }
    Ok(dp[0].clone())
}

/// A polynomial in `x` with `(p, q)` coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPoly(pub Vec<PQPoly>);

impl XPoly {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> PQPoly {
        self.0.get(k).cloned().unwrap_or_else(PQPoly::zero)
    }

    fn times_x(&self) -> XPoly {
        let mut c = vec![PQPoly::zero()];
        c.extend(self.0.iter().cloned());
        XPoly(c)
    }

    fn minus_scaled(&self, k: &PQPoly, other: &XPoly) -> XPoly {
        let len = self.0.len().max(other.0.len());
        let mut c: Vec<PQPoly> = (0..len)
            .map(|i| self.coeff(i) - k * &other.coeff(i))
            .collect();
        while c.len() > 1 && c.last().is_some_and(PQPoly::is_zero) {
            c.pop();
        }
        XPoly(c)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.terms().all(|(_, v)| v.sign() == Sign::Minus);
            let c = if negative { -c } else { c.clone() };
            let body = match (k, c.terms().count()) {
                (0, _) => c.to_string(),
                (_, 1) if c == PQPoly::one() => String::new(),
                (_, 1) => format!("{c}*"),
                _ => format!("({c})*"),
            };
            let xs = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            let sign = match (out.is_empty(), negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            out.push_str(&format!("{sign}{body}{xs}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// `H_0, …, H_n` from the three-term recurrence.
pub fn hermite_recurrence(n: usize) -> Result<Vec<XPoly>> {
    check_capacity("Hermite degree", n, HERMITE_LIMIT)?;
    let mut out = vec![XPoly(vec![PQPoly::one()])];
    let mut prev = XPoly(vec![PQPoly::zero()]);
    for m in 0..n {
        let next = out[m].times_x().minus_scaled(&pq_int(m as u32), &prev);
        prev = out[m].clone();
        out.push(next);
    }
    Ok(out)
}

/// `L(H_m)` for `1 ≤ m ≤ n`, where `L` sends `x^(2k)` to `D_k` and odd
/// powers to zero.
pub fn hermite_records(n: usize) -> Result<Vec<CheckRecord>> {
    let hs = hermite_recurrence(n)?;
    let moments: Vec<PQPoly> = (0..=n / 2)
        .map(path_dp)
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (m, h) in hs.iter().enumerate().skip(1) {
        let value: PQPoly = (0..=h.degree())
            .step_by(2)
            .map(|k| &h.coeff(k) * &moments[k / 2])
            .sum();
        out.push(CheckRecord::new(
            "hermite_orthogonality",
            json!({"m": m, "h": h.to_string()}),
            value,
            PQPoly::zero(),
        ));
    }
    Ok(out)
}

fn special_values(d: &PQPoly) -> (QPoly, QPoly) {
    (
        d.subst_p_q(&QPoly::one(), &QPoly::q_pow(1)),
        d.subst_p_q(&QPoly::q_pow(1), &QPoly::q_pow(2)),
    )
}

/// `D_n(1, q)` against the Touchard-Riordan quotient and `D_n(q, q²)`
/// against `[1][3]⋯[2n-1]`, from every route available at `n`.
pub fn special_moment_records(n: usize) -> Result<Vec<CheckRecord>> {
    let touchard = touchard_riordan_rhs(n as u32)?;
    let odd = q_odd_double_fact(n as u32);
    let mut out = Vec::new();
    for route in MomentRoute::ALL {
        if route != MomentRoute::PathDp && n > ENUMERATION_MOMENT_LIMIT {
            continue;
        }
        let d = moments_dn(n, route)?.value;
        let (at_p1, at_q) = special_values(&d);
        out.push(CheckRecord::new(
            "moment_touchard",
            json!({"n": n, "route": route}),
            at_p1,
            &touchard,
        ));
        out.push(CheckRecord::new(
            "moment_odd_double_factorial",
            json!({"n": n, "route": route}),
            at_q,
            &odd,
        ));
    }
    Ok(out)
}

pub fn special_moment_checks(n: usize) -> Result<bool> {
    Ok(special_moment_records(n)?.iter().all(|r| r.equal))
}

/// The three routes agree and each value is symmetric in `p` and `q`.
pub fn moment_route_records(n: usize) -> Result<Vec<CheckRecord>> {
    let dp = moments_dn(n, MomentRoute::PathDp)?.value;
    let mut out = Vec::new();
    for route in [MomentRoute::Matchings, MomentRoute::Tilings] {
        let v = moments_dn(n, route)?.value;
        out.push(CheckRecord::new(
            "moment_routes",
            json!({"n": n, "route": route}),
            &v,
            &dp,
        ));
        out.push(CheckRecord::new(
            "moment_symmetry",
            json!({"n": n, "route": route}),
            &v,
            v.swap_vars(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::odd_double_factorial;

    fn d2() -> PQPoly {
        PQPoly::one() + PQPoly::p() + PQPoly::q()
    }

    #[test]
    fn second_moment_every_route() {
        for route in MomentRoute::ALL {
            assert_eq!(moments_dn(2, route).unwrap().value, d2(), "{route}");
        }
        assert_eq!(moments_dn(0, MomentRoute::PathDp).unwrap().value, PQPoly::one());
    }

    #[test]
    fn routes_agree_up_to_five() {
        for n in 0..=5 {
            assert!(moment_route_records(n).unwrap().iter().all(|r| r.equal), "n={n}");
        }
        assert!(moments_dn(6, MomentRoute::Matchings).is_err());
        assert!(moments_dn(31, MomentRoute::PathDp).is_err());
    }

    #[test]
    fn path_dp_counts_matchings() {
        for n in 0..=12 {
            let d = moments_dn(n, MomentRoute::PathDp).unwrap().value;
            assert_eq!(d.eval_at_one(), odd_double_factorial(n as u64));
        }
    }

    #[test]
    fn hermite_examples() {
        let hs = hermite_recurrence(4).unwrap();
        assert_eq!(hs[1].to_string(), "x");
        assert_eq!(hs[2].to_string(), "x^2 - 1");
        assert_eq!(hs[3].to_string(), "x^3 - (1 + p + q)*x");
        assert!(hermite_records(10).unwrap().iter().all(|r| r.equal));
        assert!(hermite_recurrence(11).is_err());
    }

    #[test]
    fn special_values_small() {
        let (a, b) = special_values(&d2());
        assert_eq!(a, QPoly::from_coeffs(&[2, 1]));
        assert_eq!(b, QPoly::from_coeffs(&[1, 1, 1]));
        let d3 = moments_dn(3, MomentRoute::Matchings).unwrap().value;
        assert_eq!(special_values(&d3).0, QPoly::from_coeffs(&[5, 6, 3, 1]));
        for n in 0..=12 {
            assert!(special_moment_checks(n).unwrap(), "n={n}");
        }
    }
}
