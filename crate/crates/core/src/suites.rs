//! Verification suites: each one gathers the check records for a family of
//! identities. `Suite::All` runs every suite plus a pass over the basic
//! constructors, so that every public operation is exercised at least once.

use std::fmt;

use num_bigint::BigInt;
use serde_json::json;

use crate::bijections::{
    collapse_slice, enumerate_hermite, enumerate_matchings, expand_slice, psi, psi_inv,
    shape_cross_nest, zeta, zeta_inv, HermiteHistory, Matching,
};
use crate::bsum::{
    bq_brute, bq_closed, bq_delta, bq_recursive, enumerate_region_paths,
    enumerate_truncated_region, hermite_records, lemma_records, moment_route_records, moments_dn,
    prop_records, special_moment_records, thm1_records, thm2_records, thm_gen_records, LemmaKind,
    MomentRoute, THEOREM_LIMIT,
};
use crate::error::{check_capacity, Result};
use crate::paths::{enumerate_dyck, is_above, level_profile, order_succ, parse_steps, DyckPath, Step};
use crate::qpoly::{
    binomial, chu_vandermonde_check, odd_double_factorial, pq_int, q_basics, qbinom, qint,
    touchard_riordan_rhs, PQPoly, QBasic, QPoly,
};
use crate::report::CheckRecord;
use crate::tilings::{
    build_matrix_m, cell_at, enumerate_tilings, invert_and_check, truncate, untruncate, DyckTile,
    DyckTiling,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Thm1,
    Thm2,
    ThmGen,
    MpqInverse,
    Bijections,
    Lemmas,
    Moments,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::ThmGen => "thm-gen",
            Suite::MpqInverse => "mpq-inverse",
            Suite::Bijections => "bijections",
            Suite::Lemmas => "lemmas",
            Suite::Moments => "moments",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sweep sizes. `None` selects the default for each suite.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SuiteParams {
    /// Half-length for exhaustive tiling sweeps (default 4).
    pub n: Option<usize>,
    /// Largest offset for the general identity (default 2).
    pub offset: Option<usize>,
}

impl SuiteParams {
    fn tiling_n(&self) -> usize {
        self.n.unwrap_or(4)
    }

    fn matching_n(&self) -> usize {
        self.n.map_or(5, |n| (n + 1).min(5))
    }

    fn gen_n(&self) -> usize {
        self.n.map_or(3, |n| n.min(4))
    }
}

pub fn run_suite(suite: Suite, params: SuiteParams) -> Result<Vec<CheckRecord>> {
    check_capacity("suite half-length", params.tiling_n(), THEOREM_LIMIT)?;
    let offset = params.offset.unwrap_or(2);
    check_capacity("suite offset", offset, 3)?;
    Ok(match suite {
        Suite::Thm1 => thm1_records(params.tiling_n())?,
        Suite::Thm2 => thm2_records(params.tiling_n())?,
        Suite::ThmGen => thm_gen_records(params.gen_n(), offset)?,
        Suite::MpqInverse => mpq_records(params.tiling_n().min(4))?,
        Suite::Bijections => bijection_records(params.tiling_n().min(4), params.matching_n())?,
        Suite::Lemmas => {
            let mut out = Vec::new();
            for kind in LemmaKind::ALL {
                out.extend(lemma_records(kind)?);
            }
            out.extend(prop_records(3)?);
            out.extend(chu_vandermonde_records(6));
            out
        }
        Suite::Moments => moment_records(params.matching_n())?,
        Suite::All => {
            let mut out = basic_records(params.tiling_n().min(4))?;
            for s in [
                Suite::Thm1,
                Suite::Thm2,
                Suite::ThmGen,
                Suite::MpqInverse,
                Suite::Bijections,
                Suite::Lemmas,
                Suite::Moments,
            ] {
                out.extend(run_suite(s, params)?);
            }
            out
        }
    })
}

pub fn mpq_records(n_max: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        let (paths, m) = build_matrix_m(n)?;
        let unitriangular = (0..m.dim()).all(|i| {
            *m.get(i, i) == PQPoly::one() && (i + 1..m.dim()).all(|j| m.get(i, j).is_zero())
        });
        out.push(CheckRecord::with_verdict(
            "build_matrix_m",
            json!({"n": n}),
            paths.len(),
            m.dim(),
            unitriangular && paths.len() == m.dim(),
        ));
        let c = invert_and_check(n)?;
        let render = |x: &crate::tilings::PolyMatrix| serde_json::to_string(x).expect("matrix");
        out.push(CheckRecord::with_verdict(
            "invert_and_check",
            json!({"n": n, "specialization_ok": c.specialization_ok}),
            render(&c.inverse),
            render(&c.formula),
            c.equal && c.specialization_ok,
        ));
    }
    Ok(out)
}

fn all_tilings(n: usize) -> Result<Vec<DyckTiling>> {
    let paths = enumerate_dyck(n)?;
    let mut out = Vec::new();
    for upper in &paths {
        for lower in &paths {
            if is_above(upper, lower)? {
                out.extend(enumerate_tilings(lower, upper)?);
            }
        }
    }
    Ok(out)
}

/// A worked example: ten chords, five tiles of positive length.
pub fn example_big_tiling() -> DyckTiling {
    let tiles: &[&[(i32, i32)]] = &[
        &[(1, 2), (1, 3), (1, 4), (2, 4), (3, 4), (3, 5), (4, 5)],
        &[(0, 3), (0, 4), (0, 5), (1, 5), (2, 5), (2, 6), (3, 6)],
        &[(1, 6), (1, 7), (2, 7)],
        &[(3, 8), (3, 9), (4, 9)],
        &[(4, 6), (4, 7), (4, 8), (5, 8), (6, 8)],
        &[(0, 2)],
        &[(0, 6)],
        &[(1, 8)],
        &[(2, 8)],
        &[(2, 9)],
        &[(3, 7)],
        &[(5, 9)],
        &[(6, 9)],
        &[(7, 9)],
    ];
    DyckTiling::new(
        "UUDDUUDDUDUUUDDUDUDD".parse().expect("lower"),
        "UUUUUUUDUUDUDDDDDDDD".parse().expect("upper"),
        tiles
            .iter()
            .map(|c| DyckTile::new(c.to_vec()).expect("tile"))
            .collect(),
    )
    .expect("example tiling")
}

pub const EXAMPLE_BIG_LABELS: [usize; 10] = [1, 1, 3, 0, 4, 1, 3, 1, 0, 0];

pub fn example_matching() -> Matching {
    Matching::new(vec![(1, 5), (2, 3), (4, 7), (6, 8)]).expect("example matching")
}

pub const EXAMPLE_MATCHING_LABELS: [usize; 4] = [0, 1, 1, 0];

pub fn bijection_records(tiling_n: usize, matching_n: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for n in 0..=matching_n {
        let matchings = enumerate_matchings(n)?;
        out.push(CheckRecord::new(
            "enumerate_matchings",
            json!({"n": n}),
            matchings.len(),
            odd_double_factorial(n as u64),
        ));
        let mut ok = 0usize;
        for m in &matchings {
            let (shape, st) = shape_cross_nest(m);
            let h = zeta(m);
            let good = zeta_inv(&h)? == *m
                && h.path() == &shape
                && h.norm() == st.crossings
                && shape.ht() == st.crossings + st.nestings;
            ok += good as usize;
        }
        out.push(CheckRecord::new(
            "zeta_roundtrip",
            json!({"n": n}),
            ok,
            matchings.len(),
        ));
        let histories: usize = enumerate_dyck(n)?
            .iter()
            .map(|mu| enumerate_hermite(mu).map(|v| v.len()))
            .sum::<Result<usize>>()?;
        out.push(CheckRecord::new(
            "enumerate_hermite",
            json!({"n": n}),
            histories,
            odd_double_factorial(n as u64),
        ));
        out.push(CheckRecord::new(
            "enumerate_tilings_total",
            json!({"n": n}),
            all_tilings(n)?.len(),
            odd_double_factorial(n as u64),
        ));
    }
    for n in 0..=tiling_n {
        for mu in enumerate_dyck(n)? {
            let mut images = Vec::new();
            let mut ok = true;
            for lower in enumerate_dyck(n)? {
                if !is_above(&mu, &lower)? {
                    continue;
                }
                for t in enumerate_tilings(&lower, &mu)? {
                    let h = psi(&t)?;
                    ok &= h.norm() == t.size() && psi_inv(&h)? == t;
                    images.push(h);
                }
            }
            images.sort();
            let all = enumerate_hermite(&mu)?;
            out.push(CheckRecord::with_verdict(
                "psi_roundtrip",
                json!({"upper": mu.to_string()}),
                images.len(),
                all.len(),
                ok && images == all,
            ));
        }
    }
    let m = example_matching();
    out.push(CheckRecord::new(
        "zeta_example",
        json!({"matching": m}),
        format!("{:?}", zeta(&m).labels()),
        format!("{:?}", EXAMPLE_MATCHING_LABELS),
    ));
    let big = example_big_tiling();
    out.push(CheckRecord::new(
        "psi_example",
        json!({"lower": big.lower(), "upper": big.upper()}),
        format!("{:?}", psi(&big)?.labels()),
        format!("{:?}", EXAMPLE_BIG_LABELS),
    ));
    let back = psi_inv(&HermiteHistory::new(big.upper().clone(), EXAMPLE_BIG_LABELS.to_vec())?)?;
    out.push(CheckRecord::with_verdict(
        "psi_inv_example",
        json!({"upper": big.upper()}),
        back.size(),
        big.size(),
        back == big,
    ));
    out.extend(collapse_records(tiling_n)?);
    Ok(out)
}

/// Collapsing a slice under a peak and expanding it again is the identity.
fn collapse_records(n_max: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let (mut tried, mut ok) = (0usize, 0usize);
        for t in all_tilings(n)? {
            let steps = t.upper().steps();
            let lv = t.upper().levels();
            for k in 0..2 * n - 1 {
                if !(steps[k] == Step::Up && steps[k + 1] == Step::Down) {
                    continue;
                }
                if let Ok(c) = collapse_slice(&t, cell_at(k as i64 + 1, lv[k])) {
                    tried += 1;
                    ok += (c.size() == t.size() && expand_slice(&c, k)? == t) as usize;
                }
            }
        }
        out.push(CheckRecord::with_verdict(
            "collapse_slice",
            json!({"n": n}),
            ok,
            tried,
            ok == tried && tried > 0,
        ));
    }
    Ok(out)
}

pub fn chu_vandermonde_records(max: u32) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            for k in 0..=max {
                out.push(CheckRecord::with_verdict(
                    "chu_vandermonde",
                    json!({"m": m, "n": n, "k": k}),
                    chu_vandermonde_check(m, n, k),
                    true,
                    chu_vandermonde_check(m, n, k),
                ));
            }
        }
    }
    out
}

pub fn moment_records(matching_n: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for n in 0..=matching_n {
        out.extend(moment_route_records(n)?);
        // Crossings alone against the closed quotient.
        let cro: QPoly = enumerate_matchings(n)?
            .iter()
            .map(|m| QPoly::q_pow(m.stats().crossings as i64))
            .sum();
        out.push(CheckRecord::new(
            "touchard_riordan_rhs",
            json!({"n": n}),
            cro,
            touchard_riordan_rhs(n as u32)?,
        ));
    }
    for n in 0..=12 {
        out.extend(special_moment_records(n)?);
        let d = moments_dn(n, MomentRoute::PathDp)?;
        out.push(CheckRecord::new(
            "moments_dn_count",
            json!({"n": n, "route": d.route}),
            d.value.eval_at_one(),
            odd_double_factorial(n as u64),
        ));
    }
    out.extend(hermite_records(10)?);
    Ok(out)
}

/// Spot checks of constructors and small operations.
pub fn basic_records(n_max: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let basics: [(QBasic, &str, &[i64], &str); 6] = [
        (QBasic::QInt, "qint", &[3], "1 + q + q^2"),
        (QBasic::QFact, "qfact", &[3], "1 + 2*q + 2*q^2 + q^3"),
        (QBasic::QBinom, "qbinom", &[2, 1], "1 + q"),
        (QBasic::QMultinom, "qmultinom", &[1, 1], "1 + q"),
        (QBasic::QOddDoubleFact, "q_odd_double_fact", &[2], "1 + q + q^2"),
        (QBasic::PqInt, "pq_int", &[2], "p + q"),
    ];
    for (kind, name, args, expected) in basics {
        out.push(CheckRecord::new(
            "q_basics",
            json!({"kind": name, "args": args}),
            q_basics(kind, args)?,
            expected,
        ));
    }
    let f = QPoly::from_coeffs(&[1, 0, 1]);
    let g = qint(3);
    let arith = [
        ("add_sub", (&f + &g) - g.clone(), f.clone()),
        ("neg", -(-&f), f.clone()),
        ("exact_div", (&f * &g).exact_div(&g)?, f.clone()),
        ("exact_div_one", f.exact_div(&QPoly::one())?, f.clone()),
        (
            "subst_q_power",
            qbinom(2, 1).subst_q_power(-1, 1)?,
            QPoly::q_pow(-1) + QPoly::one(),
        ),
        (
            "subst_p_q",
            pq_int(3).subst_p_q(&QPoly::one(), &QPoly::q_pow(1)),
            qint(3),
        ),
    ];
    for (name, lhs, rhs) in arith {
        out.push(CheckRecord::new("poly_arith", json!({"kind": name}), lhs, rhs));
    }
    out.push(CheckRecord::new(
        "poly_arith",
        json!({"kind": "eval_at_one"}),
        qint(5).eval_at_one(),
        5,
    ));
    out.push(CheckRecord::with_verdict(
        "poly_arith",
        json!({"kind": "exact_div_remainder"}),
        "error",
        "error",
        f.exact_div(&QPoly::from_coeffs(&[1, 1])).is_err(),
    ));
    out.push(CheckRecord::new(
        "poly_arith",
        json!({"kind": "pq_mul"}),
        &PQPoly::p() * &PQPoly::q(),
        PQPoly::monomial(1, 1, 1),
    ));
    out.push(CheckRecord::new(
        "bq_delta",
        json!({"n": 1, "a": 1, "b": 1}),
        bq_delta(1, 1, 1),
        "2*q + q^2",
    ));
    out.push(CheckRecord::new(
        "bq_recursive",
        json!({"lower": "UDUD", "a": 0, "b": 0}),
        bq_recursive(&"UDUD".parse()?, 0, 0),
        bq_closed(&"UDUD".parse()?, 0, 0)?,
    ));
    out.push(CheckRecord::new(
        "bq_brute",
        json!({"lower": "UD", "a": 1, "b": 1}),
        bq_brute(&"UD".parse()?, 1, 1)?,
        "2*q + q^2",
    ));
    let region_counts: Vec<usize> = enumerate_region_paths(&"UD".parse()?, 1, 1)?
        .iter()
        .map(|r| enumerate_truncated_region(r).map(|t| t.len()))
        .collect::<Result<_>>()?;
    out.push(CheckRecord::new(
        "enumerate_truncated_region",
        json!({"lower": "UD", "a": 1, "b": 1}),
        format!("{region_counts:?}"),
        "[2, 1]",
    ));
    for n in 0..=8usize {
        let catalan = binomial(2 * n as u64, n as i64) / BigInt::from(n + 1);
        out.push(CheckRecord::new(
            "enumerate_dyck",
            json!({"n": n}),
            enumerate_dyck(n)?.len(),
            catalan,
        ));
    }
    for n in 0..=n_max {
        for path in enumerate_dyck(n)? {
            let text = path.to_string();
            let parsed = DyckPath::new(parse_steps(&text)?)?;
            let levels_ok = level_profile(path.steps(), 0) == path.levels();
            let parts = path.decompose();
            let rejoined = parts.iter().fold(DyckPath::empty(), |acc, p| acc.concat(p));
            let chords = path.chords();
            let chord_ok = chords.len() == n
                && chords.iter().all(|c| c.length >= 1 && c.height >= 1)
                && path.ht() == path.cells_above_zigzag();
            out.push(CheckRecord::with_verdict(
                "chords",
                json!({"path": text}),
                path.ht(),
                path.cells_above_zigzag(),
                chord_ok,
            ));
            out.push(CheckRecord::with_verdict(
                "decompose",
                json!({"path": text}),
                &rejoined,
                &path,
                parsed == path
                    && levels_ok
                    && rejoined == path
                    && parts.iter().all(DyckPath::is_indecomposable),
            ));
        }
    }
    for ks in [vec![1, 2], vec![3], vec![2, 1, 1]] {
        let built = DyckPath::delta_multi(&ks);
        let joined = ks
            .iter()
            .fold(DyckPath::empty(), |acc, &k| acc.concat(&DyckPath::delta(k)));
        out.push(CheckRecord::new(
            "concat_and_delta",
            json!({"blocks": ks}),
            built,
            joined,
        ));
    }
    // Domination by columns: the upper path has at least as many ups before
    // every down.
    for n in 0..=n_max {
        let all = enumerate_dyck(n)?;
        let mut agree = 0usize;
        for l in &all {
            for m in &all {
                let by_columns = m
                    .column_heights()
                    .iter()
                    .zip(l.column_heights())
                    .all(|(a, b)| *a >= b);
                agree += (is_above(m, l)? == by_columns) as usize;
            }
        }
        out.push(CheckRecord::new(
            "is_above",
            json!({"n": n}),
            agree,
            all.len() * all.len(),
        ));
    }
    out.push(CheckRecord::new(
        "order_succ",
        json!({"lower": "UDUDUUDDUD", "upper": "UUUUDUDDDD"}),
        format!("{:?}", order_succ(&"UDUDUUDDUD".parse()?, &"UUUUDUDDDD".parse()?)?),
        "Some(2)",
    ));
    for n in 0..=n_max {
        let tilings = all_tilings(n)?;
        let stats_ok = tilings.iter().all(|t| {
            let s = t.stats();
            t.area() == s.size + 2 * s.norm && s.ht == t.upper().ht()
        });
        out.push(CheckRecord::with_verdict(
            "tiling_stats",
            json!({"n": n}),
            tilings.len(),
            tilings.len(),
            stats_ok,
        ));
        let mut back = 0usize;
        for t in &tilings {
            let tt = truncate(t)?;
            back += (tt.norm() == t.norm() && untruncate(&tt)? == *t) as usize;
        }
        out.push(CheckRecord::new(
            "truncate_roundtrip",
            json!({"n": n}),
            back,
            tilings.len(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_reproduce_labels() {
        assert_eq!(zeta(&example_matching()).labels(), EXAMPLE_MATCHING_LABELS);
        assert_eq!(psi(&example_big_tiling()).unwrap().labels(), EXAMPLE_BIG_LABELS);
    }

    #[test]
    fn basics_pass() {
        let recs = basic_records(3).unwrap();
        if let Some(bad) = recs.iter().find(|r| !r.equal) {
            panic!("{bad:?}");
        }
    }

    #[test]
    fn small_suites_pass() {
        let p = SuiteParams {
            n: Some(2),
            offset: Some(1),
        };
        for s in [Suite::Thm1, Suite::Thm2, Suite::ThmGen, Suite::MpqInverse, Suite::Bijections] {
            let recs = run_suite(s, p).unwrap();
            assert!(recs.iter().all(|r| r.equal), "{s}");
        }
        let too_big = SuiteParams {
            n: Some(9),
            offset: None,
        };
        assert!(run_suite(Suite::Thm1, too_big).is_err());
    }
}
