//! Command-line front end. Every command writes JSON lines (or plain text)
//! to the given writer and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bijections::{enumerate_hermite, enumerate_matchings_bounded, DEFAULT_MATCHING_LIMIT};
use crate::bsum::{
    bq_brute, bq_recursive, enumerate_region_paths_bounded, moments_dn, MomentRoute, RegionLimits,
    PATH_DP_LIMIT,
};
use crate::error::{Error, Result};
use crate::paths::{enumerate_dyck_bounded, is_above, DyckPath, DEFAULT_PATH_LIMIT};
use crate::qpoly::touchard_riordan_rhs;
use crate::report::CheckRecord;
use crate::suites::{run_suite, Suite, SuiteParams};
use crate::tilings::{build_matrix_m, enumerate_tilings_bounded, DyckTiling, DEFAULT_TILING_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dyck", version, about = "Dyck tilings, matchings and their q-identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List combinatorial objects in canonical order.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumKind,
        #[command(flatten)]
        params: Params,
    },
    /// Run a verification suite and report every checked instance.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        params: Params,
    },
    /// Compute a single value.
    Compute {
        #[arg(value_enum)]
        kind: ComputeKind,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EnumKind {
    Paths,
    Tilings,
    Matchings,
    Hermite,
    RegionPaths,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Thm1,
    Thm2,
    ThmGen,
    MpqInverse,
    Bijections,
    Lemmas,
    Moments,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Thm1 => Suite::Thm1,
            SuiteArg::Thm2 => Suite::Thm2,
            SuiteArg::ThmGen => Suite::ThmGen,
            SuiteArg::MpqInverse => Suite::MpqInverse,
            SuiteArg::Bijections => Suite::Bijections,
            SuiteArg::Lemmas => Suite::Lemmas,
            SuiteArg::Moments => Suite::Moments,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ComputeKind {
    Bq,
    Moments,
    Touchard,
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RouteArg {
    Matchings,
    Tilings,
    PathDp,
}

impl From<RouteArg> for MomentRoute {
    fn from(r: RouteArg) -> MomentRoute {
        match r {
            RouteArg::Matchings => MomentRoute::Matchings,
            RouteArg::Tilings => MomentRoute::Tilings,
            RouteArg::PathDp => MomentRoute::PathDp,
        }
    }
}

#[derive(Debug, Clone, Args)]
struct Params {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    lower: Option<String>,
    #[arg(long)]
    upper: Option<String>,
    #[arg(long)]
    path: Option<String>,
    /// Output format; json by default, except text for `compute`.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Also print the value at q = 1 (and p = 1).
    #[arg(long)]
    eval_q1: bool,
    /// Size limit replacing the default for enumerations; for other
    /// commands, an upper bound on --n.
    #[arg(long)]
    max_n: Option<usize>,
    /// Route for `compute moments`.
    #[arg(long, value_enum, default_value = "path-dp")]
    route: RouteArg,
}

impl Params {
    fn need_n(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| Error::Domain("--n is required".into()))
    }

    fn path_arg(&self, name: &str, value: &Option<String>) -> Result<DyckPath> {
        value
            .as_deref()
            .ok_or_else(|| Error::Domain(format!("--{name} is required")))?
            .parse()
    }

    fn lower_path(&self) -> Result<DyckPath> {
        if self.path.is_some() {
            self.path_arg("path", &self.path)
        } else {
            self.path_arg("lower", &self.lower)
        }
    }

    fn check_cap(&self, n: usize) -> Result<()> {
        match self.max_n {
            Some(cap) if n > cap => Err(Error::Capacity {
                what: "--max-n",
                requested: n,
                limit: cap,
            }),
            _ => Ok(()),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => EXIT_USAGE,
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::NotDivisible { .. } | Error::Invariant(_) => EXIT_FAILED,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Enumerate { kind, params } => cmd_enumerate(*kind, params, out),
        Command::Verify { suite, params } => cmd_verify(*suite, params, out),
        Command::Compute { kind, params } => cmd_compute(*kind, params, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(out: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(out, "{line}").map_err(|e| Error::Invariant(format!("write failed: {e}")))
}

fn json_line(value: &impl Serialize) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn tiling_text(t: &DyckTiling) -> String {
    let tiles: Vec<String> = t
        .tiles()
        .iter()
        .map(|tile| {
            let cells: Vec<String> = tile.cells().iter().map(|(x, y)| format!("({x},{y})")).collect();
            format!("{{{}}}", cells.join(","))
        })
        .collect();
    format!("{} / {}: {}", t.lower(), t.upper(), tiles.join(" "))
}

fn cmd_enumerate(kind: EnumKind, p: &Params, out: &mut dyn Write) -> Result<i32> {
    let format = p.format.unwrap_or(Format::Json);
    let mut lines: Vec<(Value, String)> = Vec::new();
    let name = match kind {
        EnumKind::Paths => {
            let n = p.need_n()?;
            for path in enumerate_dyck_bounded(n, p.max_n.unwrap_or(DEFAULT_PATH_LIMIT))? {
                lines.push((json!({"path": path}), path.to_string()));
            }
            "paths"
        }
        EnumKind::Tilings => {
            let limit = p.max_n.unwrap_or(DEFAULT_TILING_LIMIT);
            let pairs: Vec<(DyckPath, DyckPath)> = match (&p.lower, &p.upper) {
                (Some(_), Some(_)) => vec![(p.path_arg("lower", &p.lower)?, p.path_arg("upper", &p.upper)?)],
                _ => {
                    let n = p.need_n()?;
                    let all = enumerate_dyck_bounded(n, limit)?;
                    let mut v = Vec::new();
                    for u in &all {
                        for l in &all {
                            if is_above(u, l)? {
                                v.push((l.clone(), u.clone()));
                            }
                        }
                    }
                    v
                }
            };
            for (l, u) in pairs {
                for t in enumerate_tilings_bounded(&l, &u, limit)? {
                    let stats = t.stats();
                    lines.push((
                        json!({"tiling": t, "size": stats.size, "norm": stats.norm, "ht": stats.ht}),
                        tiling_text(&t),
                    ));
                }
            }
            "tilings"
        }
        EnumKind::Matchings => {
            let n = p.need_n()?;
            for m in enumerate_matchings_bounded(n, p.max_n.unwrap_or(DEFAULT_MATCHING_LIMIT))? {
                let s = m.stats();
                let pairs: Vec<String> = m.pairs().iter().map(|(i, j)| format!("({i},{j})")).collect();
                lines.push((
                    json!({"matching": m, "crossings": s.crossings, "nestings": s.nestings}),
                    format!("{} cro={} nest={}", pairs.join(""), s.crossings, s.nestings),
                ));
            }
            "matchings"
        }
        EnumKind::Hermite => {
            let paths = match (&p.path, &p.upper) {
                (None, None) => enumerate_dyck_bounded(p.need_n()?, DEFAULT_PATH_LIMIT)?,
                (Some(_), _) => vec![p.path_arg("path", &p.path)?],
                (None, Some(_)) => vec![p.path_arg("upper", &p.upper)?],
            };
            for path in paths {
                p.check_cap(path.half_length())?;
                for h in enumerate_hermite(&path)? {
                    let labels: Vec<String> = h.labels().iter().map(|l| l.to_string()).collect();
                    lines.push((
                        json!({"history": h, "norm": h.norm()}),
                        format!("{} [{}]", h.path(), labels.join(",")),
                    ));
                }
            }
            "hermite"
        }
        EnumKind::RegionPaths => {
            let lower = p.lower_path()?;
            let (a, b) = (p.a.unwrap_or(0), p.b.unwrap_or(0));
            let limits = RegionLimits {
                half_length: p.max_n.unwrap_or(RegionLimits::default().half_length),
                ..RegionLimits::default()
            };
            for r in enumerate_region_paths_bounded(&lower, a, b, limits)? {
                let text = format!("{} area/2={}", r.upper(), r.area_halves());
                lines.push((json!(r), text));
            }
            "region-paths"
        }
    };
    for (j, t) in &lines {
        emit(out, &if format == Format::Json { json_line(j) } else { t.clone() })?;
    }
    let summary = json!({"summary": {"kind": name, "count": lines.len()}});
    emit(
        out,
        &match format {
            Format::Json => json_line(&summary),
            Format::Text => format!("count: {}", lines.len()),
        },
    )?;
    Ok(EXIT_OK)
}

fn record_text(r: &CheckRecord) -> String {
    let params = json_line(&r.parameters);
    if r.equal {
        format!("PASS {} {params}", r.check)
    } else {
        format!("FAIL {} {params} lhs={} rhs={}", r.check, r.lhs, r.rhs)
    }
}

fn cmd_verify(suite: SuiteArg, p: &Params, out: &mut dyn Write) -> Result<i32> {
    let format = p.format.unwrap_or(Format::Json);
    if let Some(n) = p.n {
        p.check_cap(n)?;
    }
    let offset = match (p.a, p.b) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(0).max(b.unwrap_or(0))),
    };
    let suite: Suite = suite.into();
    let records = run_suite(suite, SuiteParams { n: p.n, offset })?;
    for r in &records {
        emit(
            out,
            &match format {
                Format::Json => json_line(r),
                Format::Text => record_text(r),
            },
        )?;
    }
    let failed = records.iter().filter(|r| !r.equal).count();
    let summary = json!({"summary": {"suite": suite.name(), "checks": records.len(), "failed": failed, "pass": failed == 0}});
    emit(
        out,
        &match format {
            Format::Json => json_line(&summary),
            Format::Text => format!("{}: {} checks, {} failed", suite, records.len(), failed),
        },
    )?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_compute(kind: ComputeKind, p: &Params, out: &mut dyn Write) -> Result<i32> {
    let format = p.format.unwrap_or(Format::Text);
    let (name, params, value, at_one): (&str, Value, Value, Option<Value>) = match kind {
        ComputeKind::Bq => {
            let lower = p.lower_path()?;
            p.check_cap(lower.half_length())?;
            let (a, b) = (p.a.unwrap_or(0), p.b.unwrap_or(0));
            let v = bq_recursive(&lower, a, b);
            if lower.half_length() <= 4 && a.max(b) <= 3 {
                let brute = bq_brute(&lower, a, b)?;
                if brute != v {
                    return Err(Error::Invariant(format!(
                        "recursive value {v} differs from enumeration {brute}"
                    )));
                }
            }
            (
                "bq",
                json!({"lower": lower, "a": a, "b": b}),
                json!(v.to_string()),
                Some(json!(v.eval_at_one().to_string())),
            )
        }
        ComputeKind::Moments => {
            let n = p.need_n()?;
            p.check_cap(n)?;
            let route: MomentRoute = p.route.into();
            if route == MomentRoute::PathDp && n > PATH_DP_LIMIT {
                return Err(Error::Capacity {
                    what: "moment half-length",
                    requested: n,
                    limit: PATH_DP_LIMIT,
                });
            }
            let t = moments_dn(n, route)?;
            (
                "moments",
                json!({"n": n, "route": route}),
                json!(t.value.to_string()),
                Some(json!(t.value.eval_at_one().to_string())),
            )
        }
        ComputeKind::Touchard => {
            let n = p.need_n()?;
            p.check_cap(n)?;
            let v = touchard_riordan_rhs(n as u32)?;
            (
                "touchard",
                json!({"n": n}),
                json!(v.to_string()),
                Some(json!(v.eval_at_one().to_string())),
            )
        }
        ComputeKind::Matrix => {
            let n = p.need_n()?;
            p.check_cap(n)?;
            let (paths, m) = build_matrix_m(n)?;
            let ones: Vec<Vec<String>> = m
                .eval_at_one()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect();
            (
                "matrix",
                json!({"n": n, "paths": paths}),
                json!(m),
                Some(json!(ones)),
            )
        }
    };
    match format {
        Format::Json => {
            let mut obj = json!({"kind": name, "parameters": params, "value": value});
            if p.eval_q1 {
                obj["at_one"] = at_one.unwrap_or(Value::Null);
            }
            emit(out, &json_line(&obj))?;
        }
        Format::Text => {
            emit(out, &value_text(&value))?;
            if p.eval_q1 {
                if let Some(v) = at_one {
                    emit(out, &format!("at 1: {}", value_text(&v)))?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(rows) => rows
            .iter()
            .map(|r| match r {
                Value::Array(cells) => cells.iter().map(value_text).collect::<Vec<_>>().join("\t"),
                other => value_text(other),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["dyck"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn enumerate_examples() {
        let (code, out, _) = call(&["enumerate", "paths", "--n", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 6);
        assert!(out.ends_with("{\"summary\":{\"count\":5,\"kind\":\"paths\"}}\n"));
        let (_, out, _) = call(&["enumerate", "tilings", "--lower", "UDUD", "--upper", "UUDD", "--format", "text"]);
        assert_eq!(out, "UDUD / UUDD: {(0,1)}\ncount: 1\n");
        let (_, out, _) = call(&["enumerate", "matchings", "--n", "3", "--format", "text"]);
        assert!(out.ends_with("count: 15\n"));
        let (_, out, _) = call(&["enumerate", "hermite", "--path", "UUDD", "--format", "text"]);
        assert_eq!(out, "UUDD [0,0]\nUUDD [1,0]\ncount: 2\n");
        let (_, out, _) = call(&["enumerate", "region-paths", "--lower", "UD", "--a", "1", "--b", "1", "--format", "text"]);
        assert_eq!(out, "UD area/2=4\nDU area/2=2\ncount: 2\n");
    }

    #[test]
    fn compute_examples() {
        assert_eq!(call(&["compute", "bq", "--path", "UDUD", "--a", "0", "--b", "0"]).1, "1 + q\n");
        assert_eq!(call(&["compute", "moments", "--n", "2"]).1, "1 + p + q\n");
        assert_eq!(call(&["compute", "touchard", "--n", "3"]).1, "5 + 6*q + 3*q^2 + q^3\n");
        let (_, out, _) = call(&["compute", "bq", "--path", "UD", "--a", "1", "--b", "1", "--eval-q1"]);
        assert_eq!(out, "2*q + q^2\nat 1: 3\n");
        let (_, out, _) = call(&["compute", "matrix", "--n", "2", "--format", "json"]);
        assert_eq!(
            out,
            "{\"kind\":\"matrix\",\"parameters\":{\"n\":2,\"paths\":[\"UUDD\",\"UDUD\"]},\"value\":[[\"1\",\"0\"],[\"p*q\",\"1\"]]}\n"
        );
    }

    #[test]
    fn verify_examples() {
        let (code, out, _) = call(&["verify", "thm2", "--n", "4"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        let size_four = lines
            .iter()
            .filter_map(|l| serde_json::from_str::<Value>(l).ok())
            .filter(|v| v["parameters"]["upper"].as_str().is_some_and(|u| u.len() == 8))
            .filter(|v| v["equal"] == json!(true))
            .count();
        assert_eq!(size_four, 14);
        assert!(lines.last().unwrap().contains("\"failed\":0"));
        let (code, _, _) = call(&["verify", "mpq-inverse", "--n", "3"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["enumerate", "paths"]).0, EXIT_USAGE);
        assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["compute", "bq", "--path", "UDD"]).0, EXIT_USAGE);
        assert_eq!(call(&["enumerate", "paths", "--n", "9"]).0, EXIT_CAPACITY);
        assert_eq!(call(&["enumerate", "paths", "--n", "9", "--max-n", "9"]).0, EXIT_OK);
        assert_eq!(call(&["verify", "thm1", "--n", "4", "--max-n", "3"]).0, EXIT_CAPACITY);
        assert_eq!(call(&["compute", "matrix", "--n", "6"]).0, EXIT_CAPACITY);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }
}
