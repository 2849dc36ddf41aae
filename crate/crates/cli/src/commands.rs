//! Subcommand implementations. Each returns the JSON report and an exit code.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use relc::catalog;
use relc::io;
use relc::relcomp::{self, Caps};
use relc::structures::{enumerate_homogeneous_digraphs, is_homogeneous, predicted_homogeneous_digraphs};
use relc::verify;
use relc::witness::{self, TestOutcome};
use relc::{Error, PermutationGroup};
use serde_json::{json, Value};

use crate::cache::ChainCache;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CAP: u8 = 3;

pub struct Report {
    pub value: Value,
    pub code: u8,
}

impl Report {
    fn ok(value: Value) -> Self {
        Report { value, code: EXIT_OK }
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Cap(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Cap(_) => EXIT_CAP,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Cap(m) => write!(f, "cap exceeded: {m}"),
        }
    }
}

pub fn is_cap(e: &Error) -> bool {
    matches!(
        e,
        Error::DegreeTooLarge { .. }
            | Error::GroupTooLarge { .. }
            | Error::TooLarge(_)
            | Error::CapExceeded(_)
            | Error::ArityTooLarge { .. }
    )
}

/// Settings shared by all subcommands.
pub struct Context {
    pub seed: u64,
    pub strict: bool,
    pub caps: Caps,
    pub cache: Option<ChainCache>,
}

impl Context {
    /// Cap errors become a `skipped(cap)` report unless `--strict`.
    fn recover(&self, e: Error) -> Result<Report, CliError> {
        if !is_cap(&e) {
            return Err(CliError::Input(e.to_string()));
        }
        if self.strict {
            return Err(CliError::Cap(e.to_string()));
        }
        Ok(Report::ok(json!({"skipped": "cap", "reason": e.to_string()})))
    }

    pub fn load_group(&self, path: &Path) -> Result<PermutationGroup, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let g = io::group_from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Ok(match &self.cache {
            Some(c) => c.attach(g),
            None => g,
        })
    }
}

/// Runs `f` on every file in input order; a single file gives a bare report.
fn per_file<F>(ctx: &Context, files: &[std::path::PathBuf], f: F) -> Result<Report, CliError>
where
    F: Fn(&Context, &PermutationGroup) -> Result<Report, CliError> + Sync,
{
    let reports: Vec<Result<Report, CliError>> = files
        .par_iter()
        .map(|p| ctx.load_group(p).and_then(|g| f(ctx, &g)))
        .collect();
    if reports.len() == 1 {
        return reports.into_iter().next().expect("one report");
    }
    let mut values = Vec::with_capacity(reports.len());
    let mut code = EXIT_OK;
    for (path, r) in files.iter().zip(reports) {
        let r = r?;
        code = code.max(r.code);
        values.push(json!({"file": path.display().to_string(), "report": r.value}));
    }
    Ok(Report {
        value: Value::Array(values),
        code,
    })
}

pub fn stats(ctx: &Context, files: &[std::path::PathBuf]) -> Result<Report, CliError> {
    per_file(ctx, files, |ctx, g| match relcomp::statistics(g, &ctx.caps) {
        Ok(r) => Ok(Report::ok(serde_json::to_value(r).expect("report serializes"))),
        Err(e) if is_cap(&e) && !ctx.strict => {
            let transitive = g.is_transitive();
            let primitive = if transitive {
                g.is_primitive().ok()
            } else {
                None
            };
            let skipped = "skipped(cap)";
            Ok(Report::ok(json!({
                "order": g.order().to_string(),
                "degree": g.degree(),
                "transitive": transitive,
                "primitive": primitive,
                "rc": skipped,
                "b": skipped,
                "B": skipped,
                "H": skipped,
                "I": skipped,
                "reason": e.to_string(),
            })))
        }
        Err(e) => ctx.recover(e),
    })
}

pub fn rc(ctx: &Context, files: &[std::path::PathBuf]) -> Result<Report, CliError> {
    per_file(ctx, files, |ctx, g| match relcomp::relational_complexity_with(g, &ctx.caps) {
        Ok(r) => Ok(Report::ok(json!({
            "rc": r.rc,
            "binary": r.rc == 2,
            "witness": r.witness.map(|w| w.to_json()),
        }))),
        Err(e) => ctx.recover(e),
    })
}

/// Which tests `relc tests` runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestSelection {
    Numbered(u8),
    Frobenius,
    Beautiful,
    All,
}

impl std::str::FromStr for TestSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(TestSelection::All),
            "frobenius" => Ok(TestSelection::Frobenius),
            "beautiful" => Ok(TestSelection::Beautiful),
            _ => match s.parse::<u8>() {
                Ok(n @ 1..=6) => Ok(TestSelection::Numbered(n)),
                _ => Err(format!("unknown test {s}; expected 1..6, frobenius, beautiful or all")),
            },
        }
    }
}

pub struct TestOptions {
    pub selection: TestSelection,
    pub prime: Option<u64>,
    pub trials: usize,
    pub ell_max: usize,
    pub closure_k: usize,
    pub lambda: Option<Vec<usize>>,
    pub normal: Option<std::path::PathBuf>,
    pub keep_going: bool,
}

fn primes_dividing(g: &PermutationGroup) -> Vec<u64> {
    let n = g.degree() as u64;
    (2..=n)
        .filter(|&p| (2..p).all(|d| p % d != 0) && n.is_multiple_of(p))
        .collect()
}

enum Step {
    Numbered(u8),
    Frobenius,
    Beautiful,
}

impl Step {
    fn name(&self) -> String {
        match self {
            Step::Numbered(n) => format!("test{n}"),
            Step::Frobenius => "frobenius".into(),
            Step::Beautiful => "beautiful".into(),
        }
    }
}

fn run_step(ctx: &Context, g: &PermutationGroup, step: &Step, opts: &TestOptions) -> Result<Vec<TestOutcome>, Error> {
    Ok(match step {
        Step::Numbered(1) => vec![witness::test1_character_bound(g, opts.ell_max)?],
        Step::Numbered(2) => vec![witness::test2_strongly_non_k_ary(g, opts.closure_k)?],
        Step::Numbered(3) => vec![witness::test3_triples(g)?],
        Step::Numbered(4) => vec![witness::test4_suborbits(g)?],
        Step::Numbered(5) => {
            let primes = match opts.prime {
                Some(p) => vec![p],
                None => primes_dividing(g),
            };
            let mut out = Vec::new();
            for p in primes {
                match witness::test5_special_primes_seeded(g, p, ctx.seed) {
                    Ok(t) => {
                        let stop = t.is_not_binary();
                        out.push(t);
                        if stop {
                            break;
                        }
                    }
                    Err(Error::PrimeDoesNotDivide(_)) if opts.prime.is_none() => {}
                    Err(e) => return Err(e),
                }
            }
            if out.is_empty() {
                return Err(Error::ConditionFailed("no prime divides both the degree and the order".into()));
            }
            out
        }
        Step::Numbered(_) => vec![witness::test6_trivial_two_point(g, opts.trials, ctx.seed)?],
        Step::Frobenius => vec![witness::frobenius_test(g)?],
        Step::Beautiful => {
            let (Some(path), Some(lambda)) = (&opts.normal, &opts.lambda) else {
                return Err(Error::BadParameter("beautiful needs --normal and --lambda".into()));
            };
            let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let s = io::group_from_json(&text)?;
            vec![witness::check_beautiful(g, &s, lambda)?]
        }
    })
}

pub fn tests(ctx: &Context, file: &Path, opts: &TestOptions) -> Result<Report, CliError> {
    let g = ctx.load_group(file)?;
    let steps: Vec<Step> = match opts.selection {
        TestSelection::All => (1..=6).map(Step::Numbered).chain([Step::Frobenius]).collect(),
        TestSelection::Numbered(n) => vec![Step::Numbered(n)],
        TestSelection::Frobenius => vec![Step::Frobenius],
        TestSelection::Beautiful => vec![Step::Beautiful],
    };
    let sequence = steps.len() > 1;
    let mut results = Vec::new();
    let mut not_binary = false;
    let mut capped = false;
    for step in &steps {
        match run_step(ctx, &g, step, opts) {
            Ok(outcomes) => {
                for t in outcomes {
                    not_binary |= t.is_not_binary();
                    results.push(t.to_json());
                }
            }
            Err(e) if sequence => {
                capped |= is_cap(&e);
                results.push(json!({
                    "test": step.name(),
                    "verdict": "Inconclusive",
                    "certificate": null,
                    "note": e.to_string(),
                }));
            }
            Err(e) => return ctx.recover(e),
        }
        if not_binary && !opts.keep_going {
            break;
        }
    }
    if capped && ctx.strict {
        return Err(CliError::Cap("a test exceeded its size cap".into()));
    }
    Ok(Report::ok(json!({
        "verdict": if not_binary { "NotBinary" } else { "Inconclusive" },
        "tests": results,
    })))
}

pub fn closure(ctx: &Context, file: &Path, k: usize) -> Result<Report, CliError> {
    let g = ctx.load_group(file)?;
    match witness::k_closure(&g, k) {
        Ok(c) => Ok(Report::ok(json!({
            "k": k,
            "group_order": g.order().to_string(),
            "closure_order": c.order().to_string(),
            "closed": c.same_group(&g),
            "degree": c.degree(),
            "generators": c.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        }))),
        Err(e) => ctx.recover(e),
    }
}

pub fn homog_file(ctx: &Context, file: &Path) -> Result<Report, CliError> {
    let text = fs::read_to_string(file).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let r = io::structure_from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    match is_homogeneous(&r) {
        Ok(h) => Ok(Report::ok(json!({
            "vertices": r.vertices(),
            "homogeneous": h.homogeneous,
            "aut_order": h.automorphisms.order().to_string(),
            "failure": h.failure.map(|(d, i)| json!({"domain": d, "image": i})),
        }))),
        Err(e) => ctx.recover(e),
    }
}

pub fn homog_enumerate(ctx: &Context, n: usize) -> Result<Report, CliError> {
    let found = match enumerate_homogeneous_digraphs(n) {
        Ok(f) => f,
        Err(e) => return ctx.recover(e),
    };
    let predicted = predicted_homogeneous_digraphs(n).map_err(|e| CliError::Input(e.to_string()))?;
    let digraphs: Vec<Value> = found
        .values()
        .map(|d| {
            let edges: Vec<[usize; 2]> = d.edges().iter().map(|&(a, b)| [a, b]).collect();
            json!({"vertices": d.vertices(), "edges": edges})
        })
        .collect();
    Ok(Report::ok(json!({
        "n": n,
        "count": found.len(),
        "matches_classification": found.keys().eq(predicted.keys()),
        "digraphs": digraphs,
    })))
}

pub fn catalog_list() -> Report {
    let entries: Vec<Value> = catalog::schemas()
        .into_iter()
        .map(|(name, schema)| json!({"name": name, "parameters": schema}))
        .collect();
    Report::ok(Value::Array(entries))
}

pub fn catalog_build(name: &str, params: &[String], output: Option<&Path>) -> Result<Report, CliError> {
    let e = catalog::build(name, params).map_err(|e| CliError::Input(e.to_string()))?;
    let text = io::group_to_json(&e.group, Some(&e.label()));
    let Some(path) = output else {
        let value: Value = serde_json::from_str(&text).expect("group JSON parses");
        return Ok(Report::ok(value));
    };
    fs::write(path, text + "\n").map_err(|err| CliError::Input(format!("{}: {err}", path.display())))?;
    Ok(Report::ok(json!({
        "name": e.label(),
        "degree": e.group.degree(),
        "order": e.group.order().to_string(),
        "expected_rc": e.expected_rc.map(|r| match r {
            catalog::ExpectedRc::Exact(v) => json!(v),
            catalog::ExpectedRc::AtMost(v) => json!(format!("<= {v}")),
        }),
        "written": path.display().to_string(),
    })))
}

pub fn verify(filter: Option<&str>) -> Report {
    let selected: Vec<verify::Criterion> = verify::criteria()
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.matches(f)))
        .collect();
    let reports: Vec<verify::CriterionReport> = selected.par_iter().map(verify::Criterion::run).collect();
    let passed = reports.iter().all(|r| r.passed);
    Report {
        value: json!({
            "passed": passed,
            "criteria": reports,
        }),
        code: if passed { EXIT_OK } else { EXIT_FAILED },
    }
}
