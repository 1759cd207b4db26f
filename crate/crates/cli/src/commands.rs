//! Command implementations behind the CLI surface, kept separate from
//! argument parsing so they can be exercised directly in tests.

use std::time::Instant;

use anyhow::{bail, Context, Result};
use brooks_core::graph::generators;
use brooks_core::{
    brooks_color, oracle, ColorSystem, Coloring, ComponentException, EngineError, Graph,
    OracleBudget, SignedGraph,
};
use clap::ValueEnum;

use crate::formats::{self, InstanceFile};
use crate::report::{ExceptionReport, Outcome, RunReport};

/// How the input file is interpreted and which system is built from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// DIMACS graph, identical lists `[0, k)` on every vertex.
    Plain,
    /// JSON instance; conflicts are equal labels across an edge.
    List,
    /// JSON instance with an explicit matching per edge.
    Dp,
    /// DIMACS graph with edge signs; '+' forbids equal labels, '-' forbids
    /// labels summing to zero.
    Signed,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::List => "list",
            Mode::Dp => "dp",
            Mode::Signed => "signed",
        }
    }
}

/// Symmetric integer palette for signed mode: `-q..=q` without 0 for even k,
/// with 0 for odd k.
pub fn signed_palette(k: usize) -> Vec<i32> {
    let q = (k / 2) as i32;
    (-q..=q).filter(|&x| x != 0 || k % 2 == 1).collect()
}

/// Builds the graph and color system an input describes and hands both to
/// `body` (the system borrows the graph, so both live in this scope).
fn with_system<T>(
    input: &str,
    k_arg: Option<usize>,
    mode: Mode,
    body: impl FnOnce(&Graph, &ColorSystem) -> Result<T>,
) -> Result<T> {
    match mode {
        Mode::Plain => {
            let g = formats::parse_dimacs(input)?;
            let k = k_arg.unwrap_or_else(|| g.max_degree());
            let sys = ColorSystem::plain(&g, k);
            body(&g, &sys)
        }
        Mode::Signed => {
            let (g, signs) = formats::parse_dimacs_signed(input)?;
            let k = k_arg.unwrap_or_else(|| g.max_degree());
            let signed = SignedGraph::new(&g, signs)?;
            let lists = vec![signed_palette(k); g.n()];
            let sys = ColorSystem::from_signed(&signed, &lists)?;
            body(&g, &sys)
        }
        Mode::List => {
            let inst = InstanceFile::parse(input)?;
            inst.require_no_matchings()?;
            check_k_matches(k_arg, inst.k)?;
            let g = inst.build_graph()?;
            let sys = ColorSystem::from_lists(&g, &inst.lists)?;
            body(&g, &sys)
        }
        Mode::Dp => {
            let inst = InstanceFile::parse(input)?;
            check_k_matches(k_arg, inst.k)?;
            let g = inst.build_graph()?;
            let matchings = inst.canonical_matchings(&g)?;
            let sys = ColorSystem::from_parts(&g, inst.k, &inst.lists, &matchings)?;
            body(&g, &sys)
        }
    }
}

fn check_k_matches(k_arg: Option<usize>, file_k: usize) -> Result<()> {
    if let Some(k) = k_arg {
        if k != file_k {
            bail!("--k {k} disagrees with the instance file's k = {file_k}");
        }
    }
    Ok(())
}

pub struct ColorOutput {
    pub report: RunReport,
    /// Coloring file contents, present exactly when the outcome is colored.
    pub coloring_text: Option<String>,
    pub exit: u8,
}

/// Colors an instance. The verifier re-checks every produced coloring and
/// the result lands in the report; with `strict_verify` a verification
/// mismatch also fails the exit code.
pub fn color(
    input: &str,
    k_arg: Option<usize>,
    mode: Mode,
    strict_verify: bool,
) -> Result<ColorOutput> {
    with_system(input, k_arg, mode, |g, sys| {
        let started = Instant::now();
        let result = brooks_color(sys);
        let wall_ms = started.elapsed().as_secs_f64() * 1e3;
        let base = RunReport {
            n: g.n(),
            m: g.m(),
            max_degree: g.max_degree(),
            k: sys.k(),
            mode: mode.as_str(),
            outcome: Outcome::Colored,
            exceptions: Vec::new(),
            wall_ms,
            verified: None,
            coloring: None,
        };
        match result {
            Ok(outcome) => {
                if let Some(coloring) = outcome.coloring() {
                    let verified = sys.respects(coloring)?;
                    let labels = sys.labels_of(coloring)?;
                    let text = formats::emit_coloring(&labels);
                    let exit = if strict_verify && !verified { 1 } else { 0 };
                    Ok(ColorOutput {
                        report: RunReport {
                            verified: Some(verified),
                            coloring: Some(labels),
                            ..base
                        },
                        coloring_text: Some(text),
                        exit,
                    })
                } else {
                    let exceptions: Vec<ExceptionReport> = outcome
                        .exceptions()
                        .iter()
                        .map(ExceptionReport::from_component)
                        .collect();
                    let kind = match &outcome.exceptions()[0] {
                        ComponentException::Clique { .. } => Outcome::CliqueException,
                        ComponentException::OddCycle { .. } => Outcome::OddCycleException,
                    };
                    Ok(ColorOutput {
                        report: RunReport {
                            outcome: kind,
                            exceptions,
                            ..base
                        },
                        coloring_text: None,
                        exit: 2,
                    })
                }
            }
            Err(EngineError::DegreeExceedsK { .. }) => Ok(ColorOutput {
                report: RunReport {
                    outcome: Outcome::Refused,
                    ..base
                },
                coloring_text: None,
                exit: 1,
            }),
            Err(err) => Err(err.into()),
        }
    })
}

pub struct VerifyOutput {
    /// First violating edge, as 0-based endpoints.
    pub violation: Option<(u32, u32)>,
    pub exit: u8,
}

/// Checks a coloring file against an instance.
pub fn verify(
    graph_input: &str,
    coloring_input: &str,
    k_arg: Option<usize>,
    mode: Mode,
) -> Result<VerifyOutput> {
    with_system(graph_input, k_arg, mode, |g, sys| {
        let labels = formats::parse_coloring(coloring_input, g.n())?;
        let mut coloring = Coloring::uncolored(g.n());
        for (v, &label) in labels.iter().enumerate() {
            let index = sys
                .list(v as u32)
                .iter()
                .position(|&l| l == label)
                .with_context(|| {
                    format!("vertex {}: label {label} is not in its list", v + 1)
                })?;
            coloring.assign(v as u32, index);
        }
        let violation = sys.first_violation(&coloring)?;
        Ok(VerifyOutput {
            violation,
            exit: if violation.is_none() { 0 } else { 1 },
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cycle,
    Clique,
    Path,
    Regular,
    Gnm,
}

/// Generates a graph and returns its DIMACS text.
pub fn gen(
    family: Family,
    n: usize,
    d: Option<usize>,
    m: Option<usize>,
    seed: u64,
) -> Result<String> {
    let g = match family {
        Family::Cycle => generators::cycle(n)?,
        Family::Clique => generators::clique(n)?,
        Family::Path => generators::path(n)?,
        Family::Regular => {
            let d = d.context("--d is required for the regular family")?;
            generators::random_regular(n, d, seed)?
        }
        Family::Gnm => {
            let m = m.context("--m is required for the gnm family")?;
            generators::gnm(n, m, seed)?
        }
    };
    Ok(formats::emit_dimacs(&g))
}

pub struct OracleOutput {
    pub exists: bool,
    pub consistent: bool,
    pub lines: Vec<String>,
    pub exit: u8,
}

/// Decides colorability exhaustively and cross-checks the engine's answer.
pub fn oracle_check(
    input: &str,
    k_arg: Option<usize>,
    mode: Mode,
    budget: &OracleBudget,
) -> Result<OracleOutput> {
    with_system(input, k_arg, mode, |g, sys| {
        let k = sys.k();
        let exists = oracle::exhaustive_respecting_coloring(sys, budget)?.is_some();
        let engine = brooks_color(sys);
        let mut lines = vec![format!(
            "respecting coloring exists: {}",
            if exists { "yes" } else { "no" }
        )];
        let mut consistent = true;
        match &engine {
            Ok(outcome) => {
                if let Some(coloring) = outcome.coloring() {
                    let ok = sys.respects(coloring)?;
                    lines.push("engine: colored".to_string());
                    if !ok || !exists {
                        consistent = false;
                    }
                } else {
                    let kinds: Vec<&str> = outcome
                        .exceptions()
                        .iter()
                        .map(|e| match e {
                            ComponentException::Clique { .. } => "clique",
                            ComponentException::OddCycle { .. } => "odd cycle",
                        })
                        .collect();
                    lines.push(format!("engine: exception ({})", kinds.join(", ")));
                    // Structural exceptions decide plain instances exactly;
                    // under constrained systems a clique or odd cycle may
                    // still be colorable and the engine leaves it to the
                    // oracle.
                    if mode == Mode::Plain && exists {
                        consistent = false;
                    }
                }
            }
            Err(err) => {
                lines.push(format!("engine: error ({err})"));
                let hypotheses_hold = k >= 3
                    && g.max_degree() <= k
                    && !oracle::contains_clique(g, k + 1, budget)?;
                if hypotheses_hold {
                    consistent = false;
                }
            }
        }
        lines.push(format!(
            "cross-check: {}",
            if consistent { "consistent" } else { "INCONSISTENT" }
        ));
        let exit = if !consistent {
            1
        } else if exists {
            0
        } else {
            2
        };
        Ok(OracleOutput {
            exists,
            consistent,
            lines,
            exit,
        })
    })
}

/// Reads the oracle budget override from `BROOKS_ORACLE_BUDGET`: either
/// `<max_vertices>` or `<max_vertices>,<max_states>`.
pub fn budget_from_env() -> Result<OracleBudget> {
    let mut budget = OracleBudget::default();
    if let Ok(raw) = std::env::var("BROOKS_ORACLE_BUDGET") {
        let mut parts = raw.splitn(2, ',');
        if let Some(v) = parts.next() {
            budget.max_vertices = v
                .trim()
                .parse()
                .context("BROOKS_ORACLE_BUDGET: bad vertex limit")?;
        }
        if let Some(s) = parts.next() {
            budget.max_states = s
                .trim()
                .parse()
                .context("BROOKS_ORACLE_BUDGET: bad state limit")?;
        }
    }
    Ok(budget)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub median_secs: f64,
    /// Median time divided by the previous row's median.
    pub ratio: Option<f64>,
}

/// Times the engine on random d-regular graphs of the given sizes and
/// reports the median over `repeats` runs per size.
pub fn bench(d: usize, sizes: &[usize], seed: u64, repeats: usize) -> Result<Vec<BenchRow>> {
    if sizes.is_empty() {
        bail!("at least one size is required");
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        bail!("sizes must be strictly ascending");
    }
    if repeats == 0 {
        bail!("repeats must be at least 1");
    }
    let mut rows: Vec<BenchRow> = Vec::with_capacity(sizes.len());
    for (i, &n) in sizes.iter().enumerate() {
        let g = generators::random_regular(n, d, seed.wrapping_add(i as u64))?;
        let sys = ColorSystem::plain(&g, d);
        let mut times = Vec::with_capacity(repeats);
        for _ in 0..repeats {
            let started = Instant::now();
            let outcome = brooks_color(&sys)?;
            times.push(started.elapsed().as_secs_f64());
            std::hint::black_box(&outcome);
        }
        times.sort_by(f64::total_cmp);
        let median = median_of(&times);
        let ratio = rows.last().map(|prev: &BenchRow| median / prev.median_secs);
        rows.push(BenchRow {
            n,
            m: g.m(),
            median_secs: median,
            ratio,
        });
    }
    Ok(rows)
}

fn median_of(sorted: &[f64]) -> f64 {
    let len = sorted.len();
    if len % 2 == 1 {
        sorted[len / 2]
    } else {
        (sorted[len / 2 - 1] + sorted[len / 2]) / 2.0
    }
}

pub fn bench_table(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:>12} {:>12} {:>14} {:>8}\n",
        "n", "m", "median (s)", "ratio"
    );
    for row in rows {
        let ratio = row
            .ratio
            .map_or("-".to_string(), |r| format!("{r:.2}"));
        out.push_str(&format!(
            "{:>12} {:>12} {:>14.6} {:>8}\n",
            row.n, row.m, row.median_secs, ratio
        ));
    }
    out
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n,m,median_seconds,ratio\n");
    for row in rows {
        let ratio = row.ratio.map_or(String::new(), |r| format!("{r}"));
        out.push_str(&format!("{},{},{},{}\n", row.n, row.m, row.median_secs, ratio));
    }
    out
}
