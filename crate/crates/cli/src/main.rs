use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use brooks_cli::commands::{self, Family, Mode};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "brooks",
    version,
    about = "Color bounded-degree graphs with k colors: plain, list, correspondence, and signed systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color an instance; exit 0 when colored, 2 when an exceptional
    /// component (clique on k+1 vertices, odd cycle at k = 2) is reported.
    Color {
        /// DIMACS graph (plain/signed) or JSON instance (list/dp).
        input: PathBuf,
        /// Number of colors; defaults to the maximum degree for DIMACS
        /// inputs and to the instance's k for JSON inputs.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Plain)]
        mode: Mode,
        /// Write the coloring here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fail (exit 1) if the independent verifier rejects the coloring.
        #[arg(long)]
        verify: bool,
        /// Print the run report as JSON on stdout.
        #[arg(long)]
        json: bool,
    },
    /// Check a coloring file against an instance; exit 0 iff it respects
    /// every edge constraint.
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Plain)]
        mode: Mode,
    },
    /// Generate a graph file.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Degree, for the regular family.
        #[arg(long)]
        d: Option<usize>,
        /// Edge count, for the gnm family.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively decide whether a respecting coloring exists and
    /// cross-check the engine. Honors BROOKS_ORACLE_BUDGET
    /// ("<max_vertices>" or "<max_vertices>,<max_states>").
    Oracle {
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Plain)]
        mode: Mode,
    },
    /// Time the engine on random regular graphs of increasing size.
    Bench {
        /// Graph family; only "regular" is supported.
        #[arg(long, default_value = "regular")]
        family: String,
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, value_delimiter = ',', default_values_t = vec![10_000, 100_000, 1_000_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        /// Write machine-readable CSV rows here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Color {
            input,
            k,
            mode,
            out,
            verify,
            json,
        } => {
            let text = read(&input)?;
            let output = commands::color(&text, k, mode, verify)?;
            if let (Some(coloring), Some(path)) = (&output.coloring_text, &out) {
                fs::write(path, coloring).with_context(|| format!("writing {}", path.display()))?;
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&output.report)?);
            } else {
                eprintln!("{}", output.report);
                if let (Some(coloring), None) = (&output.coloring_text, &out) {
                    print!("{coloring}");
                }
            }
            Ok(output.exit)
        }
        Command::Verify {
            graph,
            coloring,
            k,
            mode,
        } => {
            let graph_text = read(&graph)?;
            let coloring_text = read(&coloring)?;
            let output = commands::verify(&graph_text, &coloring_text, k, mode)?;
            match output.violation {
                None => println!("ok"),
                Some((u, v)) => println!("violated edge ({}, {})", u + 1, v + 1),
            }
            Ok(output.exit)
        }
        Command::Gen {
            family,
            n,
            d,
            m,
            seed,
            out,
        } => {
            let text = commands::gen(family, n, d, m, seed)?;
            match out {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Oracle { input, k, mode } => {
            let text = read(&input)?;
            let budget = commands::budget_from_env()?;
            let output = commands::oracle_check(&text, k, mode, &budget)?;
            for line in &output.lines {
                println!("{line}");
            }
            Ok(output.exit)
        }
        Command::Bench {
            family,
            d,
            sizes,
            seed,
            repeats,
            out,
        } => {
            if family != "regular" {
                anyhow::bail!("unsupported bench family {family:?}; only \"regular\" is available");
            }
            let rows = commands::bench(d, &sizes, seed, repeats)?;
            print!("{}", commands::bench_table(&rows));
            if let Some(path) = out {
                fs::write(&path, commands::bench_csv(&rows))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(0)
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}
