use clap::{Parser, Subcommand, ValueEnum};
use dualnfg_cli::report::{render, Format};
use dualnfg_cli::{exit_code, Method, RunConfig};
use dualnfg_core::{Limits, Suite, DEFAULT_CAP};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dualnfg",
    version,
    about = "Graph codes, dual normal factor graphs and Ising-type partition functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Maximum number of configurations any enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// Tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Spanning tree as comma-separated edge labels.
    #[arg(long, global = true, value_delimiter = ',')]
    tree: Option<Vec<String>>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for parallel sums; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Connection matrices, Betti numbers, spanning tree, cut sets and cycles.
    Topo { graph: PathBuf },
    /// Cochain and chain spaces with the realization observability table.
    Spaces {
        graph: PathBuf,
        #[arg(long, default_value = "Z2")]
        alphabet: String,
    },
    /// Partition function of a model file.
    Partition {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
    },
    /// Importance-sampling estimate of the partition function.
    Mc {
        model: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Run the property suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Duality,
    Nfgdt,
    Scale,
    Planar,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 => Ok(x),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

fn emit<T: Serialize>(r: &T, format: Format) {
    print!("{}", render(r, format));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = RunConfig {
        limits: Limits {
            cap: cli.cap,
            tolerance: cli.tol,
            threads: cli.threads,
        },
        seed: cli.seed,
        tree: cli.tree,
    };
    let result = match &cli.command {
        Command::Topo { graph } => dualnfg_cli::topo(graph, &cfg).map(|r| emit(&r, cli.format)),
        Command::Spaces { graph, alphabet } => {
            dualnfg_cli::spaces(graph, alphabet, &cfg).map(|r| emit(&r, cli.format))
        }
        Command::Partition { model, method } => {
            dualnfg_cli::partition(model, *method, &cfg).map(|r| emit(&r, cli.format))
        }
        Command::Mc { model, samples } => {
            dualnfg_cli::mc(model, *samples, &cfg).map(|r| emit(&r, cli.format))
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = match suite {
                SuiteArg::All => Suite::ALL.to_vec(),
                SuiteArg::Duality => vec![Suite::Duality],
                SuiteArg::Nfgdt => vec![Suite::Nfgdt],
                SuiteArg::Scale => vec![Suite::Scale],
                SuiteArg::Planar => vec![Suite::Planar],
            };
            let r = dualnfg_cli::verify(&suites, &cfg);
            emit(&r, cli.format);
            if !r.passed {
                return ExitCode::from(3);
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
