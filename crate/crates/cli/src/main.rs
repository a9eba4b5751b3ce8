use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dkbound::commands::{self, CompareArgs, Format, GraphSource, Output, PairArgs, TransformArg};
use dkbound::experiment::ExperimentSpec;
use dkbound::{CliError, CliResult, SEED_ENV};
use dkbound_core::rng::DEFAULT_SEED;

/// Subspace distance bounds for eigenvector blocks of symmetric matrices.
#[derive(Parser)]
#[command(name = "dkbound", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Args)]
struct PairOpts {
    /// Matrix file for Φ.
    phi: PathBuf,
    /// Matrix file for Ψ.
    psi: PathBuf,
    /// Number of eigenvalues below the compared block (0-based offset).
    #[arg(long, default_value_t = 0)]
    j: usize,
    /// Block width.
    #[arg(long)]
    r: usize,
    /// Separate offset for the Φ block, e.g. to compare opposite ends.
    #[arg(long)]
    j_phi: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Also write stdout to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl PairOpts {
    fn pair(&self) -> PairArgs {
        PairArgs { phi: self.phi.clone(), psi: self.psi.clone(), j: self.j, r: self.r, j_phi: self.j_phi }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Bound the distance between the chosen eigenvector blocks of two matrices.
    Compare {
        #[command(flatten)]
        pair: PairOpts,
        /// Slope of the affine transform.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        c1: f64,
        /// Offset of the affine transform.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        c0: f64,
        /// Polynomial coefficients in ascending powers, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with_all = ["c1", "c0"])]
        poly: Option<Vec<f64>>,
        /// Search for the affine transform with the smallest bound.
        #[arg(long, conflicts_with_all = ["c1", "c0", "poly"])]
        search_affine: bool,
    },
    /// Check whether valid intervals exist, untransformed and optionally after an affine search.
    Feasibility {
        #[command(flatten)]
        pair: PairOpts,
        #[arg(long)]
        search_affine: bool,
    },
    /// Laplacian against normalized Laplacian over random regular graphs.
    DregExperiment {
        #[arg(long, default_value_t = 300)]
        n: usize,
        #[arg(long, default_value_t = 30)]
        d: usize,
        #[arg(long, default_value_t = 25)]
        replicates: u64,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        j: usize,
        #[arg(long, env = SEED_ENV)]
        seed: Option<u64>,
        /// Directory receiving records.csv and summary.json.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Write adjacency, Laplacian and normalized Laplacian matrix files for a graph.
    Operators {
        /// Edge-list file.
        #[arg(long, conflicts_with = "random_regular", required_unless_present = "random_regular")]
        edges: Option<PathBuf>,
        /// Draw a random regular graph with N nodes and degree D.
        #[arg(long, num_args = 2, value_names = ["N", "D"])]
        random_regular: Option<Vec<usize>>,
        #[arg(long, env = SEED_ENV)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn tee(out: &Option<PathBuf>, result: CliResult<Output>) -> CliResult<Output> {
    let output = result?;
    if let Some(path) = out {
        std::fs::write(path, &output.stdout).map_err(|e| CliError::io(path, e))?;
    }
    Ok(output)
}

fn run(cli: Cli) -> CliResult<Output> {
    match cli.command {
        Command::Compare { pair, c1, c0, poly, search_affine } => {
            let transform = match (search_affine, poly) {
                (true, _) => TransformArg::Search,
                (false, Some(coeffs)) => TransformArg::Polynomial(coeffs),
                (false, None) => TransformArg::Affine { c1, c0 },
            };
            let args = CompareArgs { pair: pair.pair(), transform, format: pair.format.into() };
            tee(&pair.out, commands::compare(&args))
        }
        Command::Feasibility { pair, search_affine } => {
            tee(&pair.out, commands::feasibility(&pair.pair(), search_affine, pair.format.into()))
        }
        Command::DregExperiment { n, d, replicates, r, j, seed, out, format } => {
            let spec = ExperimentSpec { n, d, replicates, r, j, seed: seed.unwrap_or(DEFAULT_SEED), search: None };
            commands::dreg_experiment(&spec, out.as_deref(), format.into())
        }
        Command::Operators { edges, random_regular, seed, out } => {
            let source = match (edges, random_regular.as_deref()) {
                (Some(path), _) => GraphSource::EdgeList(path),
                (None, Some(&[n, d])) => GraphSource::RandomRegular { n, d, seed: seed.unwrap_or(DEFAULT_SEED) },
                _ => return Err(CliError::Input("need --edges FILE or --random-regular N D".into())),
            };
            commands::operators(&source, &out)
        }
    }
}

fn main() -> ExitCode {
    // usage errors are input errors, not clap's default status 2
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(output) => {
            for w in &output.warnings {
                eprintln!("warning: {w}");
            }
            let _ = std::io::stdout().write_all(output.stdout.as_bytes());
            ExitCode::from(output.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
