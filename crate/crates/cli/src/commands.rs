//! Command implementations. Each returns the text for stdout, the exit code
//! and any warnings, leaving printing to the binary.

use std::fs;
use std::path::{Path, PathBuf};

use dkbound_core::bounds::SpectralComparison;
use dkbound_core::graph::random_regular;
use dkbound_core::{
    regularity_check, search_affine_with, shift_operators, BlockPair, BoundReport, ChoiceBest, Error,
    PolynomialTransform, SearchConfig, SymMatrix,
};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::experiment::{self, ExperimentSpec, ReportRecord, Summary};
use crate::io::{self, ParsedMatrix};
use crate::SCHEMA_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
    pub warnings: Vec<String>,
}

impl Output {
    fn ok(stdout: String, warnings: Vec<String>) -> Self {
        Output { stdout, code: 0, warnings }
    }
}

#[derive(Debug, Clone)]
pub struct PairArgs {
    pub phi: PathBuf,
    pub psi: PathBuf,
    pub j: usize,
    pub r: usize,
    /// Offset of the `Φ` block when it differs from the `Ψ` offset.
    pub j_phi: Option<usize>,
}

impl PairArgs {
    pub fn blocks(&self) -> BlockPair {
        BlockPair { phi_offset: self.j_phi.unwrap_or(self.j), psi_offset: self.j, width: self.r }
    }
}

#[derive(Debug, Clone)]
pub enum TransformArg {
    Affine {
        c1: f64,
        c0: f64,
    },
    /// Ascending coefficients.
    Polynomial(Vec<f64>),
    Search,
}

#[derive(Debug, Clone)]
pub struct CompareArgs {
    pub pair: PairArgs,
    pub transform: TransformArg,
    pub format: Format,
}

struct LoadedPair {
    phi: SymMatrix,
    psi: SymMatrix,
    warnings: Vec<String>,
}

fn load_pair(args: &PairArgs) -> CliResult<LoadedPair> {
    let mut warnings = Vec::new();
    let mut load = |path: &Path| -> CliResult<SymMatrix> {
        let ParsedMatrix { matrix, asymmetry } = io::read_matrix(path)?;
        if asymmetry > 0.0 {
            warnings.push(format!("{}: symmetrized (max asymmetry {asymmetry:e})", path.display()));
        }
        Ok(matrix)
    };
    let phi = load(&args.phi)?;
    let psi = load(&args.psi)?;
    if phi.n() != psi.n() {
        return Err(Error::Shape(format!("matrices are {0}x{0} and {1}x{1}", phi.n(), psi.n())).into());
    }
    args.blocks().validate(phi.n())?;
    Ok(LoadedPair { phi, psi, warnings })
}

#[derive(Serialize)]
struct SearchSummary {
    evaluations: usize,
    choice1: Option<ChoiceBest>,
    choice2: Option<ChoiceBest>,
}

#[derive(Serialize)]
struct CompareDocument<'a> {
    schema: u32,
    n: usize,
    feasible: bool,
    failure: Option<String>,
    report: &'a BoundReport,
    search: Option<SearchSummary>,
}

fn cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable document");
    s.push('\n');
    s
}

pub const COMPARE_CSV_HEADER: &str = "rho1,rho2,numerator,delta,bound_rho1,bound_rho2,coefficients";

fn compare_csv(report: &BoundReport) -> String {
    let coeffs: Vec<String> = report.transform.coefficients().iter().map(|c| c.to_string()).collect();
    format!(
        "{COMPARE_CSV_HEADER}\n{},{},{},{},{},{},{}\n",
        report.rho1_attained,
        report.rho2_attained,
        report.numerator,
        cell(report.delta_used),
        cell(report.bound_rho1),
        cell(report.bound_rho2),
        coeffs.join(";")
    )
}

pub fn compare(args: &CompareArgs) -> CliResult<Output> {
    let LoadedPair { phi, psi, warnings } = load_pair(&args.pair)?;
    let cmp = SpectralComparison::new(&phi, &psi, args.pair.blocks())?;
    let (report, search) = match &args.transform {
        TransformArg::Search => {
            let res = search_affine_with(&cmp, &SearchConfig::for_comparison(&cmp))?;
            let summary = SearchSummary { evaluations: res.evaluations, choice1: res.choice1, choice2: res.choice2 };
            (res.best_report, Some(summary))
        }
        TransformArg::Affine { c1, c0 } => (cmp.report(&PolynomialTransform::affine(*c1, *c0)?)?, None),
        TransformArg::Polynomial(c) => (cmp.report(&PolynomialTransform::new(c.clone())?)?, None),
    };
    let failure = report.failure_reason();
    let stdout = match args.format {
        Format::Json => json(&CompareDocument {
            schema: SCHEMA_VERSION,
            n: phi.n(),
            feasible: failure.is_none(),
            failure: failure.clone(),
            report: &report,
            search,
        }),
        Format::Csv => compare_csv(&report),
    };
    let mut out = Output::ok(stdout, warnings);
    if let Some(reason) = failure {
        out.code = 2;
        out.warnings.push(format!("no valid interval choice: {reason}"));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct AffineFeasibility {
    pub found: bool,
    pub c1: Option<f64>,
    pub c0: Option<f64>,
    pub bound_rho1: Option<f64>,
    pub bound_rho2: Option<f64>,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityReport {
    pub schema: u32,
    pub n: usize,
    pub blocks: BlockPair,
    pub gap_ok: bool,
    pub standard_feasible: bool,
    pub reason: Option<String>,
    pub affine: Option<AffineFeasibility>,
}

pub fn feasibility_report(args: &PairArgs, search: bool) -> CliResult<(FeasibilityReport, Vec<String>)> {
    let LoadedPair { phi, psi, warnings } = load_pair(args)?;
    let mut rep = FeasibilityReport {
        schema: SCHEMA_VERSION,
        n: phi.n(),
        blocks: args.blocks(),
        gap_ok: true,
        standard_feasible: false,
        reason: None,
        affine: None,
    };
    let cmp = match SpectralComparison::new(&phi, &psi, args.blocks()) {
        Ok(cmp) => cmp,
        Err(e @ Error::GapViolation(_)) => {
            rep.gap_ok = false;
            rep.reason = Some(e.to_string());
            if search {
                rep.affine = Some(AffineFeasibility {
                    found: false,
                    c1: None,
                    c0: None,
                    bound_rho1: None,
                    bound_rho2: None,
                    evaluations: 0,
                });
            }
            return Ok((rep, warnings));
        }
        Err(e) => return Err(e.into()),
    };
    rep.standard_feasible = cmp.standard_feasible();
    if !rep.standard_feasible {
        rep.reason = cmp.report(&PolynomialTransform::identity())?.failure_reason();
    }
    if search {
        rep.affine = Some(match search_affine_with(&cmp, &SearchConfig::for_comparison(&cmp)) {
            Ok(res) => {
                let (c1, c0) = res.best_transform.as_affine().expect("affine search");
                AffineFeasibility {
                    found: true,
                    c1: Some(c1),
                    c0: Some(c0),
                    bound_rho1: res.best_report.bound_rho1,
                    bound_rho2: res.best_report.bound_rho2,
                    evaluations: res.evaluations,
                }
            }
            Err(Error::NoFeasibleTransform { evaluations }) => {
                AffineFeasibility { found: false, c1: None, c0: None, bound_rho1: None, bound_rho2: None, evaluations }
            }
            Err(e) => return Err(e.into()),
        });
    }
    Ok((rep, warnings))
}

pub const FEASIBILITY_CSV_HEADER: &str = "gap_ok,standard_feasible,affine_found,c1,c0,bound_rho1";

/// Exit code 0 when the identity or a searched affine transform is feasible.
pub fn feasibility(args: &PairArgs, search: bool, format: Format) -> CliResult<Output> {
    let (rep, warnings) = feasibility_report(args, search)?;
    let affine_found = rep.affine.as_ref().is_some_and(|a| a.found);
    let stdout = match format {
        Format::Json => json(&rep),
        Format::Csv => {
            let a = rep.affine.as_ref();
            format!(
                "{FEASIBILITY_CSV_HEADER}\n{},{},{},{},{},{}\n",
                rep.gap_ok,
                rep.standard_feasible,
                a.map(|a| a.found.to_string()).unwrap_or_default(),
                cell(a.and_then(|a| a.c1)),
                cell(a.and_then(|a| a.c0)),
                cell(a.and_then(|a| a.bound_rho1)),
            )
        }
    };
    let mut out = Output::ok(stdout, warnings);
    if !rep.standard_feasible && !affine_found {
        out.code = 2;
    }
    Ok(out)
}

#[derive(Serialize)]
struct ExperimentDocument<'a> {
    #[serde(flatten)]
    summary: &'a Summary,
    records: &'a [ReportRecord],
}

pub const RECORDS_FILE: &str = "records.csv";
pub const SUMMARY_FILE: &str = "summary.json";

/// Runs the experiment and, with `out`, writes `records.csv` and `summary.json` there.
pub fn dreg_experiment(spec: &ExperimentSpec, out: Option<&Path>, format: Format) -> CliResult<Output> {
    let records = experiment::run(spec)?;
    let summary = experiment::summarize(spec, &records);
    let csv = experiment::to_csv(&records);
    let summary_json = json(&summary);
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let path = dir.join(RECORDS_FILE);
        fs::write(&path, &csv).map_err(|e| CliError::io(&path, e))?;
        let path = dir.join(SUMMARY_FILE);
        fs::write(&path, &summary_json).map_err(|e| CliError::io(&path, e))?;
    }
    let stdout = match format {
        Format::Csv => csv,
        Format::Json => json(&ExperimentDocument { summary: &summary, records: &records }),
    };
    let mut warnings = Vec::new();
    if summary.fragile > 0 {
        warnings.push(format!("{} replicate(s) have interval margins below the fragility threshold", summary.fragile));
    }
    Ok(Output::ok(stdout, warnings))
}

#[derive(Debug, Clone)]
pub enum GraphSource {
    EdgeList(PathBuf),
    RandomRegular { n: usize, d: usize, seed: u64 },
}

#[derive(Serialize)]
struct OperatorsDocument {
    schema: u32,
    n: usize,
    edges: usize,
    regular_degree: Option<usize>,
    files: Vec<PathBuf>,
}

pub const OPERATOR_FILES: [&str; 3] = ["adjacency.txt", "laplacian.txt", "normalized_laplacian.txt"];
pub const EDGES_FILE: &str = "graph.edges";

/// Writes the three shift operators (and the edge list) into `out`.
pub fn operators(source: &GraphSource, out: &Path) -> CliResult<Output> {
    let graph = match source {
        GraphSource::EdgeList(path) => io::read_edge_list(path)?,
        GraphSource::RandomRegular { n, d, seed } => random_regular(*n, *d, *seed)?,
    };
    let ops = shift_operators(&graph)?;
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let mut files = Vec::new();
    for (name, m) in OPERATOR_FILES.iter().zip([&ops.adjacency, &ops.laplacian, &ops.normalized_laplacian]) {
        let path = out.join(name);
        io::write_matrix(&path, m)?;
        files.push(path);
    }
    let path = out.join(EDGES_FILE);
    fs::write(&path, io::format_edge_list(&graph)).map_err(|e| CliError::io(&path, e))?;
    files.push(path);
    let doc = OperatorsDocument {
        schema: SCHEMA_VERSION,
        n: graph.n(),
        edges: graph.edges().len(),
        regular_degree: regularity_check(&graph),
        files,
    };
    Ok(Output::ok(json(&doc), Vec::new()))
}
