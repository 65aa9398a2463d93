use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use mumford_spectra::action::{FiniteGroup, GroupAction};
use mumford_spectra::config::RunConfig;
use mumford_spectra::graphs::{classify_all_trees, classify_spectrum, enumerate_stable_graphs, Classification, GraphJson, Multigraph, TreeScan};
use mumford_spectra::padic::PadicVector;
use mumford_spectra::schwartz::TestFunction;
use mumford_spectra::selftest::selftest;
use mumford_spectra::spectral::{apply_multiplier, solve_cauchy, Operator, RadialSymbol, TraceSummary, Wavelet};
use mumford_spectra::teichmueller::{
    epsilon_report, epsilon_rows, family_csv, search_csv, search_norm_decreasing, spectrum_table, FamilyRow,
    SearchOutcome, SpectrumTable,
};
use mumford_spectra::Error;

#[derive(Parser)]
#[command(name = "mumford", version, about = "p-adic heat kernels and spectra of Mumford-curve reduction graphs")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    cmd: Command,
}

/// Overrides applied after the config file and `MUMFORD_*` variables.
#[derive(Args)]
struct GlobalOpts {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    prime: Option<u64>,
    #[arg(long, global = true)]
    degree: Option<usize>,
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// `P` or `Q`.
    #[arg(long, global = true)]
    norm_base: Option<String>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    lambda: Option<f64>,
    #[arg(long, global = true)]
    nu_max: Option<u32>,
    #[arg(long, global = true)]
    rho: Option<i64>,
    /// Tolerance of numerical checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Residual accepted by `evolve`, relative to `‖H_G ψ‖`.
    #[arg(long, global = true)]
    tol_residual: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory receiving `<command>.json` and `<command>.csv`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TreeOpts {
    /// Spanning tree as edge indices; defaults to the one in the graph file,
    /// else the first spanning tree.
    #[arg(long, value_delimiter = ',')]
    tree: Option<Vec<usize>>,
}

#[derive(Args)]
struct GridOpts {
    /// `standard`, `swap_first`, `second_repelling` or `beta`.
    #[arg(long)]
    renormalization: Option<String>,
    /// `attracting_first` or `canonical`.
    #[arg(long)]
    root_order: Option<String>,
    /// Valuations of the multipliers on the grid.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    exponents: Option<Vec<i64>>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the spectrum of the invariant operator lies in the lattice.
    Classify {
        graph: PathBuf,
        #[command(flatten)]
        tree: TreeOpts,
        /// Also classify with every spanning tree.
        #[arg(long)]
        all_trees: bool,
    },
    /// List the stable graphs of a genus up to isomorphism.
    Enumerate {
        #[arg(long)]
        genus: usize,
    },
    /// Eigenvalue table at a point of Teichmüller space and its lattice decision.
    Spectrum {
        graph: PathBuf,
        #[command(flatten)]
        tree: TreeOpts,
        #[command(flatten)]
        grid: GridOpts,
    },
    /// Solve the Cauchy problem for the invariant operator.
    Evolve {
        /// Initial datum as test-function JSON.
        #[arg(long)]
        psi: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        times: Vec<f64>,
        /// Step of the finite-difference residual.
        #[arg(long)]
        h: Option<f64>,
        /// Act by the cyclic group of this order instead of the trivial group.
        #[arg(long)]
        cycle: Option<usize>,
    },
    /// Roots, multipliers and η along the one-parameter family.
    Family {
        /// Integer values of ε; defaults to `0, p, …, (points − 1)p`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        epsilon: Option<Vec<i64>>,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<i64>,
        #[arg(long)]
        root_order: Option<String>,
    },
    /// Search a grid for points with ‖σx‖ < ‖x‖.
    Search {
        graph: PathBuf,
        #[command(flatten)]
        tree: TreeOpts,
        #[command(flatten)]
        grid: GridOpts,
    },
    /// Write the wavelet `ω_{γbk}` (with `b = 0`) as test-function JSON.
    Wavelet {
        #[arg(long, allow_hyphen_values = true)]
        gamma: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u64>,
    },
    /// Run the invariant suite on the configured field.
    Selftest,
}

enum Failure {
    Input(String),
    Tolerance(String),
    Output(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Output(_) => 1,
            Failure::Tolerance(_) => 2,
            Failure::Input(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TailBoundExceeded { .. } | Error::PrecisionExhausted(_) | Error::NotConstant(_) => {
                Failure::Tolerance(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn load_config(o: &GlobalOpts) -> Result<RunConfig, Failure> {
    let mut cfg = match &o.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    cfg.apply_env(std::env::vars())?;
    macro_rules! flag {
        ($f:ident) => {
            if let Some(v) = o.$f {
                cfg.$f = v;
            }
        };
    }
    flag!(prime);
    flag!(degree);
    flag!(precision);
    flag!(alpha);
    flag!(lambda);
    flag!(nu_max);
    flag!(seed);
    if let Some(b) = &o.norm_base {
        cfg.set("norm_base", b)?;
    }
    if o.rho.is_some() {
        cfg.rho = o.rho;
    }
    if let Some(t) = o.tol {
        cfg.tolerance.check = t;
    }
    if let Some(t) = o.tol_residual {
        cfg.tolerance.residual = t;
    }
    if o.out.is_some() {
        cfg.out = o.out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path, tree: &TreeOpts) -> Result<(Multigraph, Vec<usize>), Failure> {
    let (g, file_tree) = Multigraph::from_json(&read(path)?)?;
    let tree = match tree.tree.clone().or(file_tree) {
        Some(t) => t,
        None => g.spanning_trees().into_iter().next().ok_or_else(|| Failure::Input("graph is not connected".into()))?,
    };
    Ok((g, tree))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

/// Prints the JSON document and writes it, with the CSV if any, under `--out`.
fn emit(cfg: &RunConfig, name: &str, doc: &str, csv: Option<&str>) -> Outcome {
    print!("{doc}");
    if let Some(dir) = &cfg.out {
        let write = |file: String, body: &str| {
            fs::write(dir.join(&file), body).map_err(|e| Failure::Output(format!("cannot write {file}: {e}")))
        };
        fs::create_dir_all(dir).map_err(|e| Failure::Output(format!("cannot create {}: {e}", dir.display())))?;
        write(format!("{name}.json"), doc)?;
        if let Some(csv) = csv {
            write(format!("{name}.csv"), csv)?;
        }
    }
    Ok(())
}

fn apply_grid(cfg: &mut RunConfig, g: &GridOpts) -> Result<Vec<i64>, Failure> {
    if let Some(r) = &g.renormalization {
        cfg.set("renormalization", r)?;
    }
    if let Some(r) = &g.root_order {
        cfg.set("root_order", r)?;
    }
    Ok(g.exponents.clone().unwrap_or_else(|| vec![1, 2]))
}

#[derive(Serialize)]
struct ClassifyOutput {
    #[serde(flatten)]
    classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    trees: Option<TreeScan>,
}

#[derive(Serialize)]
struct EnumerateOutput {
    genus: usize,
    count: usize,
    graphs: Vec<GraphJson>,
}

#[derive(Serialize)]
struct SpectrumOutput {
    #[serde(flatten)]
    table: SpectrumTable,
    search_outcome: SearchOutcome,
}

#[derive(Serialize)]
struct EvolveOutput {
    p: u64,
    f: usize,
    n: usize,
    group_order: usize,
    lambda: f64,
    alpha: f64,
    psi_l2_norm: f64,
    hg_psi_l2_norm: f64,
    relative_residual: f64,
    tolerance: f64,
    within_tolerance: bool,
    #[serde(flatten)]
    trace: TraceSummary,
}

#[derive(Serialize)]
struct FamilyOutput {
    p: u64,
    f: usize,
    rows: Vec<FamilyRow>,
}

fn spectrum_csv(t: &SpectrumTable) -> String {
    let mut out = String::from("sigma_index,words,norm_exponent,shell,j_eigenvalue,h_eigenvalue\n");
    let e = |x: Option<i64>| x.map_or_else(|| "zero".to_string(), |v| v.to_string());
    for r in &t.entries {
        out.push_str(&format!(
            "{},{},{},{},{:e},{:e}\n",
            r.sigma_index,
            r.words.join(";"),
            e(r.norm_exponent),
            e(r.shell),
            r.j_eigenvalue,
            r.h_eigenvalue
        ));
    }
    out
}

fn run(cli: Cli) -> Outcome {
    let mut cfg = load_config(&cli.opts)?;
    match cli.cmd {
        Command::Classify { graph, tree, all_trees } => {
            let (g, tree) = load_graph(&graph, &tree)?;
            let classification = classify_spectrum(&g, &tree)?;
            let trees = if all_trees { Some(classify_all_trees(&g)?) } else { None };
            emit(&cfg, "classify", &json(&ClassifyOutput { classification, trees }), None)
        }
        Command::Enumerate { genus } => {
            let graphs: Vec<GraphJson> = enumerate_stable_graphs(genus)?.iter().map(|g| g.to_json_struct()).collect();
            emit(&cfg, "enumerate", &json(&EnumerateOutput { genus, count: graphs.len(), graphs }), None)
        }
        Command::Spectrum { graph, tree, grid } => {
            let exps = apply_grid(&mut cfg, &grid)?;
            let (g, tree) = load_graph(&graph, &tree)?;
            let field = cfg.field()?;
            let spec = mumford_spectra::teichmueller::GridSpec { exponents: exps, ..cfg.grid() };
            let report = search_norm_decreasing(&g, &tree, &field, &spec)?;
            let table = spectrum_table(&report, &cfg.symbol()?, cfg.rho);
            let csv = spectrum_csv(&table);
            emit(&cfg, "spectrum", &json(&SpectrumOutput { table, search_outcome: report.outcome }), Some(&csv))
        }
        Command::Search { graph, tree, grid } => {
            let exps = apply_grid(&mut cfg, &grid)?;
            let (g, tree) = load_graph(&graph, &tree)?;
            let field = cfg.field()?;
            let spec = mumford_spectra::teichmueller::GridSpec { exponents: exps, ..cfg.grid() };
            let report = search_norm_decreasing(&g, &tree, &field, &spec)?;
            emit(&cfg, "search", &json(&report), Some(&search_csv(&report)))
        }
        Command::Evolve { psi, times, h, cycle } => {
            let psi = TestFunction::from_json(&read(&psi)?)?;
            let field = psi.field().clone();
            let n = psi.window().n;
            let action = match cycle {
                Some(ell) => GroupAction::demo_cycle(&field, n, ell, cfg.rho)?,
                None => GroupAction::trivial(FiniteGroup::cyclic(1)?, &field, n, cfg.rho.unwrap_or(1)),
            };
            let symbol = RadialSymbol::power(cfg.lambda, field.base(), cfg.alpha)?;
            let trace = solve_cauchy(&symbol, &action, &psi, &times, h)?;
            // ‖H_G u(t)‖ is largest at t = 0, so this bounds the residual relative to ‖∂_t u‖
            let scale = apply_multiplier(&symbol, &Operator::HG(action.clone()), &psi)?.l2_norm();
            let relative_residual = if scale > 0.0 { trace.max_residual() / scale } else { trace.max_residual() };
            let within = relative_residual <= cfg.tolerance.residual;
            let out = EvolveOutput {
                p: field.p(),
                f: field.degree(),
                n,
                group_order: action.group().order(),
                lambda: cfg.lambda,
                alpha: cfg.alpha,
                psi_l2_norm: psi.l2_norm(),
                hg_psi_l2_norm: scale,
                relative_residual,
                tolerance: cfg.tolerance.residual,
                within_tolerance: within,
                trace: trace.summary(),
            };
            emit(&cfg, "evolve", &json(&out), Some(&trace.to_csv()))?;
            if within {
                Ok(())
            } else {
                Err(Failure::Tolerance(format!(
                    "relative residual {relative_residual:e} exceeds {:e}",
                    cfg.tolerance.residual
                )))
            }
        }
        Command::Family { epsilon, points, s, root_order } => {
            if let Some(r) = &root_order {
                cfg.set("root_order", r)?;
            }
            let rows = match epsilon {
                Some(eps) => epsilon_rows(cfg.prime, cfg.degree, cfg.precision, cfg.norm_base, &eps, s, cfg.root_order)?,
                None => epsilon_report(cfg.prime, cfg.degree, cfg.precision, cfg.norm_base, points, s, cfg.root_order)?,
            };
            let csv = family_csv(&rows);
            emit(&cfg, "family", &json(&FamilyOutput { p: cfg.prime, f: cfg.degree, rows }), Some(&csv))
        }
        Command::Wavelet { gamma, k } => {
            let field = cfg.field()?;
            let w = Wavelet::build(&field, gamma, &PadicVector::zero(&field, k.len()), &k)?;
            let mut doc = w.function.to_json();
            doc.push('\n');
            emit(&cfg, "wavelet", &doc, None)
        }
        Command::Selftest => {
            let report = selftest(&cfg)?;
            emit(&cfg, "selftest", &json(&report), None)?;
            if report.passed {
                Ok(())
            } else {
                let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                Err(Failure::Tolerance(format!("failed checks: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Input(m) | Failure::Tolerance(m) | Failure::Output(m)) = &f;
            eprintln!("mumford: {m}");
            ExitCode::from(f.code())
        }
    }
}
