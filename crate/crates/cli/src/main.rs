use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, ValueEnum};
use l1pca_core::harness::{
    self, AlgorithmChoice, CognitiveConfig, ConvergenceConfig, DoaConfig, OracleCompareConfig,
    Outcome, SubspaceConfig, Table,
};
use l1pca_core::matrix_io::parse_matrix;
use l1pca_core::oracle::OracleConfig;
use l1pca_core::{SolverConfig, Threshold};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// L1 principal components of a matrix file.
    Decompose,
    /// Optimality diagnostics of a K = 1 certificate.
    Check,
    /// Hollow-Gram iteration versus the exhaustive phase-grid oracle.
    OracleCompare,
    /// Iteration counts of the nuclear-norm iteration on random data.
    Convergence,
    /// Subspace proximity under a single corrupted sample.
    ExpSubspace,
    /// Cognitive signature design, sum-SINR versus transmit energy.
    ExpCognitive,
    /// MUSIC direction finding under sporadic jamming, RMSE versus N.
    ExpDoa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Auto,
    Mild,
    Strong,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepArg {
    N,
    D,
    K,
}

/// Complex L1-PCA solver and experiment harness.
///
/// Worker threads are capped by the L1PCA_THREADS environment variable
/// (0 or unset = all cores). Exit status is 0 only if the command completed
/// and every per-run invariant check passed.
#[derive(Debug, Parser)]
#[command(name = "l1pca", version)]
struct Cli {
    command: Command,

    /// Input matrix document (decompose, check).
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Number of components.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Monte-Carlo trials (default depends on the command).
    #[arg(long)]
    trials: Option<usize>,
    /// Absolute objective-increase threshold; default is 1e-6 times the
    /// initial objective.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long = "max-iters")]
    max_iters: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    /// Corruption probability (exp-cognitive, exp-doa); both standard values
    /// are swept when omitted.
    #[arg(long)]
    epsilon: Option<f64>,
    /// MUSIC angle grid in degrees.
    #[arg(long = "grid-step", default_value_t = 0.1)]
    grid_step: f64,
    #[arg(
        long = "sigma-db-sweep",
        value_name = "LIST",
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    sigma_db_sweep: Option<Vec<f64>>,
    #[arg(
        long = "rho-db-sweep",
        value_name = "LIST",
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    rho_db_sweep: Option<Vec<f64>>,
    /// Paper trial counts (10 000; 1 000 for convergence).
    #[arg(long = "paper-scale")]
    paper_scale: bool,

    /// Solver selection for decompose.
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Auto)]
    algorithm: AlgorithmArg,
    /// Certificate document for check; the hollow-Gram solution otherwise.
    #[arg(long, value_name = "PATH")]
    cert: Option<PathBuf>,
    /// Tolerance of the optimality conditions.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// Swept dimension for convergence.
    #[arg(long, value_enum, default_value_t = SweepArg::N)]
    sweep: SweepArg,
    /// Sweep values for convergence, or snapshot counts for exp-doa.
    #[arg(long = "values", value_name = "LIST", value_delimiter = ',')]
    values: Option<Vec<usize>>,
    /// Data dimension (oracle-compare, convergence).
    #[arg(long)]
    d: Option<usize>,
    /// Number of samples (oracle-compare, convergence).
    #[arg(long)]
    n: Option<usize>,
    /// Phase-grid points of the oracle.
    #[arg(long = "grid-points")]
    grid_points: Option<usize>,
}

impl Cli {
    fn solver(&self, base: SolverConfig) -> SolverConfig {
        let mut cfg = base.with_seed(self.seed);
        if let Some(d) = self.delta {
            cfg.delta = Threshold::Absolute(d);
        }
        if let Some(m) = self.max_iters {
            cfg.max_iterations = m;
        }
        if let Some(r) = self.restarts {
            cfg.num_restarts = r;
        }
        cfg
    }

    fn trials(&self, default: usize, paper: usize) -> usize {
        match (self.trials, self.paper_scale) {
            (Some(t), _) => t,
            (None, true) => paper,
            (None, false) => default,
        }
    }

    fn read_input(&self) -> anyhow::Result<l1pca_core::ComplexMatrix> {
        let path = self.input.as_ref().context("--in is required")?;
        read_matrix(path)
    }
}

fn read_matrix(path: &PathBuf) -> anyhow::Result<l1pca_core::ComplexMatrix> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_matrix(&text)?)
}

fn threads() -> anyhow::Result<usize> {
    match std::env::var("L1PCA_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .with_context(|| format!("L1PCA_THREADS must be a non-negative integer, got {v:?}")),
        _ => Ok(0),
    }
}

fn table(outcome: l1pca_core::Result<Outcome<Table>>) -> anyhow::Result<(String, Vec<String>)> {
    let outcome = outcome?;
    Ok((outcome.value.to_csv()?, outcome.violations))
}

fn run(cli: &Cli) -> anyhow::Result<(String, Vec<String>)> {
    match cli.command {
        Command::Decompose => {
            let x = cli.read_input()?;
            let choice = match cli.algorithm {
                AlgorithmArg::Auto => AlgorithmChoice::Auto,
                AlgorithmArg::Mild => AlgorithmChoice::Mild,
                AlgorithmArg::Strong => AlgorithmChoice::Strong,
            };
            let outcome = harness::decompose(
                &x,
                cli.k.unwrap_or(1),
                choice,
                &cli.solver(SolverConfig::default()),
                cli.tol,
            )?;
            Ok((json(&outcome.value)?, outcome.violations))
        }
        Command::Check => {
            let x = cli.read_input()?;
            let cert = cli.cert.as_ref().map(read_matrix).transpose()?;
            let doc = harness::check(
                &x,
                cert.as_ref(),
                &cli.solver(SolverConfig::default()),
                cli.tol,
            )?;
            Ok((json(&doc)?, Vec::new()))
        }
        Command::OracleCompare => {
            let mut cfg = OracleCompareConfig::standard(cli.trials(100, 10_000), cli.seed);
            cfg.d = cli.d.unwrap_or(cfg.d);
            cfg.n = cli.n.unwrap_or(cfg.n);
            cfg.oracle = OracleConfig::for_n(cfg.n);
            if let Some(g) = cli.grid_points {
                cfg.oracle.grid_points = g;
            }
            cfg.solver = cli.solver(cfg.solver);
            table(harness::run_oracle_compare(&cfg))
        }
        Command::Convergence => {
            let trials = cli.trials(200, 1000);
            let mut cfg = match cli.sweep {
                SweepArg::N => ConvergenceConfig::n_sweep(trials, cli.seed),
                SweepArg::D => ConvergenceConfig::d_sweep(trials, cli.seed),
                SweepArg::K => ConvergenceConfig::k_sweep(trials, cli.seed),
            };
            cfg.d = cli.d.unwrap_or(cfg.d);
            cfg.n = cli.n.unwrap_or(cfg.n);
            cfg.k = cli.k.unwrap_or(cfg.k);
            if let Some(v) = &cli.values {
                cfg.values = v.clone();
            }
            if cfg.values.is_empty() {
                bail!("empty sweep");
            }
            cfg.solver = cli.solver(cfg.solver);
            table(harness::run_convergence(&cfg))
        }
        Command::ExpSubspace => {
            let mut cfg = SubspaceConfig::standard(cli.trials(2000, 10_000), cli.seed);
            cfg.k = cli.k.unwrap_or(cfg.k);
            if let Some(s) = &cli.sigma_db_sweep {
                cfg.sigma_db = s.clone();
            }
            cfg.solver = cli.solver(cfg.solver);
            table(harness::run_subspace(&cfg))
        }
        Command::ExpCognitive => {
            let mut cfg = CognitiveConfig::standard(cli.trials(1000, 10_000), cli.seed);
            if let Some(e) = cli.epsilon {
                cfg.epsilons = vec![e];
            }
            if let Some(r) = &cli.rho_db_sweep {
                cfg.rho_db = r.clone();
            }
            cfg.scenario.k = cli.k.unwrap_or(cfg.scenario.k);
            cfg.solver = cli.solver(cfg.solver);
            table(harness::run_cognitive(&cfg))
        }
        Command::ExpDoa => {
            let mut cfg = DoaConfig::standard(cli.trials(500, 10_000), cli.seed);
            if let Some(e) = cli.epsilon {
                cfg.epsilons = vec![e];
            }
            if let Some(v) = &cli.values {
                cfg.n_values = v.clone();
            }
            cfg.grid_step = cli.grid_step;
            cfg.solver = cli.solver(cfg.solver);
            table(harness::run_doa(&cfg))
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn write_output(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = threads().and_then(|n| harness::with_threads(n, || run(&cli)));
    match result.and_then(|(text, violations)| write_output(&cli, &text).map(|_| violations)) {
        Ok(violations) if violations.is_empty() => ExitCode::SUCCESS,
        Ok(violations) => {
            for v in &violations {
                eprintln!("invariant violated: {v}");
            }
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(1)
        }
    }
}
