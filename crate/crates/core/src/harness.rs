//! Experiment drivers behind the command-line tool.
//!
//! Every driver is a pure function of its configuration: trial `t` draws
//! from stream `t` of the configured seed, trials run on the current rayon
//! pool, and results are reduced in trial order, so tables are identical for
//! any thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::cxkernel::{l1_norm, nuclear_norm, ComplexMatrix};
use crate::error::{Error, Result};
use crate::l1pca::{
    check_conditions, hollow_gram, solve_l1pc_strong, solve_l1pca, Algorithm, InitScheme,
    SolveReport, SolverConfig,
};
use crate::matrix_io::MatrixFile;
use crate::oracle::{l2pca, quadratic_value, uqm_grid_oracle, OracleConfig};
use crate::rng::{derive_seed, Rng};
use crate::scenarios::{
    design_secondary, gen_cognitive_snapshots, gen_corrupted, gen_doa_snapshots, music_estimate,
    nominal_matrix, power_to_db, rmse, subspace_proximity, sum_sinr_linear, BasisKind,
    CognitiveScenario, CorruptionScenario, DoaScenario,
};

/// Runs `f` on a dedicated pool with `threads` workers (0 = rayon default).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl Cell {
    pub fn as_f64(self) -> f64 {
        match self {
            Cell::Int(v) => v as f64,
            Cell::Real(v) => v,
        }
    }
}

/// Result table; serialized as CSV with a header row and 12 significant
/// digits per real cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx].as_f64()).collect())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match *c {
                    Cell::Int(v) => Ok(v.to_string()),
                    Cell::Real(v) if v.is_finite() => Ok(format_real(v)),
                    Cell::Real(v) => Err(Error::OutOfRange(format!("non-finite cell {v}"))),
                })
                .collect::<Result<_>>()?;
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        Ok(out)
    }
}

/// 12 significant digits in scientific notation.
pub fn format_real(v: f64) -> String {
    format!("{v:.11e}")
}

/// A table (or document) plus the per-run invariant violations found while
/// producing it.
#[derive(Debug, Clone)]
pub struct Outcome<T> {
    pub value: T,
    pub violations: Vec<String>,
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (mean, var.sqrt())
}

// ---------------------------------------------------------------------------
// Report invariants
// ---------------------------------------------------------------------------

/// Absolute slack allowed on the non-decreasing objective trace.
pub const MONOTONE_SLACK: f64 = 1e-9;

/// Checks the [`SolveReport`] invariants: a non-decreasing objective trace
/// and, for converged runs, `‖Q^H X‖_1 = ‖X B‖_*` (plus the hollow-Gram
/// offset identity for the `K = 1` iteration).
pub fn report_violations(x: &ComplexMatrix, report: &SolveReport) -> Vec<String> {
    let mut out = Vec::new();
    for (i, w) in report.objective_trace.windows(2).enumerate() {
        if w[1] < w[0] - MONOTONE_SLACK {
            out.push(format!(
                "objective decreased at iteration {}: {} -> {}",
                i + 1,
                w[0],
                w[1]
            ));
        }
    }
    if !report.converged {
        return out;
    }
    let l1 = report.l1_objective;
    let b = report.certificate.as_matrix();
    match report.algorithm {
        Algorithm::Mild => {
            let last = *report.objective_trace.last().unwrap();
            if (l1 - last).abs() > 1e-8 * l1 {
                out.push(format!(
                    "L1 objective {l1} differs from nuclear objective {last}"
                ));
            }
        }
        Algorithm::Strong => {
            let xb = x * b;
            let nuclear = xb.norm();
            if (l1 - nuclear).abs() > 1e-8 * l1 {
                out.push(format!(
                    "L1 objective {l1} differs from nuclear objective {nuclear}"
                ));
            }
            let quad = xb.norm_squared();
            let offset = l1_norm(&(hollow_gram(x) * b)) + x.norm_squared();
            if (quad - offset).abs() > 1e-8 * quad {
                out.push(format!(
                    "quadratic {quad} differs from offset form {offset}"
                ));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// decompose / check
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmChoice {
    /// Hollow-Gram iteration for `k = 1`, nuclear-norm iteration otherwise.
    Auto,
    Mild,
    Strong,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecomposeDocument {
    pub algorithm: Algorithm,
    pub k: usize,
    pub basis: MatrixFile,
    pub certificate: MatrixFile,
    pub l1_objective: f64,
    pub nuclear_objective: f64,
    pub iterations: usize,
    pub polish_iterations: usize,
    pub coordinate_sweeps: usize,
    pub converged: bool,
    pub mild_condition_residual: f64,
    pub strong_condition_residual: Option<f64>,
    pub strong_satisfied: Option<bool>,
    pub max_hessian_eigenvalue: Option<f64>,
    pub restart_index: usize,
    pub restart_objectives: Vec<Option<f64>>,
    pub objective_trace: Vec<f64>,
}

pub fn decompose(
    x: &ComplexMatrix,
    k: usize,
    choice: AlgorithmChoice,
    solver: &SolverConfig,
    condition_tol: f64,
) -> Result<Outcome<DecomposeDocument>> {
    let strong = match choice {
        AlgorithmChoice::Auto => k == 1,
        AlgorithmChoice::Mild => false,
        AlgorithmChoice::Strong => {
            if k != 1 {
                return Err(Error::InvalidConfig(
                    "the strong iteration needs k = 1".into(),
                ));
            }
            true
        }
    };
    let report = if strong {
        solve_l1pc_strong(x, solver, None)?
    } else {
        solve_l1pca(x, k, solver, None)?
    };
    let violations = report_violations(x, &report);
    let nuclear_objective = nuclear_norm(&(x * report.certificate.as_matrix()))?;
    let conditions = if k == 1 {
        Some(check_conditions(x, &report.certificate, condition_tol)?)
    } else {
        None
    };
    Ok(Outcome {
        value: DecomposeDocument {
            algorithm: report.algorithm,
            k,
            basis: MatrixFile::from_matrix(report.basis.as_matrix()),
            certificate: MatrixFile::from_matrix(report.certificate.as_matrix()),
            l1_objective: report.l1_objective,
            nuclear_objective,
            iterations: report.iterations,
            polish_iterations: report.polish_iterations,
            coordinate_sweeps: report.coordinate_sweeps,
            converged: report.converged,
            mild_condition_residual: report.mild_condition_residual,
            strong_condition_residual: report.strong_condition_residual,
            strong_satisfied: conditions.as_ref().map(|c| c.strong_satisfied),
            max_hessian_eigenvalue: conditions.as_ref().map(|c| c.max_hessian_eigenvalue),
            restart_index: report.restart_index,
            restart_objectives: report.restart_objectives,
            objective_trace: report.objective_trace,
        },
        violations,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckDocument {
    pub tol: f64,
    pub certificate: MatrixFile,
    pub mild_satisfied: bool,
    pub strong_satisfied: bool,
    pub mild_residual: f64,
    pub max_hessian_eigenvalue: f64,
    pub quadratic_value: f64,
    pub omega: Vec<[f64; 2]>,
    pub gradient: Vec<f64>,
    pub column_norms_sq: Vec<f64>,
}

/// Optimality diagnostics of `certificate`, or of the hollow-Gram solution
/// when no certificate is given.
pub fn check(
    x: &ComplexMatrix,
    certificate: Option<&ComplexMatrix>,
    solver: &SolverConfig,
    tol: f64,
) -> Result<CheckDocument> {
    let b = match certificate {
        Some(b) => crate::cxkernel::UnimodularMatrix::new(b.clone())?,
        None => solve_l1pc_strong(x, solver, None)?.certificate,
    };
    let report = check_conditions(x, &b, tol)?;
    let g = x.adjoint() * x;
    Ok(CheckDocument {
        tol,
        certificate: MatrixFile::from_matrix(b.as_matrix()),
        mild_satisfied: report.mild_satisfied,
        strong_satisfied: report.strong_satisfied,
        mild_residual: report.mild_residual,
        max_hessian_eigenvalue: report.max_hessian_eigenvalue,
        quadratic_value: quadratic_value(&g, b.as_matrix()),
        omega: report.omega.iter().map(|w| [w.re, w.im]).collect(),
        gradient: report.gradient,
        column_norms_sq: report.column_norms_sq,
    })
}

// ---------------------------------------------------------------------------
// Convergence study
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    N,
    D,
    K,
}

impl SweepVar {
    fn name(self) -> &'static str {
        match self {
            SweepVar::N => "n",
            SweepVar::D => "d",
            SweepVar::K => "k",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConvergenceConfig {
    pub sweep: SweepVar,
    pub values: Vec<usize>,
    /// Fixed dimensions; the swept one is overridden per row.
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub solver: SolverConfig,
}

impl ConvergenceConfig {
    /// Iterations versus `N ∈ {10, 15, …, 40}` at `D = 10`, `K = 3`, single
    /// random initialization per trial.
    pub fn n_sweep(trials: usize, seed: u64) -> Self {
        Self {
            sweep: SweepVar::N,
            values: (10..=40).step_by(5).collect(),
            d: 10,
            n: 30,
            k: 3,
            trials,
            seed,
            solver: SolverConfig::default()
                .with_restarts(1)
                .with_init(InitScheme::Random),
        }
    }

    /// Iterations versus `D ∈ {4, …, 20}` at `N = 30`, `K = 3`.
    pub fn d_sweep(trials: usize, seed: u64) -> Self {
        Self {
            sweep: SweepVar::D,
            values: (4..=20).step_by(2).collect(),
            ..Self::n_sweep(trials, seed)
        }
    }

    /// Iterations versus `K ∈ {1, …, 6}` at `D = 10`, `N = 20`.
    pub fn k_sweep(trials: usize, seed: u64) -> Self {
        Self {
            sweep: SweepVar::K,
            values: (1..=6).collect(),
            n: 20,
            ..Self::n_sweep(trials, seed)
        }
    }
}

/// Mean and standard deviation of ascent iterations of the nuclear-norm
/// iteration on `CN(0, 1)` data.
///
/// Sweep points share random numbers: trial `t` draws one matrix of the
/// largest swept shape and every point uses its leading rows and columns,
/// so differences between points are paired rather than independent.
pub fn run_convergence(cfg: &ConvergenceConfig) -> Result<Outcome<Table>> {
    check_trials(cfg.trials)?;
    if cfg.values.is_empty() {
        return Err(Error::InvalidConfig("empty sweep".into()));
    }
    let shape = |value: usize| match cfg.sweep {
        SweepVar::N => (cfg.d, value, cfg.k),
        SweepVar::D => (value, cfg.n, cfg.k),
        SweepVar::K => (cfg.d, cfg.n, value),
    };
    let d_max = cfg.values.iter().map(|&v| shape(v).0).max().unwrap();
    let n_max = cfg.values.iter().map(|&v| shape(v).1).max().unwrap();

    let runs: Vec<Result<(Vec<usize>, Vec<String>)>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let full = Rng::new(cfg.seed, t as u64).complex_normal_matrix(d_max, n_max, 1.0);
            let solver = cfg.solver.with_seed(derive_seed(cfg.seed, &[t as u64]));
            let mut iterations = Vec::with_capacity(cfg.values.len());
            let mut violations = Vec::new();
            for &value in &cfg.values {
                let (d, n, k) = shape(value);
                let x = full.view((0, 0), (d, n)).into_owned();
                let report = solve_l1pca(&x, k, &solver, None)?;
                iterations.push(report.iterations);
                violations.extend(report_violations(&x, &report));
            }
            Ok((iterations, violations))
        })
        .collect();

    let mut per_point = vec![Vec::with_capacity(cfg.trials); cfg.values.len()];
    let mut violations = Vec::new();
    for r in runs {
        let (its, v) = r?;
        for (p, it) in its.into_iter().enumerate() {
            per_point[p].push(it as f64);
        }
        violations.extend(v);
    }
    let mut table = Table::new(&[cfg.sweep.name(), "mean_iterations", "std_iterations"]);
    for (p, &value) in cfg.values.iter().enumerate() {
        let (mean, std) = mean_std(&per_point[p]);
        table.rows.push(vec![
            Cell::Int(value as i64),
            Cell::Real(mean),
            Cell::Real(std),
        ]);
    }
    Ok(Outcome {
        value: table,
        violations,
    })
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be >= 1".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Subspace proximity under corruption
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SubspaceConfig {
    pub x_nominal: ComplexMatrix,
    pub k: usize,
    pub sigma_db: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub solver: SolverConfig,
}

impl SubspaceConfig {
    /// Bundled nominal matrix, `K = 3`, σ² from −20 to 40 dB in 5 dB steps.
    pub fn standard(trials: usize, seed: u64) -> Self {
        Self {
            x_nominal: nominal_matrix(),
            k: 3,
            sigma_db: (-4..=8).map(|i| 5.0 * i as f64).collect(),
            trials,
            seed,
            solver: SolverConfig::default(),
        }
    }
}

pub fn run_subspace(cfg: &SubspaceConfig) -> Result<Outcome<Table>> {
    check_trials(cfg.trials)?;
    let q_nominal = l2pca(&cfg.x_nominal, cfg.k)?;
    let mut table = Table::new(&["sigma_sq_db", "mean_sp_l2", "mean_sp_l1"]);
    let mut violations = Vec::new();
    for &db in &cfg.sigma_db {
        let scn = CorruptionScenario::new(cfg.x_nominal.clone(), cfg.k, db);
        scn.validate()?;
        let runs: Vec<Result<(f64, f64, Vec<String>)>> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let x = gen_corrupted(&scn, &mut Rng::new(cfg.seed, t as u64));
                let q2 = l2pca(&x, cfg.k)?;
                let solver = cfg.solver.with_seed(derive_seed(cfg.seed, &[t as u64]));
                let report = solve_l1pca(&x, cfg.k, &solver, None)?;
                Ok((
                    subspace_proximity(&q2, &q_nominal)?,
                    subspace_proximity(&report.basis, &q_nominal)?,
                    report_violations(&x, &report),
                ))
            })
            .collect();
        let (mut sp2, mut sp1) = (0.0, 0.0);
        for r in runs {
            let (a, b, v) = r?;
            sp2 += a;
            sp1 += b;
            violations.extend(v);
        }
        let n = cfg.trials as f64;
        table.rows.push(vec![
            Cell::Real(db),
            Cell::Real(sp2 / n),
            Cell::Real(sp1 / n),
        ]);
    }
    Ok(Outcome {
        value: table,
        violations,
    })
}

// ---------------------------------------------------------------------------
// Cognitive signature design
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CognitiveConfig {
    /// `epsilon` and `rho_sq` of this record are overridden by the sweeps.
    pub scenario: CognitiveScenario,
    pub epsilons: Vec<f64>,
    pub rho_db: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub solver: SolverConfig,
}

impl CognitiveConfig {
    /// `L = 8`, `K = 3`, `N = 200`, ε ∈ {0, 1.2%}, ρ² from −10 to 10 dB.
    pub fn standard(trials: usize, seed: u64) -> Self {
        Self {
            scenario: CognitiveScenario::standard(0.0),
            epsilons: vec![0.0, 0.012],
            rho_db: (-5..=5).map(|i| 2.0 * i as f64).collect(),
            trials,
            seed,
            solver: SolverConfig::default(),
        }
    }
}

/// Sum-SINR (dB of the trial-averaged linear value) of secondary signatures
/// designed in the complement of the L2 / L1 primary-subspace estimates.
pub fn run_cognitive(cfg: &CognitiveConfig) -> Result<Outcome<Table>> {
    check_trials(cfg.trials)?;
    let mut table = Table::new(&[
        "epsilon",
        "rho_sq_db",
        "sum_sinr_l2",
        "sum_sinr_l1",
        "sum_sinr_ideal",
    ]);
    let mut violations = Vec::new();
    let ideal = power_to_db(cfg.scenario.k as f64);
    let rhos: Vec<f64> = cfg
        .rho_db
        .iter()
        .map(|&db| crate::scenarios::db_to_power(db))
        .collect();
    for &eps in &cfg.epsilons {
        let scn = CognitiveScenario {
            epsilon: eps,
            ..cfg.scenario
        };
        scn.validate()?;
        let runs: Vec<Result<(Vec<f64>, Vec<f64>, Vec<String>)>> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let draw = gen_cognitive_snapshots(&scn, &mut Rng::new(cfg.seed, t as u64));
                let s2 = design_secondary(&l2pca(&draw.x, scn.k)?)?;
                let solver = cfg.solver.with_seed(derive_seed(cfg.seed, &[t as u64]));
                let report = solve_l1pca(&draw.x, scn.k, &solver, None)?;
                let s1 = design_secondary(&report.basis)?;
                let l2 = rhos
                    .iter()
                    .map(|&r| sum_sinr_linear(&draw.s_primary, &s2, r))
                    .collect::<Result<Vec<_>>>()?;
                let l1 = rhos
                    .iter()
                    .map(|&r| sum_sinr_linear(&draw.s_primary, &s1, r))
                    .collect::<Result<Vec<_>>>()?;
                Ok((l2, l1, report_violations(&draw.x, &report)))
            })
            .collect();
        let mut acc2 = vec![0.0; rhos.len()];
        let mut acc1 = vec![0.0; rhos.len()];
        for r in runs {
            let (l2, l1, v) = r?;
            acc2.iter_mut().zip(&l2).for_each(|(a, b)| *a += b);
            acc1.iter_mut().zip(&l1).for_each(|(a, b)| *a += b);
            violations.extend(v);
        }
        let n = cfg.trials as f64;
        for (i, &db) in cfg.rho_db.iter().enumerate() {
            table.rows.push(vec![
                Cell::Real(eps),
                Cell::Real(db),
                Cell::Real(power_to_db(acc2[i] / n)),
                Cell::Real(power_to_db(acc1[i] / n)),
                Cell::Real(ideal),
            ]);
        }
    }
    Ok(Outcome {
        value: table,
        violations,
    })
}

// ---------------------------------------------------------------------------
// Direction of arrival
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct DoaConfig {
    /// `epsilon` and `n` of this record are overridden by the sweeps.
    pub scenario: DoaScenario,
    pub epsilons: Vec<f64>,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub grid_step: f64,
    pub solver: SolverConfig,
}

impl DoaConfig {
    /// Standard geometry, ε ∈ {0, 2%}, `N ∈ {10, 20, …, 100}`, 0.1° grid.
    pub fn standard(trials: usize, seed: u64) -> Self {
        Self {
            scenario: DoaScenario::standard(0.0, 10),
            epsilons: vec![0.0, 0.02],
            n_values: (1..=10).map(|i| 10 * i).collect(),
            trials,
            seed,
            grid_step: 0.1,
            solver: SolverConfig::default(),
        }
    }
}

pub fn run_doa(cfg: &DoaConfig) -> Result<Outcome<Table>> {
    check_trials(cfg.trials)?;
    let mut table = Table::new(&["epsilon", "n", "rmse_l2", "rmse_l1"]);
    let violations = Vec::new();
    for &eps in &cfg.epsilons {
        for &n in &cfg.n_values {
            let scn = DoaScenario {
                epsilon: eps,
                n,
                ..cfg.scenario.clone()
            };
            scn.validate()?;
            let runs: Vec<Result<(Vec<f64>, Vec<f64>)>> = (0..cfg.trials)
                .into_par_iter()
                .map(|t| {
                    let draw = gen_doa_snapshots(&scn, &mut Rng::new(cfg.seed, t as u64));
                    let solver = cfg.solver.with_seed(derive_seed(cfg.seed, &[t as u64]));
                    let l2 = music_estimate(
                        &draw.x,
                        scn.k,
                        BasisKind::L2,
                        cfg.grid_step,
                        scn.spacing,
                        &solver,
                    )?;
                    let l1 = music_estimate(
                        &draw.x,
                        scn.k,
                        BasisKind::L1,
                        cfg.grid_step,
                        scn.spacing,
                        &solver,
                    )?;
                    Ok((l2, l1))
                })
                .collect();
            let mut est2 = Vec::with_capacity(cfg.trials);
            let mut est1 = Vec::with_capacity(cfg.trials);
            for r in runs {
                let (a, b) = r?;
                est2.push(a);
                est1.push(b);
            }
            table.rows.push(vec![
                Cell::Real(eps),
                Cell::Int(n as i64),
                Cell::Real(rmse(&scn.thetas, &est2)?),
                Cell::Real(rmse(&scn.thetas, &est1)?),
            ]);
        }
    }
    Ok(Outcome {
        value: table,
        violations,
    })
}

// ---------------------------------------------------------------------------
// Oracle comparison
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct OracleCompareConfig {
    pub d: usize,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub solver: SolverConfig,
    pub oracle: OracleConfig,
}

impl OracleCompareConfig {
    /// `D = 3`, `N = 5`, 32 restarts, 64-point refined grid.
    pub fn standard(trials: usize, seed: u64) -> Self {
        Self {
            d: 3,
            n: 5,
            trials,
            seed,
            solver: SolverConfig::default().with_restarts(32),
            oracle: OracleConfig::for_n(5),
        }
    }
}

/// Relative shortfall `(oracle − algo2) / oracle` per trial.
pub fn run_oracle_compare(cfg: &OracleCompareConfig) -> Result<Outcome<Table>> {
    check_trials(cfg.trials)?;
    let mut table = Table::new(&["trial", "algo2_value", "oracle_value", "gap"]);
    let mut violations = Vec::new();
    let runs: Vec<Result<(f64, f64, Vec<String>)>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let x = Rng::new(cfg.seed, t as u64).complex_normal_matrix(cfg.d, cfg.n, 1.0);
            let g = x.adjoint() * &x;
            let solver = cfg.solver.with_seed(derive_seed(cfg.seed, &[t as u64]));
            let report = solve_l1pc_strong(&x, &solver, None)?;
            let oracle = uqm_grid_oracle(&x, cfg.oracle)?;
            Ok((
                quadratic_value(&g, report.certificate.as_matrix()),
                oracle.best_value,
                report_violations(&x, &report),
            ))
        })
        .collect();
    for (t, r) in runs.into_iter().enumerate() {
        let (a, o, v) = r?;
        violations.extend(v);
        table.rows.push(vec![
            Cell::Int(t as i64),
            Cell::Real(a),
            Cell::Real(o),
            Cell::Real((o - a) / o),
        ]);
    }
    Ok(Outcome {
        value: table,
        violations,
    })
}
