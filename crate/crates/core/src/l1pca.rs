//! Fixed-point solvers for complex L1-PCA.
//!
//! L1-PCA `max ‖Q^H X‖_1` over orthonormal `Q` is solved through the
//! equivalent unimodular nuclear-norm maximization `max ‖X B‖_*` over `B`
//! with unit-modulus entries. Given a maximizing `B`, `Q = unt(X B)`.
//!
//! * [`solve_l1pca`] iterates `B ← sgn(X^H unt(X B))` (any `K`).
//! * [`solve_l1pc_strong`] iterates `b ← sgn(A_d b)` on the hollow Gram
//!   matrix `A_d = X^H X − Diag(‖x_n‖²)` (`K = 1`).
//!
//! Both ascend their objective monotonically. After the objective-increase
//! test fires, the same iteration keeps running ("polishing") until the
//! iterate is a fixed point to within `fixed_point_tol`, so the returned
//! certificate satisfies the stationarity conditions to high accuracy.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::cxkernel::{
    l1_norm, max_abs_diff, numerical_rank, polar_with_norm, sgn_matrix_with, sgn_with, thin_svd,
    ComplexMatrix, OrthonormalBasis, UnimodularMatrix, C64, DEFAULT_RANK_TOL, ONE, ZERO_ABS_TOL,
};
use crate::error::{Error, Result};
use crate::oracle::l2pca;
use crate::rng::Rng;

/// How restart 0 is initialized. Restarts `1..` always draw i.i.d. uniform
/// phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitScheme {
    /// `sgn(X^H Q_L2)` with `Q_L2` the `K` dominant left singular vectors.
    L2Warm,
    Random,
    /// Caller-supplied `initial` matrix.
    Provided,
}

/// Objective-increase threshold that stops the ascent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Threshold {
    Absolute(f64),
    /// Multiple of the initial objective value, fixed once per restart.
    RelativeToInitial(f64),
}

impl Threshold {
    fn resolve(self, initial_objective: f64) -> f64 {
        match self {
            Threshold::Absolute(d) => d,
            Threshold::RelativeToInitial(r) => r * initial_objective.abs(),
        }
    }

    fn value(self) -> f64 {
        match self {
            Threshold::Absolute(d) | Threshold::RelativeToInitial(d) => d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub delta: Threshold,
    /// Budget for the ascent phase.
    pub max_iterations: usize,
    /// Budget for polishing the winning restart towards an exact fixed
    /// point once the objective-increase test has fired.
    pub max_polish_iterations: usize,
    pub num_restarts: usize,
    pub init_scheme: InitScheme,
    pub seed: u64,
    pub zero_sign_convention: C64,
    pub rank_tol: f64,
    /// Target for `‖B − next(B)‖_max` during polishing.
    pub fixed_point_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            delta: Threshold::RelativeToInitial(1e-6),
            max_iterations: 1000,
            max_polish_iterations: 100_000,
            num_restarts: 16,
            init_scheme: InitScheme::L2Warm,
            seed: 0,
            zero_sign_convention: ONE,
            rank_tol: DEFAULT_RANK_TOL,
            fixed_point_tol: 1e-10,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let d = self.delta.value();
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "delta must be positive, got {d}"
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be >= 1".into()));
        }
        if self.max_polish_iterations == 0 {
            return Err(Error::InvalidConfig(
                "max_polish_iterations must be >= 1".into(),
            ));
        }
        if self.num_restarts == 0 {
            return Err(Error::InvalidConfig("num_restarts must be >= 1".into()));
        }
        if (self.zero_sign_convention.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidConfig(
                "zero_sign_convention must be unimodular".into(),
            ));
        }
        if !(self.fixed_point_tol >= 0.0) || !(self.rank_tol > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, n: usize) -> Self {
        self.num_restarts = n;
        self
    }

    pub fn with_init(mut self, init: InitScheme) -> Self {
        self.init_scheme = init;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    /// Nuclear-norm ascent, general `K`.
    Mild,
    /// Hollow-Gram ascent, `K = 1`.
    Strong,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    pub basis: OrthonormalBasis,
    pub certificate: UnimodularMatrix,
    /// `‖X B^{(i)}‖_*` for [`Algorithm::Mild`], `‖A_d b^{(i)}‖_1` for
    /// [`Algorithm::Strong`]; entry 0 is the initial point.
    pub objective_trace: Vec<f64>,
    /// Iterations until the objective-increase test fired.
    pub iterations: usize,
    pub polish_iterations: usize,
    /// Coordinate-wise sign sweeps used to leave a two-cycle of the
    /// parallel `K = 1` update; always 0 for [`Algorithm::Mild`].
    pub coordinate_sweeps: usize,
    /// The objective-increase test fired within `max_iterations`.
    pub converged: bool,
    /// `‖Q^H X‖_1` at the returned basis.
    pub l1_objective: f64,
    /// `‖B − sgn(X^H unt(X B))‖_max`.
    pub mild_condition_residual: f64,
    /// `‖b − sgn(A_d b)‖_max`, only for `K = 1`.
    pub strong_condition_residual: Option<f64>,
    pub restart_index: usize,
    /// Objective at the returned certificate (after polishing).
    pub objective: f64,
    /// Objective of every restart when its ascent stopped; `None` for
    /// aborted restarts.
    pub restart_objectives: Vec<Option<f64>>,
    /// Rank-loss perturbations applied in the winning restart.
    pub perturbations: usize,
}

impl SolveReport {
    /// Objective at the returned certificate; equals the last trace entry
    /// unless coordinate sweeps ran.
    pub fn terminal_objective(&self) -> f64 {
        self.objective
    }

    pub fn k(&self) -> usize {
        self.basis.k()
    }
}

struct RestartOutcome {
    b: ComplexMatrix,
    trace: Vec<f64>,
    iterations: usize,
    polish_iterations: usize,
    coordinate_sweeps: usize,
    converged: bool,
    perturbations: usize,
    objective: f64,
    rng: Rng,
}

const MAX_PERTURBATIONS: usize = 3;

fn initial_point(
    x: &ComplexMatrix,
    k: usize,
    cfg: &SolverConfig,
    initial: Option<&UnimodularMatrix>,
    restart: usize,
    rng: &mut Rng,
) -> Result<ComplexMatrix> {
    let n = x.ncols();
    if restart == 0 {
        if let Some(b) = initial {
            return Ok(b.as_matrix().clone());
        }
        match cfg.init_scheme {
            InitScheme::L2Warm => {
                let q = l2pca(x, k)?;
                return Ok(sgn_matrix_with(
                    &(x.adjoint() * q.as_matrix()),
                    cfg.zero_sign_convention,
                )
                .into_inner());
            }
            InitScheme::Provided => {
                return Err(Error::InvalidConfig(
                    "init scheme Provided requires an initial matrix".into(),
                ))
            }
            InitScheme::Random => {}
        }
    }
    Ok(random_unimodular(rng, n, k))
}

fn random_unimodular(rng: &mut Rng, n: usize, k: usize) -> ComplexMatrix {
    let mut b = ComplexMatrix::zeros(n, k);
    for j in 0..k {
        for i in 0..n {
            b[(i, j)] = C64::from_polar(1.0, rng.phase());
        }
    }
    b
}

fn check_initial(initial: Option<&UnimodularMatrix>, n: usize, k: usize) -> Result<()> {
    if let Some(b) = initial {
        if b.nrows() != n || b.ncols() != k {
            return Err(Error::ShapeMismatch(format!(
                "initial matrix is {}x{}, expected {n}x{k}",
                b.nrows(),
                b.ncols()
            )));
        }
    }
    Ok(())
}

/// Picks the restart with the largest terminal ascent objective, lowest index on
/// ties. Returns the first error if every restart failed.
fn best_restart(
    results: Vec<Result<RestartOutcome>>,
) -> Result<(usize, RestartOutcome, Vec<Option<f64>>)> {
    let objectives: Vec<Option<f64>> = results
        .iter()
        .map(|r| r.as_ref().ok().map(|o| o.objective))
        .collect();
    let mut best: Option<(usize, f64)> = None;
    for (i, obj) in objectives.iter().enumerate() {
        if let Some(v) = *obj {
            if best.is_none_or(|(_, bv)| v > bv) {
                best = Some((i, v));
            }
        }
    }
    match best {
        Some((i, _)) => {
            let outcome = results.into_iter().nth(i).unwrap().ok().unwrap();
            Ok((i, outcome, objectives))
        }
        None => Err(results.into_iter().find_map(|r| r.err()).unwrap()),
    }
}

/// `‖B − sgn(X^H unt(X B))‖_max`.
pub fn mild_residual(
    x: &ComplexMatrix,
    b: &ComplexMatrix,
    rank_tol: f64,
    zero: C64,
) -> Result<f64> {
    let (q, _) = polar_with_norm(&(x * b), rank_tol)?;
    let next = sgn_matrix_with(&(x.adjoint() * q.as_matrix()), zero);
    Ok(max_abs_diff(b, next.as_matrix()))
}

/// One step `B ← sgn(X^H unt(X B))` of the nuclear-norm iteration.
pub fn mild_step(
    x: &ComplexMatrix,
    b: &ComplexMatrix,
    rank_tol: f64,
    zero: C64,
) -> Result<ComplexMatrix> {
    let (q, _) = polar_with_norm(&(x * b), rank_tol)?;
    Ok(sgn_matrix_with(&(x.adjoint() * q.as_matrix()), zero).into_inner())
}

/// `‖b − sgn(A_d b)‖_max` for an `N x 1` vector `b`.
pub fn strong_residual(x: &ComplexMatrix, b: &ComplexMatrix, zero: C64) -> f64 {
    let ad = hollow_gram(x);
    let next = sgn_matrix_with(&(&ad * b), zero);
    max_abs_diff(b, next.as_matrix())
}

/// `A_d = X^H X − Diag(‖x_1‖², …, ‖x_N‖²)`.
pub fn hollow_gram(x: &ComplexMatrix) -> ComplexMatrix {
    let mut g = x.adjoint() * x;
    for i in 0..g.nrows() {
        g[(i, i)] = C64::new(0.0, 0.0);
    }
    g
}

// ---------------------------------------------------------------------------
// Nuclear-norm ascent (general K)
// ---------------------------------------------------------------------------

/// Multi-component L1-PCA by the nuclear-norm fixed-point iteration.
///
/// Requires `1 <= k <= rank(x)`. Runs `config.num_restarts` independent
/// restarts and returns the one with the largest terminal `‖X B‖_*`.
pub fn solve_l1pca(
    x: &ComplexMatrix,
    k: usize,
    config: &SolverConfig,
    initial: Option<&UnimodularMatrix>,
) -> Result<SolveReport> {
    config.validate()?;
    let rank = numerical_rank(x, config.rank_tol);
    if rank == 0 {
        return Err(Error::ZeroMatrix);
    }
    if k == 0 || k > rank {
        return Err(Error::KTooLarge { k, rank });
    }
    check_initial(initial, x.ncols(), k)?;

    let xh = x.adjoint();
    let results: Vec<Result<RestartOutcome>> = (0..config.num_restarts)
        .map(|r| {
            let mut rng = Rng::new(config.seed, r as u64);
            let b0 = initial_point(x, k, config, initial, r, &mut rng)?;
            ascend_mild(x, &xh, b0, config, rng)
        })
        .collect();
    let (restart_index, mut best, restart_objectives) = best_restart(results)?;
    polish_mild(x, &xh, &mut best, config)?;

    let (q, _) = polar_with_norm(&(x * &best.b), config.rank_tol)?;
    let l1_objective = l1_norm(&(q.as_matrix().adjoint() * x));
    let next = sgn_matrix_with(&(&xh * q.as_matrix()), config.zero_sign_convention);
    let mild_condition_residual = max_abs_diff(&best.b, next.as_matrix());
    let strong_condition_residual =
        (k == 1).then(|| strong_residual(x, &best.b, config.zero_sign_convention));

    Ok(SolveReport {
        algorithm: Algorithm::Mild,
        basis: q,
        certificate: UnimodularMatrix::new(best.b).expect("iterates are unimodular"),
        objective_trace: best.trace,
        iterations: best.iterations,
        polish_iterations: best.polish_iterations,
        coordinate_sweeps: best.coordinate_sweeps,
        converged: best.converged,
        l1_objective,
        mild_condition_residual,
        strong_condition_residual,
        objective: best.objective,
        restart_index,
        restart_objectives,
        perturbations: best.perturbations,
    })
}

/// `unt(X B)` and `‖X B‖_*`, re-randomizing the weakest column of `B` when
/// `X B` loses column rank.
fn evaluate_mild(
    x: &ComplexMatrix,
    b: &mut ComplexMatrix,
    cfg: &SolverConfig,
    rng: &mut Rng,
    perturbations: &mut usize,
) -> Result<(OrthonormalBasis, f64)> {
    loop {
        let xb = x * &*b;
        match polar_with_norm(&xb, cfg.rank_tol) {
            Ok(v) => return Ok(v),
            Err(e @ (Error::RankDeficient { .. } | Error::ZeroMatrix)) => {
                if *perturbations >= MAX_PERTURBATIONS {
                    return Err(e);
                }
                *perturbations += 1;
                let weakest = (0..xb.ncols())
                    .min_by(|&i, &j| xb.column(i).norm().total_cmp(&xb.column(j).norm()))
                    .unwrap();
                for i in 0..b.nrows() {
                    b[(i, weakest)] = C64::from_polar(1.0, rng.phase());
                }
            }
            Err(e) => return Err(e),
        }
    }
}

fn ascend_mild(
    x: &ComplexMatrix,
    xh: &ComplexMatrix,
    mut b: ComplexMatrix,
    cfg: &SolverConfig,
    mut rng: Rng,
) -> Result<RestartOutcome> {
    let zero = cfg.zero_sign_convention;
    let mut perturbations = 0;
    let (mut q, mut alpha) = evaluate_mild(x, &mut b, cfg, &mut rng, &mut perturbations)?;
    let delta = cfg.delta.resolve(alpha);
    let mut trace = vec![alpha];

    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        b = sgn_matrix_with(&(xh * q.as_matrix()), zero).into_inner();
        let (q_new, value) = evaluate_mild(x, &mut b, cfg, &mut rng, &mut perturbations)?;
        iterations += 1;
        trace.push(value);
        q = q_new;
        if value - alpha <= delta {
            converged = true;
            break;
        }
        alpha = value;
    }

    Ok(RestartOutcome {
        b,
        objective: *trace.last().unwrap(),
        trace,
        iterations,
        polish_iterations: 0,
        coordinate_sweeps: 0,
        converged,
        perturbations,
        rng,
    })
}

/// Continues the iteration until `‖B − next(B)‖_max <= fixed_point_tol`.
/// A threshold on the objective increase stops while `B` can still be
/// about `sqrt(δ)` away from the fixed point.
fn polish_mild(
    x: &ComplexMatrix,
    xh: &ComplexMatrix,
    out: &mut RestartOutcome,
    cfg: &SolverConfig,
) -> Result<()> {
    let zero = cfg.zero_sign_convention;
    let (mut q, _) = evaluate_mild(x, &mut out.b, cfg, &mut out.rng, &mut out.perturbations)?;
    while out.polish_iterations < cfg.max_polish_iterations {
        let next = sgn_matrix_with(&(xh * q.as_matrix()), zero).into_inner();
        if max_abs_diff(&out.b, &next) <= cfg.fixed_point_tol {
            break;
        }
        out.b = next;
        let (q_new, value) =
            evaluate_mild(x, &mut out.b, cfg, &mut out.rng, &mut out.perturbations)?;
        out.polish_iterations += 1;
        out.trace.push(value);
        out.objective = value;
        q = q_new;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Hollow-Gram ascent (K = 1)
// ---------------------------------------------------------------------------

/// Single-component L1-PCA by the strong-condition iteration
/// `b ← sgn(A_d b)`. Returns `q = X b / ‖X b‖₂`.
///
/// When `A_d = 0` (e.g. `N = 1`, or mutually orthogonal columns) every
/// unimodular `b` is optimal; the initial point of restart 0 is returned as
/// converged.
pub fn solve_l1pc_strong(
    x: &ComplexMatrix,
    config: &SolverConfig,
    initial: Option<&UnimodularMatrix>,
) -> Result<SolveReport> {
    config.validate()?;
    if numerical_rank(x, config.rank_tol) == 0 {
        return Err(Error::ZeroMatrix);
    }
    check_initial(initial, x.ncols(), 1)?;
    let ad = hollow_gram(x);
    let degenerate = ad.iter().all(|z| z.norm() <= ZERO_ABS_TOL);

    let restarts = if degenerate { 1 } else { config.num_restarts };
    let results: Vec<Result<RestartOutcome>> = (0..restarts)
        .map(|r| {
            let mut rng = Rng::new(config.seed, r as u64);
            let b0 = initial_point(x, 1, config, initial, r, &mut rng)?;
            if degenerate {
                return Ok(RestartOutcome {
                    b: b0,
                    trace: vec![0.0],
                    iterations: 0,
                    polish_iterations: 0,
                    coordinate_sweeps: 0,
                    converged: true,
                    perturbations: 0,
                    objective: 0.0,
                    rng,
                });
            }
            Ok(ascend_strong(&ad, b0, config, rng))
        })
        .collect();
    let (restart_index, mut best, restart_objectives) = best_restart(results)?;
    if !degenerate {
        polish_strong(&ad, &mut best, config);
    }

    let xb = x * &best.b;
    let norm = xb.norm();
    if !(norm > ZERO_ABS_TOL) {
        return Err(Error::ZeroMatrix);
    }
    let q = OrthonormalBasis::new_unchecked(xb / C64::from(norm));
    let xh = x.adjoint();
    let zero = config.zero_sign_convention;
    let l1_objective = l1_norm(&(q.as_matrix().adjoint() * x));
    let next = sgn_matrix_with(&(&xh * q.as_matrix()), zero);
    let mild_condition_residual = max_abs_diff(&best.b, next.as_matrix());
    let strong = sgn_matrix_with(&(&ad * &best.b), zero);
    let strong_condition_residual = if degenerate {
        Some(0.0)
    } else {
        Some(max_abs_diff(&best.b, strong.as_matrix()))
    };

    Ok(SolveReport {
        algorithm: Algorithm::Strong,
        basis: q,
        certificate: UnimodularMatrix::new(best.b).expect("iterates are unimodular"),
        objective_trace: best.trace,
        iterations: best.iterations,
        polish_iterations: best.polish_iterations,
        coordinate_sweeps: best.coordinate_sweeps,
        converged: best.converged,
        l1_objective,
        mild_condition_residual,
        strong_condition_residual,
        objective: best.objective,
        restart_index,
        restart_objectives,
        perturbations: 0,
    })
}

fn ascend_strong(
    ad: &ComplexMatrix,
    mut b: ComplexMatrix,
    cfg: &SolverConfig,
    rng: Rng,
) -> RestartOutcome {
    let zero = cfg.zero_sign_convention;
    let mut y = ad * &b;
    let mut alpha = l1_norm(&y);
    let delta = cfg.delta.resolve(alpha);
    let mut trace = vec![alpha];

    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        b = sgn_matrix_with(&y, zero).into_inner();
        y = ad * &b;
        let value = l1_norm(&y);
        iterations += 1;
        trace.push(value);
        if value - alpha <= delta {
            converged = true;
            break;
        }
        alpha = value;
    }

    RestartOutcome {
        b,
        objective: *trace.last().unwrap(),
        trace,
        iterations,
        polish_iterations: 0,
        coordinate_sweeps: 0,
        converged,
        perturbations: 0,
        rng,
    }
}

fn polish_strong(ad: &ComplexMatrix, out: &mut RestartOutcome, cfg: &SolverConfig) {
    let zero = cfg.zero_sign_convention;
    // The parallel update can settle into a two-cycle b -> b' -> b. Once
    // detected, coordinate-wise updates take over: with a zero diagonal each
    // one is exact and never lowers b^H A_d b, and their limit satisfies
    // b = sgn(A_d b). Those sweeps stay out of the trace.
    let mut y = ad * &out.b;
    let mut previous: Option<ComplexMatrix> = None;
    let mut cycling = false;
    while out.polish_iterations < cfg.max_polish_iterations {
        let next = sgn_matrix_with(&y, zero).into_inner();
        if max_abs_diff(&out.b, &next) <= cfg.fixed_point_tol {
            break;
        }
        if previous
            .as_ref()
            .is_some_and(|p| max_abs_diff(p, &next) <= cfg.fixed_point_tol)
        {
            cycling = true;
            break;
        }
        previous = Some(std::mem::replace(&mut out.b, next));
        y = ad * &out.b;
        out.polish_iterations += 1;
        let value = l1_norm(&y);
        out.trace.push(value);
        out.objective = value;
    }

    if cycling {
        while out.coordinate_sweeps < cfg.max_polish_iterations {
            out.coordinate_sweeps += 1;
            if coordinate_sweep(ad, &mut out.b, zero) <= cfg.fixed_point_tol {
                break;
            }
        }
        out.objective = l1_norm(&(ad * &out.b));
    }
}

/// One in-place pass `b_n ← sgn((A_d b)_n)`; returns the largest change.
fn coordinate_sweep(ad: &ComplexMatrix, b: &mut ComplexMatrix, zero: C64) -> f64 {
    let n = b.nrows();
    let mut change: f64 = 0.0;
    for i in 0..n {
        let mut c = C64::new(0.0, 0.0);
        for m in 0..n {
            if m != i {
                c += ad[(i, m)] * b[m];
            }
        }
        let new = sgn_with(c, zero);
        change = change.max((new - b[i]).norm());
        b[i] = new;
    }
    change
}

// ---------------------------------------------------------------------------
// Rank reduction
// ---------------------------------------------------------------------------

/// Thin-SVD compression `X = U_x S_x V_x^H`: returns `(S_x V_x^H, U_x)`.
///
/// `‖X B‖_* = ‖X_short B‖_*` for every `B`, and the L1-PCs of `X` are
/// `U_x` times the L1-PCs of `X_short`.
pub fn reduce_rank(x: &ComplexMatrix, rank_tol: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let svd = thin_svd(x, rank_tol)?;
    let mut x_short = svd.v.adjoint();
    for (i, s) in svd.singular_values.iter().enumerate() {
        x_short.row_mut(i).scale_mut(*s);
    }
    Ok((x_short, svd.u))
}

/// Solves on the rank-reduced matrix and lifts the basis back with `U_x`.
/// The certificate and objective trace are those of the reduced problem.
pub fn solve_l1pca_reduced(
    x: &ComplexMatrix,
    k: usize,
    config: &SolverConfig,
    initial: Option<&UnimodularMatrix>,
) -> Result<SolveReport> {
    let (x_short, u_x) = reduce_rank(x, config.rank_tol)?;
    let mut report = solve_l1pca(&x_short, k, config, initial)?;
    report.basis = OrthonormalBasis::new_unchecked(u_x * report.basis.as_matrix());
    report.l1_objective = l1_norm(&(report.basis.as_matrix().adjoint() * x));
    Ok(report)
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

/// Stationarity and local-optimality diagnostics of a `K = 1` certificate.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    /// `ω(b) = conj(b) ⊙ (X^H X b)`.
    pub omega: Vec<C64>,
    /// Derivative of `φ ↦ ‖X e^{jφ}‖²`: `2 Im ω(b)`.
    pub gradient: Vec<f64>,
    /// `2 Re{Diag(b)^H X^H X Diag(b) − Diag(ω(b))}`.
    pub hessian: DMatrix<f64>,
    pub column_norms_sq: Vec<f64>,
    pub mild_satisfied: bool,
    pub strong_satisfied: bool,
    pub max_hessian_eigenvalue: f64,
    /// `‖b − sgn(X^H X b)‖_max`.
    pub mild_residual: f64,
}

impl ConditionReport {
    /// `Σ ω_n`, which equals `b^H X^H X b`.
    pub fn omega_sum(&self) -> C64 {
        self.omega.iter().sum()
    }
}

pub fn check_conditions(
    x: &ComplexMatrix,
    b: &UnimodularMatrix,
    tol: f64,
) -> Result<ConditionReport> {
    let n = x.ncols();
    if b.nrows() != n || b.ncols() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "certificate is {}x{}, expected {n}x1",
            b.nrows(),
            b.ncols()
        )));
    }
    let b = b.as_matrix();
    let g = x.adjoint() * x;
    let gb = &g * b;
    let omega: Vec<C64> = (0..n).map(|i| b[i].conj() * gb[i]).collect();
    let column_norms_sq: Vec<f64> = (0..n).map(|i| x.column(i).norm_squared()).collect();
    let gradient: Vec<f64> = omega.iter().map(|w| 2.0 * w.im).collect();

    let hessian = DMatrix::from_fn(n, n, |i, j| {
        let mut h = b[i].conj() * g[(i, j)] * b[j];
        if i == j {
            h -= omega[i];
        }
        2.0 * h.re
    });
    let sym = (&hessian + hessian.transpose()) * 0.5;
    let max_hessian_eigenvalue = SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);

    let next = sgn_matrix_with(&gb, ONE);
    let mild_residual = max_abs_diff(b, next.as_matrix());
    let mild_satisfied = mild_residual <= tol;
    let strong_satisfied = omega
        .iter()
        .zip(&column_norms_sq)
        .all(|(w, &c)| w.im.abs() <= tol * (1.0 + w.norm()) && w.re >= c - tol);

    Ok(ConditionReport {
        omega,
        gradient,
        hessian,
        column_norms_sq,
        mild_satisfied,
        strong_satisfied,
        max_hessian_eigenvalue,
        mild_residual,
    })
}

/// `‖Q^H X‖_1`.
pub fn l1_objective(x: &ComplexMatrix, q: &OrthonormalBasis) -> Result<f64> {
    if q.dim() != x.nrows() {
        return Err(Error::ShapeMismatch(format!(
            "basis has dimension {}, data has {} rows",
            q.dim(),
            x.nrows()
        )));
    }
    Ok(l1_norm(&(q.as_matrix().adjoint() * x)))
}
