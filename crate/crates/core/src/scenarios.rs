//! Data models and metrics for the three application studies: subspace
//! recovery under a single corrupted sample, cognitive signature design,
//! and MUSIC direction-of-arrival estimation with sporadic jammers.

use serde::{Deserialize, Serialize};

use crate::cxkernel::{unt, ComplexMatrix, FaerSvd, OrthonormalBasis, SvdBackend, C64};
use crate::error::{Error, Result};
use crate::l1pca::{solve_l1pca, SolverConfig};
use crate::matrix_io::MatrixFile;
use crate::oracle::l2pca;
use crate::rng::Rng;

const NOMINAL_5X10: &str = include_str!("../data/nominal_5x10.json");

/// Fixed 5x10 nominal data matrix of the subspace-proximity study.
pub fn nominal_matrix() -> ComplexMatrix {
    MatrixFile::from_json(NOMINAL_5X10)
        .and_then(|f| f.to_matrix())
        .expect("bundled nominal matrix is well formed")
}

/// Power ratio from decibels.
pub fn db_to_power(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn power_to_db(p: f64) -> f64 {
    10.0 * p.log10()
}

// ---------------------------------------------------------------------------
// Single-sample corruption
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CorruptionScenario {
    pub x_nominal: ComplexMatrix,
    pub k: usize,
    /// Corruption variance in dB; `-inf` means no corruption.
    pub sigma_sq_db: f64,
    pub corrupt_column: usize,
}

impl CorruptionScenario {
    pub fn new(x_nominal: ComplexMatrix, k: usize, sigma_sq_db: f64) -> Self {
        Self {
            x_nominal,
            k,
            sigma_sq_db,
            corrupt_column: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let rank =
            crate::cxkernel::numerical_rank(&self.x_nominal, crate::cxkernel::DEFAULT_RANK_TOL);
        if self.k == 0 || self.k >= rank {
            return Err(Error::KTooLarge { k: self.k, rank });
        }
        if self.corrupt_column >= self.x_nominal.ncols() {
            return Err(Error::OutOfRange(format!(
                "corrupt column {} of {}",
                self.corrupt_column,
                self.x_nominal.ncols()
            )));
        }
        Ok(())
    }
}

/// `[x_1 + c, x_2, …]` with `c ~ CN(0, σ² I)` added to `corrupt_column`.
pub fn gen_corrupted(scn: &CorruptionScenario, rng: &mut Rng) -> ComplexMatrix {
    let var = db_to_power(scn.sigma_sq_db);
    let mut x = scn.x_nominal.clone();
    let col = scn.corrupt_column;
    for i in 0..x.nrows() {
        // unit draw scaled afterwards, so sweeps over σ² share directions
        x[(i, col)] += rng.complex_normal(1.0) * var.sqrt();
    }
    x
}

/// `‖Q_n^H Q‖_F / √K`, in `[0, 1]`.
pub fn subspace_proximity(q: &OrthonormalBasis, q_n: &OrthonormalBasis) -> Result<f64> {
    if q.dim() != q_n.dim() || q.k() != q_n.k() {
        return Err(Error::ShapeMismatch(format!(
            "bases are {}x{} and {}x{}",
            q.dim(),
            q.k(),
            q_n.dim(),
            q_n.k()
        )));
    }
    Ok((q_n.as_matrix().adjoint() * q.as_matrix()).norm() / (q.k() as f64).sqrt())
}

// ---------------------------------------------------------------------------
// Cognitive signature design
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CognitiveScenario {
    /// Signature length in chips.
    pub l: usize,
    /// Primary sources.
    pub k: usize,
    /// Training snapshots.
    pub n: usize,
    /// Probability that a snapshot carries interference.
    pub epsilon: f64,
    pub noise_var: f64,
    pub interference_var: f64,
    /// Secondary transmit energy.
    pub rho_sq: f64,
}

impl CognitiveScenario {
    /// `L = 8`, `K = 3`, `N = 200`, noise `1/L`, interference `100/L`.
    pub fn standard(epsilon: f64) -> Self {
        let l = 8;
        Self {
            l,
            k: 3,
            n: 200,
            epsilon,
            noise_var: 1.0 / l as f64,
            interference_var: 100.0 / l as f64,
            rho_sq: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::OutOfRange(format!("epsilon {}", self.epsilon)));
        }
        if self.k == 0 || self.k >= self.l {
            return Err(Error::InvalidConfig(format!(
                "need 0 < k < l, got k={} l={}",
                self.k, self.l
            )));
        }
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct CognitiveDraw {
    /// `L x N` snapshots.
    pub x: ComplexMatrix,
    /// True primary signatures.
    pub s_primary: OrthonormalBasis,
    /// Snapshots that carry interference.
    pub interference_active: Vec<bool>,
}

/// Haar-distributed `l x k` orthonormal matrix: polar factor of a complex
/// Gaussian matrix.
pub fn random_orthonormal(rng: &mut Rng, l: usize, k: usize) -> OrthonormalBasis {
    loop {
        let g = rng.complex_normal_matrix(l, k, 1.0);
        if let Ok(q) = unt(&g) {
            return q;
        }
    }
}

pub fn gen_cognitive_snapshots(scn: &CognitiveScenario, rng: &mut Rng) -> CognitiveDraw {
    let s = random_orthonormal(rng, scn.l, scn.k);
    let mut x = ComplexMatrix::zeros(scn.l, scn.n);
    let mut active = Vec::with_capacity(scn.n);
    for n in 0..scn.n {
        let mut col = nalgebra::DVector::<C64>::zeros(scn.l);
        for k in 0..scn.k {
            let y = rng.complex_normal(1.0);
            col += s.as_matrix().column(k) * y;
        }
        for i in 0..scn.l {
            col[i] += rng.complex_normal(scn.noise_var);
        }
        let hit = rng.bernoulli(scn.epsilon);
        if hit {
            for i in 0..scn.l {
                col[i] += rng.complex_normal(scn.interference_var);
            }
        }
        active.push(hit);
        x.set_column(n, &col);
    }
    CognitiveDraw {
        x,
        s_primary: s,
        interference_active: active,
    }
}

/// Orthonormal basis of the orthogonal complement of `span(q_est)`: the
/// dominant `L − K` left singular vectors of `I − Q Q^H`.
pub fn design_secondary(q_est: &OrthonormalBasis) -> Result<OrthonormalBasis> {
    let l = q_est.dim();
    let k = q_est.k();
    if k >= l {
        return Ok(OrthonormalBasis::new_unchecked(ComplexMatrix::zeros(l, 0)));
    }
    let q = q_est.as_matrix();
    let projector = ComplexMatrix::identity(l, l) - q * q.adjoint();
    let svd = FaerSvd.decompose(&projector)?;
    Ok(OrthonormalBasis::new_unchecked(
        svd.u.columns(0, l - k).into_owned(),
    ))
}

/// Linear sum-SINR `Σ_k 1 / (1 + ρ² |Σ_l s_k^H s'_l|²)`.
pub fn sum_sinr_linear(
    s_primary: &OrthonormalBasis,
    s_secondary: &OrthonormalBasis,
    rho_sq: f64,
) -> Result<f64> {
    if s_primary.dim() != s_secondary.dim() {
        return Err(Error::ShapeMismatch(format!(
            "signature lengths {} and {}",
            s_primary.dim(),
            s_secondary.dim()
        )));
    }
    let cross = s_primary.as_matrix().adjoint() * s_secondary.as_matrix();
    Ok(cross
        .row_iter()
        .map(|row| {
            let leak: C64 = row.iter().sum();
            1.0 / (1.0 + rho_sq * leak.norm_sqr())
        })
        .sum())
}

/// Sum-SINR in dB.
pub fn sum_sinr(
    s_primary: &OrthonormalBasis,
    s_secondary: &OrthonormalBasis,
    rho_sq: f64,
) -> Result<f64> {
    sum_sinr_linear(s_primary, s_secondary, rho_sq).map(power_to_db)
}

// ---------------------------------------------------------------------------
// Direction of arrival
// ---------------------------------------------------------------------------

/// ULA response `[1, e^{−jπ d sin φ}, …, e^{−j(D−1)π d sin φ}]^T`, `φ` in degrees,
/// `spacing` in half-wavelength units.
pub fn steering_vector(phi_deg: f64, d_elems: usize, spacing: f64) -> Result<ComplexMatrix> {
    if !(-90.0..90.0).contains(&phi_deg) {
        return Err(Error::OutOfRange(format!(
            "angle {phi_deg} outside [-90, 90)"
        )));
    }
    Ok(steering_unchecked(phi_deg, d_elems, spacing))
}

fn steering_unchecked(phi_deg: f64, d_elems: usize, spacing: f64) -> ComplexMatrix {
    let step = -std::f64::consts::PI * spacing * phi_deg.to_radians().sin();
    ComplexMatrix::from_fn(d_elems, 1, |m, _| C64::from_polar(1.0, m as f64 * step))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoaScenario {
    pub d: usize,
    pub k: usize,
    pub j: usize,
    pub thetas: Vec<f64>,
    pub jam_thetas: Vec<f64>,
    pub epsilon: f64,
    pub snr_db: f64,
    pub jam_snr_db: f64,
    pub n: usize,
    pub spacing: f64,
}

impl DoaScenario {
    /// 12-element half-wavelength ULA, sources at −40°, −21°, −7°, 60°,
    /// jammers at 0°, 20°, 80°, source SNR 0 dB, jammer SNR 15 dB.
    pub fn standard(epsilon: f64, n: usize) -> Self {
        Self {
            d: 12,
            k: 4,
            j: 3,
            thetas: vec![-40.0, -21.0, -7.0, 60.0],
            jam_thetas: vec![0.0, 20.0, 80.0],
            epsilon,
            snr_db: 0.0,
            jam_snr_db: 15.0,
            n,
            spacing: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.thetas.len() != self.k || self.jam_thetas.len() != self.j {
            return Err(Error::InvalidConfig("angle lists do not match k/j".into()));
        }
        for &a in self.thetas.iter().chain(&self.jam_thetas) {
            if !(-90.0..90.0).contains(&a) {
                return Err(Error::OutOfRange(format!("angle {a} outside [-90, 90)")));
            }
        }
        if self.thetas.iter().any(|t| self.jam_thetas.contains(t)) {
            return Err(Error::InvalidConfig(
                "source and jammer angles overlap".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::OutOfRange(format!("epsilon {}", self.epsilon)));
        }
        Ok(())
    }

    /// Noise variance for unit-power sources at `snr_db`.
    pub fn noise_var(&self) -> f64 {
        db_to_power(-self.snr_db)
    }
}

#[derive(Debug, Clone)]
pub struct DoaDraw {
    /// `D x N` snapshots.
    pub x: ComplexMatrix,
    /// Number of active (snapshot, jammer) pairs.
    pub jammer_activations: usize,
}

pub fn gen_doa_snapshots(scn: &DoaScenario, rng: &mut Rng) -> DoaDraw {
    gen_doa_snapshots_with_noise(scn, scn.noise_var(), rng)
}

/// Snapshot model with an explicit noise variance; jammer power stays
/// `jam_snr_db` above `scn.noise_var()`.
pub fn gen_doa_snapshots_with_noise(scn: &DoaScenario, noise_var: f64, rng: &mut Rng) -> DoaDraw {
    let base_noise = scn.noise_var();
    let src_power = db_to_power(scn.snr_db) * base_noise;
    let jam_power = db_to_power(scn.jam_snr_db) * base_noise;
    let sources: Vec<ComplexMatrix> = scn
        .thetas
        .iter()
        .map(|&t| steering_unchecked(t, scn.d, scn.spacing))
        .collect();
    let jammers: Vec<ComplexMatrix> = scn
        .jam_thetas
        .iter()
        .map(|&t| steering_unchecked(t, scn.d, scn.spacing))
        .collect();
    let mut x = ComplexMatrix::zeros(scn.d, scn.n);
    let mut activations = 0;
    for n in 0..scn.n {
        let mut col = ComplexMatrix::zeros(scn.d, 1);
        for s in &sources {
            col += s * rng.complex_normal(src_power);
        }
        for i in 0..scn.d {
            col[i] += rng.complex_normal(noise_var);
        }
        for s in &jammers {
            if rng.bernoulli(scn.epsilon) {
                activations += 1;
                col += s * rng.complex_normal(jam_power);
            }
        }
        x.set_column(n, &col.column(0));
    }
    DoaDraw {
        x,
        jammer_activations: activations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisKind {
    L2,
    L1,
}

/// Uniform grid `−90 + i·step` covering `[−90, 90)`.
pub fn angle_grid(step: f64) -> Vec<f64> {
    let count = (180.0 / step - 1e-9).ceil() as usize;
    (0..count).map(|i| -90.0 + i as f64 * step).collect()
}

/// `P(φ; Q) = 1 / ‖(I − Q Q^H) s(φ)‖₂` over `angles`.
pub fn music_spectrum(q: &OrthonormalBasis, angles: &[f64], spacing: f64) -> Vec<f64> {
    let qm = q.as_matrix();
    let qh = qm.adjoint();
    angles
        .iter()
        .map(|&phi| {
            let s = steering_unchecked(phi, q.dim(), spacing);
            let r = &s - qm * (&qh * &s);
            let norm = r.norm();
            if norm > 0.0 {
                1.0 / norm
            } else {
                f64::MAX
            }
        })
        .collect()
}

/// Indices of the `k` highest strict interior local maxima, padded with the
/// globally highest remaining grid points when there are fewer than `k`.
pub fn top_peaks(spectrum: &[f64], k: usize) -> Vec<usize> {
    let by_value = |a: &usize, b: &usize| spectrum[*b].total_cmp(&spectrum[*a]).then(a.cmp(b));
    let mut peaks: Vec<usize> = (1..spectrum.len().saturating_sub(1))
        .filter(|&i| spectrum[i] > spectrum[i - 1] && spectrum[i] > spectrum[i + 1])
        .collect();
    peaks.sort_by(by_value);
    peaks.truncate(k);
    if peaks.len() < k {
        let mut rest: Vec<usize> = (0..spectrum.len()).filter(|i| !peaks.contains(i)).collect();
        rest.sort_by(by_value);
        peaks.extend(rest.into_iter().take(k - peaks.len()));
    }
    peaks
}

/// MUSIC estimate of `k` arrival angles (degrees, ascending) from the
/// L2-PCA or L1-PCA signal subspace of `x`.
pub fn music_estimate(
    x: &ComplexMatrix,
    k: usize,
    basis_kind: BasisKind,
    grid_step: f64,
    spacing: f64,
    solver_cfg: &SolverConfig,
) -> Result<Vec<f64>> {
    if k == 0 || k >= x.nrows() {
        return Err(Error::KTooLarge { k, rank: x.nrows() });
    }
    if !(grid_step > 0.0) {
        return Err(Error::InvalidConfig("grid step must be positive".into()));
    }
    let q = match basis_kind {
        BasisKind::L2 => l2pca(x, k)?,
        BasisKind::L1 => solve_l1pca(x, k, solver_cfg, None)?.basis,
    };
    let grid = angle_grid(grid_step);
    let spectrum = music_spectrum(&q, &grid, spacing);
    let mut angles: Vec<f64> = top_peaks(&spectrum, k)
        .into_iter()
        .map(|i| grid[i])
        .collect();
    angles.sort_by(f64::total_cmp);
    Ok(angles)
}

/// `sqrt(mean_m Σ_k |θ_k − θ̂_k(m)|²)`, pairing true and estimated angles
/// by rank after sorting both.
pub fn rmse(true_angles: &[f64], estimates_per_trial: &[Vec<f64>]) -> Result<f64> {
    if estimates_per_trial.is_empty() {
        return Err(Error::ShapeMismatch("no trials".into()));
    }
    let mut truth = true_angles.to_vec();
    truth.sort_by(f64::total_cmp);
    let mut total = 0.0;
    for est in estimates_per_trial {
        if est.len() != truth.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} estimates for {} angles",
                est.len(),
                truth.len()
            )));
        }
        let mut est = est.clone();
        est.sort_by(f64::total_cmp);
        total += truth
            .iter()
            .zip(&est)
            .map(|(t, e)| (t - e).powi(2))
            .sum::<f64>();
    }
    Ok((total / estimates_per_trial.len() as f64).sqrt())
}
