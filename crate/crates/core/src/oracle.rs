//! Small-scale ground truth: an exhaustive phase-grid search for the
//! single-component unimodular quadratic maximization, L2-PCA, and a Jacobi
//! Hermitian eigensolver that shares no code with the SVD path.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::cxkernel::{
    thin_svd, ComplexMatrix, OrthonormalBasis, UnimodularMatrix, C64, DEFAULT_RANK_TOL,
};
use crate::error::{Error, Result};
use crate::l1pca::{solve_l1pc_strong, InitScheme, SolverConfig};

/// Largest `N` accepted by [`uqm_grid_oracle`].
pub const MAX_GRID_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Phases per free variable.
    pub grid_points: usize,
    /// Polish the best grid point with the hollow-Gram iteration.
    pub refine: bool,
}

impl OracleConfig {
    /// 64 phases for `N <= 5`, 16 above.
    pub fn for_n(n: usize) -> Self {
        Self {
            grid_points: if n <= 5 { 64 } else { 16 },
            refine: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub best_b: UnimodularMatrix,
    /// `b^H X^H X b` at `best_b`.
    pub best_value: f64,
    pub grid_value: f64,
    pub refined: bool,
}

/// `Re{b^H G b}` for unimodular `b`.
pub fn quadratic_value(g: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    // Unit moduli are assumed: the diagonal contributes exactly tr(G).
    let n = g.nrows();
    let mut off = 0.0;
    for m in 1..n {
        for l in 0..m {
            off += (b[(l, 0)].conj() * g[(l, m)] * b[(m, 0)]).re;
        }
    }
    (0..n).map(|i| g[(i, i)].re).sum::<f64>() + 2.0 * off
}

/// Exhaustive search of `max b^H X^H X b` over `b_1 = 1` and
/// `b_n ∈ {e^{j2πg/G}}` for `n >= 2`.
///
/// The quadratic is invariant under a global phase, so pinning `b_1` loses
/// nothing. Ties go to the lexicographically smallest grid index.
pub fn uqm_grid_oracle(x: &ComplexMatrix, config: OracleConfig) -> Result<OracleResult> {
    let n = x.ncols();
    if n == 0 {
        return Err(Error::ShapeMismatch("data has no columns".into()));
    }
    if n > MAX_GRID_N {
        return Err(Error::TooLarge { n, max: MAX_GRID_N });
    }
    if config.grid_points < 4 {
        return Err(Error::InvalidConfig("grid_points must be >= 4".into()));
    }
    let g = x.adjoint() * x;
    let trace: f64 = (0..n).map(|i| g[(i, i)].re).sum();
    let grid = config.grid_points;
    let table: Vec<C64> = (0..grid)
        .map(|i| C64::from_polar(1.0, std::f64::consts::TAU * i as f64 / grid as f64))
        .collect();

    let (grid_excess, indices) = if n == 1 {
        (0.0, [0usize; MAX_GRID_N])
    } else {
        let partial: Vec<(f64, [usize; MAX_GRID_N])> = (0..grid)
            .into_par_iter()
            .map(|first| {
                let mut search = GridSearch::new(&g, &table);
                search.run_from(first);
                (search.best_value, search.best_index)
            })
            .collect();
        partial
            .into_iter()
            .fold((f64::NEG_INFINITY, [0; MAX_GRID_N]), |best, cand| {
                if cand.0 > best.0 {
                    cand
                } else {
                    best
                }
            })
    };

    let mut b = ComplexMatrix::from_element(n, 1, C64::new(1.0, 0.0));
    for i in 1..n {
        b[i] = table[indices[i]];
    }
    let grid_value = trace + grid_excess;
    let mut result = OracleResult {
        best_b: UnimodularMatrix::new(b).expect("grid phases are unimodular"),
        best_value: grid_value,
        grid_value,
        refined: false,
    };

    if config.refine && n > 1 {
        let cfg = SolverConfig::default()
            .with_restarts(1)
            .with_init(InitScheme::Provided);
        let report = solve_l1pc_strong(x, &cfg, Some(&result.best_b))?;
        let value = quadratic_value(&g, report.certificate.as_matrix());
        result.refined = true;
        if value > result.best_value {
            result.best_value = value;
            result.best_b = report.certificate;
        }
    }
    Ok(result)
}

/// Depth-first enumeration with incremental evaluation of
/// `2 Re Σ_{i<j} conj(b_i) G_ij b_j`.
struct GridSearch<'a> {
    g: &'a ComplexMatrix,
    table: &'a [C64],
    n: usize,
    // coeffs[level][l] = Σ_{i<level} conj(b_i) G_{i l}
    coeffs: [[C64; MAX_GRID_N]; MAX_GRID_N],
    index: [usize; MAX_GRID_N],
    best_value: f64,
    best_index: [usize; MAX_GRID_N],
}

impl<'a> GridSearch<'a> {
    fn new(g: &'a ComplexMatrix, table: &'a [C64]) -> Self {
        let n = g.nrows();
        let mut coeffs = [[C64::new(0.0, 0.0); MAX_GRID_N]; MAX_GRID_N];
        // b_1 = 1
        for l in 1..n {
            coeffs[1][l] = g[(0, l)];
        }
        Self {
            g,
            table,
            n,
            coeffs,
            index: [0; MAX_GRID_N],
            best_value: f64::NEG_INFINITY,
            best_index: [0; MAX_GRID_N],
        }
    }

    fn run_from(&mut self, first: usize) {
        self.visit(1, first, 0.0);
    }

    fn visit(&mut self, level: usize, choice: usize, acc: f64) {
        let b = self.table[choice];
        let acc = acc + 2.0 * (self.coeffs[level][level] * b).re;
        self.index[level] = choice;
        if level + 1 == self.n {
            if acc > self.best_value {
                self.best_value = acc;
                self.best_index = self.index;
            }
            return;
        }
        let bc = b.conj();
        for l in level + 1..self.n {
            self.coeffs[level + 1][l] = self.coeffs[level][l] + bc * self.g[(level, l)];
        }
        if level + 2 == self.n {
            // innermost level inlined: one complex multiply per leaf
            let c = self.coeffs[level + 1][level + 1];
            for (k, w) in self.table.iter().enumerate() {
                let v = acc + 2.0 * (c * w).re;
                if v > self.best_value {
                    self.best_value = v;
                    self.index[level + 1] = k;
                    self.best_index = self.index;
                }
            }
            return;
        }
        for k in 0..self.table.len() {
            self.visit(level + 1, k, acc);
        }
    }
}

/// The `k` dominant left singular vectors of `x`.
pub fn l2pca(x: &ComplexMatrix, k: usize) -> Result<OrthonormalBasis> {
    let svd = thin_svd(x, DEFAULT_RANK_TOL)?;
    if k == 0 || k > svd.rank() {
        return Err(Error::KTooLarge {
            k,
            rank: svd.rank(),
        });
    }
    Ok(OrthonormalBasis::new_unchecked(
        svd.u.columns(0, k).into_owned(),
    ))
}

/// Real symmetric embedding `[[Re A, −Im A], [Im A, Re A]]` of a Hermitian
/// matrix. Its spectrum is that of `A` with every eigenvalue doubled.
fn real_embedding(a: &ComplexMatrix) -> DMatrix<f64> {
    let n = a.nrows();
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = a[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

/// Cyclic Jacobi eigendecomposition of a real symmetric matrix. Returns
/// `(eigenvalues, eigenvectors)` with eigenvectors as columns, unsorted.
pub fn jacobi_symmetric(mut a: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let mut v = DMatrix::<f64>::identity(n, n);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        let total: f64 = a.iter().map(|x| x * x).sum();
        if off <= 1e-30 * total.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)]).collect(), v)
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    let (mut vals, _) = jacobi_symmetric(real_embedding(a));
    vals.sort_by(|x, y| y.total_cmp(x));
    vals.into_iter().step_by(2).collect()
}

/// Principal square root of a Hermitian positive-semidefinite matrix, with
/// negative eigenvalues clamped to zero.
pub fn hermitian_sqrt(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.nrows();
    let (vals, v) = jacobi_symmetric(real_embedding(a));
    let mut vs = v.clone();
    for (j, lam) in vals.iter().enumerate() {
        vs.column_mut(j).scale_mut(lam.max(0.0).sqrt());
    }
    let root = vs * v.transpose();
    ComplexMatrix::from_fn(n, n, |i, j| C64::new(root[(i, j)], root[(i + n, j)]))
}

/// `Tr(sqrt(A^H A))`, an SVD-free nuclear norm.
pub fn nuclear_norm_via_gram(a: &ComplexMatrix) -> f64 {
    hermitian_eigenvalues(&(a.adjoint() * a))
        .iter()
        .map(|l| l.max(0.0).sqrt())
        .sum()
}
