//! Complex scalar and matrix primitives.
//!
//! The sign calculus (`sgn`, `sgn_matrix`, `l1_norm`), thin SVD access, the
//! nuclear norm and the unitary polar factor [`unt`]. All matrices are dense
//! `nalgebra` matrices over `Complex<f64>`.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type ComplexMatrix = DMatrix<C64>;

/// Relative threshold below which a singular value counts as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;
/// Allowed deviation of `|b|` from one for entries of a [`UnimodularMatrix`].
pub const UNIT_MODULUS_TOL: f64 = 1e-12;
/// Allowed max-entry deviation of `Q^H Q` from the identity.
pub const ORTHONORMAL_TOL: f64 = 1e-10;
/// Entries with magnitude at or below this are treated as exact zeros by
/// [`thin_svd`] when deciding whether a matrix is the zero matrix.
pub const ZERO_ABS_TOL: f64 = f64::MIN_POSITIVE;

pub const ONE: C64 = Complex { re: 1.0, im: 0.0 };
pub const ZERO: C64 = Complex { re: 0.0, im: 0.0 };

/// Sign of a complex number with the default convention `sgn(0) = 1`.
#[inline]
pub fn sgn(z: C64) -> C64 {
    sgn_with(z, ONE)
}

/// `z / |z|`, or `zero_convention` when `z == 0`.
#[inline]
pub fn sgn_with(z: C64, zero_convention: C64) -> C64 {
    let m = z.norm();
    if m > 0.0 {
        z / m
    } else {
        zero_convention
    }
}

pub fn sgn_matrix(a: &ComplexMatrix) -> UnimodularMatrix {
    sgn_matrix_with(a, ONE)
}

pub fn sgn_matrix_with(a: &ComplexMatrix, zero_convention: C64) -> UnimodularMatrix {
    UnimodularMatrix(a.map(|z| sgn_with(z, zero_convention)))
}

/// Sum of entry magnitudes.
pub fn l1_norm(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm()).sum()
}

/// `Re{Tr(A^H B)}`, the real Frobenius inner product.
pub fn re_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

/// Largest entry magnitude of `a - b`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Matrix whose every entry lies on the complex unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct UnimodularMatrix(ComplexMatrix);

impl UnimodularMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        for (col, column) in m.column_iter().enumerate() {
            for (row, z) in column.iter().enumerate() {
                let modulus = z.norm();
                if !((modulus - 1.0).abs() <= UNIT_MODULUS_TOL) {
                    return Err(Error::NotUnimodular { row, col, modulus });
                }
            }
        }
        Ok(Self(m))
    }

    /// Builds `e^{j phi}` entrywise from a matrix of angles in radians.
    pub fn from_phases(phases: &DMatrix<f64>) -> Self {
        Self(phases.map(|p| C64::from_polar(1.0, p)))
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self(ComplexMatrix::from_element(rows, cols, ONE))
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    pub fn nrows(&self) -> usize {
        self.0.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.0.ncols()
    }
}

/// `D x K` matrix with orthonormal columns.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis(ComplexMatrix);

impl OrthonormalBasis {
    pub fn new(q: ComplexMatrix) -> Result<Self> {
        let deviation = orthonormality_deviation(&q);
        if !(deviation <= ORTHONORMAL_TOL) {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self(q))
    }

    /// Wraps a matrix produced by an orthonormalizing routine without
    /// re-checking it.
    pub(crate) fn new_unchecked(q: ComplexMatrix) -> Self {
        Self(q)
    }

    /// First `k` columns of the `d x d` identity.
    pub fn standard(d: usize, k: usize) -> Self {
        let mut q = ComplexMatrix::zeros(d, k);
        for i in 0..k.min(d) {
            q[(i, i)] = ONE;
        }
        Self(q)
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    /// Ambient dimension `D`.
    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    /// Number of basis vectors `K`.
    pub fn k(&self) -> usize {
        self.0.ncols()
    }
}

/// `max |Q^H Q - I|`.
pub fn orthonormality_deviation(q: &ComplexMatrix) -> f64 {
    let g = q.adjoint() * q;
    let mut worst = 0.0f64;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}

/// Full (untruncated) SVD as produced by a backend: `u` is `m x p`, `v` is
/// `n x p` with `p = min(m, n)`, singular values in descending order.
#[derive(Debug, Clone)]
pub struct RawSvd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

/// Any dense complex SVD routine. The [`ThinSvd`] invariants are the
/// contract an implementation has to meet.
pub trait SvdBackend: Sync {
    fn decompose(&self, a: &ComplexMatrix) -> Result<RawSvd>;
}

/// Default backend: `faer`'s thin SVD.
#[derive(Debug, Clone, Copy, Default)]
pub struct FaerSvd;

fn to_faer(a: &ComplexMatrix) -> faer::Mat<C64> {
    faer::Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

fn from_faer(m: faer::MatRef<'_, C64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

impl SvdBackend for FaerSvd {
    fn decompose(&self, a: &ComplexMatrix) -> Result<RawSvd> {
        let svd = to_faer(a)
            .thin_svd()
            .map_err(|e| Error::SvdNoConvergence(format!("{e:?}")))?;
        let s = svd.S().column_vector();
        Ok(RawSvd {
            u: from_faer(svd.U()),
            singular_values: (0..s.nrows()).map(|i| s[i].re).collect(),
            v: from_faer(svd.V()),
        })
    }
}

/// Thin SVD truncated to the numerical rank: `a ≈ u · Diag(s) · v^H`.
#[derive(Debug, Clone)]
pub struct ThinSvd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

impl ThinSvd {
    pub fn rank(&self) -> usize {
        self.singular_values.len()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut us = self.u.clone();
        for (j, s) in self.singular_values.iter().enumerate() {
            us.column_mut(j).scale_mut(*s);
        }
        us * self.v.adjoint()
    }
}

fn is_zero_matrix(a: &ComplexMatrix) -> bool {
    a.iter().all(|z| z.norm() <= ZERO_ABS_TOL)
}

pub fn thin_svd(a: &ComplexMatrix, rank_tol: f64) -> Result<ThinSvd> {
    thin_svd_with(&FaerSvd, a, rank_tol)
}

pub fn thin_svd_with(
    backend: &dyn SvdBackend,
    a: &ComplexMatrix,
    rank_tol: f64,
) -> Result<ThinSvd> {
    if a.is_empty() || is_zero_matrix(a) {
        return Err(Error::ZeroMatrix);
    }
    let raw = backend.decompose(a)?;
    let smax = raw.singular_values.first().copied().unwrap_or(0.0);
    let r = raw
        .singular_values
        .iter()
        .take_while(|&&s| s > rank_tol * smax)
        .count();
    if r == 0 {
        return Err(Error::ZeroMatrix);
    }
    Ok(ThinSvd {
        u: raw.u.columns(0, r).into_owned(),
        singular_values: raw.singular_values[..r].to_vec(),
        v: raw.v.columns(0, r).into_owned(),
    })
}

/// Numerical rank (count of singular values above `rank_tol · σ_max`).
/// Zero for the zero matrix.
pub fn numerical_rank(a: &ComplexMatrix, rank_tol: f64) -> usize {
    thin_svd(a, rank_tol).map(|s| s.rank()).unwrap_or(0)
}

/// Singular values in descending order, no truncation. Empty input yields
/// an empty vector.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    if a.is_empty() {
        return Ok(Vec::new());
    }
    Ok(FaerSvd.decompose(a)?.singular_values)
}

/// Sum of singular values.
pub fn nuclear_norm(a: &ComplexMatrix) -> Result<f64> {
    if a.is_empty() || is_zero_matrix(a) {
        return Err(Error::ZeroMatrix);
    }
    Ok(singular_values(a)?.iter().sum())
}

/// Unitary polar factor `U V^H` of a tall full-column-rank matrix, using
/// [`DEFAULT_RANK_TOL`].
pub fn unt(a: &ComplexMatrix) -> Result<OrthonormalBasis> {
    unt_with_tol(a, DEFAULT_RANK_TOL)
}

pub fn unt_with_tol(a: &ComplexMatrix, rank_tol: f64) -> Result<OrthonormalBasis> {
    polar_with_norm(a, rank_tol).map(|(q, _)| q)
}

/// `(unt(a), ‖a‖_*)` from a single SVD.
pub fn polar_with_norm(a: &ComplexMatrix, rank_tol: f64) -> Result<(OrthonormalBasis, f64)> {
    let (m, n) = a.shape();
    if m < n {
        return Err(Error::ShapeMismatch(format!(
            "polar factor needs rows >= cols, got {m}x{n}"
        )));
    }
    if a.is_empty() || is_zero_matrix(a) {
        return Err(Error::ZeroMatrix);
    }
    if n == 1 {
        let norm = a.norm();
        return Ok((OrthonormalBasis::new_unchecked(a / C64::from(norm)), norm));
    }
    let raw = FaerSvd.decompose(a)?;
    let smax = raw.singular_values[0];
    let rank = raw
        .singular_values
        .iter()
        .filter(|&&s| s > rank_tol * smax)
        .count();
    if rank < n {
        return Err(Error::RankDeficient { rank, required: n });
    }
    let nuclear = raw.singular_values.iter().sum();
    Ok((
        OrthonormalBasis::new_unchecked(&raw.u * raw.v.adjoint()),
        nuclear,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(m, n, |_, _| {
            c(StandardNormal.sample(rng), StandardNormal.sample(rng))
        })
    }

    fn diag(values: &[f64]) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = c(*v, 0.0);
        }
        m
    }

    #[test]
    fn scalar_sign_examples() {
        assert_eq!(sgn(c(5.0, 0.0)), ONE);
        assert!((sgn(c(0.0, -3.0)) - c(0.0, -1.0)).norm() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sgn(c(1.0, 1.0)) - c(h, h)).norm() < 1e-15);
        assert_eq!(sgn(ZERO), ONE);
        assert_eq!(sgn_with(ZERO, c(0.0, 1.0)), c(0.0, 1.0));
    }

    #[test]
    fn matrix_sign_applies_zero_convention_entrywise() {
        let s = sgn_matrix(&ComplexMatrix::identity(2, 2));
        assert!(s.as_matrix().iter().all(|&z| z == ONE));
        let s = sgn_matrix(&diag(&[2.0, -3.0]));
        assert_eq!(s.as_matrix()[(0, 0)], ONE);
        assert_eq!(s.as_matrix()[(1, 1)], c(-1.0, 0.0));
    }

    #[test]
    fn l1_norm_examples() {
        assert_eq!(l1_norm(&ComplexMatrix::identity(3, 3)), 3.0);
        assert_eq!(
            l1_norm(&ComplexMatrix::from_element(1, 1, c(3.0, 4.0))),
            5.0
        );
    }

    #[test]
    fn sign_attains_l1_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = random_matrix(&mut rng, 4, 7);
            let s = sgn_matrix(&a);
            let l1: f64 = a.iter().map(|z| z.norm()).sum();
            assert!((re_inner(s.as_matrix(), &a) - l1).abs() <= 1e-10 * l1);
            assert!((l1_norm(&a) - l1).abs() <= 1e-12 * l1);
            assert!(s
                .as_matrix()
                .iter()
                .all(|z| (z.norm() - 1.0).abs() <= UNIT_MODULUS_TOL));
        }
    }

    #[test]
    fn thin_svd_examples() {
        let s = thin_svd(&diag(&[3.0, 4.0]), DEFAULT_RANK_TOL).unwrap();
        assert!((s.singular_values[0] - 4.0).abs() < 1e-12);
        assert!((s.singular_values[1] - 3.0).abs() < 1e-12);

        let u = ComplexMatrix::from_column_slice(3, 1, &[c(2.0, 0.0), ZERO, ZERO]);
        let v = ComplexMatrix::from_column_slice(
            4,
            1,
            &[c(0.0, 0.5), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)],
        );
        let s = thin_svd(&(&u * v.adjoint()), DEFAULT_RANK_TOL).unwrap();
        assert_eq!(s.rank(), 1);
        assert!((s.singular_values[0] - 2.0).abs() < 1e-12);

        assert_eq!(
            thin_svd(&ComplexMatrix::zeros(3, 3), DEFAULT_RANK_TOL).unwrap_err(),
            Error::ZeroMatrix
        );
    }

    #[test]
    fn thin_svd_reconstructs_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let a = random_matrix(&mut rng, 8, 20);
            let s = thin_svd(&a, DEFAULT_RANK_TOL).unwrap();
            let rel = (s.reconstruct() - &a).norm() / a.norm();
            assert!(rel < 1e-9, "{rel}");
            assert!(orthonormality_deviation(&s.u) < 1e-10);
            assert!(orthonormality_deviation(&s.v) < 1e-10);
            assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn nuclear_norm_examples() {
        assert!((nuclear_norm(&ComplexMatrix::identity(3, 3)).unwrap() - 3.0).abs() < 1e-12);
        assert!((nuclear_norm(&diag(&[3.0, 4.0])).unwrap() - 7.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 5, 9);
            let n1 = nuclear_norm(&a).unwrap();
            let n2 = nuclear_norm(&a.adjoint()).unwrap();
            assert!((n1 - n2).abs() <= 1e-10 * n1);
        }
    }

    #[test]
    fn unt_examples() {
        let q = unt(&ComplexMatrix::identity(3, 3).scale(2.5)).unwrap();
        assert!(max_abs_diff(q.as_matrix(), &ComplexMatrix::identity(3, 3)) < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let basis = unt(&random_matrix(&mut rng, 6, 3)).unwrap();
        let again = unt(basis.as_matrix()).unwrap();
        assert!(max_abs_diff(basis.as_matrix(), again.as_matrix()) < 1e-12);
    }

    #[test]
    fn unt_rejects_rank_deficient_and_wide_input() {
        let mut a = ComplexMatrix::zeros(4, 2);
        a[(0, 0)] = ONE;
        a[(1, 0)] = ONE;
        a[(0, 1)] = c(2.0, 0.0);
        a[(1, 1)] = c(2.0, 0.0);
        assert!(matches!(
            unt(&a),
            Err(Error::RankDeficient {
                rank: 1,
                required: 2
            })
        ));
        assert!(matches!(
            unt(&ComplexMatrix::identity(2, 3)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn unimodular_and_orthonormal_validation() {
        assert!(UnimodularMatrix::new(ComplexMatrix::from_element(2, 2, c(0.6, 0.8))).is_ok());
        assert!(matches!(
            UnimodularMatrix::new(ComplexMatrix::from_element(2, 1, c(0.6, 0.7))),
            Err(Error::NotUnimodular { .. })
        ));
        assert!(OrthonormalBasis::new(ComplexMatrix::identity(4, 2)).is_ok());
        assert!(OrthonormalBasis::new(ComplexMatrix::identity(4, 2).scale(1.1)).is_err());
    }

    #[test]
    fn sign_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..200 {
            let z = c(
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
            );
            let w = c(
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
            );
            assert!((sgn(z * w) - sgn(z) * sgn(w)).norm() <= 1e-12);
        }
    }
}
