//! Dense complex matrices and the Hilbert-Schmidt operations built on them.
//!
//! Operators are vectors of the Hilbert space carrying the inner product
//! `⟨T, S⟩ = tr(T†S)`. Everything in this crate reduces to a handful of
//! primitives defined here: the inner product and its norm, commutators,
//! expectations `⟨T⟩_ρ = tr(Tρ)`, the weighted norm `‖T‖²_ρ = tr(T†Tρ)`,
//! and the principal square root `ρ^{1/2}` of a positive semidefinite
//! Hermitian matrix.
//!
//! Three types enforce the domain invariants:
//!
//! - [`ComplexMatrix`]: square, all entries finite.
//! - [`HermitianOperator`]: Hermitian up to a strict relative tolerance,
//!   then symmetrized exactly.
//! - [`DensityMatrix`]: Hermitian, positive semidefinite, unit trace, with
//!   the principal square root and the eigenvalues cached at construction.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance for the Hermiticity defect accepted at construction.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance below zero accepted for eigenvalues of nominally PSD matrices.
pub const PSD_EIGEN_TOL: f64 = 1e-12;
/// Absolute tolerance on `|tr(ρ) - 1|`.
pub const TRACE_TOL: f64 = 1e-12;
/// Relative Frobenius tolerance for `ρ^{1/2}·ρ^{1/2} = ρ`.
pub const SQRT_RESIDUAL_TOL: f64 = 1e-10;

/// A square matrix over `Complex64` with all entries finite.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    pub(crate) data: DMatrix<Complex64>,
}

impl ComplexMatrix {
    /// Validates squareness and finiteness of every entry.
    pub fn new(data: DMatrix<Complex64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::NotSquare {
                rows: data.nrows(),
                cols: data.ncols(),
            });
        }
        for j in 0..data.ncols() {
            for i in 0..data.nrows() {
                let z = data[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        Ok(Self { data })
    }

    pub(crate) fn from_dmatrix_unchecked(data: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(data.nrows(), data.ncols());
        Self { data }
    }

    /// Builds a `dim × dim` matrix from entries listed row by row.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::InvalidParameter {
                name: "entries",
                reason: format!("expected {} entries, got {}", dim * dim, entries.len()),
            });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Builds a `dim × dim` matrix from a function of the (row, column) index.
    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self::from_dmatrix_unchecked(DMatrix::from_fn(dim, dim, f))
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_dmatrix_unchecked(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_dmatrix_unchecked(DMatrix::identity(dim, dim))
    }

    /// Diagonal matrix with the given real entries.
    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        Self::from_fn(dim, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[(row, col)]
    }

    /// Borrow of the underlying `nalgebra` matrix.
    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        Self::from_dmatrix_unchecked(self.data.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        self.data.trace()
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        Self::from_dmatrix_unchecked(self.data.map(|z| z * factor))
    }

    /// Largest entry magnitude, `max_{ij} |M[i][j]|`.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max_{ij} |M[i][j] - conj(M[j][i])|`: zero iff exactly Hermitian.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut defect = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[(i, j)] - self.data[(j, i)].conj()).norm();
                defect = defect.max(d);
            }
        }
        defect
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_dmatrix_unchecked(&self.data + &rhs.data)
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_dmatrix_unchecked(&self.data - &rhs.data)
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_dmatrix_unchecked(&self.data * &rhs.data)
    }
}

/// A Hermitian matrix: observables and everything derived from them.
///
/// Construction rejects matrices whose Hermiticity defect exceeds
/// [`HERMITICITY_TOL`] relative to the largest entry, and symmetrizes
/// accepted ones to `(M + M†)/2` so the stored matrix is Hermitian exactly,
/// entry by entry.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let defect = matrix.hermitian_defect();
        let tol = HERMITICITY_TOL * matrix.max_abs();
        if defect > tol {
            return Err(Error::NotHermitian { defect, tol });
        }
        let sym = (&matrix.data + matrix.data.adjoint()).map(|z| z * 0.5);
        Ok(Self {
            matrix: ComplexMatrix::from_dmatrix_unchecked(sym),
        })
    }

    /// Builds from row-major entries; fails if the result is not Hermitian.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_rows(dim, entries)?)
    }

    /// Diagonal observable with real entries.
    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self {
            matrix: ComplexMatrix::from_real_diagonal(diag),
        }
    }

    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.hermitian_defect() == 0.0);
        Self { matrix }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Scaling by a real factor preserves Hermiticity exactly.
    pub fn scale(&self, factor: f64) -> HermitianOperator {
        let scaled = self.matrix.data.map(|z| z * factor);
        Self::from_matrix_unchecked(ComplexMatrix::from_dmatrix_unchecked(scaled))
    }
}

impl std::ops::Add for &HermitianOperator {
    type Output = HermitianOperator;
    fn add(self, rhs: &HermitianOperator) -> HermitianOperator {
        HermitianOperator::from_matrix_unchecked(&self.matrix + &rhs.matrix)
    }
}

impl std::ops::Sub for &HermitianOperator {
    type Output = HermitianOperator;
    fn sub(self, rhs: &HermitianOperator) -> HermitianOperator {
        HermitianOperator::from_matrix_unchecked(&self.matrix - &rhs.matrix)
    }
}

/// A quantum state: Hermitian, positive semidefinite, unit trace.
///
/// The principal square root and the (clamped) eigenvalues are computed once
/// at construction and cached; every bound evaluation reuses them.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: HermitianOperator,
    sqrt: ComplexMatrix,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(matrix: HermitianOperator) -> Result<Self> {
        let trace = matrix.matrix().trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidTrace { trace: trace.re });
        }
        let (eigenvalues, sqrt) = principal_sqrt_with_eigenvalues(&matrix, PSD_EIGEN_TOL)?;

        // sqrt·sqrt must reproduce the state within 1e-10 relative Frobenius.
        let square = &sqrt.data * &sqrt.data;
        let residual = (&square - &matrix.matrix().data).norm();
        let scale = matrix.matrix().data.norm().max(1.0);
        if residual > SQRT_RESIDUAL_TOL * scale {
            return Err(Error::NumericalFailure {
                context: "density matrix square root",
                detail: format!("residual {residual:.3e} exceeds {SQRT_RESIDUAL_TOL:.1e}"),
            });
        }

        Ok(Self {
            matrix,
            sqrt,
            eigenvalues,
        })
    }

    /// Diagonal state from a probability vector (must sum to 1).
    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::from_real_diagonal(probs))
    }

    /// Pure state `|ψ⟩⟨ψ|` from a (not necessarily normalized) vector.
    pub fn pure(state: &[Complex64]) -> Result<Self> {
        let norm_sq: f64 = state.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 || !norm_sq.is_finite() {
            return Err(Error::InvalidParameter {
                name: "state",
                reason: "state vector must be nonzero and finite".into(),
            });
        }
        let dim = state.len();
        let projector = ComplexMatrix::from_fn(dim, |i, j| state[i] * state[j].conj() / norm_sq);
        Self::new(HermitianOperator::new(projector)?)
    }

    /// The state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter {
                name: "dim",
                reason: "dimension must be positive".into(),
            });
        }
        Self::from_diagonal(&vec![1.0 / dim as f64; dim])
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.matrix.matrix()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.matrix
    }

    /// The cached principal square root `ρ^{1/2}` (Hermitian, PSD).
    pub fn sqrt(&self) -> &ComplexMatrix {
        &self.sqrt
    }

    /// Eigenvalues after clamping to `[0, ∞)`, in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Hilbert-Schmidt inner product `⟨T, S⟩ = tr(T†S)`.
///
/// Conjugate-linear in the first argument, linear in the second.
pub fn hs_inner(t: &ComplexMatrix, s: &ComplexMatrix) -> Result<Complex64> {
    check_dims(t.dim(), s.dim())?;
    // tr(T†S) = Σ_{ij} conj(T[i][j])·S[i][j]
    Ok(t.data
        .iter()
        .zip(s.data.iter())
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Hilbert-Schmidt norm `‖T‖₂ = sqrt(tr(T†T))`.
pub fn hs_norm(t: &ComplexMatrix) -> f64 {
    t.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `[T, S] = TS - ST`. Anti-Hermitian whenever both arguments are Hermitian.
pub fn commutator(t: &ComplexMatrix, s: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dims(t.dim(), s.dim())?;
    Ok(ComplexMatrix::from_dmatrix_unchecked(
        &t.data * &s.data - &s.data * &t.data,
    ))
}

/// `{A, B} = AB + BA`, Hermitian for Hermitian arguments.
pub fn anticommutator(a: &HermitianOperator, b: &HermitianOperator) -> Result<HermitianOperator> {
    check_dims(a.dim(), b.dim())?;
    let m = &a.matrix().data * &b.matrix().data + &b.matrix().data * &a.matrix().data;
    HermitianOperator::new(ComplexMatrix::from_dmatrix_unchecked(m))
}

/// Expectation `⟨T⟩_ρ = tr(Tρ)`.
pub fn expectation(t: &ComplexMatrix, rho: &DensityMatrix) -> Result<Complex64> {
    check_dims(t.dim(), rho.dim())?;
    Ok(trace_of_product(&t.data, &rho.matrix().data))
}

/// The ρ-weighted squared norm `‖A‖²_ρ = tr(A²ρ)`, real and nonnegative
/// for Hermitian `A`.
pub fn rho_norm_sq(a: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    check_dims(a.dim(), rho.dim())?;
    let a_rho = &a.matrix().data * &rho.matrix().data;
    Ok(trace_of_product(&a.matrix().data, &a_rho).re)
}

/// Centers an observable: `A₀ = A - ⟨A⟩_ρ·I`.
pub fn center(a: &HermitianOperator, rho: &DensityMatrix) -> Result<HermitianOperator> {
    let mean = expectation(a.matrix(), rho)?.re;
    let mut data = a.matrix().data.clone();
    for i in 0..data.nrows() {
        data[(i, i)] -= Complex64::new(mean, 0.0);
    }
    Ok(HermitianOperator::from_matrix_unchecked(
        ComplexMatrix::from_dmatrix_unchecked(data),
    ))
}

/// Variance `Var_ρ(A) = tr(ρA²) - (tr(ρA))²`.
pub fn variance(a: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    let mean = expectation(a.matrix(), rho)?.re;
    Ok(rho_norm_sq(a, rho)? - mean * mean)
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Computed by eigendecomposition; eigenvalues below `-PSD_EIGEN_TOL`
/// (relative to the spectral scale) are rejected, small negatives are
/// clamped to zero. The result is Hermitian PSD and commutes with the
/// input.
pub fn matrix_sqrt(h: &HermitianOperator) -> Result<ComplexMatrix> {
    let (_, sqrt) = principal_sqrt_with_eigenvalues(h, PSD_EIGEN_TOL)?;
    Ok(sqrt)
}

fn principal_sqrt_with_eigenvalues(
    h: &HermitianOperator,
    psd_tol: f64,
) -> Result<(Vec<f64>, ComplexMatrix)> {
    let eig = h.matrix().data.clone().symmetric_eigen();
    let spectral_scale = eig.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let gate = psd_tol * spectral_scale.max(1.0);
    let min_ev = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min_ev < -gate {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min_ev,
        });
    }

    // Eigenvalues at the numerical-rank noise floor are exact zeros of the
    // input; taking sqrt of solver noise (~1e-16) would pollute the root
    // with ~1e-8 artifacts.
    let rank_floor = h.dim() as f64 * f64::EPSILON * spectral_scale;
    let mut clamped: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&x| if x < rank_floor { 0.0 } else { x })
        .collect();

    // U·√Λ·U†, then exact symmetrization to kill rounding asymmetry.
    let n = h.dim();
    let mut u_sqrt = eig.eigenvectors.clone();
    for j in 0..n {
        let root = clamped[j].sqrt();
        for i in 0..n {
            u_sqrt[(i, j)] *= root;
        }
    }
    let raw = u_sqrt * eig.eigenvectors.adjoint();
    let sym = (&raw + raw.adjoint()).map(|z| z * 0.5);

    clamped.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok((clamped, ComplexMatrix::from_dmatrix_unchecked(sym)))
}

/// `tr(XY)` without forming the product: `Σ_{ij} X[i][j]·Y[j][i]`.
pub(crate) fn trace_of_product(x: &DMatrix<Complex64>, y: &DMatrix<Complex64>) -> Complex64 {
    let n = x.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += x[(i, j)] * y[(j, i)];
        }
    }
    acc
}

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

/// Pauli σ_x.
pub fn pauli_x() -> HermitianOperator {
    HermitianOperator::from_rows(
        2,
        &[
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .expect("σ_x is Hermitian")
}

/// Pauli σ_y.
pub fn pauli_y() -> HermitianOperator {
    HermitianOperator::from_rows(
        2,
        &[
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .expect("σ_y is Hermitian")
}

/// Pauli σ_z.
pub fn pauli_z() -> HermitianOperator {
    HermitianOperator::from_real_diagonal(&[1.0, -1.0])
}
