//! Deterministic, seeded sampling of states and observables for property
//! sweeps.
//!
//! Reproducibility contract, fixed across runs and platforms:
//!
//! - Generator: ChaCha12, seeded with `seed_from_u64` (one fixed stream per
//!   [`EnsembleSpec`]).
//! - Uniforms: the top 53 bits of each `next_u64`, mapped to `[0, 1)`.
//! - Gaussians: the Marsaglia polar method; each accepted `(u, v)` pair with
//!   `s = u² + v² ∈ (0, 1)` yields two independent `N(0,1)` values
//!   `u·√(-2·ln s / s)` and `v·√(-2·ln s / s)`, consumed as the real and
//!   imaginary part of one complex entry.
//! - Matrix entries are drawn row by row.
//!
//! Independent streams for parallel trials come from [`stream_seed`]
//! (`base ⊕ index`); the CLI enumerates the samples of trial `t` as indexes
//! `4t`, `4t+1`, `4t+2`.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, DensityMatrix, HermitianOperator};

/// What a spec draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnsembleKind {
    /// `G·G†/tr(G·G†)` with `G` a `dim × rank` complex Gaussian matrix.
    HilbertSchmidtState,
    /// Rank-1 special case of the above.
    PureState,
    /// `(G + G†)/2` with `G` a square complex Gaussian matrix.
    GaussianHermitian,
}

/// A fully-determined sample: same spec, bit-identical output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub dim: usize,
    pub rank: usize,
    pub seed: u64,
    pub kind: EnsembleKind,
}

impl EnsembleSpec {
    pub fn hilbert_schmidt(dim: usize, rank: usize, seed: u64) -> Self {
        EnsembleSpec {
            dim,
            rank,
            seed,
            kind: EnsembleKind::HilbertSchmidtState,
        }
    }

    pub fn pure(dim: usize, seed: u64) -> Self {
        EnsembleSpec {
            dim,
            rank: 1,
            seed,
            kind: EnsembleKind::PureState,
        }
    }

    pub fn gaussian_hermitian(dim: usize, seed: u64) -> Self {
        EnsembleSpec {
            dim,
            rank: dim,
            seed,
            kind: EnsembleKind::GaussianHermitian,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidParameter {
                name: "dim",
                reason: "dimension must be positive".into(),
            });
        }
        if self.rank == 0 || self.rank > self.dim {
            return Err(Error::InvalidParameter {
                name: "rank",
                reason: format!("rank must be in [1, {}], got {}", self.dim, self.rank),
            });
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(self.seed)
    }
}

/// Seed for the `index`-th independent stream of a base seed.
pub fn stream_seed(base: u64, index: u64) -> u64 {
    base ^ index
}

fn uniform(rng: &mut ChaCha12Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Marsaglia polar method: two independent standard normals per call.
fn standard_normal_pair(rng: &mut ChaCha12Rng) -> (f64, f64) {
    loop {
        let u = 2.0 * uniform(rng) - 1.0;
        let v = 2.0 * uniform(rng) - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            let m = (-2.0 * s.ln() / s).sqrt();
            return (u * m, v * m);
        }
    }
}

fn gaussian_entry(rng: &mut ChaCha12Rng) -> Complex64 {
    let (re, im) = standard_normal_pair(rng);
    Complex64::new(re, im)
}

/// Draws a random density matrix `G·G†/tr(G·G†)`.
///
/// `rank` controls the number of Gaussian columns, hence the rank of the
/// state; rank 1 gives a pure state.
pub fn sample_density(spec: &EnsembleSpec) -> Result<DensityMatrix> {
    spec.validate()?;
    match spec.kind {
        EnsembleKind::HilbertSchmidtState | EnsembleKind::PureState => {}
        EnsembleKind::GaussianHermitian => {
            return Err(Error::InvalidParameter {
                name: "kind",
                reason: "gaussian_hermitian specs sample observables, not states".into(),
            });
        }
    }
    let rank = if spec.kind == EnsembleKind::PureState {
        1
    } else {
        spec.rank
    };
    let mut rng = spec.rng();
    let mut g = vec![vec![Complex64::new(0.0, 0.0); rank]; spec.dim];
    for row in g.iter_mut() {
        for entry in row.iter_mut() {
            *entry = gaussian_entry(&mut rng);
        }
    }
    let gram = ComplexMatrix::from_fn(spec.dim, |i, j| {
        (0..rank)
            .map(|k| g[i][k] * g[j][k].conj())
            .sum::<Complex64>()
    });
    let trace = gram.trace().re;
    let rho = gram.scale(Complex64::new(1.0 / trace, 0.0));
    DensityMatrix::new(HermitianOperator::new(rho)?)
}

/// Draws a random observable `(G + G†)/2`.
pub fn sample_hermitian(spec: &EnsembleSpec) -> Result<HermitianOperator> {
    spec.validate()?;
    let mut rng = spec.rng();
    let g = ComplexMatrix::from_fn(spec.dim, |_, _| gaussian_entry(&mut rng));
    let herm = (&g + &g.adjoint()).scale(Complex64::new(0.5, 0.0));
    HermitianOperator::new(herm)
}
