//! Deterministic matrix generators for unit tests, independent of the
//! production sampler in [`crate::ensemble`].

use num_complex::Complex64;

use crate::matrix::{ComplexMatrix, DensityMatrix, HermitianOperator};

/// xorshift64* — enough randomness for test fixtures, no dependencies.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform in [-1, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 52) as f64 - 1.0
    }

    pub fn complex(&mut self) -> Complex64 {
        Complex64::new(self.uniform(), self.uniform())
    }
}

/// Random Hermitian test observable.
pub fn test_observable(dim: usize, seed: u64) -> HermitianOperator {
    let mut rng = TestRng::new(seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1));
    let g = ComplexMatrix::from_fn(dim, |_, _| rng.complex());
    let herm = &g + &g.adjoint();
    HermitianOperator::new(herm.scale(Complex64::new(0.5, 0.0))).unwrap()
}

/// Random full-rank density matrix G·G†/tr(G·G†).
pub fn test_state(dim: usize, seed: u64) -> DensityMatrix {
    test_state_with_rank(dim, dim, seed)
}

/// Random rank-limited density matrix.
pub fn test_state_with_rank(dim: usize, rank: usize, seed: u64) -> DensityMatrix {
    let mut rng = TestRng::new(seed.wrapping_mul(0xD1B54A32D192ED03).wrapping_add(3));
    let cols: Vec<Vec<Complex64>> = (0..rank)
        .map(|_| (0..dim).map(|_| rng.complex()).collect())
        .collect();
    let gram = ComplexMatrix::from_fn(dim, |i, j| {
        cols.iter().map(|c| c[i] * c[j].conj()).sum::<Complex64>()
    });
    let trace = gram.trace().re;
    let rho = gram.scale(Complex64::new(1.0 / trace, 0.0));
    DensityMatrix::new(HermitianOperator::new(rho).unwrap()).unwrap()
}

/// Random pure state.
pub fn test_pure_state(dim: usize, seed: u64) -> DensityMatrix {
    let mut rng = TestRng::new(seed.wrapping_mul(0xA24BAED4963EE407).wrapping_add(7));
    let state: Vec<Complex64> = (0..dim).map(|_| rng.complex()).collect();
    DensityMatrix::pure(&state).unwrap()
}
