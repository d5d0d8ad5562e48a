//! Variance-product bounds for finite-dimensional quantum states, with
//! correction terms that grow with the mixedness of the state.
//!
//! For observables `A`, `B` and a density matrix `ρ`, the crate evaluates a
//! chain of lower bounds on `Var_ρ(A)·Var_ρ(B)` — the Heisenberg and
//! Schrödinger bounds plus three sharpened variants built from the trace
//! `tr(Aρ^{1/2}Aρ^{1/2})` and the orthogonal decomposition of `A·ρ^{1/2}`
//! into Hermitian and anti-Hermitian parts. Every identity used along the
//! way is machine-checked in the test suite, and the thermal harmonic
//! oscillator reproduces the exact-equality case on a truncated Fock basis.
//!
//! ```
//! use uncrel::bounds::{evaluate_all, verify};
//! use uncrel::matrix::{pauli_x, pauli_y};
//! use uncrel::DensityMatrix;
//!
//! // A mixed qubit state: the sharpened bounds are exactly tight here.
//! let rho = DensityMatrix::from_diagonal(&[0.75, 0.25])?;
//! let report = evaluate_all(&pauli_x(), &pauli_y(), &rho, true)?;
//! assert!((report.lhs_thm21 - report.rhs).abs() < 1e-12);
//! assert!(verify(&report, 1e-9).overall_pass);
//! # Ok::<(), uncrel::Error>(())
//! ```
//!
//! Start with the [`guide`], which doubles as the mdbook under `book/`.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod decomposition;
pub mod ensemble;
pub mod error;
pub mod guide;
pub mod matrix;
pub mod oscillator;

#[cfg(test)]
pub(crate) mod testutil;

pub use num_complex::Complex64;

pub use bounds::{BoundCheck, BoundMargins, UncertaintyReport, VerificationResult};
pub use decomposition::{AbcQuantities, GramEntry, GramTable, RhoDecomposition};
pub use ensemble::{EnsembleKind, EnsembleSpec};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, DensityMatrix, HermitianOperator};
pub use oscillator::{ConvergenceRow, FockSpace, OscillatorClosedForms};
