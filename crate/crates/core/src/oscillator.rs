//! Harmonic oscillator on a truncated Fock basis.
//!
//! The infinite ladder is cut at `dim` levels, which leaves the canonical
//! commutation relation `[a, a†] = 1` intact on levels `0..dim-2` and puts a
//! `-(dim-1)` defect in the last diagonal entry. All commutation-relation
//! checks therefore apply to the interior block only; the defect is a fact of
//! the truncation, not an implementation artifact.
//!
//! The thermal state at inverse temperature `β` is diagonal with weights
//! `∝ e^{-β(n+½)}`, renormalized within the truncation, so the discarded tail
//! weight is bounded by `e^{-β·dim}/(1-e^{-β})` relative to the full series.
//! Every `β`-dependent quantity of interest has an analytic closed form
//! ([`closed_forms`]); [`convergence_sweep`] measures how fast the truncated
//! numerics approach them.

use num_complex::Complex64;

use crate::bounds::{evaluate_all, UncertaintyReport};
use crate::error::{Error, Result};
use crate::matrix::{
    expectation, trace_of_product, ComplexMatrix, DensityMatrix, HermitianOperator,
};

/// A Fock basis truncated to levels `n = 0..dim-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockSpace {
    dim: usize,
}

impl FockSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter {
                name: "dim",
                reason: format!("need at least 2 Fock levels, got {dim}"),
            });
        }
        Ok(FockSpace { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Annihilation and creation operators `(a, a†)`: `a|n⟩ = √n|n-1⟩`, so `a`
/// has `√1, √2, …` on the superdiagonal and `a†` is its transpose.
pub fn ladder_ops(space: FockSpace) -> (ComplexMatrix, ComplexMatrix) {
    let dim = space.dim();
    let a = ComplexMatrix::from_fn(dim, |i, j| {
        if j == i + 1 {
            Complex64::new((j as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let a_dag = a.adjoint();
    (a, a_dag)
}

/// Number operator `N = a†a`, diagonal `0, 1, …, dim-1` after truncation.
pub fn number_op(space: FockSpace) -> HermitianOperator {
    let diag: Vec<f64> = (0..space.dim()).map(|n| n as f64).collect();
    HermitianOperator::from_real_diagonal(&diag)
}

/// Momentum and position `P = (i/√2)(a - a†)`, `Q = (1/√2)(a + a†)`.
///
/// `[P, Q] = i` on the interior block of the truncation.
pub fn pq_ops(space: FockSpace) -> (HermitianOperator, HermitianOperator) {
    let (a, a_dag) = ladder_ops(space);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let p = (&a - &a_dag).scale(Complex64::new(0.0, inv_sqrt2));
    let q = (&a + &a_dag).scale(Complex64::new(inv_sqrt2, 0.0));
    let p = HermitianOperator::new(p).expect("P is Hermitian by construction");
    let q = HermitianOperator::new(q).expect("Q is Hermitian by construction");
    (p, q)
}

/// Thermal (Gibbs) state of `H = N + ½` at inverse temperature `beta`,
/// renormalized within the truncation.
pub fn thermal_state(beta: f64, space: FockSpace) -> Result<DensityMatrix> {
    check_beta(beta)?;
    let weights: Vec<f64> = (0..space.dim()).map(|n| (-beta * n as f64).exp()).collect();
    let z: f64 = weights.iter().sum();
    let probs: Vec<f64> = weights.iter().map(|w| w / z).collect();
    DensityMatrix::from_diagonal(&probs)
}

fn check_beta(beta: f64) -> Result<()> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "beta",
            reason: format!("inverse temperature must be positive and finite, got {beta}"),
        });
    }
    Ok(())
}

/// The analytic values of every `β`-dependent quantity used by the thermal
/// `(P, Q)` instance.
#[derive(Clone, Copy, Debug)]
pub struct OscillatorClosedForms {
    pub beta: f64,
    /// `⟨a†a⟩_ρ = e^{-β}/(1 - e^{-β})`
    pub mean_occupation: f64,
    /// `‖Q‖²_ρ = ½·cosh(β/2)/sinh(β/2)`
    pub q_var: f64,
    pub p_var: f64,
    /// `tr(Qρ^{1/2}Qρ^{1/2}) = 1/(2·sinh(β/2))`
    pub q_skew_trace: f64,
    pub p_skew_trace: f64,
    /// `‖P‖²_ρ·‖Q‖²_ρ = cosh²(β/2)/(4·sinh²(β/2))`
    pub rhs: f64,
    /// `¼ + 1/(4·sinh²(β/2))`, equal to `rhs` as a real-function identity
    pub lhs_21: f64,
    /// `¼ + M₁(P,Q)`, again equal to `rhs`
    pub lhs_22: f64,
    /// `M₁(P,Q;ρ) = 1/(4·sinh²(β/2))`
    pub m1_pq: f64,
    /// `I(ρ,Q) = ½·tanh(β/4)`
    pub skew_info_q: f64,
}

/// Evaluates the closed forms at inverse temperature `beta`.
pub fn closed_forms(beta: f64) -> Result<OscillatorClosedForms> {
    check_beta(beta)?;
    let half = beta / 2.0;
    let q_var = 0.5 * half.cosh() / half.sinh();
    let q_skew_trace = 0.5 / half.sinh();
    let m1_pq = q_skew_trace * q_skew_trace;
    Ok(OscillatorClosedForms {
        beta,
        mean_occupation: (-beta).exp() / (1.0 - (-beta).exp()),
        q_var,
        p_var: q_var,
        q_skew_trace,
        p_skew_trace: q_skew_trace,
        rhs: q_var * q_var,
        lhs_21: 0.25 + q_skew_trace * q_skew_trace,
        lhs_22: 0.25 + m1_pq,
        m1_pq,
        skew_info_q: 0.5 * (beta / 4.0).tanh(),
    })
}

/// Numeric bound values at one truncation, with deviations from the closed
/// forms.
#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub dim: usize,
    pub lhs_thm21: f64,
    pub lhs_thm22: f64,
    pub lhs_thm41: f64,
    pub rhs: f64,
    pub dev_thm21: f64,
    pub dev_thm22: f64,
    pub dev_thm41: f64,
    pub dev_rhs: f64,
    /// Numeric `⟨a†a⟩_ρ` at this truncation.
    pub mean_occupation: f64,
    /// Numeric `tr(Qρ^{1/2}Qρ^{1/2})`.
    pub q_skew_trace: f64,
    /// Numeric `tr(Pρ^{1/2}Pρ^{1/2})`.
    pub p_skew_trace: f64,
    /// The full report backing this row.
    pub report: UncertaintyReport,
}

impl ConvergenceRow {
    pub fn max_deviation(&self) -> f64 {
        self.dev_thm21
            .max(self.dev_thm22)
            .max(self.dev_thm41)
            .max(self.dev_rhs)
    }
}

/// Evaluates the thermal `(P, Q)` instance at each truncation dimension and
/// reports the deviation of every bound value from its closed form.
///
/// `dims` must be ascending, each at least 4.
pub fn convergence_sweep(beta: f64, dims: &[usize]) -> Result<Vec<ConvergenceRow>> {
    check_beta(beta)?;
    if dims.is_empty() {
        return Err(Error::InvalidParameter {
            name: "dims",
            reason: "need at least one truncation dimension".into(),
        });
    }
    for pair in dims.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::InvalidParameter {
                name: "dims",
                reason: format!(
                    "dimensions must be ascending, got {} after {}",
                    pair[1], pair[0]
                ),
            });
        }
    }
    let exact = closed_forms(beta)?;
    let mut rows = Vec::with_capacity(dims.len());
    for &dim in dims {
        if dim < 4 {
            return Err(Error::InvalidParameter {
                name: "dims",
                reason: format!("each truncation must be at least 4, got {dim}"),
            });
        }
        let space = FockSpace::new(dim)?;
        let (p, q) = pq_ops(space);
        let rho = thermal_state(beta, space)?;
        let report = evaluate_all(&p, &q, &rho, true)?;
        let mean_occupation = expectation(number_op(space).matrix(), &rho)?.re;
        let p_rho = p.matrix() * rho.sqrt();
        let q_rho = q.matrix() * rho.sqrt();
        rows.push(ConvergenceRow {
            dim,
            lhs_thm21: report.lhs_thm21,
            lhs_thm22: report.lhs_thm22,
            lhs_thm41: report.lhs_thm41,
            rhs: report.rhs,
            dev_thm21: (report.lhs_thm21 - exact.lhs_21).abs(),
            dev_thm22: (report.lhs_thm22 - exact.lhs_22).abs(),
            dev_thm41: (report.lhs_thm41 - exact.lhs_22).abs(),
            dev_rhs: (report.rhs - exact.rhs).abs(),
            mean_occupation,
            q_skew_trace: trace_of_product(q_rho.as_dmatrix(), q_rho.as_dmatrix()).re,
            p_skew_trace: trace_of_product(p_rho.as_dmatrix(), p_rho.as_dmatrix()).re,
            report,
        });
    }
    Ok(rows)
}
