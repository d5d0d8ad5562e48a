//! Lower bounds on the variance product `Var_ρ(A)·Var_ρ(B)` and their
//! correction terms, with a consolidated per-instance report.
//!
//! Five left-hand sides are evaluated against the common right-hand side
//! `‖A‖²_ρ·‖B‖²_ρ` (the variance product once the observables are centered):
//!
//! ```text
//! heisenberg   ¼|⟨[A,B]⟩_ρ|²
//! schrodinger  ¼|⟨[A,B]⟩_ρ|² + ¼|⟨{A,B}⟩_ρ|²
//! thm21        ¼|⟨[A,B]⟩_ρ|² + tr(Aρ^{1/2}Aρ^{1/2})·tr(Bρ^{1/2}Bρ^{1/2})
//! thm22        schrodinger + max{M₁(A,B), M₁(B,A)}
//! thm41        schrodinger + max{ΣM_k(A,B), ΣM_k(B,A)}
//! ```
//!
//! The skew traces `tr(Aρ^{1/2}Aρ^{1/2})` vanish for pure states and grow with
//! the mixedness of `ρ`, which is what the sharpened bounds feed on. `M₁` and
//! `M₂` come from resolving `A_ρ` against the components of `B_ρ`; `M₃`
//! maximizes the projected length over the two-dimensional subspace spanned by
//! the hat vectors of `B` (see [`crate::decomposition`]). Each `M_k` is zero on
//! the degenerate branch where its denominator collapses, i.e. when `ρ`
//! commutes with `B`.

use crate::decomposition::{abc_quantities, decompose, AbcQuantities, RhoDecomposition};
use crate::error::{Error, Result};
use crate::matrix::{
    center, check_dims, hs_norm, trace_of_product, DensityMatrix, HermitianOperator,
};

/// Relative degeneracy guard deciding the "otherwise zero" branches of the
/// correction terms.
pub const DEGENERACY_GUARD: f64 = 1e-10;

/// Wigner-Yanase skew information `I(ρ,A) = ½‖[ρ^{1/2}, A]‖₂²`.
///
/// Nonnegative by construction; zero exactly when `ρ` and `A` commute. The
/// equivalent trace form `tr(A²ρ) - tr(Aρ^{1/2}Aρ^{1/2})` is checked against
/// this route in the test suite.
pub fn skew_information(rho: &DensityMatrix, a: &HermitianOperator) -> Result<f64> {
    check_dims(a.dim(), rho.dim())?;
    let a_rho = a.matrix() * rho.sqrt();
    // [ρ^{1/2}, A] = (Aρ^{1/2})† - Aρ^{1/2}
    let comm = &a_rho.adjoint() - &a_rho;
    Ok(0.5 * hs_norm(&comm).powi(2))
}

/// Scalar data shared by every bound for one `(A, B, ρ)` instance.
struct InstanceScalars {
    rho_norm_a: f64, // ‖A‖²_ρ
    rho_norm_b: f64, // ‖B‖²_ρ
    skew_a: f64,     // tr(Aρ^{1/2}Aρ^{1/2})
    skew_b: f64,     // tr(Bρ^{1/2}Bρ^{1/2})
    skew_ba: f64,    // tr(Bρ^{1/2}Aρ^{1/2})
    comm_abs: f64,   // |⟨[A,B]⟩_ρ|
    anti_mean: f64,  // ⟨{A,B}⟩_ρ
}

impl InstanceScalars {
    fn compute(
        a_dec: &RhoDecomposition,
        b_dec: &RhoDecomposition,
        a: &HermitianOperator,
        b: &HermitianOperator,
        rho: &DensityMatrix,
    ) -> Self {
        let am = a.matrix().as_dmatrix();
        let bm = b.matrix().as_dmatrix();
        let rm = rho.matrix().as_dmatrix();
        let a_rho = a_dec.a_rho().as_dmatrix();
        let b_rho = b_dec.a_rho().as_dmatrix();

        let ab = am * bm;
        let ba = bm * am;
        InstanceScalars {
            rho_norm_a: trace_of_product(&(am * am), rm).re,
            rho_norm_b: trace_of_product(&(bm * bm), rm).re,
            skew_a: trace_of_product(a_rho, a_rho).re,
            skew_b: trace_of_product(b_rho, b_rho).re,
            skew_ba: trace_of_product(b_rho, a_rho).re,
            comm_abs: (trace_of_product(&ab, rm) - trace_of_product(&ba, rm)).norm(),
            anti_mean: (trace_of_product(&ab, rm) + trace_of_product(&ba, rm)).re,
        }
    }
}

/// `M₁` with `B` in the resolving role:
/// `¼(|⟨[A,B]⟩_ρ|·tr(Bρ^{1/2}Bρ^{1/2}))² / (‖B‖⁴_ρ - tr(Bρ^{1/2}Bρ^{1/2})²)`,
/// zero on the degenerate branch.
fn m1_value(comm_abs: f64, skew_b: f64, rho_norm_b: f64) -> (f64, bool) {
    let denom = rho_norm_b * rho_norm_b - skew_b * skew_b;
    if denom <= DEGENERACY_GUARD * rho_norm_b * rho_norm_b {
        return (0.0, true);
    }
    let num = comm_abs * skew_b;
    (0.25 * num * num / denom, false)
}

/// `M₂` with `B` in the resolving role, with the prefactor
/// `¼(‖B_+‖₂‖B_-‖₂)⁻²`; zero on the same degenerate branch as `M₁` and when
/// the anti-Hermitian component of `B_ρ` vanishes.
fn m2_value(
    scalars_bracket: f64,
    b_dec: &RhoDecomposition,
    denom: f64,
    denom_scale: f64,
) -> (f64, bool) {
    if denom <= DEGENERACY_GUARD * denom_scale || hs_norm(b_dec.hat_minus()) == 0.0 {
        return (0.0, true);
    }
    let prefactor = 0.25 / (b_dec.norm_plus() * b_dec.norm_minus()).powi(2);
    (prefactor * scalars_bracket * scalars_bracket, false)
}

/// `m₃ = ½{√((a-b)² + 4c²) - (a-b)}` in a cancellation-stable form.
fn m3_from_abc(abc: &AbcQuantities) -> f64 {
    let diff = abc.a - abc.b;
    let root = (diff * diff + 4.0 * abc.c * abc.c).sqrt();
    if diff > 0.0 {
        // When a > b the direct form subtracts nearly equal numbers.
        if root + diff == 0.0 {
            0.0
        } else {
            2.0 * abc.c * abc.c / (root + diff)
        }
    } else {
        0.5 * (root - diff)
    }
}

/// The optimizing coefficients `(α, γ)` for the projected-length maximum:
/// `α = (d + √(d²+1))·γ` normalized to `α² + γ² = 1`, with the vertex limits
/// `(1,0)` / `(0,1)` when `c` is negligible.
pub fn optimal_coefficients(abc: &AbcQuantities) -> (f64, f64) {
    match abc.d {
        None => {
            if abc.a >= abc.b {
                (1.0, 0.0)
            } else {
                (0.0, 1.0)
            }
        }
        Some(d) => {
            let s = (d * d + 1.0).sqrt();
            // γ² = (s-d)/(2s) = 1/[2(d²+1) + 2d√(d²+1)], stable for d of
            // either sign.
            let gamma = ((s - d) / (2.0 * s)).sqrt();
            let alpha = ((s + d) / (2.0 * s)).sqrt();
            (alpha, gamma)
        }
    }
}

/// `M₁(A,B;ρ)` as a standalone operation.
pub fn m1_term(a: &HermitianOperator, b: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    let report = evaluate_all(a, b, rho, false)?;
    Ok(report.m1_fwd)
}

/// `M₂(A,B;ρ)` as a standalone operation.
pub fn m2_term(a: &HermitianOperator, b: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    let report = evaluate_all(a, b, rho, false)?;
    Ok(report.m2_fwd)
}

/// `M₃(A,B;ρ) = ‖B‖²_ρ·m₃` as a standalone operation.
pub fn m3_term(a: &HermitianOperator, b: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    let report = evaluate_all(a, b, rho, false)?;
    Ok(report.m3_fwd)
}

/// Left-hand side of the `thm21` bound for the operators as given.
pub fn thm21_lhs(a: &HermitianOperator, b: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    let report = evaluate_all(a, b, rho, false)?;
    Ok(report.lhs_thm21)
}

/// Left-hand side of the `thm22` bound for the operators as given.
pub fn thm22_lhs(a: &HermitianOperator, b: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    let report = evaluate_all(a, b, rho, false)?;
    Ok(report.lhs_thm22)
}

/// Left-hand side of the `thm41` bound for the operators as given.
pub fn thm41_lhs(a: &HermitianOperator, b: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    let report = evaluate_all(a, b, rho, false)?;
    Ok(report.lhs_thm41)
}

/// Per-bound distances `rhs - lhs`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundMargins {
    pub heisenberg: f64,
    pub schrodinger: f64,
    pub thm21: f64,
    pub thm22: f64,
    pub thm41: f64,
}

/// Every term of every bound for one `(A, B, ρ)` instance.
///
/// `fwd` terms keep the roles as written (`B` resolves `A`); `rev` terms
/// interchange the observables. Guarded terms are stored even when a guard
/// zeroes them; the `notes` field records which guards fired.
#[derive(Clone, Debug)]
pub struct UncertaintyReport {
    pub commutator_term: f64,
    pub anticommutator_term: f64,
    pub skew_product_term: f64,
    pub m1_fwd: f64,
    pub m1_rev: f64,
    pub m2_fwd: f64,
    pub m2_rev: f64,
    pub m3_fwd: f64,
    pub m3_rev: f64,
    pub m_thm22: f64,
    pub m_tilde_thm41: f64,
    pub lhs_heisenberg: f64,
    pub lhs_schrodinger: f64,
    pub lhs_thm21: f64,
    pub lhs_thm22: f64,
    pub lhs_thm41: f64,
    pub rhs: f64,
    pub margins: BoundMargins,
    pub skew_info_a: f64,
    pub skew_info_b: f64,
    pub centered: bool,
    pub notes: Vec<String>,
}

/// Evaluates every bound for one instance.
///
/// With `centered = true` the observables are replaced by `A - ⟨A⟩_ρ` and
/// `B - ⟨B⟩_ρ` before any term is formed, and the right-hand side is then the
/// variance product. With `centered = false` the operators enter as given.
pub fn evaluate_all(
    a: &HermitianOperator,
    b: &HermitianOperator,
    rho: &DensityMatrix,
    centered: bool,
) -> Result<UncertaintyReport> {
    check_dims(a.dim(), b.dim())?;
    check_dims(a.dim(), rho.dim())?;
    let (a, b) = if centered {
        (center(a, rho)?, center(b, rho)?)
    } else {
        (a.clone(), b.clone())
    };

    let a_dec = decompose(&a, rho)?;
    let b_dec = decompose(&b, rho)?;
    let s = InstanceScalars::compute(&a_dec, &b_dec, &a, &b, rho);

    let mut notes = Vec::new();

    let commutator_term = 0.25 * s.comm_abs * s.comm_abs;
    let anticommutator_term = 0.25 * s.anti_mean * s.anti_mean;
    let skew_product_term = s.skew_a * s.skew_b;

    let (m1_fwd, g1f) = m1_value(s.comm_abs, s.skew_b, s.rho_norm_b);
    let (m1_rev, g1r) = m1_value(s.comm_abs, s.skew_a, s.rho_norm_a);
    if g1f {
        notes.push("m1_fwd guard: degenerate".into());
    }
    if g1r {
        notes.push("m1_rev guard: degenerate".into());
    }

    let denom_fwd = s.rho_norm_b * s.rho_norm_b - s.skew_b * s.skew_b;
    let denom_rev = s.rho_norm_a * s.rho_norm_a - s.skew_a * s.skew_a;
    let bracket_fwd = s.rho_norm_b * s.skew_ba - 0.5 * s.anti_mean * s.skew_b;
    let bracket_rev = s.rho_norm_a * s.skew_ba - 0.5 * s.anti_mean * s.skew_a;
    let (m2_fwd, g2f) = m2_value(bracket_fwd, &b_dec, denom_fwd, s.rho_norm_b * s.rho_norm_b);
    let (m2_rev, g2r) = m2_value(bracket_rev, &a_dec, denom_rev, s.rho_norm_a * s.rho_norm_a);
    if g2f {
        notes.push("m2_fwd guard: degenerate".into());
    }
    if g2r {
        notes.push("m2_rev guard: degenerate".into());
    }

    let abc_fwd = abc_quantities(&a_dec, &b_dec)?;
    let abc_rev = abc_quantities(&b_dec, &a_dec)?;
    let m3_fwd = s.rho_norm_b * m3_from_abc(&abc_fwd);
    let m3_rev = s.rho_norm_a * m3_from_abc(&abc_rev);

    let m_thm22 = m1_fwd.max(m1_rev);
    let m_tilde_thm41 = (m1_fwd + m2_fwd + m3_fwd).max(m1_rev + m2_rev + m3_rev);

    let lhs_heisenberg = commutator_term;
    let lhs_schrodinger = commutator_term + anticommutator_term;
    let lhs_thm21 = commutator_term + skew_product_term;
    let lhs_thm22 = lhs_schrodinger + m_thm22;
    let lhs_thm41 = lhs_schrodinger + m_tilde_thm41;
    let rhs = s.rho_norm_a * s.rho_norm_b;

    let margins = BoundMargins {
        heisenberg: rhs - lhs_heisenberg,
        schrodinger: rhs - lhs_schrodinger,
        thm21: rhs - lhs_thm21,
        thm22: rhs - lhs_thm22,
        thm41: rhs - lhs_thm41,
    };

    let skew_info_a = skew_information(rho, &a)?;
    let skew_info_b = skew_information(rho, &b)?;

    let report = UncertaintyReport {
        commutator_term,
        anticommutator_term,
        skew_product_term,
        m1_fwd,
        m1_rev,
        m2_fwd,
        m2_rev,
        m3_fwd,
        m3_rev,
        m_thm22,
        m_tilde_thm41,
        lhs_heisenberg,
        lhs_schrodinger,
        lhs_thm21,
        lhs_thm22,
        lhs_thm41,
        rhs,
        margins,
        skew_info_a,
        skew_info_b,
        centered,
        notes,
    };
    report.check_finite()?;
    Ok(report)
}

impl UncertaintyReport {
    fn check_finite(&self) -> Result<()> {
        for (name, value) in self.numeric_fields() {
            if !value.is_finite() {
                return Err(Error::NonFinite { context: name });
            }
        }
        Ok(())
    }

    /// All scalar fields with their report names, in serialization order.
    pub fn numeric_fields(&self) -> [(&'static str, f64); 24] {
        [
            ("commutator_term", self.commutator_term),
            ("anticommutator_term", self.anticommutator_term),
            ("skew_product_term", self.skew_product_term),
            ("m1_fwd", self.m1_fwd),
            ("m1_rev", self.m1_rev),
            ("m2_fwd", self.m2_fwd),
            ("m2_rev", self.m2_rev),
            ("m3_fwd", self.m3_fwd),
            ("m3_rev", self.m3_rev),
            ("M_thm22", self.m_thm22),
            ("M_tilde_thm41", self.m_tilde_thm41),
            ("lhs_heisenberg", self.lhs_heisenberg),
            ("lhs_schrodinger", self.lhs_schrodinger),
            ("lhs_thm21", self.lhs_thm21),
            ("lhs_thm22", self.lhs_thm22),
            ("lhs_thm41", self.lhs_thm41),
            ("rhs", self.rhs),
            ("skew_info_A", self.skew_info_a),
            ("skew_info_B", self.skew_info_b),
            ("margin_heisenberg", self.margins.heisenberg),
            ("margin_schrodinger", self.margins.schrodinger),
            ("margin_thm21", self.margins.thm21),
            ("margin_thm22", self.margins.thm22),
            ("margin_thm41", self.margins.thm41),
        ]
    }
}

/// Outcome of checking one bound.
#[derive(Clone, Copy, Debug)]
pub struct BoundCheck {
    pub margin: f64,
    pub passed: bool,
    pub equality: bool,
}

impl BoundCheck {
    fn from_margin(margin: f64, tol: f64) -> Self {
        BoundCheck {
            margin,
            passed: margin >= -tol,
            equality: margin.abs() <= tol,
        }
    }
}

/// Pass/fail per bound plus the conjunction.
#[derive(Clone, Copy, Debug)]
pub struct VerificationResult {
    pub heisenberg: BoundCheck,
    pub schrodinger: BoundCheck,
    pub thm21: BoundCheck,
    pub thm22: BoundCheck,
    pub thm41: BoundCheck,
    pub overall_pass: bool,
}

impl VerificationResult {
    pub fn checks(&self) -> [(&'static str, BoundCheck); 5] {
        [
            ("heisenberg", self.heisenberg),
            ("schrodinger", self.schrodinger),
            ("thm21", self.thm21),
            ("thm22", self.thm22),
            ("thm41", self.thm41),
        ]
    }
}

/// Checks every margin against `tol`; equality flags mark saturated bounds.
pub fn verify(report: &UncertaintyReport, tol: f64) -> VerificationResult {
    assert!(tol > 0.0, "tolerance must be positive");
    let m = &report.margins;
    let heisenberg = BoundCheck::from_margin(m.heisenberg, tol);
    let schrodinger = BoundCheck::from_margin(m.schrodinger, tol);
    let thm21 = BoundCheck::from_margin(m.thm21, tol);
    let thm22 = BoundCheck::from_margin(m.thm22, tol);
    let thm41 = BoundCheck::from_margin(m.thm41, tol);
    let overall_pass =
        heisenberg.passed && schrodinger.passed && thm21.passed && thm22.passed && thm41.passed;
    VerificationResult {
        heisenberg,
        schrodinger,
        thm21,
        thm22,
        thm41,
        overall_pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::gram_table;
    use crate::matrix::{pauli_x, pauli_y, pauli_z, rho_norm_sq, variance, DensityMatrix};
    use crate::testutil::{test_observable, test_pure_state, test_state};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn grid_max(abc: &AbcQuantities, points: usize) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for k in 0..=points {
            let theta = (k as f64 / points as f64) * std::f64::consts::FRAC_PI_2;
            let (alpha, gamma) = (theta.cos(), theta.sin());
            let v = alpha * alpha * abc.a + 2.0 * alpha * gamma * abc.c + gamma * gamma * abc.b;
            best = best.max(v);
        }
        best
    }

    #[test]
    fn skew_information_zero_for_commuting_pair() {
        let a = HermitianOperator::from_real_diagonal(&[2.0, -1.0, 0.5]);
        let rho = DensityMatrix::from_diagonal(&[0.5, 0.25, 0.25]).unwrap();
        assert_eq!(skew_information(&rho, &a).unwrap(), 0.0);
    }

    #[test]
    fn skew_information_of_pure_state_is_variance() {
        let rho = test_pure_state(4, 7);
        let a = test_observable(4, 8);
        let a0 = center(&a, &rho).unwrap();
        let skew = skew_information(&rho, &a0).unwrap();
        let var = variance(&a0, &rho).unwrap();
        assert_relative_eq!(skew, var, max_relative = 1e-10);
    }

    #[test]
    fn skew_information_dual_route() {
        for seed in 0..20 {
            let a = test_observable(4, 20 + seed);
            let rho = test_state(4, 40 + seed);
            let direct = skew_information(&rho, &a).unwrap();
            let a_rho = a.matrix() * rho.sqrt();
            let skew_trace = trace_of_product(a_rho.as_dmatrix(), a_rho.as_dmatrix()).re;
            let trace_route = rho_norm_sq(&a, &rho).unwrap() - skew_trace;
            let scale = rho_norm_sq(&a, &rho).unwrap().max(1.0);
            assert!((direct - trace_route).abs() <= 1e-11 * scale);
            assert!(direct >= -1e-12);
        }
    }

    #[test]
    fn skew_information_tracks_minus_norm() {
        let a = test_observable(5, 61);
        let rho = test_state(5, 62);
        let dec = decompose(&a, &rho).unwrap();
        assert_relative_eq!(
            skew_information(&rho, &a).unwrap(),
            2.0 * dec.norm_minus().powi(2),
            max_relative = 1e-11
        );
    }

    #[test]
    fn qubit_family_closed_forms() {
        // A = σ_x, B = σ_y, ρ = diag(p, 1-p): the thm21 bound saturates and
        // M₁ = 4p(1-p).
        let p: f64 = 0.75;
        let rho = DensityMatrix::from_diagonal(&[p, 1.0 - p]).unwrap();
        let report = evaluate_all(&pauli_x(), &pauli_y(), &rho, true).unwrap();
        assert_relative_eq!(
            report.commutator_term,
            (2.0 * p - 1.0).powi(2),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            report.skew_product_term,
            4.0 * p * (1.0 - p),
            max_relative = 1e-12
        );
        assert_relative_eq!(report.lhs_thm21, 1.0, max_relative = 1e-12);
        assert_relative_eq!(report.rhs, 1.0, max_relative = 1e-12);
        assert_relative_eq!(report.m1_fwd, 0.75, max_relative = 1e-10);
        assert_relative_eq!(report.lhs_thm22, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn m1_zero_when_state_commutes_with_resolver() {
        let a = pauli_x();
        let b = pauli_z();
        let rho = DensityMatrix::from_diagonal(&[0.7, 0.3]).unwrap();
        // [ρ, σ_z] = 0, so the guard fires.
        assert_eq!(m1_term(&a, &b, &rho).unwrap(), 0.0);
        assert_eq!(m2_term(&a, &b, &rho).unwrap(), 0.0);
        let report = evaluate_all(&a, &b, &rho, false).unwrap();
        assert!(report.notes.iter().any(|n| n.contains("m1_fwd guard")));
    }

    #[test]
    fn m2_matches_gram_route() {
        // |(‖B₋‖/‖B₊‖)⟨B₊,A₊⟩ - (‖B₊‖/‖B₋‖)⟨B₋,A₋⟩|² from the Gram table.
        for seed in 0..25 {
            let a = test_observable(4, 100 + seed);
            let b = test_observable(4, 200 + seed);
            let rho = test_state(4, 300 + seed);
            let m2 = m2_term(&a, &b, &rho).unwrap();
            let b_dec = decompose(&b, &rho).unwrap();
            if hs_norm(b_dec.hat_minus()) == 0.0 {
                continue;
            }
            let table = gram_table(&a, &b, &rho).unwrap();
            let r = b_dec.norm_minus() / b_dec.norm_plus();
            let alt =
                (r * table.b_plus_a_plus.direct - table.b_minus_a_minus.direct / r).norm_sqr();
            let scale = m2.abs().max(1.0);
            assert!((m2 - alt).abs() <= 1e-10 * scale, "m2={m2} alt={alt}");
        }
    }

    #[test]
    fn m3_limit_cases() {
        let zero_c_balanced = AbcQuantities {
            a: 2.0,
            b: 1.0,
            c: 0.0,
            d: None,
        };
        assert_eq!(m3_from_abc(&zero_c_balanced), 0.0);
        let zero_c_inverted = AbcQuantities {
            a: 1.0,
            b: 2.5,
            c: 0.0,
            d: None,
        };
        assert_relative_eq!(m3_from_abc(&zero_c_inverted), 1.5, max_relative = 1e-14);
        let degenerate = AbcQuantities {
            a: 0.0,
            b: 0.0,
            c: 0.0,
            d: None,
        };
        assert_eq!(m3_from_abc(&degenerate), 0.0);
    }

    #[test]
    fn m3_matches_grid_search() {
        for seed in 0..30 {
            let a = test_observable(3, 400 + seed);
            let b = test_observable(3, 500 + seed);
            let rho = test_state(3, 600 + seed);
            let a_dec = decompose(&a, &rho).unwrap();
            let b_dec = decompose(&b, &rho).unwrap();
            let abc = abc_quantities(&a_dec, &b_dec).unwrap();
            let closed = abc.a + m3_from_abc(&abc);
            let grid = grid_max(&abc, 10_000);
            let scale = abc.a.max(abc.b).max(1.0);
            // The closed form is the true maximum, so it dominates the grid.
            assert!(closed >= grid - 1e-12 * scale);
            assert!(closed - grid <= 1e-6 * scale, "closed={closed} grid={grid}");
        }
    }

    #[test]
    fn optimal_coefficients_symmetric_case() {
        let abc = AbcQuantities {
            a: 1.3,
            b: 1.3,
            c: 0.4,
            d: Some(0.0),
        };
        let (alpha, gamma) = optimal_coefficients(&abc);
        assert_relative_eq!(alpha, std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-14);
        assert_relative_eq!(gamma, std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-14);
    }

    #[test]
    fn optimal_coefficients_vertex_limits() {
        let larger_a = AbcQuantities {
            a: 2.0,
            b: 0.5,
            c: 0.0,
            d: None,
        };
        assert_eq!(optimal_coefficients(&larger_a), (1.0, 0.0));
        let larger_b = AbcQuantities {
            a: 0.5,
            b: 2.0,
            c: 0.0,
            d: None,
        };
        assert_eq!(optimal_coefficients(&larger_b), (0.0, 1.0));
    }

    #[test]
    fn optimal_coefficients_identities_and_dominance() {
        for seed in 0..30 {
            let a = test_observable(3, 700 + seed);
            let b = test_observable(3, 800 + seed);
            let rho = test_state(3, 900 + seed);
            let a_dec = decompose(&a, &rho).unwrap();
            let b_dec = decompose(&b, &rho).unwrap();
            let abc = abc_quantities(&a_dec, &b_dec).unwrap();
            let (alpha, gamma) = optimal_coefficients(&abc);

            assert_abs_diff_eq!(alpha * alpha + gamma * gamma, 1.0, epsilon = 1e-12);

            if let Some(d) = abc.d {
                let s = (d * d + 1.0).sqrt();
                // γ² = 1/[2(d²+1) + 2d√(d²+1)]
                assert_relative_eq!(
                    gamma * gamma,
                    1.0 / (2.0 * (d * d + 1.0) + 2.0 * d * s),
                    max_relative = 1e-10
                );
                // 2d·αγ = 1 - 2γ²
                assert_abs_diff_eq!(
                    2.0 * d * alpha * gamma,
                    1.0 - 2.0 * gamma * gamma,
                    epsilon = 1e-10
                );
            }

            // Plugging in reproduces a + m₃ and dominates every grid point.
            let value = alpha * alpha * abc.a + 2.0 * alpha * gamma * abc.c + gamma * gamma * abc.b;
            let scale = abc.a.max(abc.b).max(1.0);
            assert!((value - (abc.a + m3_from_abc(&abc))).abs() <= 1e-10 * scale);
            assert!(value >= grid_max(&abc, 3_000) - 1e-12 * scale);
        }
    }

    #[test]
    fn pure_state_reduces_to_classical_bounds() {
        for seed in 0..10 {
            let rho = test_pure_state(3, 1000 + seed);
            let a = test_observable(3, 1100 + seed);
            let b = test_observable(3, 1200 + seed);
            let report = evaluate_all(&a, &b, &rho, true).unwrap();
            assert!((report.lhs_thm21 - report.lhs_heisenberg).abs() <= 1e-10);
            assert!((report.lhs_thm22 - report.lhs_schrodinger).abs() <= 1e-10);
        }
    }

    #[test]
    fn pure_pole_qubit_saturates_heisenberg() {
        // ρ = diag(1, 0) is pure: the sharpened bound collapses onto the
        // Heisenberg bound and both saturate for σ_x, σ_y.
        let rho = DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let report = evaluate_all(&pauli_x(), &pauli_y(), &rho, true).unwrap();
        assert_relative_eq!(report.commutator_term, 1.0, max_relative = 1e-12);
        assert_abs_diff_eq!(report.skew_product_term, 0.0, epsilon = 1e-12);
        assert_relative_eq!(report.rhs, 1.0, max_relative = 1e-12);
        let result = verify(&report, 1e-9);
        assert!(result.heisenberg.equality && result.thm21.equality);
    }

    #[test]
    fn maximally_mixed_qubit_example() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        let report = evaluate_all(&pauli_x(), &pauli_y(), &rho, true).unwrap();
        assert_abs_diff_eq!(report.commutator_term, 0.0, epsilon = 1e-14);
        // tr(σρ^{1/2}σρ^{1/2}) = 1 for each Pauli at ρ = I/2.
        assert_relative_eq!(report.skew_product_term, 1.0, max_relative = 1e-12);
        assert_relative_eq!(report.rhs, 1.0, max_relative = 1e-12);
        assert_abs_diff_eq!(report.margins.thm21, 0.0, epsilon = 1e-12);
        let result = verify(&report, 1e-9);
        assert!(result.overall_pass);
        assert!(result.thm21.equality);
    }

    #[test]
    fn ordering_chain_and_sign_constraints() {
        for seed in 0..50 {
            let dim = 2 + (seed as usize % 4);
            let a = test_observable(dim, 2000 + seed);
            let b = test_observable(dim, 3000 + seed);
            let rho = test_state(dim, 4000 + seed);
            let report = evaluate_all(&a, &b, &rho, true).unwrap();
            for (name, value) in [
                ("commutator_term", report.commutator_term),
                ("anticommutator_term", report.anticommutator_term),
                ("skew_product_term", report.skew_product_term),
                ("m1_fwd", report.m1_fwd),
                ("m2_fwd", report.m2_fwd),
                ("m3_fwd", report.m3_fwd),
            ] {
                assert!(value >= -1e-12, "{name} = {value}");
            }
            assert!(report.lhs_heisenberg <= report.lhs_schrodinger + 1e-10);
            assert!(report.lhs_schrodinger <= report.lhs_thm22 + 1e-10);
            assert!(report.lhs_thm22 <= report.lhs_thm41 + 1e-10);
            assert!(report.lhs_thm41 <= report.rhs + 1e-9);
            assert!(report.lhs_thm21 <= report.rhs + 1e-9);
        }
    }

    #[test]
    fn projection_identity_links_gram_and_corrections() {
        // ‖B‖²_ρ·a = ¼|⟨[A,B]⟩|² + ¼|⟨{A,B}⟩|² + M₁ + M₂.
        for seed in 0..25 {
            let a = test_observable(4, 5000 + seed);
            let b = test_observable(4, 6000 + seed);
            let rho = test_state(4, 7000 + seed);
            let report = evaluate_all(&a, &b, &rho, false).unwrap();
            let a_dec = decompose(&a, &rho).unwrap();
            let b_dec = decompose(&b, &rho).unwrap();
            let abc = abc_quantities(&a_dec, &b_dec).unwrap();
            let rho_norm_b = rho_norm_sq(&b, &rho).unwrap();
            let lhs = rho_norm_b * abc.a;
            let rhs =
                report.commutator_term + report.anticommutator_term + report.m1_fwd + report.m2_fwd;
            let scale = lhs.abs().max(1.0);
            assert!((lhs - rhs).abs() <= 1e-10 * scale, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn verify_flags_failures_and_equalities() {
        let rho = DensityMatrix::from_diagonal(&[0.75, 0.25]).unwrap();
        let report = evaluate_all(&pauli_x(), &pauli_y(), &rho, true).unwrap();
        let result = verify(&report, 1e-9);
        assert!(result.overall_pass);
        assert!(result.thm21.equality);
        assert!(result.thm22.equality);

        let mut broken = report.clone();
        broken.margins.thm41 = -1.0;
        let result = verify(&broken, 1e-9);
        assert!(!result.overall_pass);
        assert!(!result.thm41.passed);
    }

    #[test]
    fn pure_state_equality_flags_mirror_classical_ones() {
        let rho = test_pure_state(2, 42);
        let a = test_observable(2, 43);
        let b = test_observable(2, 44);
        let report = evaluate_all(&a, &b, &rho, true).unwrap();
        let result = verify(&report, 1e-9);
        assert_eq!(result.thm21.equality, result.heisenberg.equality);
        assert_eq!(result.thm22.equality, result.schrodinger.equality);
    }
}
