//! Orthogonal splitting of `A·ρ^{1/2}` and the subspace machinery built on it.
//!
//! For an observable `A` and a state `ρ`, the product `A_ρ = A·ρ^{1/2}` splits
//! into a Hermitian and an anti-Hermitian part,
//!
//! ```text
//! A_ρ = A_+ + A_-,   A_± = ½(A·ρ^{1/2} ± ρ^{1/2}·A),
//! ```
//!
//! which are orthogonal in the Hilbert-Schmidt inner product. The anti-Hermitian
//! part carries the non-commutativity of `A` with `ρ` — its squared norm is half
//! the skew information. From the split we form unit directions (hat vectors),
//! the perpendicular vector `A_ρ^⊥`, the projection onto the span of the hat
//! vectors of a second observable, and the scalar triple `(a, b, c)` feeding the
//! strongest correction term.

use num_complex::Complex64;

use crate::error::Result;
use crate::matrix::{
    check_dims, hs_inner, hs_norm, trace_of_product, ComplexMatrix, DensityMatrix,
    HermitianOperator,
};

/// Relative norm threshold below which a decomposition component counts as
/// zero and its unit direction is the zero matrix.
pub const DEGENERATE_NORM_TOL: f64 = 1e-12;

/// If the numerical inner product of the two hat vectors exceeds this, the
/// second is re-orthogonalized against the first before projecting.
const GRAM_SCHMIDT_TOL: f64 = 1e-10;

/// Relative threshold on `c` below which `d = (a-b)/2c` is left undefined.
pub const C_DEGENERATE_TOL: f64 = 1e-12;

/// The orthogonal decomposition of `A_ρ = A·ρ^{1/2}`.
#[derive(Clone, Debug)]
pub struct RhoDecomposition {
    a_rho: ComplexMatrix,
    plus: ComplexMatrix,
    minus: ComplexMatrix,
    norm_plus: f64,
    norm_minus: f64,
    hat_plus: ComplexMatrix,
    hat_minus: ComplexMatrix,
}

impl RhoDecomposition {
    /// The full product `A·ρ^{1/2}`.
    pub fn a_rho(&self) -> &ComplexMatrix {
        &self.a_rho
    }

    /// Hermitian part `½(A·ρ^{1/2} + ρ^{1/2}·A)`.
    pub fn plus(&self) -> &ComplexMatrix {
        &self.plus
    }

    /// Anti-Hermitian part `½(A·ρ^{1/2} - ρ^{1/2}·A)`.
    pub fn minus(&self) -> &ComplexMatrix {
        &self.minus
    }

    pub fn norm_plus(&self) -> f64 {
        self.norm_plus
    }

    pub fn norm_minus(&self) -> f64 {
        self.norm_minus
    }

    /// Unit direction of the Hermitian part (zero matrix when degenerate).
    pub fn hat_plus(&self) -> &ComplexMatrix {
        &self.hat_plus
    }

    /// Unit direction of the anti-Hermitian part (zero matrix when degenerate).
    pub fn hat_minus(&self) -> &ComplexMatrix {
        &self.hat_minus
    }

    pub fn dim(&self) -> usize {
        self.a_rho.dim()
    }
}

/// Splits `A·ρ^{1/2}` into its Hermitian and anti-Hermitian parts.
///
/// The adjoint `ρ^{1/2}·A = (A·ρ^{1/2})†` is taken entrywise, so the plus part
/// is exactly Hermitian and the minus part exactly anti-Hermitian.
pub fn decompose(a: &HermitianOperator, rho: &DensityMatrix) -> Result<RhoDecomposition> {
    check_dims(a.dim(), rho.dim())?;
    let a_rho = a.matrix() * rho.sqrt();
    let sqrt_a = a_rho.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let plus = (&a_rho + &sqrt_a).scale(half);
    let minus = (&a_rho - &sqrt_a).scale(half);
    let norm_plus = hs_norm(&plus);
    let norm_minus = hs_norm(&minus);
    let scale = hs_norm(&a_rho);
    let hat = |v: &ComplexMatrix, norm: f64| -> ComplexMatrix {
        if norm <= DEGENERATE_NORM_TOL * scale {
            ComplexMatrix::zeros(v.dim())
        } else {
            v.scale(Complex64::new(1.0 / norm, 0.0))
        }
    };
    let hat_plus = hat(&plus, norm_plus);
    let hat_minus = hat(&minus, norm_minus);
    Ok(RhoDecomposition {
        a_rho,
        plus,
        minus,
        norm_plus,
        norm_minus,
        hat_plus,
        hat_minus,
    })
}

/// One inner product computed by two independent routes.
#[derive(Clone, Copy, Debug)]
pub struct GramEntry {
    /// Hilbert-Schmidt inner product of the decomposition matrices.
    pub direct: Complex64,
    /// Trace closed form in the original operators.
    pub closed_form: Complex64,
}

impl GramEntry {
    pub fn defect(&self) -> f64 {
        (self.direct - self.closed_form).norm()
    }
}

/// The eight inner products among the decomposition parts of two observables.
///
/// The same-sign entries `⟨B_±, A_±⟩` are real, the cross entries `⟨B_±, A_∓⟩`
/// purely imaginary; both cross entries share the closed form `¼·tr([B,A]ρ)`
/// (observed numerically and verified against the direct route — only their
/// common squared magnitude `(1/16)|tr([B,A]ρ)|²` is relied on downstream).
#[derive(Clone, Copy, Debug)]
pub struct GramTable {
    /// `⟨A_+, A_+⟩ = ½{tr(A²ρ) + tr(Aρ^{1/2}Aρ^{1/2})}`
    pub a_plus_a_plus: GramEntry,
    /// `⟨A_-, A_-⟩ = ½{tr(A²ρ) - tr(Aρ^{1/2}Aρ^{1/2})}`
    pub a_minus_a_minus: GramEntry,
    pub b_plus_b_plus: GramEntry,
    pub b_minus_b_minus: GramEntry,
    /// `⟨B_+, A_+⟩ = ¼{tr({A,B}ρ) + 2tr(Bρ^{1/2}Aρ^{1/2})}`
    pub b_plus_a_plus: GramEntry,
    /// `⟨B_-, A_-⟩ = ¼{tr({A,B}ρ) - 2tr(Bρ^{1/2}Aρ^{1/2})}`
    pub b_minus_a_minus: GramEntry,
    /// `⟨B_+, A_-⟩`
    pub b_plus_a_minus: GramEntry,
    /// `⟨B_-, A_+⟩`
    pub b_minus_a_plus: GramEntry,
}

impl GramTable {
    pub fn entries(&self) -> [(&'static str, GramEntry); 8] {
        [
            ("a_plus_a_plus", self.a_plus_a_plus),
            ("a_minus_a_minus", self.a_minus_a_minus),
            ("b_plus_b_plus", self.b_plus_b_plus),
            ("b_minus_b_minus", self.b_minus_b_minus),
            ("b_plus_a_plus", self.b_plus_a_plus),
            ("b_minus_a_minus", self.b_minus_a_minus),
            ("b_plus_a_minus", self.b_plus_a_minus),
            ("b_minus_a_plus", self.b_minus_a_plus),
        ]
    }

    /// Largest dual-route disagreement across all eight entries.
    pub fn max_defect(&self) -> f64 {
        self.entries()
            .iter()
            .map(|(_, e)| e.defect())
            .fold(0.0, f64::max)
    }
}

/// Computes all eight inner products by both routes.
pub fn gram_table(
    a: &HermitianOperator,
    b: &HermitianOperator,
    rho: &DensityMatrix,
) -> Result<GramTable> {
    check_dims(a.dim(), b.dim())?;
    check_dims(a.dim(), rho.dim())?;
    let a_dec = decompose(a, rho)?;
    let b_dec = decompose(b, rho)?;

    let am = a.matrix().as_dmatrix();
    let bm = b.matrix().as_dmatrix();
    let rm = rho.matrix().as_dmatrix();

    let a_rho = a_dec.a_rho().as_dmatrix();
    let b_rho = b_dec.a_rho().as_dmatrix();

    // Scalars for the closed forms.
    let tr_a2_rho = trace_of_product(&(am * am), rm).re;
    let tr_b2_rho = trace_of_product(&(bm * bm), rm).re;
    let skew_a = trace_of_product(a_rho, a_rho).re; // tr(Aρ^{1/2}Aρ^{1/2})
    let skew_b = trace_of_product(b_rho, b_rho).re;
    let skew_ba = trace_of_product(b_rho, a_rho).re; // tr(Bρ^{1/2}Aρ^{1/2})
    let tr_anti = trace_of_product(&(am * bm + bm * am), rm).re; // tr({A,B}ρ)
    let tr_comm = trace_of_product(&(bm * am - am * bm), rm); // tr([B,A]ρ)

    let real = |x: f64| Complex64::new(x, 0.0);
    let entry = |direct: Complex64, closed: Complex64| GramEntry {
        direct,
        closed_form: closed,
    };

    Ok(GramTable {
        a_plus_a_plus: entry(
            hs_inner(a_dec.plus(), a_dec.plus())?,
            real(0.5 * (tr_a2_rho + skew_a)),
        ),
        a_minus_a_minus: entry(
            hs_inner(a_dec.minus(), a_dec.minus())?,
            real(0.5 * (tr_a2_rho - skew_a)),
        ),
        b_plus_b_plus: entry(
            hs_inner(b_dec.plus(), b_dec.plus())?,
            real(0.5 * (tr_b2_rho + skew_b)),
        ),
        b_minus_b_minus: entry(
            hs_inner(b_dec.minus(), b_dec.minus())?,
            real(0.5 * (tr_b2_rho - skew_b)),
        ),
        b_plus_a_plus: entry(
            hs_inner(b_dec.plus(), a_dec.plus())?,
            real(0.25 * (tr_anti + 2.0 * skew_ba)),
        ),
        b_minus_a_minus: entry(
            hs_inner(b_dec.minus(), a_dec.minus())?,
            real(0.25 * (tr_anti - 2.0 * skew_ba)),
        ),
        b_plus_a_minus: entry(hs_inner(b_dec.plus(), a_dec.minus())?, tr_comm * 0.25),
        b_minus_a_plus: entry(hs_inner(b_dec.minus(), a_dec.plus())?, tr_comm * 0.25),
    })
}

/// The vector `A_ρ^⊥ = ‖A_-‖·Â_+ - ‖A_+‖·Â_-`, orthogonal to `A_ρ` and of the
/// same norm — except that it degenerates to zero when `‖A_-‖ = 0`.
pub fn perp_vector(dec: &RhoDecomposition) -> ComplexMatrix {
    let lhs = dec.hat_plus().scale(Complex64::new(dec.norm_minus(), 0.0));
    let rhs = dec.hat_minus().scale(Complex64::new(dec.norm_plus(), 0.0));
    &lhs - &rhs
}

/// Orthonormal basis of the span of the nonzero hat vectors.
fn span_basis(dec: &RhoDecomposition) -> Result<Vec<ComplexMatrix>> {
    let mut basis = Vec::with_capacity(2);
    for v in [dec.hat_plus(), dec.hat_minus()] {
        if hs_norm(v) > 0.0 {
            basis.push(v.clone());
        }
    }
    // The hat vectors are orthogonal in exact arithmetic; re-orthogonalize
    // only if rounding in near-degenerate states says otherwise.
    if basis.len() == 2 {
        let overlap = hs_inner(&basis[0], &basis[1])?;
        if overlap.norm() > GRAM_SCHMIDT_TOL {
            let projected = basis[0].scale(overlap);
            let residual = &basis[1] - &projected;
            let norm = hs_norm(&residual);
            if norm > DEGENERATE_NORM_TOL {
                basis[1] = residual.scale(Complex64::new(1.0 / norm, 0.0));
            } else {
                basis.pop();
            }
        }
    }
    Ok(basis)
}

/// Projects `X` onto the span `S` of the hat vectors of `b_dec`:
/// `P_S X = Σ_k ⟨e_k, X⟩·e_k`.
pub fn project_onto_span(x: &ComplexMatrix, b_dec: &RhoDecomposition) -> Result<ComplexMatrix> {
    check_dims(x.dim(), b_dec.dim())?;
    let mut out = ComplexMatrix::zeros(x.dim());
    for e in span_basis(b_dec)? {
        let coeff = hs_inner(&e, x)?;
        out = &out + &e.scale(coeff);
    }
    Ok(out)
}

/// The scalars of the projection geometry:
/// `a = ‖P_S A_ρ‖²`, `b = ‖P_S A_ρ^⊥‖²`, `c = |⟨P_S A_ρ, P_S A_ρ^⊥⟩|`,
/// and `d = (a-b)/2c`, undefined when `c` is negligible.
#[derive(Clone, Copy, Debug)]
pub struct AbcQuantities {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: Option<f64>,
}

/// Computes `(a, b, c, d)` for the projection of `A_ρ` and `A_ρ^⊥` onto the
/// span of the hat vectors of `B`.
pub fn abc_quantities(a_dec: &RhoDecomposition, b_dec: &RhoDecomposition) -> Result<AbcQuantities> {
    check_dims(a_dec.dim(), b_dec.dim())?;
    let a_perp = perp_vector(a_dec);
    let proj_a = project_onto_span(a_dec.a_rho(), b_dec)?;
    let proj_perp = project_onto_span(&a_perp, b_dec)?;
    let a = hs_norm(&proj_a).powi(2);
    let b = hs_norm(&proj_perp).powi(2);
    let c = hs_inner(&proj_a, &proj_perp)?.norm();
    let eps_c = C_DEGENERATE_TOL * a.max(b).max(1.0);
    let d = if c > eps_c {
        Some((a - b) / (2.0 * c))
    } else {
        None
    };
    Ok(AbcQuantities { a, b, c, d })
}
