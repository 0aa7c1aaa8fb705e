//! Decision procedures for positive definite, restricted positive definite
//! and extendible restricted positive definite functions, together with the
//! square-root factorization `φ = ξ • ξ̃`.
//!
//! Every procedure works on the Gram matrix over the full element list. A
//! quadratic form over an arbitrary tuple `(x_1, .., x_m)` with coefficients
//! `c` equals the full form evaluated at the aggregated coefficient vector
//! `C_x = sum_{i : x_i = x} c_i`, so positivity of the full matrix decides
//! positivity for all tuples, repetitions included.

use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{algebra_identity, Norm, SFunction};
use crate::linalg::{hermitian_defect, max_abs, skew_part, CMatrix, CVector, HermitianSpectrum};
use crate::representation::{apply_lambda, lift_rho};
use crate::semigroup::InverseSemigroup;

pub const INVARIANTS: &[&str] = &[
    "pd.godement_equivalence",
    "pd.finite_collapse",
    "pd.group_coincidence",
    "pd.chain_characterization",
    "pd.tau_isomorphism",
    "pd.tuple_oracle",
    "pd.witness_replay",
    "pd.functional_consistency",
];

/// Upper bound on `||φ - ξ • ξ̃||_∞` accepted from [`godement_factorize`].
pub const RECONSTRUCTION_BOUND: f64 = 1e-8;

/// Relative residual allowed when testing `ū ∈ range(M)`.
pub const RANGE_RESIDUAL: f64 = 1e-8;

/// Relative eigenvalue cutoff for the pseudoinverse.
pub const PINV_CUTOFF: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// How far below zero an eigenvalue (or quadratic form) may fall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// `factor * max(1, scale)`, where the scale is the spectral radius.
    Relative(f64),
    Absolute(f64),
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::Relative(1e-9)
    }
}

impl Tolerance {
    pub fn resolve(self, scale: f64) -> f64 {
        match self {
            Tolerance::Relative(factor) => factor * scale.max(1.0),
            Tolerance::Absolute(tol) => tol,
        }
    }
}

/// Verdict and numerical evidence from a positivity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: bool,
    /// Eigenvalues of the (Hermitian part of the) Gram matrix, ascending.
    pub spectrum: Vec<f64>,
    /// Coefficients over the element list for which the defining quadratic
    /// form is not a nonnegative real.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Complex64>>,
    /// Minimal extendibility constant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<f64>,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Whether a quadratic form value fails to be a nonnegative real.
pub fn violates(q: Complex64, tol: f64) -> bool {
    q.re < -tol || q.im.abs() > tol
}

/// `K[i, j] = u(x_i* x_j)`.
pub fn gram_pd(u: &SFunction) -> CMatrix {
    let s = u.base();
    let n = s.len();
    CMatrix::from_fn(n, n, |i, j| u.get(s.mul(s.star(i), j)))
}

/// `M[i, j] = u(x_i* x_j)` if `x_i x_i* = x_j x_j*`, else `0`.
///
/// This equals the matrix of `ρ̃_r(u)`.
pub fn gram_rpd(u: &SFunction) -> CMatrix {
    let s = u.base();
    let n = s.len();
    CMatrix::from_fn(n, n, |i, j| {
        if s.range(i) == s.range(j) {
            u.get(s.mul(s.star(i), j))
        } else {
            ZERO
        }
    })
}

/// `sum_ij conj(c_i) c_j u(x_i* x_j)` over an arbitrary tuple.
pub fn pd_form(u: &SFunction, tuple: &[usize], coeffs: &[Complex64]) -> Complex64 {
    let s = u.base();
    let mut total = ZERO;
    for (&xi, ci) in tuple.iter().zip(coeffs) {
        for (&xj, cj) in tuple.iter().zip(coeffs) {
            total += ci.conj() * cj * u.get(s.mul(s.star(xi), xj));
        }
    }
    total
}

/// `sum_ij conj(c_i) c_j (λ_r(x_i) u)(x_j)` over an arbitrary tuple.
pub fn rpd_form(u: &SFunction, tuple: &[usize], coeffs: &[Complex64]) -> Complex64 {
    let mut total = ZERO;
    for (&xi, ci) in tuple.iter().zip(coeffs) {
        let shifted = apply_lambda(xi, u);
        for (&xj, cj) in tuple.iter().zip(coeffs) {
            total += ci.conj() * cj * shifted.get(xj);
        }
    }
    total
}

/// `|sum_i c_i u(x_i)|^2`, the left side of the extendibility inequality.
pub fn extendibility_lhs(u: &SFunction, tuple: &[usize], coeffs: &[Complex64]) -> f64 {
    tuple
        .iter()
        .zip(coeffs)
        .map(|(&x, c)| c * u.get(x))
        .sum::<Complex64>()
        .norm_sqr()
}

fn unit(v: CVector) -> Vec<Complex64> {
    let norm = v.norm();
    if norm > 0.0 {
        v.unscale(norm).iter().copied().collect()
    } else {
        v.iter().copied().collect()
    }
}

/// Shared PSD decision on a Gram matrix. No Hermitian symmetrization is
/// applied to the verdict: a defect beyond twice the tolerance fails.
fn decide_psd(check: &str, m: &CMatrix, tol: Tolerance) -> (CheckReport, HermitianSpectrum) {
    let spectrum = HermitianSpectrum::new(m);
    let t = tol.resolve(spectrum.spectral_radius().max(max_abs(m)));
    let defect = hermitian_defect(m);
    let mut report = CheckReport {
        check: check.to_string(),
        verdict: true,
        spectrum: spectrum.values.clone(),
        witness: None,
        constant: None,
        tolerance: t,
        detail: None,
    };
    if spectrum.min() < -t {
        report.verdict = false;
        report.witness = Some(unit(spectrum.vector(0)));
        report.detail = Some(format!("minimum eigenvalue {:e}", spectrum.min()));
    } else if defect > 2.0 * t {
        // the eigenvector of the dominant skew eigenvalue makes the form non-real
        let skew = HermitianSpectrum::new(&skew_part(m));
        let k = if skew.max().abs() >= skew.min().abs() {
            skew.values.len() - 1
        } else {
            0
        };
        report.verdict = false;
        report.witness = Some(unit(skew.vector(k)));
        report.detail = Some(format!("Gram matrix is not Hermitian (defect {defect:e})"));
    }
    (report, spectrum)
}

/// Decides `u ∈ P(S)`.
pub fn is_pd(u: &SFunction, tol: Tolerance) -> CheckReport {
    decide_psd("pd", &gram_pd(u), tol).0
}

/// Decides `u ∈ P_r(S)`.
pub fn is_rpd(u: &SFunction, tol: Tolerance) -> CheckReport {
    decide_psd("rpd", &gram_rpd(u), tol).0
}

/// Decides membership in the extendible restricted positive definite cone:
/// `u = ũ`, `M = gram_rpd(u)` positive semidefinite and `ū ∈ range(M)`.
/// On success `constant` is the least `c` with
/// `|sum c_i u(x_i)|^2 <= c * sum conj(c_i) c_j M_ij`, namely `ū* M⁺ ū`.
pub fn is_extendible_rpd(u: &SFunction, tol: Tolerance) -> CheckReport {
    let m = gram_rpd(u);
    let (mut report, spectrum) = decide_psd("extendible", &m, tol);
    if !report.verdict {
        return report;
    }
    let asymmetry = u.max_abs_diff(&u.tilde_involution()).expect("same base");
    if asymmetry > report.tolerance {
        // unreachable when M is Hermitian, kept as a direct check of u = ũ
        report.verdict = false;
        report.detail = Some(format!("u differs from its involution by {asymmetry:e}"));
        return report;
    }
    let target = CVector::from_iterator(u.len(), u.values().iter().map(|v| v.conj()));
    let pinv = spectrum.pinv(PINV_CUTOFF);
    let solved = &pinv * &target;
    let projected = crate::linalg::hermitian_part(&m) * &solved;
    let miss = &target - &projected;
    let residual = miss.norm();
    if residual > RANGE_RESIDUAL * u.norm(Norm::L2) {
        report.verdict = false;
        report.detail = Some(format!(
            "conj(u) is not in the range of the Gram matrix (residual {residual:e})"
        ));
        report.witness = Some(unit(miss));
        return report;
    }
    report.constant = Some((target.adjoint() * solved)[(0, 0)].re.max(0.0));
    report
}

/// A square-root factor `ξ` with `φ = ξ • ξ̃`.
#[derive(Debug, Clone, PartialEq)]
pub struct GodementFactorization {
    pub xi: SFunction,
    /// `||φ - ξ • ξ̃||_∞`.
    pub reconstruction_error: f64,
}

/// Factors a restricted positive definite `φ` as `ξ • ξ̃` with
/// `ξ = conj(ρ̃_r(φ)^{1/2} 1_E)`, where `1_E` is the unit of the restricted
/// algebra.
pub fn godement_factorize(phi: &SFunction, tol: Tolerance) -> Result<GodementFactorization> {
    let base = phi.base();
    let p = lift_rho(phi).into_matrix();
    let (report, spectrum) = decide_psd("rpd", &p, tol);
    if !report.verdict {
        return Err(Error::NotRpd {
            min_eigenvalue: spectrum.min(),
            tolerance: report.tolerance,
            witness: report.witness.unwrap_or_default(),
        });
    }
    let root = spectrum
        .sqrt(report.tolerance)
        .map_err(|min_eigenvalue| Error::NotRpd {
            min_eigenvalue,
            tolerance: report.tolerance,
            witness: unit(spectrum.vector(0)),
        })?;
    let unit_vector = CVector::from_column_slice(algebra_identity(base).values());
    let image = root * unit_vector;
    let xi = SFunction::new(base, image.iter().map(|v| v.conj()).collect())?;
    let reconstruction = xi.restricted_convolve(&xi.tilde_involution())?;
    let reconstruction_error = phi.max_abs_diff(&reconstruction)?;
    if reconstruction_error.is_nan() || reconstruction_error > RECONSTRUCTION_BOUND {
        return Err(Error::ReconstructionFailed {
            residual: reconstruction_error,
            bound: RECONSTRUCTION_BOUND,
        });
    }
    Ok(GodementFactorization {
        xi,
        reconstruction_error,
    })
}

/// Extension by zero from `S` to `S_r`.
pub fn tau_extend(u: &SFunction, sr: &Arc<InverseSemigroup>) -> Result<SFunction> {
    if !u.base().is_restricted_semigroup_of_self(sr) {
        return Err(Error::BaseMismatch);
    }
    let mut values = u.values().to_vec();
    values.push(ZERO);
    SFunction::new(sr, values)
}

/// Restriction from `S_r` to `S`, dropping the adjoined zero.
pub fn tau_restrict(v: &SFunction, base: &Arc<InverseSemigroup>) -> Result<SFunction> {
    if !base.is_restricted_semigroup_of_self(v.base()) {
        return Err(Error::BaseMismatch);
    }
    SFunction::new(base, v.values()[..base.len()].to_vec())
}

/// A function with independent standard complex Gaussian values.
pub fn random_complex_function<R: Rng + ?Sized>(
    base: &Arc<InverseSemigroup>,
    rng: &mut R,
) -> SFunction {
    SFunction::from_fn(base, |_| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * FRAC_1_SQRT_2
    })
}

/// `ξ • ξ̃` for a seeded Gaussian `ξ`; certified extendible before return.
pub fn random_rpd(base: &Arc<InverseSemigroup>, seed: u64) -> SFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xi = random_complex_function(base, &mut rng);
    let phi = xi
        .restricted_convolve(&xi.tilde_involution())
        .expect("same base");
    let report = is_extendible_rpd(&phi, Tolerance::default());
    assert!(
        report.verdict,
        "generated ξ•ξ̃ failed certification: {:?}",
        report.detail
    );
    phi
}

/// Samples the dual-cone condition `sum_x (f̃ • f)(x) u(x) >= 0`.
///
/// Every point mass is tried first, then `trials` seeded Gaussian `f`. The
/// first failing `f` is returned as the witness; since the pairing equals
/// the restricted quadratic form at `f`, it is also a witness for `is_rpd`.
pub fn positive_functional_check(
    u: &SFunction,
    trials: usize,
    seed: u64,
    tol: Tolerance,
) -> CheckReport {
    let base = u.base();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spectrum = HermitianSpectrum::new(&gram_rpd(u)).values;
    let mut worst_tol: f64 = 0.0;
    let candidates = base
        .elements()
        .map(|x| SFunction::delta(base, x))
        .chain((0..trials).map(|_| random_complex_function(base, &mut rng)));
    for f in candidates {
        let positive = f
            .tilde_involution()
            .restricted_convolve(&f)
            .expect("same base");
        let pairing: Complex64 = positive
            .values()
            .iter()
            .zip(u.values())
            .map(|(a, b)| a * b)
            .sum();
        let scale: f64 = positive
            .values()
            .iter()
            .zip(u.values())
            .map(|(a, b)| a.norm() * b.norm())
            .sum();
        let t = tol.resolve(scale);
        worst_tol = worst_tol.max(t);
        if violates(pairing, t) {
            return CheckReport {
                check: "functional".into(),
                verdict: false,
                spectrum,
                witness: Some(f.into_values()),
                constant: None,
                tolerance: t,
                detail: Some(format!("pairing {pairing}")),
            };
        }
    }
    CheckReport {
        check: "functional".into(),
        verdict: true,
        spectrum,
        witness: None,
        constant: None,
        tolerance: worst_tol,
        detail: None,
    }
}

/// Re-evaluates the definitional quadratic form of `check` at the report's
/// witness over the full element list; `Some(q)` when there is a witness.
pub fn replay_witness(u: &SFunction, report: &CheckReport) -> Option<Complex64> {
    let witness = report.witness.as_ref()?;
    let tuple: Vec<usize> = u.base().elements().collect();
    Some(match report.check.as_str() {
        "pd" => pd_form(u, &tuple, witness),
        _ => rpd_form(u, &tuple, witness),
    })
}
