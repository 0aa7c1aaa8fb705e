//! Matrix realizations of the restricted regular representations and
//! validators for (restricted) `*`-representations.
//!
//! The restricted left regular representation acts on `l^2(S)` by
//! `λ_r(s) δ_y = δ_{sy}` when `s* s = y y*` and `0` otherwise; the right one by
//! `(ρ_r(u) ξ)(x) = ξ(xu)` when `u u* = x* x` and `0` otherwise.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::{same_base, SFunction};
use crate::linalg::{largest_singular_value, max_abs, CMatrix, CVector};
use crate::semigroup::InverseSemigroup;

pub const INVARIANTS: &[&str] = &[
    "rep.commutation",
    "rep.rho_positivity",
    "rep.gram_identity",
    "rep.lambda_homomorphism",
    "rep.regular_restricted",
    "rep.lambda_functional_matrix_agree",
    "rep.coefficient_extendible",
];

/// Entrywise tolerance for the algebraic laws checked on representations.
pub const LAW_TOLERANCE: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A square matrix acting on a finite-dimensional Hilbert space attached to
/// a semigroup (usually `l^2(S)`).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    base: Arc<InverseSemigroup>,
    matrix: CMatrix,
}

impl LinearOperator {
    pub fn new(base: &Arc<InverseSemigroup>, matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                got: matrix.ncols(),
            });
        }
        Ok(Self {
            base: Arc::clone(base),
            matrix,
        })
    }

    pub fn base(&self) -> &Arc<InverseSemigroup> {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Applies the operator to a function on `S` viewed as a vector in `l^2(S)`.
    pub fn apply(&self, f: &SFunction) -> Result<SFunction> {
        if !same_base(&self.base, f.base()) || self.dim() != f.len() {
            return Err(Error::BaseMismatch);
        }
        let v = &self.matrix * CVector::from_column_slice(f.values());
        SFunction::new(&self.base, v.iter().copied().collect())
    }
}

/// An assignment of a `dim x dim` matrix to every element of a semigroup.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    base: Arc<InverseSemigroup>,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl Representation {
    pub fn new(base: &Arc<InverseSemigroup>, dim: usize, matrices: Vec<CMatrix>) -> Result<Self> {
        if matrices.len() != base.len() {
            return Err(Error::DimensionMismatch {
                expected: base.len(),
                got: matrices.len(),
            });
        }
        if let Some(bad) = matrices
            .iter()
            .find(|m| m.nrows() != dim || m.ncols() != dim)
        {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.nrows().max(bad.ncols()),
            });
        }
        Ok(Self {
            base: Arc::clone(base),
            dim,
            matrices,
        })
    }

    /// `π(x) = [1]` for every `x`.
    pub fn trivial(base: &Arc<InverseSemigroup>) -> Self {
        Self {
            base: Arc::clone(base),
            dim: 1,
            matrices: vec![CMatrix::from_element(1, 1, ONE); base.len()],
        }
    }

    pub fn base(&self) -> &Arc<InverseSemigroup> {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn get(&self, x: usize) -> &CMatrix {
        &self.matrices[x]
    }

    /// `sum_x f(x) π(x)`.
    pub fn lift(&self, f: &SFunction) -> Result<LinearOperator> {
        if !same_base(&self.base, f.base()) {
            return Err(Error::BaseMismatch);
        }
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (x, &fx) in f.values().iter().enumerate() {
            if fx != ZERO {
                m += &self.matrices[x] * fx;
            }
        }
        LinearOperator::new(&self.base, m)
    }
}

/// Restricted left regular representation: `λ_r(s)[x, y] = 1` iff `x = sy`
/// and `s* s = y y*`.
pub fn lambda_r(base: &Arc<InverseSemigroup>) -> Representation {
    let n = base.len();
    let matrices = base
        .elements()
        .map(|s| {
            let mut m = CMatrix::zeros(n, n);
            for &y in base.range_class(base.domain(s)) {
                m[(base.mul(s, y), y)] = ONE;
            }
            m
        })
        .collect();
    Representation {
        base: Arc::clone(base),
        dim: n,
        matrices,
    }
}

/// Restricted right regular representation: `ρ_r(u)[x, y] = 1` iff `y = xu`
/// and `u u* = x* x`.
pub fn rho_r(base: &Arc<InverseSemigroup>) -> Representation {
    let n = base.len();
    let matrices = base
        .elements()
        .map(|u| {
            let mut m = CMatrix::zeros(n, n);
            for x in base.elements() {
                if base.range(u) == base.domain(x) {
                    m[(x, base.mul(x, u))] = ONE;
                }
            }
            m
        })
        .collect();
    Representation {
        base: Arc::clone(base),
        dim: n,
        matrices,
    }
}

/// Functional form of the left action: `(λ_r(s) f)(x) = f(s* x)` when
/// `s s* = x x*`, else `0`.
pub fn apply_lambda(s: usize, f: &SFunction) -> SFunction {
    let base = f.base();
    SFunction::from_fn(base, |x| {
        if base.range(s) == base.range(x) {
            f.get(base.mul(base.star(s), x))
        } else {
            ZERO
        }
    })
}

/// Functional form of the right action: `(ρ_r(u) ξ)(x) = ξ(xu)` when
/// `u u* = x* x`, else `0`.
pub fn apply_rho(u: usize, xi: &SFunction) -> SFunction {
    let base = xi.base();
    SFunction::from_fn(base, |x| {
        if base.range(u) == base.domain(x) {
            xi.get(base.mul(x, u))
        } else {
            ZERO
        }
    })
}

/// `λ̃_r(f) = sum_y f(y) λ_r(y)`, assembled directly from the action.
pub fn lift_lambda(f: &SFunction) -> LinearOperator {
    let base = f.base();
    let n = base.len();
    let mut m = CMatrix::zeros(n, n);
    for y in base.elements() {
        let fy = f.get(y);
        if fy == ZERO {
            continue;
        }
        for &z in base.range_class(base.domain(y)) {
            m[(base.mul(y, z), z)] += fy;
        }
    }
    LinearOperator {
        base: Arc::clone(base),
        matrix: m,
    }
}

/// `ρ̃_r(φ) = sum_z φ(z) ρ_r(z)`, assembled directly from the action.
pub fn lift_rho(phi: &SFunction) -> LinearOperator {
    let base = phi.base();
    let n = base.len();
    let mut m = CMatrix::zeros(n, n);
    for x in base.elements() {
        for &u in base.range_class(base.domain(x)) {
            m[(x, base.mul(x, u))] += phi.get(u);
        }
    }
    LinearOperator {
        base: Arc::clone(base),
        matrix: m,
    }
}

/// The first law a candidate representation breaks.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum RepViolation {
    /// `π(x)π(y)` disagrees with the required product.
    Product { x: usize, y: usize, residual: f64 },
    /// `π(x*) != π(x)*`.
    Star { x: usize, residual: f64 },
    /// `π(x) π(x)* π(x) != π(x)`.
    PartialIsometry { x: usize, residual: f64 },
    /// `||π(x)|| > 1`.
    Norm { x: usize, value: f64 },
}

impl fmt::Display for RepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Product { x, y, residual } => {
                write!(f, "product law fails at ({x}, {y}), residual {residual:e}")
            }
            Self::Star { x, residual } => write!(f, "star law fails at {x}, residual {residual:e}"),
            Self::PartialIsometry { x, residual } => {
                write!(f, "not a partial isometry at {x}, residual {residual:e}")
            }
            Self::Norm { x, value } => write!(f, "norm of element {x} is {value}"),
        }
    }
}

/// Verdict of a representation check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepresentationReport {
    pub check: String,
    pub verdict: bool,
    pub violation: Option<RepViolation>,
    /// `sup_x ||π(x)||`.
    pub max_norm: f64,
    pub tolerance: f64,
}

fn check_laws(
    pi: &Representation,
    check: &str,
    expected_product: impl Fn(usize, usize) -> Option<usize>,
) -> RepresentationReport {
    let base = &pi.base;
    let zero = CMatrix::zeros(pi.dim, pi.dim);
    let norms: Vec<f64> = pi.matrices.iter().map(largest_singular_value).collect();
    let max_norm = norms.iter().fold(0.0, |a: f64, &b| a.max(b));
    let report = |violation: Option<RepViolation>| RepresentationReport {
        check: check.to_string(),
        verdict: violation.is_none(),
        violation,
        max_norm,
        tolerance: LAW_TOLERANCE,
    };

    for x in base.elements() {
        let value = norms[x];
        if value > 1.0 + LAW_TOLERANCE * value.max(1.0) {
            return report(Some(RepViolation::Norm { x, value }));
        }
    }
    for x in base.elements() {
        let residual = max_abs(&(pi.get(base.star(x)) - pi.get(x).adjoint()));
        if residual > LAW_TOLERANCE {
            return report(Some(RepViolation::Star { x, residual }));
        }
    }
    for x in base.elements() {
        let m = pi.get(x);
        let residual = max_abs(&(m * m.adjoint() * m - m));
        if residual > LAW_TOLERANCE {
            return report(Some(RepViolation::PartialIsometry { x, residual }));
        }
    }
    for x in base.elements() {
        for y in base.elements() {
            let product = pi.get(x) * pi.get(y);
            let target = expected_product(x, y).map_or(&zero, |xy| pi.get(xy));
            let residual = max_abs(&(product - target));
            if residual > LAW_TOLERANCE {
                return report(Some(RepViolation::Product { x, y, residual }));
            }
        }
    }
    report(None)
}

/// Checks `π(xy) = π(x)π(y)`, `π(x*) = π(x)*`, the partial-isometry law
/// and `||π|| <= 1`.
pub fn is_star_representation(pi: &Representation) -> RepresentationReport {
    let base = Arc::clone(&pi.base);
    check_laws(pi, "star_representation", move |x, y| Some(base.mul(x, y)))
}

/// Checks `π(x)π(y) = π(xy)` when `x* x = y y*` and `0` otherwise, together
/// with the star law and `||π|| <= 1`.
pub fn is_restricted_representation(pi: &Representation) -> RepresentationReport {
    let base = Arc::clone(&pi.base);
    check_laws(pi, "restricted_representation", move |x, y| {
        base.restricted_product(x, y)
    })
}

/// Extends a restricted representation of `S` to `S_r` by sending the
/// adjoined zero to `0`.
pub fn extend_to_sr(pi: &Representation, sr: &Arc<InverseSemigroup>) -> Result<Representation> {
    if !pi.base.is_restricted_semigroup_of_self(sr) {
        return Err(Error::BaseMismatch);
    }
    let report = is_restricted_representation(pi);
    if let Some(violation) = report.violation {
        return Err(Error::NotRestricted(violation.to_string()));
    }
    let mut matrices = pi.matrices.clone();
    matrices.push(CMatrix::zeros(pi.dim, pi.dim));
    Ok(Representation {
        base: Arc::clone(sr),
        dim: pi.dim,
        matrices,
    })
}

/// Restricts a representation of `S_r` that kills the adjoined zero back
/// to `S`.
pub fn restrict_from_sr(
    pi0: &Representation,
    base: &Arc<InverseSemigroup>,
) -> Result<Representation> {
    if !base.is_restricted_semigroup_of_self(&pi0.base) {
        return Err(Error::BaseMismatch);
    }
    let zero = base.len();
    if max_abs(pi0.get(zero)) > LAW_TOLERANCE {
        return Err(Error::ZeroNotKilled);
    }
    Ok(Representation {
        base: Arc::clone(base),
        dim: pi0.dim,
        matrices: pi0.matrices[..zero].to_vec(),
    })
}

/// `u(x) = <π(x) ξ, ξ>`.
pub fn coefficient_function(pi: &Representation, xi: &[Complex64]) -> Result<SFunction> {
    if xi.len() != pi.dim {
        return Err(Error::DimensionMismatch {
            expected: pi.dim,
            got: xi.len(),
        });
    }
    let v = CVector::from_column_slice(xi);
    Ok(SFunction::from_fn(&pi.base, |x| {
        (v.adjoint() * pi.get(x) * &v)[(0, 0)]
    }))
}
