//! Dense complex linear algebra helpers over `nalgebra`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Eigen-decomposition of a Hermitian matrix with eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    pub values: Vec<f64>,
    /// Column `k` is a unit eigenvector for `values[k]`.
    pub vectors: CMatrix,
}

impl HermitianSpectrum {
    /// Decomposes `m`, which must already be Hermitian (only its
    /// Hermitian part is used).
    pub fn new(m: &CMatrix) -> Self {
        let n = m.nrows();
        if n == 0 {
            return Self {
                values: Vec::new(),
                vectors: CMatrix::zeros(0, 0),
            };
        }
        let eig = hermitian_part(m).symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
        Self { values, vectors }
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn vector(&self, k: usize) -> CVector {
        self.vectors.column(k).into_owned()
    }

    /// `V f(D) V*`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (k, &v) in self.values.iter().enumerate() {
            let fv = Complex64::new(f(v), 0.0);
            for i in 0..n {
                scaled[(i, k)] *= fv;
            }
        }
        scaled * self.vectors.adjoint()
    }

    /// Principal square root, clipping eigenvalues in `[-tol, 0)` to zero.
    /// Returns the offending eigenvalue if one lies below `-tol`.
    pub fn sqrt(&self, tol: f64) -> Result<CMatrix, f64> {
        if self.min() < -tol {
            return Err(self.min());
        }
        Ok(self.apply(|v| v.max(0.0).sqrt()))
    }

    /// Moore-Penrose pseudoinverse keeping eigenvalues with
    /// `|v| > rel_cutoff * max |v|`.
    pub fn pinv(&self, rel_cutoff: f64) -> CMatrix {
        let cutoff = rel_cutoff * self.spectral_radius();
        self.apply(|v| {
            if v.abs() > cutoff && v != 0.0 {
                1.0 / v
            } else {
                0.0
            }
        })
    }
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// `(M - M*) / 2i`, Hermitian; zero iff `m` is Hermitian.
pub fn skew_part(m: &CMatrix) -> CMatrix {
    (m - m.adjoint()) * Complex64::new(0.0, -0.5)
}

/// `max |m_ij - conj m_ji|`.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.norm()))
}

pub fn largest_singular_value(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .fold(0.0, |acc: f64, &v| acc.max(v))
}

/// `c* M c = sum conj(c_i) c_j M_ij`.
pub fn quadratic_form(m: &CMatrix, c: &CVector) -> Complex64 {
    (c.adjoint() * m * c)[(0, 0)]
}
