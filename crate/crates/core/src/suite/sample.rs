//! Seeded generators for test functions, tuples and fuzzed negatives.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use crate::function::SFunction;
use crate::linalg::{CMatrix, HermitianSpectrum};
use crate::positive::random_complex_function;
use crate::semigroup::InverseSemigroup;

/// Independent standard complex Gaussian values.
pub fn gaussian<R: Rng + ?Sized>(base: &Arc<InverseSemigroup>, rng: &mut R) -> SFunction {
    random_complex_function(base, rng)
}

/// Gaussian-integer values with real and imaginary parts in `-max..=max`
/// (imaginary parts zero unless `complex`).
pub fn integer<R: Rng + ?Sized>(
    base: &Arc<InverseSemigroup>,
    rng: &mut R,
    max: i32,
    complex: bool,
) -> SFunction {
    SFunction::from_fn(base, |_| {
        let re = rng.random_range(-max..=max) as f64;
        let im = if complex {
            rng.random_range(-max..=max) as f64
        } else {
            0.0
        };
        Complex64::new(re, im)
    })
}

/// Values in `{0, 1, 2, 3}`, zero with probability about one half.
pub fn nonnegative_sparse<R: Rng + ?Sized>(base: &Arc<InverseSemigroup>, rng: &mut R) -> SFunction {
    SFunction::from_fn(base, |_| {
        let v = if rng.random_bool(0.5) {
            0
        } else {
            rng.random_range(1..=3)
        };
        Complex64::new(v as f64, 0.0)
    })
}

/// `ξ • ξ̃` for Gaussian `ξ`.
pub fn factor_square<R: Rng + ?Sized>(base: &Arc<InverseSemigroup>, rng: &mut R) -> SFunction {
    let xi = gaussian(base, rng);
    xi.restricted_convolve(&xi.tilde_involution())
        .expect("same base")
}

/// `(w + w̃) / 2` for Gaussian `w`; satisfies `u = ũ` and is usually not
/// positive definite.
pub fn hermitian<R: Rng + ?Sized>(base: &Arc<InverseSemigroup>, rng: &mut R) -> SFunction {
    let w = gaussian(base, rng);
    w.plus(&w.tilde_involution())
        .expect("same base")
        .scale(Complex64::new(0.5, 0.0))
}

/// A mixture of positive, indefinite and near-boundary functions, all with
/// `u = ũ` except the last family, which is arbitrary.
pub fn mixed<R: Rng + ?Sized>(base: &Arc<InverseSemigroup>, rng: &mut R) -> SFunction {
    match rng.random_range(0..5) {
        0 => factor_square(base, rng),
        1 => factor_square(base, rng)
            .plus(&factor_square(base, rng))
            .expect("same base"),
        2 => hermitian(base, rng),
        3 => {
            let u = factor_square(base, rng);
            let e = pick_idempotent(base, rng);
            let t = rng.random_range(0.0..0.5) * u.get(e).re;
            u.minus(&SFunction::delta(base, e).scale(Complex64::new(t, 0.0)))
                .expect("same base")
        }
        _ => gaussian(base, rng),
    }
}

pub fn pick_idempotent<R: Rng + ?Sized>(base: &InverseSemigroup, rng: &mut R) -> usize {
    let idem = base.idempotent_list();
    idem[rng.random_range(0..idem.len())]
}

/// A tuple of 1 to `max_len` elements (repetitions allowed) with Gaussian
/// coefficients.
pub fn tuple<R: Rng + ?Sized>(
    base: &InverseSemigroup,
    rng: &mut R,
    max_len: usize,
) -> (Vec<usize>, Vec<Complex64>) {
    let len = rng.random_range(1..=max_len);
    let elements = (0..len).map(|_| rng.random_range(0..base.len())).collect();
    let coeffs = (0..len)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    (elements, coeffs)
}

/// Like [`tuple`] but with Gaussian-integer coefficients.
pub fn integer_tuple<R: Rng + ?Sized>(
    base: &InverseSemigroup,
    rng: &mut R,
    max_len: usize,
) -> (Vec<usize>, Vec<Complex64>) {
    let len = rng.random_range(1..=max_len);
    let elements = (0..len).map(|_| rng.random_range(0..base.len())).collect();
    let coeffs = (0..len)
        .map(|_| {
            Complex64::new(
                rng.random_range(-3..=3) as f64,
                rng.random_range(-3..=3) as f64,
            )
        })
        .collect();
    (elements, coeffs)
}

/// Coefficients summed per element: `C_x = sum_{i : x_i = x} c_i`.
pub fn aggregate(n: usize, elements: &[usize], coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (&x, &c) in elements.iter().zip(coeffs) {
        out[x] += c;
    }
    out
}

/// Lowers `u` at a random idempotent until `gram(u)` has an eigenvalue
/// below `-margin`. `u = ũ` is preserved.
pub fn push_negative<R: Rng + ?Sized>(
    u: &SFunction,
    rng: &mut R,
    gram: fn(&SFunction) -> CMatrix,
    margin: f64,
) -> SFunction {
    let base = u.base();
    let e = pick_idempotent(base, rng);
    let mut t = margin;
    loop {
        let v = u
            .minus(&SFunction::delta(base, e).scale(Complex64::new(t, 0.0)))
            .expect("same base");
        if HermitianSpectrum::new(&gram(&v)).min() < -margin {
            return v;
        }
        t *= 2.0;
    }
}
