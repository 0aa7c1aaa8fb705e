//! Reference implementations written straight from the definitions, used
//! to cross-check the library.

#![allow(dead_code)]

use invsemi::{Complex64, InverseSemigroup};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `s* s = t t*`, read off the table.
pub fn composable(s: &InverseSemigroup, a: usize, b: usize) -> bool {
    s.mul(s.star(a), a) == s.mul(b, s.star(b))
}

/// `f • g = sum over composable (a, b) of f(a) g(b) δ_ab`.
pub fn restricted_convolve(
    s: &InverseSemigroup,
    f: &[Complex64],
    g: &[Complex64],
) -> Vec<Complex64> {
    let mut out = vec![ZERO; s.len()];
    for a in s.elements() {
        for b in s.elements() {
            if composable(s, a, b) {
                out[s.mul(a, b)] += f[a] * g[b];
            }
        }
    }
    out
}

/// `f~(x) = conj f(x*)`.
pub fn tilde(s: &InverseSemigroup, f: &[Complex64]) -> Vec<Complex64> {
    s.elements().map(|x| f[s.star(x)].conj()).collect()
}

/// `sum_ij conj(c_i) c_j u(x_i* x_j)`.
pub fn pd_form(
    s: &InverseSemigroup,
    u: &[Complex64],
    tuple: &[usize],
    c: &[Complex64],
) -> Complex64 {
    let mut total = ZERO;
    for (i, &xi) in tuple.iter().enumerate() {
        for (j, &xj) in tuple.iter().enumerate() {
            total += c[i].conj() * c[j] * u[s.mul(s.star(xi), xj)];
        }
    }
    total
}

/// `sum_ij conj(c_i) c_j u(x_i* x_j) [x_i x_i* = x_j x_j*]`.
pub fn rpd_form(
    s: &InverseSemigroup,
    u: &[Complex64],
    tuple: &[usize],
    c: &[Complex64],
) -> Complex64 {
    let mut total = ZERO;
    for (i, &xi) in tuple.iter().enumerate() {
        for (j, &xj) in tuple.iter().enumerate() {
            if s.mul(xi, s.star(xi)) == s.mul(xj, s.star(xj)) {
                total += c[i].conj() * c[j] * u[s.mul(s.star(xi), xj)];
            }
        }
    }
    total
}

/// Determinant by fraction-free elimination.
pub fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// A real symmetric integer matrix is positive semidefinite iff every
/// principal minor is nonnegative.
pub fn psd_exact(m: &[Vec<i128>]) -> bool {
    let n = m.len();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sub = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| m[i][j]).collect())
            .collect();
        det(sub) >= 0
    })
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn determinant_oracle() {
    assert_eq!(det(vec![vec![2, 1], vec![1, 2]]), 3);
    assert_eq!(det(vec![vec![0, 1], vec![1, 0]]), -1);
    assert_eq!(det(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), -3);
    assert!(psd_exact(&[vec![1, 1], vec![1, 1]]));
    assert!(!psd_exact(&[vec![0, 1], vec![1, 0]]));
    assert!(!psd_exact(&[vec![1, 2], vec![2, 1]]));
}
