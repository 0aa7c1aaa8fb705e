//! Complex-valued functions on a finite inverse semigroup and the two
//! convolution products on them.
//!
//! At finite size every function lies in every `l^p(S)`, so one dense type
//! serves as an element of `l^1(S)`, `l^2(S)` and the restricted algebra
//! `l^1_r(S)`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::semigroup::{ElementSet, InverseSemigroup};

pub const INVARIANTS: &[&str] = &[
    "algebra.associativity",
    "algebra.tilde_antimultiplicative",
    "algebra.support_lemma",
    "algebra.polarization",
    "algebra.submultiplicative_l1",
    "algebra.identity",
];

/// Which `l^p` norm to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    Inf,
}

/// A function `S -> C`, stored densely by element index.
#[derive(Debug, Clone, PartialEq)]
pub struct SFunction {
    base: Arc<InverseSemigroup>,
    values: Vec<Complex64>,
}

pub(crate) fn same_base(a: &Arc<InverseSemigroup>, b: &Arc<InverseSemigroup>) -> bool {
    Arc::ptr_eq(a, b) || a.same_structure(b)
}

impl SFunction {
    pub fn new(base: &Arc<InverseSemigroup>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != base.len() {
            return Err(Error::DimensionMismatch {
                expected: base.len(),
                got: values.len(),
            });
        }
        Ok(Self {
            base: Arc::clone(base),
            values,
        })
    }

    pub fn from_real(base: &Arc<InverseSemigroup>, values: &[f64]) -> Result<Self> {
        Self::new(
            base,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn from_fn(base: &Arc<InverseSemigroup>, f: impl FnMut(usize) -> Complex64) -> Self {
        Self {
            base: Arc::clone(base),
            values: base.elements().map(f).collect(),
        }
    }

    pub fn zeros(base: &Arc<InverseSemigroup>) -> Self {
        Self {
            base: Arc::clone(base),
            values: vec![Complex64::new(0.0, 0.0); base.len()],
        }
    }

    /// Point mass at `x`.
    pub fn delta(base: &Arc<InverseSemigroup>, x: usize) -> Self {
        let mut f = Self::zeros(base);
        f.values[x] = Complex64::new(1.0, 0.0);
        f
    }

    /// Indicator of a set of elements.
    pub fn indicator(base: &Arc<InverseSemigroup>, set: &ElementSet) -> Self {
        let mut f = Self::zeros(base);
        for x in set.iter() {
            f.values[x] = Complex64::new(1.0, 0.0);
        }
        f
    }

    pub fn base(&self) -> &Arc<InverseSemigroup> {
        &self.base
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if same_base(&self.base, &other.base) {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            base: Arc::clone(&self.base),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.check_base(other)?;
        Ok(Self {
            base: Arc::clone(&self.base),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|v| c * v)
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    /// `(f * g)(x) = sum over st = x of f(s) g(t)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let s = &self.base;
        let mut out = Self::zeros(s);
        for (a, &fa) in self.values.iter().enumerate() {
            if fa == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (b, &gb) in other.values.iter().enumerate() {
                out.values[s.mul(a, b)] += fa * gb;
            }
        }
        Ok(out)
    }

    /// `(f • g)(x) = sum over y with x* x = y y* of f(xy) g(y*)`.
    pub fn restricted_convolve(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let s = &self.base;
        Ok(Self::from_fn(s, |x| {
            s.range_class(s.domain(x))
                .iter()
                .map(|&y| self.values[s.mul(x, y)] * other.values[s.star(y)])
                .sum()
        }))
    }

    /// `f̌(x) = f(x*)`.
    pub fn check_involution(&self) -> Self {
        Self::from_fn(&self.base, |x| self.values[self.base.star(x)])
    }

    /// `f̃(x) = conj f(x*)`.
    pub fn tilde_involution(&self) -> Self {
        Self::from_fn(&self.base, |x| self.values[self.base.star(x)].conj())
    }

    pub fn norm(&self, p: Norm) -> f64 {
        match p {
            Norm::L1 => self.values.iter().map(|v| v.norm()).sum(),
            Norm::L2 => self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt(),
            Norm::Inf => self.values.iter().map(|v| v.norm()).fold(0.0, f64::max),
        }
    }

    /// `<f, g> = sum f(x) conj g(x)`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        self.check_base(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    /// Elements where `|f(x)| > tol`. Use `tol = 0.0` for exactly constructed
    /// inputs.
    pub fn support(&self, tol: f64) -> ElementSet {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm() > tol)
            .map(|(x, _)| x)
            .collect()
    }

    /// `max_x |f(x) - g(x)|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.minus(other)?.norm(Norm::Inf))
    }
}

/// The unit of `l^1_r(S)`: the indicator of the idempotents.
pub fn algebra_identity(base: &Arc<InverseSemigroup>) -> SFunction {
    SFunction::indicator(base, &base.idempotents())
}

/// Right-hand side of the polarization identity for `f • g̃`:
/// `(f+g)•(f+g)~ - (f-g)•(f-g)~ + i (f+ig)•(f+ig)~ - i (f-ig)•(f-ig)~`.
pub fn polarization_rhs(f: &SFunction, g: &SFunction) -> Result<SFunction> {
    let i = Complex64::new(0.0, 1.0);
    let square = |h: &SFunction| h.restricted_convolve(&h.tilde_involution());
    let ig = g.scale(i);
    let terms = [
        (Complex64::new(1.0, 0.0), f.plus(g)?),
        (Complex64::new(-1.0, 0.0), f.minus(g)?),
        (i, f.plus(&ig)?),
        (-i, f.minus(&ig)?),
    ];
    let mut out = SFunction::zeros(f.base());
    for (c, h) in &terms {
        out = out.plus(&square(h)?.scale(*c))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{chain_semilattice, cyclic_group, symmetric_inverse_monoid};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn group_convolution() {
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let d1 = SFunction::delta(&z2, 1);
        assert_eq!(d1.convolve(&d1).unwrap(), SFunction::delta(&z2, 0));
        assert_eq!(
            d1.restricted_convolve(&d1).unwrap(),
            SFunction::delta(&z2, 0)
        );
        assert_eq!(d1.tilde_involution(), d1);
    }

    #[test]
    fn chain_convolutions() {
        let ch = Arc::new(chain_semilattice(2).unwrap());
        let d0 = SFunction::delta(&ch, 0);
        let d1 = SFunction::delta(&ch, 1);
        assert_eq!(d0.convolve(&d1).unwrap(), d1);

        // restricted product on a semilattice is pointwise
        let f = SFunction::new(&ch, vec![c(2.0, 1.0), c(-3.0, 0.5)]).unwrap();
        let g = SFunction::new(&ch, vec![c(0.5, -1.0), c(4.0, 2.0)]).unwrap();
        let fg = f.restricted_convolve(&g).unwrap();
        assert_eq!(fg.values(), &[f.get(0) * g.get(0), f.get(1) * g.get(1)]);

        let real = SFunction::from_real(&ch, &[1.5, -2.0]).unwrap();
        assert_eq!(real.tilde_involution(), real);
        assert_eq!(real.check_involution(), real);
    }

    #[test]
    fn identity_element_acts_trivially() {
        let i2 = Arc::new(symmetric_inverse_monoid(2).unwrap());
        let one = i2.identity().unwrap();
        let f = SFunction::from_fn(&i2, |x| c(x as f64, 1.0 - x as f64));
        assert_eq!(SFunction::delta(&i2, one).convolve(&f).unwrap(), f);

        let unit = algebra_identity(&i2);
        assert_eq!(unit.support(0.0).len(), 4);
        assert_eq!(unit.restricted_convolve(&f).unwrap(), f);
        assert_eq!(f.restricted_convolve(&unit).unwrap(), f);

        let ch = Arc::new(chain_semilattice(2).unwrap());
        assert_eq!(algebra_identity(&ch).values(), &[c(1.0, 0.0), c(1.0, 0.0)]);
        let z2 = Arc::new(cyclic_group(2).unwrap());
        assert_eq!(algebra_identity(&z2), SFunction::delta(&z2, 0));
    }

    #[test]
    fn norms_and_inner_products() {
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let f = SFunction::from_real(&z2, &[3.0, 4.0]).unwrap();
        assert_eq!(f.norm(Norm::L2), 5.0);
        assert_eq!(f.norm(Norm::L1), 7.0);
        assert_eq!(f.norm(Norm::Inf), 4.0);
        for x in 0..2 {
            let dx = SFunction::delta(&z2, x);
            for p in [Norm::L1, Norm::L2, Norm::Inf] {
                assert_eq!(dx.norm(p), 1.0);
            }
            for y in 0..2 {
                let expected = if x == y { 1.0 } else { 0.0 };
                assert_eq!(
                    dx.inner_product(&SFunction::delta(&z2, y)).unwrap(),
                    c(expected, 0.0)
                );
            }
        }
    }

    #[test]
    fn base_mismatch_is_reported() {
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let ch = Arc::new(chain_semilattice(2).unwrap());
        let f = SFunction::delta(&z2, 0);
        let g = SFunction::delta(&ch, 0);
        assert_eq!(f.convolve(&g), Err(Error::BaseMismatch));
        assert_eq!(f.restricted_convolve(&g), Err(Error::BaseMismatch));
        assert_eq!(f.inner_product(&g), Err(Error::BaseMismatch));
        assert_eq!(polarization_rhs(&f, &g), Err(Error::BaseMismatch));
        assert!(matches!(
            SFunction::from_real(&z2, &[1.0]),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 1
            })
        ));
        // structurally equal bases are interchangeable
        let z2b = Arc::new(cyclic_group(2).unwrap());
        assert!(f.plus(&SFunction::delta(&z2b, 1)).is_ok());
    }

    #[test]
    fn polarization_edge_cases() {
        let i2 = Arc::new(symmetric_inverse_monoid(2).unwrap());
        let f = SFunction::from_fn(&i2, |x| c(x as f64 - 2.0, 0.5 * x as f64));
        let ff = f.restricted_convolve(&f.tilde_involution()).unwrap();
        let rhs = polarization_rhs(&f, &f).unwrap();
        assert!(rhs.max_abs_diff(&ff.scale(c(4.0, 0.0))).unwrap() < 1e-12);
        let zero = SFunction::zeros(&i2);
        assert!(polarization_rhs(&f, &zero).unwrap().norm(Norm::Inf) < 1e-12);
    }
}
