//! Finite inverse semigroups given by a multiplication table.
//!
//! Elements are dense indices `0..n`. A table is accepted only after it has
//! been checked to be associative and to carry a unique generalized inverse
//! for every element; all checks are exact integer comparisons.

mod build;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::SemigroupError;

pub use build::{
    chain_semilattice, cyclic_group, direct_product, group_from_table, symmetric_group,
    symmetric_inverse_monoid, MAX_INVERSE_MONOID_DEGREE,
};

/// Stable identifiers of the structural invariants this module guarantees.
pub const INVARIANTS: &[&str] = &[
    "semigroup.axioms",
    "semigroup.restricted_semigroup_valid",
    "semigroup.restricted_star_agrees",
    "semigroup.idempotents_commutative_closed",
    "semigroup.product_zero_free",
    "semigroup.restricted_product_matches_delta",
];

/// A validated finite inverse semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSemigroup {
    name: Option<String>,
    n: usize,
    table: Vec<usize>,
    star: Vec<usize>,
    names: Option<Vec<String>>,
    identity: Option<usize>,
    zero: Option<usize>,
    idempotents: Vec<usize>,
    // range_class[e] lists every y with y y* = e (empty unless e is idempotent)
    range_class: Vec<Vec<usize>>,
}

/// A subset of the element indices of some semigroup.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(BTreeSet<usize>);

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, x: usize) -> bool {
        self.0.insert(x)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for ElementSet {
    fn from(items: [usize; N]) -> Self {
        items.into_iter().collect()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Validates a multiplication table and returns the inverse semigroup it
/// defines.
///
/// `table[i][j]` is the index of the product `x_i x_j`. When `star` is absent
/// the involution is derived by searching, for each `x`, the unique `s` with
/// `x s x = x` and `s x s = s`.
pub fn validate_table(
    table: &[Vec<usize>],
    star: Option<&[usize]>,
) -> Result<InverseSemigroup, SemigroupError> {
    let n = table.len();
    if n == 0 {
        return Err(SemigroupError::Empty);
    }
    let mut flat = Vec::with_capacity(n * n);
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != n {
            return Err(SemigroupError::Ragged {
                row,
                len: entries.len(),
                expected: n,
            });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= n {
                return Err(SemigroupError::IndexOutOfRange {
                    location: format!("table[{row}][{col}]"),
                    value,
                    n,
                });
            }
        }
        flat.extend_from_slice(entries);
    }
    let mul = |a: usize, b: usize| flat[a * n + b];

    for i in 0..n {
        for j in 0..n {
            let ij = mul(i, j);
            for k in 0..n {
                if mul(ij, k) != mul(i, mul(j, k)) {
                    return Err(SemigroupError::NotAssociative { i, j, k });
                }
            }
        }
    }

    if let Some(star) = star {
        if star.len() != n {
            return Err(SemigroupError::BadParams(format!(
                "star has {} entries for {n} elements",
                star.len()
            )));
        }
        for (x, &s) in star.iter().enumerate() {
            if s >= n {
                return Err(SemigroupError::IndexOutOfRange {
                    location: format!("star[{x}]"),
                    value: s,
                    n,
                });
            }
        }
    }

    let mut derived = Vec::with_capacity(n);
    for x in 0..n {
        let mut inverses = (0..n).filter(|&s| mul(mul(x, s), x) == x && mul(mul(s, x), s) == s);
        let Some(first) = inverses.next() else {
            return Err(SemigroupError::NotRegular(x));
        };
        if let Some(second) = inverses.next() {
            return Err(SemigroupError::InverseNotUnique { x, first, second });
        }
        if let Some(star) = star {
            if star[x] != first {
                return Err(SemigroupError::StarMismatch { x, star: star[x] });
            }
        }
        derived.push(first);
    }

    Ok(InverseSemigroup::assemble(flat, derived))
}

impl InverseSemigroup {
    // Caller guarantees the table is associative with unique inverses.
    fn assemble(table: Vec<usize>, star: Vec<usize>) -> Self {
        let n = star.len();
        let mul = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n).find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x));
        let zero = (0..n).find(|&z| (0..n).all(|x| mul(z, x) == z && mul(x, z) == z));
        let idempotents: Vec<usize> = (0..n).filter(|&e| mul(e, e) == e).collect();
        debug_assert!(idempotents
            .iter()
            .all(|&e| idempotents.iter().all(|&f| mul(e, f) == mul(f, e))));
        let mut range_class = vec![Vec::new(); n];
        for y in 0..n {
            range_class[mul(y, star[y])].push(y);
        }
        Self {
            name: None,
            n,
            table,
            star,
            names: None,
            identity,
            zero,
            idempotents,
            range_class,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, SemigroupError> {
        if labels.len() != self.n {
            return Err(SemigroupError::NameCount {
                got: labels.len(),
                n: self.n,
            });
        }
        self.names = Some(labels);
        Ok(self)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display label of `x`, falling back to its index.
    pub fn label(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    #[inline]
    pub fn star(&self, x: usize) -> usize {
        self.star[x]
    }

    pub fn star_map(&self) -> &[usize] {
        &self.star
    }

    /// `x* x`, the source idempotent of `x` in the associated groupoid.
    #[inline]
    pub fn domain(&self, x: usize) -> usize {
        self.mul(self.star[x], x)
    }

    /// `x x*`, the target idempotent of `x` in the associated groupoid.
    #[inline]
    pub fn range(&self, x: usize) -> usize {
        self.mul(x, self.star[x])
    }

    /// All `y` with `y y* = e`.
    pub fn range_class(&self, e: usize) -> &[usize] {
        &self.range_class[e]
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// True when both semigroups have the same table and involution.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table && self.star == other.star
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> ElementSet {
        self.idempotents.iter().copied().collect()
    }

    pub fn idempotent_list(&self) -> &[usize] {
        &self.idempotents
    }

    /// `e <= f` in the natural order on idempotents, i.e. `ef = e`.
    pub fn natural_order(&self, e: usize, f: usize) -> Result<bool, SemigroupError> {
        for x in [e, f] {
            if !self.is_idempotent(x) {
                return Err(SemigroupError::NotIdempotent(x));
            }
        }
        Ok(self.mul(e, f) == e)
    }

    /// `xy` when `x* x = y y*`, otherwise undefined.
    pub fn restricted_product(&self, x: usize, y: usize) -> Option<usize> {
        (self.domain(x) == self.range(y)).then(|| self.mul(x, y))
    }

    /// `F • G = { st : s in F, t in G, s* s = t t* }`.
    pub fn restricted_set_product(&self, f: &ElementSet, g: &ElementSet) -> ElementSet {
        f.iter()
            .flat_map(|s| g.iter().filter_map(move |t| self.restricted_product(s, t)))
            .collect()
    }

    /// `F* = { s* : s in F }`.
    pub fn star_set(&self, f: &ElementSet) -> ElementSet {
        f.iter().map(|s| self.star(s)).collect()
    }

    /// Every element has `x x* = identity`.
    pub fn is_group(&self) -> bool {
        match self.identity {
            Some(one) => self.elements().all(|x| self.range(x) == one),
            None => false,
        }
    }

    /// Commutative, all idempotent, and totally ordered by the natural order.
    pub fn is_chain(&self) -> bool {
        self.idempotents.len() == self.n
            && self.elements().all(|e| {
                self.elements().all(|f| {
                    let ef = self.mul(e, f);
                    ef == self.mul(f, e) && (ef == e || ef == f)
                })
            })
    }

    /// The restricted semigroup `S_r`: the associated groupoid with a fresh
    /// absorbing zero adjoined at index `n`.
    ///
    /// The fresh zero is adjoined even when `self` already has a zero.
    pub fn restricted_semigroup(&self) -> InverseSemigroup {
        let n = self.n;
        let z = n;
        let mut rows = vec![vec![z; n + 1]; n + 1];
        for (x, row) in rows.iter_mut().enumerate().take(n) {
            for (y, entry) in row.iter_mut().enumerate().take(n) {
                if let Some(xy) = self.restricted_product(x, y) {
                    *entry = xy;
                }
            }
        }
        let mut star = self.star.clone();
        star.push(z);
        let sr = validate_table(&rows, Some(&star))
            .expect("restricted semigroup of a valid inverse semigroup must validate");
        let sr = match &self.name {
            Some(name) => sr.with_name(format!("{name}_r")),
            None => sr,
        };
        match &self.names {
            Some(names) => {
                let mut labels = names.clone();
                labels.push("0_r".to_string());
                sr.with_labels(labels).expect("label count matches")
            }
            None => sr,
        }
    }

    /// Whether `sr` is (structurally) the restricted semigroup of `self`,
    /// with the adjoined zero at index `self.len()`.
    pub fn is_restricted_semigroup_of_self(&self, sr: &InverseSemigroup) -> bool {
        sr.same_structure(&self.restricted_semigroup())
    }
}
