//! Constructors for the standard families used as test subjects.

use super::{validate_table, InverseSemigroup};
use crate::error::SemigroupError;

/// Largest degree accepted by [`symmetric_inverse_monoid`] (209 elements).
pub const MAX_INVERSE_MONOID_DEGREE: usize = 4;

const MAX_SYMMETRIC_GROUP_DEGREE: usize = 5;

/// The chain `{0, .., k-1}` under `xy = max(x, y)` with `x* = x`.
///
/// Index 0 is the identity and `k - 1` is the zero.
pub fn chain_semilattice(k: usize) -> Result<InverseSemigroup, SemigroupError> {
    if k == 0 {
        return Err(SemigroupError::BadParams(
            "chain needs at least one element".into(),
        ));
    }
    let rows: Vec<Vec<usize>> = (0..k).map(|x| (0..k).map(|y| x.max(y)).collect()).collect();
    let star: Vec<usize> = (0..k).collect();
    Ok(validate_table(&rows, Some(&star))?.with_name(format!("chain{k}")))
}

/// The cyclic group `Z_k` written additively.
pub fn cyclic_group(k: usize) -> Result<InverseSemigroup, SemigroupError> {
    if k == 0 {
        return Err(SemigroupError::BadParams(
            "cyclic group needs k >= 1".into(),
        ));
    }
    let rows: Vec<Vec<usize>> = (0..k)
        .map(|x| (0..k).map(|y| (x + y) % k).collect())
        .collect();
    let star: Vec<usize> = (0..k).map(|x| (k - x) % k).collect();
    Ok(validate_table(&rows, Some(&star))?.with_name(format!("Z{k}")))
}

/// Validates `table` and additionally requires it to be a group.
pub fn group_from_table(table: &[Vec<usize>]) -> Result<InverseSemigroup, SemigroupError> {
    let s = validate_table(table, None)?;
    let Some(one) = s.identity() else {
        return Err(SemigroupError::NotAGroup(0));
    };
    if let Some(x) = s.elements().find(|&x| s.range(x) != one) {
        return Err(SemigroupError::NotAGroup(x));
    }
    Ok(s)
}

/// The symmetric group on `k` points as a multiplication table, with
/// permutations in lexicographic order and `(pq)(i) = p(q(i))`.
pub fn symmetric_group(k: usize) -> Result<InverseSemigroup, SemigroupError> {
    if k == 0 || k > MAX_SYMMETRIC_GROUP_DEGREE {
        return Err(SemigroupError::SizeLimit {
            what: "symmetric_group",
            max: MAX_SYMMETRIC_GROUP_DEGREE,
            got: k,
        });
    }
    let perms: Vec<Vec<Option<usize>>> = partial_bijections(k)
        .into_iter()
        .filter(|p| p.iter().all(Option::is_some))
        .collect();
    let (rows, labels) = compose_table(&perms);
    group_from_table(&rows)?
        .with_name(format!("S{k}"))
        .with_labels(labels)
}

/// The symmetric inverse monoid `I_k` of all partial bijections of a
/// `k`-point set under composition `(xy)(i) = x(y(i))`.
pub fn symmetric_inverse_monoid(k: usize) -> Result<InverseSemigroup, SemigroupError> {
    if k == 0 || k > MAX_INVERSE_MONOID_DEGREE {
        return Err(SemigroupError::SizeLimit {
            what: "symmetric_inverse_monoid",
            max: MAX_INVERSE_MONOID_DEGREE,
            got: k,
        });
    }
    let maps = partial_bijections(k);
    let (rows, labels) = compose_table(&maps);
    validate_table(&rows, None)?
        .with_name(format!("I{k}"))
        .with_labels(labels)
}

/// Componentwise product; element `(i, j)` has index `i * |T| + j`.
pub fn direct_product(s: &InverseSemigroup, t: &InverseSemigroup) -> InverseSemigroup {
    let m = t.len();
    let n = s.len() * m;
    let split = |x: usize| (x / m, x % m);
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let (a, b) = split(x);
            (0..n)
                .map(|y| {
                    let (c, d) = split(y);
                    s.mul(a, c) * m + t.mul(b, d)
                })
                .collect()
        })
        .collect();
    let star: Vec<usize> = (0..n)
        .map(|x| {
            let (a, b) = split(x);
            s.star(a) * m + t.star(b)
        })
        .collect();
    let labels = (0..n)
        .map(|x| {
            let (a, b) = split(x);
            format!("({},{})", s.label(a), t.label(b))
        })
        .collect();
    let product = validate_table(&rows, Some(&star))
        .expect("direct product of inverse semigroups is an inverse semigroup")
        .with_labels(labels)
        .expect("label count matches");
    match (s.name(), t.name()) {
        (Some(a), Some(b)) => product.with_name(format!("{a}x{b}")),
        _ => product,
    }
}

// Partial bijections of {0..k-1} in lexicographic order, None sorting first.
fn partial_bijections(k: usize) -> Vec<Vec<Option<usize>>> {
    fn extend(
        k: usize,
        current: &mut Vec<Option<usize>>,
        used: &mut [bool],
        out: &mut Vec<Vec<Option<usize>>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        current.push(None);
        extend(k, current, used, out);
        current.pop();
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                current.push(Some(v));
                extend(k, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(k, &mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

fn compose_table(maps: &[Vec<Option<usize>>]) -> (Vec<Vec<usize>>, Vec<String>) {
    let index_of = |m: &Vec<Option<usize>>| {
        maps.iter()
            .position(|p| p == m)
            .expect("closed under composition")
    };
    let rows = maps
        .iter()
        .map(|x| {
            maps.iter()
                .map(|y| {
                    let xy: Vec<Option<usize>> =
                        y.iter().map(|&yi| yi.and_then(|j| x[j])).collect();
                    index_of(&xy)
                })
                .collect()
        })
        .collect();
    let labels = maps
        .iter()
        .map(|m| {
            let images: Vec<String> = m
                .iter()
                .map(|v| v.map_or_else(|| "_".to_string(), |v| v.to_string()))
                .collect();
            format!("[{}]", images.join(","))
        })
        .collect();
    (rows, labels)
}
