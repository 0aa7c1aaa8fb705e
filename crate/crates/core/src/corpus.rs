//! Named test subjects and corpus loading.

use std::path::Path;

use crate::error::SemigroupError;
use crate::io::{read_semigroup, FileError};
use crate::semigroup::{
    chain_semilattice, cyclic_group, direct_product, symmetric_group, symmetric_inverse_monoid,
    InverseSemigroup,
};

/// Environment variable naming a directory of semigroup files to use as the
/// default corpus.
pub const CORPUS_DIR_ENV: &str = "INVSEMI_CORPUS_DIR";

pub const DEFAULT_CORPUS: &[&str] = &[
    "chain2",
    "chain3",
    "chain4",
    "chain5",
    "chain6",
    "Z2",
    "Z6",
    "S3",
    "Z3xchain2",
    "Z2xchain3",
    "I2",
    "I3",
];

/// Builds a semigroup from its builtin name: `chain<k>`, `Z<k>`, `S<k>`,
/// `I<k>`, or `<A>x<B>` for a direct product.
pub fn builtin(name: &str) -> Result<InverseSemigroup, SemigroupError> {
    if let Some((left, right)) = name.split_once('x') {
        return Ok(direct_product(&builtin(left)?, &builtin(right)?));
    }
    let bad = || SemigroupError::BadParams(format!("unknown builtin semigroup {name:?}"));
    let (kind, degree) = if let Some(rest) = name.strip_prefix("chain") {
        ("chain", rest)
    } else if name.len() > 1 && name.is_char_boundary(1) {
        name.split_at(1)
    } else {
        return Err(bad());
    };
    let k: usize = degree.parse().map_err(|_| bad())?;
    match kind {
        "chain" => chain_semilattice(k),
        "Z" => cyclic_group(k),
        "S" => symmetric_group(k),
        "I" => symmetric_inverse_monoid(k),
        _ => Err(bad()),
    }
}

/// A named corpus entry; invalid files are kept so the failure can be
/// reported alongside the valid entries.
pub type CorpusEntry = (String, Result<InverseSemigroup, FileError>);

/// Resolves a selector that is either a builtin name or a path to a
/// semigroup file.
pub fn resolve(selector: &str) -> CorpusEntry {
    let path = Path::new(selector);
    if path.extension().is_some_and(|e| e == "json") || path.is_file() {
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or(selector)
            .to_string();
        return (name, read_semigroup(path));
    }
    (
        selector.to_string(),
        builtin(selector).map_err(FileError::from),
    )
}

/// Every `*.json` file in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<CorpusEntry>, FileError> {
    let read = std::fs::read_dir(dir).map_err(|source| FileError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut paths: Vec<_> = read
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    Ok(paths
        .iter()
        .map(|p| resolve(p.to_str().expect("utf-8 path")))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("chain4").unwrap().len(), 4);
        assert_eq!(builtin("Z6").unwrap().len(), 6);
        assert_eq!(builtin("S3").unwrap().len(), 6);
        assert_eq!(builtin("I3").unwrap().len(), 34);
        let p = builtin("Z2xchain3").unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.name(), Some("Z2xchain3"));
        assert!(builtin("Q8").is_err());
        assert!(builtin("chain").is_err());
        assert!(builtin("").is_err());
        assert!(builtin("I9").is_err());
    }

    #[test]
    fn default_corpus_is_buildable() {
        for name in DEFAULT_CORPUS {
            let s = builtin(name).unwrap();
            assert_eq!(s.name(), Some(*name));
        }
    }
}
