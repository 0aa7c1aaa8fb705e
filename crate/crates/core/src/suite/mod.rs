//! Reproducible verification suite: every module invariant, run against
//! every semigroup of a corpus.
//!
//! Each (semigroup, property) pair draws from its own ChaCha stream derived
//! from the master seed, so reports are byte-identical for a fixed
//! configuration regardless of how entries are scheduled.

mod properties;
pub mod sample;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{load_dir, resolve, CorpusEntry, DEFAULT_CORPUS};
use crate::io::FileError;
use crate::positive::Tolerance;
use crate::semigroup::InverseSemigroup;

pub use properties::{property_ids, Property, PROPERTIES};

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Builtin names or semigroup file paths.
    pub corpus: Vec<String>,
    /// Directory whose `*.json` files are appended to the corpus.
    pub corpus_dir: Option<PathBuf>,
    pub trials: usize,
    pub seed: u64,
    /// Bound on residuals of identities that hold up to rounding.
    pub residual_tolerance: f64,
    pub psd_tolerance: Tolerance,
    /// Run only properties whose id starts with one of these prefixes.
    pub only: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            corpus: Vec::new(),
            corpus_dir: None,
            trials: 200,
            seed: 0,
            residual_tolerance: 1e-10,
            psd_tolerance: Tolerance::default(),
            only: Vec::new(),
        }
    }
}

impl SuiteConfig {
    pub fn corpus_entries(&self) -> Result<Vec<CorpusEntry>, FileError> {
        let mut entries: Vec<CorpusEntry> = self.corpus.iter().map(|s| resolve(s)).collect();
        if let Some(dir) = &self.corpus_dir {
            entries.extend(load_dir(dir)?);
        }
        if entries.is_empty() {
            entries = DEFAULT_CORPUS.iter().map(|s| resolve(s)).collect();
        }
        Ok(entries)
    }

    fn selected(&self, id: &str) -> bool {
        self.only.is_empty() || self.only.iter().any(|p| id.starts_with(p.as_str()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub id: String,
    pub statement: String,
    pub status: Status,
    pub trials: usize,
    pub max_residual: f64,
    /// Failing witness, or the reason a property does not apply.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryReport {
    pub semigroup: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub properties: Vec<PropertyResult>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub invalid_entries: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub residual_tolerance: f64,
    pub entries: Vec<EntryReport>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.invalid_entries == 0
    }

    /// Pretty JSON with sorted object keys.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
        out.push('\n');
        out
    }

    /// One line per (semigroup, property), rendered from the JSON form.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        for entry in value["entries"].as_array().into_iter().flatten() {
            let name = entry["semigroup"].as_str().unwrap_or("?");
            if !entry["valid"].as_bool().unwrap_or(false) {
                let _ = writeln!(
                    out,
                    "INVALID {name}: {}",
                    entry["error"].as_str().unwrap_or("")
                );
                continue;
            }
            for p in entry["properties"].as_array().into_iter().flatten() {
                let status = p["status"].as_str().unwrap_or("?").to_uppercase();
                let _ = write!(
                    out,
                    "{status:<4} {name:<12} {:<42} trials={:<4} max_residual={:e}",
                    p["id"].as_str().unwrap_or("?"),
                    p["trials"],
                    p["max_residual"].as_f64().unwrap_or(f64::NAN),
                );
                if let Some(d) = p["detail"].as_str() {
                    let _ = write!(out, " ({d})");
                }
                out.push('\n');
            }
        }
        let s = &value["summary"];
        let _ = writeln!(
            out,
            "summary: {} passed, {} failed, {} skipped, {} invalid entries",
            s["passed"], s["failed"], s["skipped"], s["invalid_entries"]
        );
        out
    }
}

/// Runs the suite over the configured corpus.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport, FileError> {
    let corpus = config.corpus_entries()?;
    Ok(run_on(config, corpus))
}

/// Runs the suite over explicit entries.
pub fn run_on(config: &SuiteConfig, corpus: Vec<CorpusEntry>) -> SuiteReport {
    let entries: Vec<EntryReport> = corpus
        .into_par_iter()
        .enumerate()
        .map(|(index, (name, semigroup))| match semigroup {
            Ok(s) => run_entry(config, index, name, Arc::new(s)),
            Err(e) => EntryReport {
                semigroup: name,
                size: None,
                valid: false,
                error: Some(e.to_string()),
                properties: Vec::new(),
            },
        })
        .collect();
    let mut summary = Summary::default();
    for entry in &entries {
        if !entry.valid {
            summary.invalid_entries += 1;
        }
        for p in &entry.properties {
            match p.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skip => summary.skipped += 1,
            }
        }
    }
    SuiteReport {
        seed: config.seed,
        trials: config.trials,
        residual_tolerance: config.residual_tolerance,
        entries,
        summary,
    }
}

fn run_entry(
    config: &SuiteConfig,
    index: usize,
    name: String,
    s: Arc<InverseSemigroup>,
) -> EntryReport {
    let ctx = properties::Context {
        s: &s,
        trials: config.trials.max(1),
        residual_tol: config.residual_tolerance,
        psd_tol: config.psd_tolerance,
    };
    let properties = PROPERTIES
        .iter()
        .enumerate()
        .filter(|(_, p)| config.selected(p.id))
        .map(|(k, p)| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(((index as u64) << 32) | k as u64);
            p.evaluate(&ctx, &mut rng)
        })
        .collect();
    EntryReport {
        semigroup: name,
        size: Some(s.len()),
        valid: true,
        error: None,
        properties,
    }
}
