//! Golden-file corpus of worked examples.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use normlog_core::output::to_canonical_json;
use serde::Deserialize;

use crate::{check_files, load_programs, solve_to_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseKind {
    /// Enumerate models, optionally filtered by a query.
    Solve,
    /// Check a narrative of facts against a base program.
    Check,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CorpusCase {
    pub name: String,
    pub kind: CaseKind,
    pub programs: Vec<String>,
    #[serde(default)]
    pub narrative: Option<String>,
    #[serde(default)]
    pub query: Option<String>,
    pub golden: String,
    pub locus: String,
    /// The expected output is our reading, not stated in the source text.
    #[serde(default)]
    pub reconstructed: bool,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Manifest {
    pub case: Vec<CorpusCase>,
}

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn load_manifest(dir: &Path) -> Result<Manifest> {
    let path = dir.join("manifest.toml");
    let text =
        fs::read_to_string(&path).with_context(|| format!("cannot read {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("bad manifest {}", path.display()))
}

impl CorpusCase {
    pub fn program_paths(&self, dir: &Path) -> Vec<PathBuf> {
        self.programs.iter().map(|p| dir.join(p)).collect()
    }

    /// Canonical JSON produced by the current build.
    pub fn run(&self, dir: &Path) -> Result<String> {
        match self.kind {
            CaseKind::Solve => {
                let program = load_programs(&self.program_paths(dir))?;
                solve_to_json(&program, self.query.as_deref(), None)
            }
            CaseKind::Check => {
                let narrative = self
                    .narrative
                    .as_ref()
                    .context("check case without a narrative")?;
                let base = dir.join(&self.programs[0]);
                let report = check_files(&base, &dir.join(narrative))?;
                Ok(to_canonical_json(&report))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Blessed,
    Mismatch { expected: String, actual: String },
    Error(String),
}

#[derive(Clone, Debug)]
pub struct CaseOutcome {
    pub name: String,
    pub status: Status,
    pub elapsed: Duration,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Blessed)
    }
}

fn run_one(dir: &Path, case: &CorpusCase, bless: bool) -> CaseOutcome {
    let start = Instant::now();
    let golden = dir.join(&case.golden);
    let status = match case.run(dir) {
        Err(e) => Status::Error(format!("{e:#}")),
        Ok(actual) if bless => match fs::write(&golden, format!("{actual}\n")) {
            Ok(()) => Status::Blessed,
            Err(e) => Status::Error(format!("cannot write {}: {e}", golden.display())),
        },
        Ok(actual) => match fs::read_to_string(&golden) {
            Ok(expected) if expected.trim_end() == actual => Status::Pass,
            Ok(expected) => Status::Mismatch {
                expected: expected.trim_end().to_owned(),
                actual,
            },
            Err(e) => Status::Error(format!("cannot read {}: {e}", golden.display())),
        },
    };
    CaseOutcome {
        name: case.name.clone(),
        status,
        elapsed: start.elapsed(),
    }
}

/// Run every case whose name contains `filter`, in parallel, in manifest order.
pub fn run_corpus(dir: &Path, filter: Option<&str>, bless: bool) -> Result<Vec<CaseOutcome>> {
    let manifest = load_manifest(dir)?;
    let cases: Vec<&CorpusCase> = manifest
        .case
        .iter()
        .filter(|c| filter.is_none_or(|f| c.name.contains(f)))
        .collect();
    let outcomes = std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .iter()
            .map(|c| s.spawn(move || run_one(dir, c, bless)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("corpus worker panicked"))
            .collect()
    });
    Ok(outcomes)
}

pub fn print_table(outcomes: &[CaseOutcome]) {
    let width = outcomes
        .iter()
        .map(|o| o.name.len())
        .max()
        .unwrap_or(4)
        .max(4);
    for o in outcomes {
        let verdict = match &o.status {
            Status::Pass => "pass",
            Status::Blessed => "blessed",
            Status::Mismatch { .. } => "FAIL",
            Status::Error(_) => "ERROR",
        };
        println!(
            "{:<width$}  {verdict:<7}  {:>6.1} ms",
            o.name,
            o.elapsed.as_secs_f64() * 1000.0
        );
        match &o.status {
            Status::Mismatch { expected, actual } => {
                println!("    expected: {expected}");
                println!("    actual:   {actual}");
            }
            Status::Error(e) => println!("    {e}"),
            _ => {}
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    println!("{passed}/{} cases passed", outcomes.len());
}
