//! Seeded end-to-end checks of the library against independent oracles,
//! one per acceptance criterion, with a tab-separated report line each.

mod criteria;
pub mod fixtures;
pub mod gen;

use std::fmt;
use std::str::FromStr;
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

pub use criteria::{brute_force_sat, solver_corpus, structure_catalog, table_fidelity};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x7011_5eed;

/// Failure descriptions kept per criterion.
const MAX_EXAMPLES: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown criterion {0}, expected 1 to {n}", n = CRITERIA.len())]
    UnknownCriterion(usize),
    #[error("unknown level `{0}`, expected quick or full")]
    UnknownLevel(String),
}

/// How much randomized work each criterion does. `Full` uses the sample
/// sizes of the acceptance criteria, `Quick` smaller ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    fn pick<T>(self, quick: T, full: T) -> T {
        match self {
            Level::Quick => quick,
            Level::Full => full,
        }
    }
}

impl FromStr for Level {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(SuiteError::UnknownLevel(other.into())),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.pick("quick", "full"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub level: Level,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            level: Level::Full,
        }
    }
}

/// Names of the criteria, indexed from 1.
pub const CRITERIA: [&str; 11] = [
    "composition-tables",
    "geometry-soundness",
    "solver-oracle",
    "realization-round-trip",
    "fo2-translation",
    "axiom-soundness",
    "domino-ready-witness",
    "finite-tiling-reduction",
    "s5-cube-encoding",
    "fl4-translation",
    "regression-corpus",
];

/// Outcome of one criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Individual comparisons made.
    pub checked: u64,
    /// Comparisons that failed.
    pub failures: u64,
    /// The first few failures.
    pub examples: Vec<String>,
    /// Facts worth reporting that do not affect the verdict.
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl CriterionReport {
    /// `id  name  PASS|FAIL  checked=N  failures=N  Tms  notes`
    pub fn tsv(&self) -> String {
        let mut details: Vec<String> = self.notes.clone();
        details.extend(self.examples.iter().map(|e| format!("failure: {e}")));
        format!(
            "{}\t{}\t{}\tchecked={}\tfailures={}\t{}ms\t{}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.checked,
            self.failures,
            self.elapsed.as_millis(),
            details.join("; ")
        )
    }
}

/// Counts comparisons while a criterion runs.
pub(crate) struct Tally {
    checked: u64,
    failures: u64,
    examples: Vec<String>,
    notes: Vec<String>,
    start: Instant,
}

impl Tally {
    pub(crate) fn new() -> Tally {
        Tally {
            checked: 0,
            failures: 0,
            examples: Vec::new(),
            notes: Vec::new(),
            start: Instant::now(),
        }
    }

    pub(crate) fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(describe());
        }
    }

    /// Records a failure that is not the outcome of a comparison, such as an
    /// error from the code under test.
    pub(crate) fn fail(&mut self, what: String) {
        self.failures += 1;
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(what);
        }
    }

    pub(crate) fn note(&mut self, what: String) {
        self.notes.push(what);
    }

    pub(crate) fn finish(self, id: usize) -> CriterionReport {
        CriterionReport {
            id,
            name: CRITERIA[id - 1],
            passed: self.failures == 0,
            checked: self.checked,
            failures: self.failures,
            examples: self.examples,
            notes: self.notes,
            elapsed: self.start.elapsed(),
        }
    }
}

/// Runs criterion `id` (from 1).
pub fn run_criterion(id: usize, cfg: &SuiteConfig) -> Result<CriterionReport, SuiteError> {
    let run: fn(&SuiteConfig) -> CriterionReport = match id {
        1 => criteria::composition_tables,
        2 => criteria::geometry_soundness,
        3 => criteria::solver_oracle,
        4 => criteria::realization_round_trip,
        5 => criteria::fo2_translation,
        6 => criteria::axiom_soundness,
        7 => criteria::domino_ready_witness,
        8 => criteria::finite_tiling_reduction,
        9 => criteria::s5_cube_encoding,
        10 => criteria::fl4_translation,
        11 => criteria::regression_corpus,
        other => return Err(SuiteError::UnknownCriterion(other)),
    };
    Ok(run(cfg))
}

/// Runs every criterion in order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<CriterionReport> {
    (1..=CRITERIA.len())
        .map(|id| run_criterion(id, cfg).expect("id in range"))
        .collect()
}

/// Runs every criterion, concurrently when more than one core is available.
/// Reports are in criterion order either way, and each criterion's result
/// depends only on the configuration.
pub fn run_all_concurrent(cfg: &SuiteConfig) -> Vec<CriterionReport> {
    let cores = thread::available_parallelism().map_or(1, |n| n.get());
    if cores < 2 {
        return run_all(cfg);
    }
    thread::scope(|s| {
        let handles: Vec<_> = (1..=CRITERIA.len())
            .map(|id| s.spawn(move || run_criterion(id, cfg).expect("id in range")))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread"))
            .collect()
    })
}

/// `PASS k/n` over a set of reports.
pub fn summary(reports: &[CriterionReport]) -> String {
    let passed = reports.iter().filter(|r| r.passed).count();
    format!("PASS {passed}/{}", reports.len())
}
