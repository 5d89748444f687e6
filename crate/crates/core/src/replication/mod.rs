//! Shipped fixtures and the suite of claims made about them.
//!
//! Each fixture is a small model or frame in the model file format; each
//! claim is one checkable statement (a property profile entry, a truth
//! value, an indistinguishability, a definability scan, ...). The suite
//! runs every claim and reports them in catalogue order.

mod claims;
mod fixtures;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::model::ModelError;
use crate::search::{with_jobs, SearchError};
use crate::semantics::SemanticsError;

pub use claims::{catalogue, check_claim, Claim, ClaimKind, Finding, Point};
pub use fixtures::{all_fixtures, export_fixture, fixture, fixture_ids, Fixture};

#[derive(Debug, Error)]
pub enum ReplicationError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("fixture {id} is malformed: {source}")]
    Fixture { id: String, source: ModelError },
    #[error("{0}")]
    Class(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Sample the three-state definability scan.
    pub quick: bool,
    pub jobs: usize,
    /// Record elapsed milliseconds per claim.
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { quick: false, jobs: 1, timings: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimVerdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub group: String,
    pub verdict: ClaimVerdict,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ClaimResult {
    pub fn passed(&self) -> bool {
        self.verdict == ClaimVerdict::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub passed: usize,
    pub failed: usize,
    pub claims: Vec<ClaimResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Results whose group is one of `groups`.
    pub fn in_groups<'a>(&'a self, groups: &'a [&str]) -> impl Iterator<Item = &'a ClaimResult> + 'a {
        self.claims.iter().filter(move |c| groups.contains(&c.group.as_str()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {:<44} {}", c.id, c.detail));
            if let Some(ms) = c.elapsed_ms {
                out.push_str(&format!(" [{ms} ms]"));
            }
            out.push('\n');
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

/// Checks one claim; an error counts as a failure.
pub fn run_claim(claim: &Claim, timings: bool) -> ClaimResult {
    let start = Instant::now();
    let finding = check_claim(claim).unwrap_or_else(|e| Finding { passed: false, detail: format!("error: {e}") });
    ClaimResult {
        id: claim.id.clone(),
        group: claim.group.clone(),
        verdict: if finding.passed { ClaimVerdict::Pass } else { ClaimVerdict::Fail },
        detail: finding.detail,
        elapsed_ms: timings.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Runs the given claims in parallel; results keep the input order.
pub fn run_claims(claims: &[Claim], opts: &SuiteOptions) -> Result<Report, ReplicationError> {
    let results: Vec<ClaimResult> =
        with_jobs(opts.jobs, || claims.par_iter().map(|c| run_claim(c, opts.timings)).collect())?;
    let passed = results.iter().filter(|r| r.passed()).count();
    Ok(Report { passed, failed: results.len() - passed, claims: results })
}

/// Loads every fixture, then checks the whole catalogue.
pub fn run_paper_suite(opts: &SuiteOptions) -> Result<Report, ReplicationError> {
    all_fixtures()?;
    run_claims(&catalogue(opts.quick), opts)
}
