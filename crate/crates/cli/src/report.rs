//! Running suites over many instances and rendering the result.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::instance::{InstanceError, InstanceSpec};
use crate::suites::{run_suite, Status, Suite};

pub const REPORT_FORMAT: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteLine {
    pub suite: Suite,
    pub statement: &'static str,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub name: String,
    pub kind: &'static str,
    pub results: Vec<SuiteLine>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub verified: usize,
    pub falsified: usize,
    pub out_of_hypothesis: usize,
    pub skipped: usize,
}

impl Counts {
    fn add(&mut self, status: Status) {
        match status {
            Status::Verified => self.verified += 1,
            Status::Falsified => self.falsified += 1,
            Status::OutOfHypothesis => self.out_of_hypothesis += 1,
            Status::Skipped => self.skipped += 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub report_format: u32,
    pub instances_by_kind: BTreeMap<String, usize>,
    pub totals: Counts,
    pub by_suite: BTreeMap<Suite, Counts>,
    pub instances: Vec<InstanceReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Restrict to these suites; `None` runs each instance's own selection.
    pub suites: Option<Vec<Suite>>,
    pub workers: usize,
    pub cap: usize,
    /// Record wall-clock time per suite line; breaks byte-determinism.
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            suites: None,
            workers: 1,
            cap: amalgam_core::ring::DEFAULT_CAP,
            timings: false,
        }
    }
}

fn run_one(spec: &InstanceSpec, opts: &RunOptions) -> Result<InstanceReport, InstanceError> {
    let compiled = spec.compile(opts.cap)?;
    let kind = spec.body.kind();
    let suites: Vec<Suite> = match &opts.suites {
        Some(list) => list
            .iter()
            .copied()
            .filter(|s| s.applies_to(kind))
            .collect(),
        None => spec.selected_suites(),
    };
    let results = suites
        .into_iter()
        .map(|suite| {
            let start = Instant::now();
            let outcome = run_suite(suite, &compiled);
            SuiteLine {
                suite,
                statement: suite.statement(),
                status: outcome.status,
                detail: outcome.detail,
                millis: opts
                    .timings
                    .then(|| start.elapsed().as_millis().try_into().unwrap_or(u64::MAX)),
            }
        })
        .collect();
    Ok(InstanceReport {
        name: spec.name.clone(),
        kind,
        results,
    })
}

/// Compiles and checks every instance; results keep the input order
/// whatever the worker count. The first compile error, in input order,
/// aborts the run.
pub fn run_suites(specs: &[InstanceSpec], opts: &RunOptions) -> Result<Report, InstanceError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .expect("thread pool");
    let reports: Vec<Result<InstanceReport, InstanceError>> =
        pool.install(|| specs.par_iter().map(|s| run_one(s, opts)).collect());
    let instances = reports.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut totals = Counts::default();
    let mut by_suite: BTreeMap<Suite, Counts> = BTreeMap::new();
    let mut instances_by_kind: BTreeMap<String, usize> = BTreeMap::new();
    for inst in &instances {
        *instances_by_kind.entry(inst.kind.to_string()).or_default() += 1;
        for line in &inst.results {
            totals.add(line.status);
            by_suite.entry(line.suite).or_default().add(line.status);
        }
    }
    Ok(Report {
        report_format: REPORT_FORMAT,
        instances_by_kind,
        totals,
        by_suite,
        instances,
    })
}

impl Report {
    pub fn any_falsified(&self) -> bool {
        self.totals.falsified > 0
    }

    pub fn lines(&self) -> impl Iterator<Item = (&InstanceReport, &SuiteLine)> {
        self.instances
            .iter()
            .flat_map(|i| i.results.iter().map(move |l| (i, l)))
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Table => self.render_table(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let width = self
            .instances
            .iter()
            .map(|i| i.name.chars().count())
            .max()
            .unwrap_or(0);
        for (inst, line) in self.lines() {
            let _ = write!(
                out,
                "{:width$}  {:22}  {:17}  {}",
                inst.name,
                line.suite.name(),
                line.status.name(),
                line.detail
            );
            if let Some(ms) = line.millis {
                let _ = write!(out, "  [{ms} ms]");
            }
            out.push('\n');
        }
        out.push('\n');
        let _ = writeln!(
            out,
            "{:22}  {:>8}  {:>9}  {:>17}  {:>7}",
            "suite", "verified", "falsified", "out-of-hypothesis", "skipped"
        );
        for (suite, c) in &self.by_suite {
            let _ = writeln!(
                out,
                "{:22}  {:>8}  {:>9}  {:>17}  {:>7}",
                suite.name(),
                c.verified,
                c.falsified,
                c.out_of_hypothesis,
                c.skipped
            );
        }
        let kinds: Vec<String> = self
            .instances_by_kind
            .iter()
            .map(|(k, n)| format!("{n} {k}"))
            .collect();
        let _ = writeln!(out, "\ninstances: {}", kinds.join(", "));
        out
    }
}
