//! Parallel campaigns over task lists and their JSON reports.

use super::cache::CACHE_VERSION;
use super::task::{enumerate, run_task, size_of, Caps, Kind, Params, Task};
use crate::error::{Error, Result};
use crate::symfunc::{degree_cap, htilde_table};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Task id; `qtatoms verify --task <id>` reruns it alone.
    pub rerun: String,
    pub kind: Kind,
    pub params: Params,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub task: String,
    pub status: Status,
    pub params: Params,
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    pub millis: u64,
}

/// Reports of one campaign, in task order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSet {
    pub cache_version: String,
    pub caps: Caps,
    pub reports: Vec<Report>,
}

impl ReportSet {
    pub fn count(&self, s: Status) -> usize {
        self.reports.iter().filter(|r| r.status == s).count()
    }

    /// 0 when everything passed, 1 on any failure, else 3 when something was skipped.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Fail) > 0 {
            1
        } else if self.count(Status::Skipped) > 0 {
            3
        } else {
            0
        }
    }

    /// Pretty JSON; with `timing` false every `millis` is written as 0.
    pub fn to_json(&self, timing: bool) -> String {
        let mut s = self.clone();
        if !timing {
            s.reports.iter_mut().for_each(|r| r.millis = 0);
        }
        serde_json::to_string_pretty(&s).expect("reports serialize")
    }
}

pub fn run_one(task: &Task, caps: &Caps) -> Report {
    let start = Instant::now();
    let res = run_task(task, caps);
    let millis = start.elapsed().as_millis() as u64;
    let (status, residual) = match res {
        Ok(o) if o.pass => (Status::Pass, o.residual),
        Ok(o) => (Status::Fail, o.residual),
        Err(Error::Resource(why)) => (Status::Skipped, why),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    let counterexample = (status == Status::Fail).then(|| Counterexample {
        rerun: task.id(),
        kind: task.kind,
        params: task.params.clone(),
    });
    Report { task: task.id(), status, params: task.params.clone(), residual, counterexample, millis }
}

/// Runs tasks on `jobs` threads (0 = all cores); output order is task order.
pub fn run_tasks(tasks: &[Task], caps: &Caps, jobs: usize) -> Result<ReportSet> {
    // single writer: build the shared tables before any worker reads them
    let mut top = 0;
    for t in tasks.iter().filter(|t| t.kind.uses_htilde()) {
        top = top.max(size_of(&t.params)?);
    }
    for n in 1..=top.min(caps.symbolic).min(degree_cap()) {
        htilde_table(n)?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let reports = pool.install(|| tasks.par_iter().map(|t| run_one(t, caps)).collect());
    Ok(ReportSet { cache_version: CACHE_VERSION.to_string(), caps: *caps, reports })
}

pub fn run_campaign(kind: Kind, nmin: usize, nmax: usize, caps: &Caps, jobs: usize) -> Result<ReportSet> {
    let tasks = enumerate(kind, nmin, nmax, caps)?;
    run_tasks(&tasks, caps, jobs)
}
