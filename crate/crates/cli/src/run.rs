//! Evaluation of points on a worker pool.

use std::sync::mpsc;
use std::time::{Duration, Instant};

use qcti::combinatorics::{verify_key_grid, verify_monotone_lemmas, verify_specialcase_grid, verify_subs_grid};
use qcti::identities::{self, verify_polynomiality, verify_roots, verify_special_points, verify_vanishing, VerdictRecord};
use qcti::laurent::{verify_splitting_s, verify_splitting_t};
use qcti::Error;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::points::{expand, Point, Task};
use crate::report::{Entry, Report, Status};
use crate::CliError;

/// Result of evaluating one task, before timing.
#[derive(Debug)]
struct Outcome {
    status: Status,
    verdict: Option<VerdictRecord>,
    reason: Option<String>,
    detail: Option<String>,
}

impl Outcome {
    fn from_bool(r: qcti::Result<bool>) -> Self {
        match r {
            Ok(true) => Outcome { status: Status::Pass, verdict: None, reason: None, detail: None },
            Ok(false) => Outcome { status: Status::Fail, verdict: None, reason: None, detail: None },
            Err(e) => Self::from_error(e),
        }
    }

    /// Precondition and domain errors name the violated constraint, so the
    /// point is skipped; anything else is a failure.
    fn from_error(e: Error) -> Self {
        match e {
            Error::Precondition(w) | Error::Domain(w) => {
                Outcome { status: Status::Skip, verdict: None, reason: Some(w), detail: None }
            }
            other => Outcome { status: Status::Fail, verdict: None, reason: None, detail: Some(other.to_string()) },
        }
    }
}

fn evaluate(task: &Task) -> Outcome {
    match task {
        Task::Identity(p) => match identities::verify(p) {
            Ok(v) => {
                let status = if v.equal { Status::Pass } else { Status::Fail };
                Outcome { status, verdict: Some(v), reason: None, detail: None }
            }
            Err(e) => Outcome::from_error(e),
        },
        Task::Splitting { form, n, n0, c } => Outcome::from_bool(if form == "S" {
            verify_splitting_s(*n, *n0, *c)
        } else {
            verify_splitting_t(*n, *n0, *c)
        }),
        Task::Vanishing(case) => Outcome::from_bool(verify_vanishing(case)),
        Task::Monotone { s } => Outcome::from_bool(verify_monotone_lemmas(*s)),
        Task::Key { s, b, c, t } => Outcome::from_bool(verify_key_grid(*s, *b, *c, *t)),
        Task::Subs { s, b, c, tt } => Outcome::from_bool(verify_subs_grid(*s, *b, *c, *tt)),
        Task::SpecialCase { n, b, c } => Outcome::from_bool(verify_specialcase_grid(*n, *b, *c)),
        Task::Roots(w, p) => Outcome::from_bool(verify_roots(*w, p)),
        Task::Polynomiality(w, p, extra) => Outcome::from_bool(verify_polynomiality(*w, p, *extra)),
        Task::SpecialPoint(w, p) => Outcome::from_bool(verify_special_points(*w, p)),
    }
}

/// Runs the task on its own thread and gives up waiting after `limit`. The
/// abandoned thread finishes in the background.
fn evaluate_with_timeout(task: &Task, limit: Option<Duration>) -> Option<Outcome> {
    let Some(limit) = limit else { return Some(evaluate(task)) };
    let (tx, rx) = mpsc::channel();
    let task = task.clone();
    std::thread::spawn(move || {
        let _ = tx.send(evaluate(&task));
    });
    rx.recv_timeout(limit).ok()
}

fn run_point(p: &Point, limit: Option<Duration>) -> Entry {
    let start = Instant::now();
    let outcome = match &p.skip {
        Some(reason) => Some(Outcome { status: Status::Skip, verdict: None, reason: Some(reason.clone()), detail: None }),
        None => evaluate_with_timeout(&p.task, limit),
    };
    let elapsed = start.elapsed().as_secs_f64();
    let o = outcome.unwrap_or(Outcome { status: Status::Timeout, verdict: None, reason: None, detail: None });
    Entry {
        suite: p.suite.to_string(),
        point: p.params.clone(),
        label: p.label.clone(),
        status: o.status,
        verdict: o.verdict,
        reason: o.reason,
        detail: o.detail,
        elapsed,
    }
}

/// All points of the config, in report order.
pub fn points(config: &RunConfig) -> Vec<Point> {
    config.suites.iter().flat_map(expand).collect()
}

/// Evaluates every point. Results keep the point order whatever the number
/// of workers.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    let pts = points(config);
    let limit = config.timeout_secs.map(Duration::from_secs_f64);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let results = pool.install(|| pts.par_iter().map(|p| run_point(p, limit)).collect());
    Ok(Report::new(results))
}
