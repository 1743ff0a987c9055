//! Run statistics and the output sink interface shared by all engines.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::element::ElementSet;
use crate::error::{Error, Result, SinkError};
use crate::gauge::paused;
use crate::system::SetSystemInstance;

/// Counters gathered during one enumeration run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub algorithm: String,
    /// Number of solutions delivered to the sink.
    pub solution_count: u64,
    pub max_solution_size: usize,
    /// Time from the start of the run to the first output, then between
    /// consecutive outputs, in nanoseconds.
    pub delay_samples_ns: Vec<u64>,
    /// Peak number of live element slots held by the traversal. Only the
    /// stateless engine measures this.
    pub peak_aux_elements: Option<usize>,
    pub oracle_calls: u64,
    pub restricted_calls: u64,
    pub restricted_solutions: u64,
    /// Most candidates completed for a single restricted solution. Only the
    /// recursive refined engine measures this.
    pub max_candidates_per_restricted: usize,
}

impl EnumerationReport {
    pub fn max_delay_ns(&self) -> Option<u64> {
        self.delay_samples_ns.iter().copied().max()
    }

    /// `peak_aux_elements / max_solution_size`, when both are known.
    pub fn aux_ratio(&self) -> Option<f64> {
        let peak = self.peak_aux_elements?;
        (self.max_solution_size > 0).then(|| peak as f64 / self.max_solution_size as f64)
    }
}

/// Receives each maximal solution together with its depth in the
/// reverse-search forest (roots have depth 1).
pub trait Sink {
    fn accept(&mut self, solution: &ElementSet, depth: usize) -> Result<(), SinkError>;
}

impl<F> Sink for F
where
    F: FnMut(&ElementSet, usize) -> Result<(), SinkError>,
{
    fn accept(&mut self, solution: &ElementSet, depth: usize) -> Result<(), SinkError> {
        self(solution, depth)
    }
}

impl Sink for Vec<ElementSet> {
    fn accept(&mut self, solution: &ElementSet, _depth: usize) -> Result<(), SinkError> {
        self.push(solution.clone());
        Ok(())
    }
}

/// Bookkeeping shared by the engines: forwards outputs, samples delays and
/// snapshots the report on sink failure.
pub(crate) struct Recorder<'a> {
    inst: &'a SetSystemInstance,
    sink: &'a mut dyn Sink,
    pub(crate) report: EnumerationReport,
    calls_at_start: u64,
    last: Instant,
}

impl<'a> Recorder<'a> {
    pub(crate) fn new(
        inst: &'a SetSystemInstance,
        algorithm: &str,
        sink: &'a mut dyn Sink,
    ) -> Self {
        Recorder {
            inst,
            sink,
            report: EnumerationReport {
                algorithm: algorithm.to_string(),
                ..Default::default()
            },
            calls_at_start: inst.oracle_calls(),
            last: Instant::now(),
        }
    }

    pub(crate) fn emit(&mut self, solution: &ElementSet, depth: usize) -> Result<()> {
        let now = Instant::now();
        self.report
            .delay_samples_ns
            .push(now.duration_since(self.last).as_nanos() as u64);
        self.report.solution_count += 1;
        self.report.max_solution_size = self.report.max_solution_size.max(solution.len());
        let outcome = paused(|| self.sink.accept(solution, depth));
        self.last = Instant::now();
        outcome.map_err(|source| Error::Sink {
            source,
            partial: Box::new(self.snapshot()),
        })
    }

    pub(crate) fn note_restricted_call(&mut self) {
        self.report.restricted_calls += 1;
    }

    pub(crate) fn note_restricted_solution(&mut self, candidates: usize) {
        self.report.restricted_solutions += 1;
        self.report.max_candidates_per_restricted =
            self.report.max_candidates_per_restricted.max(candidates);
    }

    fn snapshot(&self) -> EnumerationReport {
        let mut r = self.report.clone();
        r.oracle_calls = self.inst.oracle_calls() - self.calls_at_start;
        r
    }

    pub(crate) fn finish(self) -> EnumerationReport {
        self.snapshot()
    }
}
