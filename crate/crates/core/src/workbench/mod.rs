//! Workloads, trace files, experiment runs, counterexample search and reports.

pub mod counterexample;
pub mod experiment;
pub mod report;
pub mod trace;
pub mod workload;

pub use counterexample::{
    find_counterexample, replay_record, CounterexampleRecord, ReplayOutcome, SearchConfig,
    WitnessStep,
};
pub use experiment::{instances_from_spec, run_experiment, Algorithm, ExperimentConfig, Instance};
pub use report::{emit_report, InstanceSummary, Report, ReportFormat, ReportRow, RunError};
pub use trace::{ingest_trace, render_trace};
pub use workload::{generate, seeded_rng, WorkloadKind, WorkloadSpec};
