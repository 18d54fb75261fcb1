use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::counterexample::{CounterexampleRecord, OPT};
use super::report::{InstanceSummary, Report, ReportRow, RunError};
use super::workload::{generate, WorkloadKind, WorkloadSpec};
use crate::error::{Error, Result};
use crate::model::permutation::{ItemList, Permutation};
use crate::model::sequence::RequestSequence;
use crate::online::{simulate, OnlinePolicy};
use crate::oracles::{run_oracle, OracleConfig, OracleKind};
use crate::solver::{solve_with, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    Opt,
    Oracle(OracleKind),
    Online(OnlinePolicy),
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Opt,
        Algorithm::Oracle(OracleKind::AllTranspositions),
        Algorithm::Oracle(OracleKind::PaidFree),
        Algorithm::Oracle(OracleKind::SubsetTransfer),
        Algorithm::Online(OnlinePolicy::MoveToFront),
        Algorithm::Online(OnlinePolicy::Transpose),
        Algorithm::Online(OnlinePolicy::FrequencyCount),
    ];

    pub fn name(&self) -> String {
        match self {
            Algorithm::Opt => OPT.to_string(),
            Algorithm::Oracle(k) => format!("oracle-{}", k.name()),
            Algorithm::Online(p) => p.name().to_string(),
        }
    }

    /// Exact solvers must agree on every instance.
    pub fn is_exact(&self) -> bool {
        !matches!(self, Algorithm::Online(_))
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == OPT {
            return Ok(Algorithm::Opt);
        }
        if let Some(kind) = s.strip_prefix("oracle-") {
            return kind.parse().map(Algorithm::Oracle);
        }
        s.parse::<OnlinePolicy>()
            .map(Algorithm::Online)
            .map_err(|_| Error::Usage(format!("unknown algorithm `{s}`")))
    }
}

/// One problem instance: the list in its initial order plus a request sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub id: usize,
    pub kind: String,
    pub seed: Option<u64>,
    pub list: ItemList,
    pub rho0: Permutation,
    pub sigma: RequestSequence,
}

impl Instance {
    pub fn explicit(
        id: usize,
        kind: impl Into<String>,
        list: ItemList,
        sigma: RequestSequence,
    ) -> Self {
        Instance {
            id,
            kind: kind.into(),
            seed: None,
            rho0: list.identity(),
            list,
            sigma,
        }
    }

    pub fn generated(id: usize, spec: &WorkloadSpec) -> Result<Self> {
        if matches!(spec.kind, WorkloadKind::Trace { .. }) {
            return Err(Error::Usage(
                "trace workloads are loaded, not generated".into(),
            ));
        }
        let list = ItemList::generated(spec.l)?;
        let sigma = generate(spec)?;
        Ok(Instance {
            id,
            kind: spec.kind.to_string(),
            seed: Some(spec.seed),
            rho0: list.identity(),
            list,
            sigma,
        })
    }

    pub fn l(&self) -> usize {
        self.rho0.len()
    }

    pub fn m(&self) -> usize {
        self.sigma.len()
    }
}

/// `count` instances of one workload; instance `i` uses seed `spec.seed + i`.
pub fn instances_from_spec(spec: &WorkloadSpec, count: usize) -> Result<Vec<Instance>> {
    (0..count)
        .map(|i| {
            let s = WorkloadSpec {
                seed: spec.seed.wrapping_add(i as u64),
                ..spec.clone()
            };
            Instance::generated(i, &s)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub algorithms: Vec<Algorithm>,
    pub solver: SolverConfig,
    pub oracle: OracleConfig,
    /// Run instances on the rayon pool. Output is identical either way.
    pub parallel: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            algorithms: Algorithm::ALL.to_vec(),
            solver: SolverConfig::default(),
            oracle: OracleConfig::default(),
            parallel: false,
        }
    }
}

struct Outcome {
    algorithm: Algorithm,
    result: Result<u64>,
    wall_ms: f64,
}

struct InstanceRun {
    summary: InstanceSummary,
    rows: Vec<ReportRow>,
    errors: Vec<RunError>,
    counterexample: Option<CounterexampleRecord>,
}

/// Runs every algorithm on every instance and assembles a report.
///
/// Guard violations are recorded per instance and the run continues. When two exact
/// solvers disagree the instance is captured as a counterexample record.
pub fn run_experiment(instances: &[Instance], config: &ExperimentConfig) -> Report {
    let runs: Vec<InstanceRun> = if config.parallel {
        instances
            .par_iter()
            .map(|i| run_instance(i, config))
            .collect()
    } else {
        instances.iter().map(|i| run_instance(i, config)).collect()
    };
    let mut report = Report::default();
    for run in runs {
        report.instances.push(run.summary);
        report.rows.extend(run.rows);
        report.errors.extend(run.errors);
        report.counterexamples.extend(run.counterexample);
    }
    report.normalize();
    report
}

fn run_instance(inst: &Instance, config: &ExperimentConfig) -> InstanceRun {
    let mut algorithms = config.algorithms.clone();
    algorithms.sort();
    algorithms.dedup();

    let mut backward_transfers = None;
    let outcomes: Vec<Outcome> = algorithms
        .iter()
        .map(|&algorithm| {
            let start = Instant::now();
            let result = match algorithm {
                Algorithm::Opt => solve_with(&inst.rho0, &inst.sigma, &config.solver).map(|s| {
                    backward_transfers = s.backward_transfers(&inst.sigma).ok();
                    s.total
                }),
                Algorithm::Oracle(kind) => {
                    run_oracle(kind, &inst.rho0, &inst.sigma, &config.oracle).map(|r| r.total)
                }
                Algorithm::Online(policy) => {
                    simulate(policy, &inst.rho0, &inst.sigma).map(|r| r.total)
                }
            };
            Outcome {
                algorithm,
                result,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect();

    let exact: BTreeMap<String, u64> = outcomes
        .iter()
        .filter(|o| o.algorithm.is_exact())
        .filter_map(|o| o.result.as_ref().ok().map(|&t| (o.algorithm.name(), t)))
        .collect();
    let reference = exact.values().min().copied();

    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for o in &outcomes {
        match &o.result {
            Ok(total) => rows.push(ReportRow {
                instance_id: inst.id,
                l: inst.l(),
                m: inst.m(),
                kind: inst.kind.clone(),
                seed: inst.seed,
                algorithm: o.algorithm.name(),
                total_cost: *total,
                ratio_to_opt: reference.map(|r| ratio(*total, r)),
                wall_ms: Some(o.wall_ms),
            }),
            Err(e) => errors.push(RunError {
                instance_id: inst.id,
                algorithm: o.algorithm.name(),
                message: e.to_string(),
            }),
        }
    }

    let disagree = exact.values().min() != exact.values().max();
    let counterexample = disagree.then(|| {
        CounterexampleRecord::capture(
            &inst.list,
            &inst.rho0,
            &inst.sigma,
            exact.clone(),
            &config.solver,
            &config.oracle,
        )
        .unwrap_or_else(|_| CounterexampleRecord {
            list: inst.list.labels_of(&inst.rho0),
            requests: inst.sigma.labels(&inst.list),
            totals: exact.clone(),
            opt_schedule: None,
            oracle_witness: None,
        })
    });

    InstanceRun {
        summary: InstanceSummary {
            instance_id: inst.id,
            l: inst.l(),
            m: inst.m(),
            kind: inst.kind.clone(),
            seed: inst.seed,
            opt_reference: reference,
            opt_backward_transfers: backward_transfers,
        },
        rows,
        errors,
        counterexample,
    }
}

fn ratio(total: u64, reference: u64) -> f64 {
    if reference == 0 {
        if total == 0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        total as f64 / reference as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn instance(list: &str, req: &str) -> Instance {
        let l = ItemList::parse_csv(list).unwrap();
        let s = RequestSequence::parse_csv(&l, req).unwrap();
        Instance::explicit(0, "explicit", l, s)
    }

    #[test]
    fn two_item_example() {
        let config = ExperimentConfig {
            algorithms: vec![
                Algorithm::Opt,
                Algorithm::Oracle(OracleKind::AllTranspositions),
                Algorithm::Online(OnlinePolicy::MoveToFront),
            ],
            ..ExperimentConfig::default()
        };
        let report = run_experiment(&[instance("a,b", "b,b")], &config);
        let totals: BTreeMap<&str, u64> = report
            .rows
            .iter()
            .map(|r| (r.algorithm.as_str(), r.total_cost))
            .collect();
        assert_eq!(totals["opt"], 3);
        assert_eq!(totals["oracle-all"], 3);
        // b accessed at 2, moved to the front for free, then accessed at 1
        assert_eq!(totals["mtf"], 3);
        let mtf = report.rows.iter().find(|r| r.algorithm == "mtf").unwrap();
        assert_eq!(mtf.ratio_to_opt, Some(1.0));
        assert!(report.counterexamples.is_empty());
    }

    #[test]
    fn empty_sequence_costs_nothing() {
        let report = run_experiment(&[instance("a,b,c", "")], &ExperimentConfig::default());
        assert_eq!(report.rows.len(), Algorithm::ALL.len());
        assert!(report.rows.iter().all(|r| r.total_cost == 0));
        assert!(report.rows.iter().all(|r| r.ratio_to_opt == Some(1.0)));
    }

    #[test]
    fn guard_violations_are_recorded_and_the_run_continues() {
        let list = ItemList::generated(6).unwrap();
        let sigma = RequestSequence::parse_csv(&list, "f,a").unwrap();
        let inst = Instance::explicit(0, "explicit", list, sigma);
        let report = run_experiment(&[inst], &ExperimentConfig::default());
        assert_eq!(report.errors.len(), 3);
        assert!(report
            .errors
            .iter()
            .all(|e| e.algorithm.starts_with("oracle-")));
        assert_eq!(report.rows.len(), 4);
    }

    #[test]
    fn parallel_run_matches_sequential() {
        let spec = WorkloadSpec {
            kind: WorkloadKind::Zipf { s: 1.0 },
            l: 4,
            m: 6,
            seed: 11,
        };
        let instances = instances_from_spec(&spec, 12).unwrap();
        let seq = run_experiment(&instances, &ExperimentConfig::default()).without_timing();
        let par = run_experiment(
            &instances,
            &ExperimentConfig {
                parallel: true,
                ..ExperimentConfig::default()
            },
        )
        .without_timing();
        assert_eq!(seq, par);
    }

    #[test]
    fn algorithm_names_parse_back() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("oracle-nope".parse::<Algorithm>().is_err());
        assert!("lru".parse::<Algorithm>().unwrap_err().is_usage());
    }
}
