//! Search for instances where the element-transfer solver misses the true optimum, and
//! replayable records of any such instance.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::workload::seeded_rng;
use crate::error::{Error, Result};
use crate::model::permutation::{factorial, unrank, ItemList, Permutation};
use crate::model::schedule::ScheduleRecord;
use crate::model::sequence::RequestSequence;
use crate::oracles::{
    brute_force_opt_all_transpositions, replay_witness, OracleConfig, OracleStep,
};
use crate::solver::{solve_with, SolverConfig};

/// Exact solver names as they appear in reports and records.
pub const OPT: &str = "opt";
pub const ORACLE_ALL: &str = "oracle-all";

/// An instance on which exact solvers disagree, with the evidence from both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    /// Initial ordering as labels; it also defines the item universe.
    pub list: Vec<String>,
    pub requests: Vec<String>,
    pub totals: BTreeMap<String, u64>,
    pub opt_schedule: Option<ScheduleRecord>,
    pub oracle_witness: Option<Vec<WitnessStep>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStep {
    pub reorganized: Vec<String>,
    pub access: usize,
    pub after: Vec<String>,
}

impl CounterexampleRecord {
    pub fn instance(&self) -> Result<(ItemList, Permutation, RequestSequence)> {
        let list = ItemList::new(self.list.iter().cloned())?;
        let sigma = RequestSequence::from_labels(&list, &self.requests)?;
        let rho0 = list.identity();
        Ok((list, rho0, sigma))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidWitness(e.to_string()))
    }

    /// Builds a record comparing the solver against the all-transpositions oracle,
    /// with both witnesses attached.
    pub fn capture(
        list: &ItemList,
        rho0: &Permutation,
        sigma: &RequestSequence,
        mut totals: BTreeMap<String, u64>,
        solver: &SolverConfig,
        oracle: &OracleConfig,
    ) -> Result<Self> {
        let schedule = solve_with(rho0, sigma, solver)?;
        totals.insert(OPT.into(), schedule.total);
        let witnessed = OracleConfig {
            witness: true,
            ..*oracle
        };
        let brute = brute_force_opt_all_transpositions(rho0, sigma, &witnessed)?;
        totals.insert(ORACLE_ALL.into(), brute.total);
        Ok(CounterexampleRecord {
            list: list.labels_of(rho0),
            requests: sigma.labels(list),
            totals,
            opt_schedule: Some(schedule.to_record(list, sigma)?),
            oracle_witness: brute.witness.map(|steps| witness_labels(list, &steps)),
        })
    }
}

fn witness_labels(list: &ItemList, steps: &[OracleStep]) -> Vec<WitnessStep> {
    steps
        .iter()
        .map(|s| WitnessStep {
            reorganized: list.labels_of(&s.reorganized),
            access: s.access,
            after: list.labels_of(&s.after),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayOutcome {
    pub totals: BTreeMap<String, u64>,
    /// Every recorded total was recomputed to the same value.
    pub reproduces: bool,
    /// The solver and the oracle still disagree.
    pub disagreement: bool,
    /// Recorded witnesses replay to their recorded totals.
    pub witnesses_valid: bool,
}

/// Recomputes a record's totals and validates its witnesses.
pub fn replay_record(
    record: &CounterexampleRecord,
    solver: &SolverConfig,
    oracle: &OracleConfig,
) -> Result<ReplayOutcome> {
    let (list, rho0, sigma) = record.instance()?;
    let schedule = solve_with(&rho0, &sigma, solver)?;
    let brute = brute_force_opt_all_transpositions(&rho0, &sigma, oracle)?;
    let mut totals = BTreeMap::new();
    totals.insert(OPT.to_string(), schedule.total);
    totals.insert(ORACLE_ALL.to_string(), brute.total);
    let reproduces = record
        .totals
        .iter()
        .filter(|(k, _)| totals.contains_key(*k))
        .all(|(k, v)| totals[k] == *v);

    let mut witnesses_valid = true;
    if let Some(rec) = &record.opt_schedule {
        let replayed = rec.to_schedule(&list, &rho0, &sigma)?;
        witnesses_valid &= replayed.total == rec.total;
    }
    if let Some(steps) = &record.oracle_witness {
        let steps = steps
            .iter()
            .map(|s| {
                Ok(OracleStep {
                    reorganized: list.permutation(&s.reorganized)?,
                    access: s.access,
                    after: list.permutation(&s.after)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let cost = replay_witness(&rho0, &sigma, &steps)?;
        witnesses_valid &= Some(&cost) == record.totals.get(ORACLE_ALL);
    }
    Ok(ReplayOutcome {
        disagreement: schedule.total != brute.total,
        totals,
        reproduces,
        witnesses_valid,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub solver: SolverConfig,
    pub oracle: OracleConfig,
    /// Largest `l` searched exhaustively; larger sizes are sampled.
    pub exhaustive_max_l: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            solver: SolverConfig::default(),
            oracle: OracleConfig::default(),
            exhaustive_max_l: 3,
        }
    }
}

/// Looks for an instance where the solver's total differs from the brute-force optimum.
///
/// List sizes up to `exhaustive_max_l` are enumerated completely (every initial ordering,
/// every sequence, sizes and lengths ascending); the remaining budget draws random
/// instances over the larger sizes. `budget` caps the number of instances examined.
pub fn find_counterexample(
    l_range: RangeInclusive<usize>,
    m_range: RangeInclusive<usize>,
    budget: usize,
    seed: u64,
    config: &SearchConfig,
) -> Result<Option<CounterexampleRecord>> {
    let mut remaining = budget;
    let check =
        |rho0: &Permutation, sigma: &RequestSequence| -> Result<Option<CounterexampleRecord>> {
            let opt = solve_with(rho0, sigma, &config.solver)?.total;
            let brute = brute_force_opt_all_transpositions(rho0, sigma, &config.oracle)?.total;
            if opt == brute {
                return Ok(None);
            }
            let list = ItemList::generated(rho0.len())?;
            CounterexampleRecord::capture(
                &list,
                rho0,
                sigma,
                BTreeMap::new(),
                &config.solver,
                &config.oracle,
            )
            .map(Some)
        };

    for l in l_range
        .clone()
        .filter(|&l| l >= 1 && l <= config.exhaustive_max_l)
    {
        let orderings = factorial(l).expect("small l");
        for m in m_range.clone() {
            let sequences = l
                .checked_pow(m as u32)
                .ok_or(Error::SequenceLimit { len: m, max: 64 })?;
            for r in 0..orderings {
                let rho0 = unrank(r, l)?;
                for code in 0..sequences {
                    if remaining == 0 {
                        return Ok(None);
                    }
                    remaining -= 1;
                    let sigma = RequestSequence::new(digits(code, l, m), l)?;
                    if let Some(rec) = check(&rho0, &sigma)? {
                        return Ok(Some(rec));
                    }
                }
            }
        }
    }

    let sampled: Vec<usize> = l_range.filter(|&l| l > config.exhaustive_max_l).collect();
    if sampled.is_empty() || m_range.is_empty() {
        return Ok(None);
    }
    let mut rng = seeded_rng(seed);
    while remaining > 0 {
        remaining -= 1;
        let l = sampled[rng.gen_range(0..sampled.len())];
        let m = rng.gen_range(m_range.clone());
        let rho0 = unrank(rng.gen_range(0..factorial(l).expect("guarded")), l)?;
        let sigma = RequestSequence::new((0..m).map(|_| rng.gen_range(0..l)).collect(), l)?;
        if let Some(rec) = check(&rho0, &sigma)? {
            return Ok(Some(rec));
        }
    }
    Ok(None)
}

/// Base-`l` digits of `code`, most significant first, as a length-`m` request list.
fn digits(mut code: usize, l: usize, m: usize) -> Vec<usize> {
    let mut out = vec![0; m];
    for slot in out.iter_mut().rev() {
        *slot = code % l;
        code /= l;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exhaustive_searches_find_nothing() {
        let cfg = SearchConfig::default();
        assert_eq!(
            find_counterexample(2..=2, 0..=3, usize::MAX, 0, &cfg).unwrap(),
            None
        );
        assert_eq!(
            find_counterexample(1..=3, 1..=3, usize::MAX, 0, &cfg).unwrap(),
            None
        );
    }

    #[test]
    fn zero_budget_is_vacuous() {
        let cfg = SearchConfig::default();
        assert_eq!(find_counterexample(2..=5, 1..=8, 0, 7, &cfg).unwrap(), None);
    }

    #[test]
    fn digits_enumerate_in_lexicographic_order() {
        assert_eq!(digits(0, 3, 2), vec![0, 0]);
        assert_eq!(digits(5, 3, 2), vec![1, 2]);
        assert_eq!(digits(8, 3, 2), vec![2, 2]);
    }

    #[test]
    fn record_json_round_trip_and_replay() {
        let list = ItemList::parse_csv("a,b,c").unwrap();
        let sigma = RequestSequence::parse_csv(&list, "c,c,b").unwrap();
        let rec = CounterexampleRecord::capture(
            &list,
            &list.identity(),
            &sigma,
            BTreeMap::new(),
            &SolverConfig::default(),
            &OracleConfig::default(),
        )
        .unwrap();
        let back = CounterexampleRecord::from_json(&rec.to_json().unwrap()).unwrap();
        assert_eq!(back, rec);
        let out = replay_record(&back, &SolverConfig::default(), &OracleConfig::default()).unwrap();
        assert!(out.reproduces);
        assert!(out.witnesses_valid);
        assert!(!out.disagreement);
    }
}
