use serde::{Deserialize, Serialize};

use super::permutation::{kendall_tau, ItemList, Permutation};
use super::sequence::RequestSequence;
use super::transfer::element_transfer_unchecked;
use crate::error::{Error, Result};

/// Cost of servicing one request: transpositions spent reorganizing plus the access position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub reorg: u64,
    pub access: u64,
}

impl CostBreakdown {
    pub fn total(&self) -> u64 {
        self.reorg + self.access
    }
}

/// An offline solution: permute the initial list once, then for each request move the
/// requested item to `targets[i]` and access it there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub initial: Permutation,
    pub targets: Vec<usize>,
    /// Kendall tau distance from the given list to `initial`.
    pub initial_cost: u64,
    pub breakdown: Vec<CostBreakdown>,
    pub total: u64,
}

impl Schedule {
    /// The do-nothing schedule: keep the list and access every request in place.
    pub fn identity(rho0: &Permutation, sigma: &RequestSequence) -> Result<Self> {
        rho0.check_same_universe_len(sigma.universe())?;
        let targets = sigma.requests().iter().map(|&a| rho0.pos(a)).collect();
        Self::from_targets(rho0, sigma, rho0.clone(), targets)
    }

    /// Builds a schedule from an initial ordering and targets, filling in the costs.
    pub fn from_targets(
        rho0: &Permutation,
        sigma: &RequestSequence,
        initial: Permutation,
        targets: Vec<usize>,
    ) -> Result<Self> {
        let mut schedule = Schedule {
            initial,
            targets,
            initial_cost: 0,
            breakdown: Vec::new(),
            total: 0,
        };
        let (total, breakdown) = schedule_cost(rho0, sigma, &schedule)?;
        schedule.initial_cost = kendall_tau(rho0, &schedule.initial)?;
        schedule.breakdown = breakdown;
        schedule.total = total;
        Ok(schedule)
    }

    /// The list configuration at each access, in request order.
    pub fn configurations(&self, sigma: &RequestSequence) -> Result<Vec<Permutation>> {
        self.check_shape(sigma)?;
        let mut rho = self.initial.clone();
        let mut out = Vec::with_capacity(sigma.len());
        for (&a, &j) in sigma.requests().iter().zip(&self.targets) {
            rho = element_transfer_unchecked(&rho, a, j);
            out.push(rho.clone());
        }
        Ok(out)
    }

    /// Number of transfers that moved the requested item towards the back.
    pub fn backward_transfers(&self, sigma: &RequestSequence) -> Result<usize> {
        self.check_shape(sigma)?;
        let mut rho = self.initial.clone();
        let mut count = 0;
        for (&a, &j) in sigma.requests().iter().zip(&self.targets) {
            if j > rho.pos(a) {
                count += 1;
            }
            rho = element_transfer_unchecked(&rho, a, j);
        }
        Ok(count)
    }

    fn check_shape(&self, sigma: &RequestSequence) -> Result<()> {
        self.initial.check_same_universe_len(sigma.universe())?;
        if self.targets.len() != sigma.len() {
            return Err(Error::LengthMismatch {
                targets: self.targets.len(),
                requests: sigma.len(),
            });
        }
        let l = self.initial.len();
        if let Some(&bad) = self.targets.iter().find(|&&j| j == 0 || j > l) {
            return Err(Error::PositionOutOfRange {
                position: bad,
                len: l,
            });
        }
        Ok(())
    }

    pub fn to_record(&self, list: &ItemList, sigma: &RequestSequence) -> Result<ScheduleRecord> {
        self.check_shape(sigma)?;
        let mut rho = self.initial.clone();
        let mut requests = Vec::with_capacity(sigma.len());
        for (i, (&a, &j)) in sigma.requests().iter().zip(&self.targets).enumerate() {
            let p = rho.pos(a);
            rho = element_transfer_unchecked(&rho, a, j);
            let cost = self.breakdown.get(i).copied().unwrap_or(CostBreakdown {
                reorg: p.abs_diff(j) as u64,
                access: j as u64,
            });
            requests.push(RequestRecord {
                request: list.label(a)?.to_string(),
                pre_position: p,
                target: j,
                reorg_cost: cost.reorg,
                access_cost: cost.access,
            });
        }
        Ok(ScheduleRecord {
            initial: list.labels_of(&self.initial),
            initial_cost: self.initial_cost,
            requests,
            total: self.total,
        })
    }
}

/// Label-based form of a [`Schedule`], as written by `opt --format json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleRecord {
    pub initial: Vec<String>,
    pub initial_cost: u64,
    pub requests: Vec<RequestRecord>,
    pub total: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequestRecord {
    pub request: String,
    pub pre_position: usize,
    pub target: usize,
    pub reorg_cost: u64,
    pub access_cost: u64,
}

impl ScheduleRecord {
    pub fn to_schedule(
        &self,
        list: &ItemList,
        rho0: &Permutation,
        sigma: &RequestSequence,
    ) -> Result<Schedule> {
        let initial = list.permutation(&self.initial)?;
        let targets = self.requests.iter().map(|r| r.target).collect();
        Schedule::from_targets(rho0, sigma, initial, targets)
    }
}

/// Recomputes a schedule's cost from its initial ordering and targets alone:
/// `kendall_tau(rho0, initial) + sum of (|p_i - j_i| + j_i)`.
pub fn schedule_cost(
    rho0: &Permutation,
    sigma: &RequestSequence,
    schedule: &Schedule,
) -> Result<(u64, Vec<CostBreakdown>)> {
    rho0.check_same_universe(&schedule.initial)?;
    schedule.check_shape(sigma)?;
    let mut total = kendall_tau(rho0, &schedule.initial)?;
    let mut rho = schedule.initial.clone();
    let mut breakdown = Vec::with_capacity(sigma.len());
    for (&a, &j) in sigma.requests().iter().zip(&schedule.targets) {
        let p = rho.pos(a);
        let cost = CostBreakdown {
            reorg: p.abs_diff(j) as u64,
            access: j as u64,
        };
        total += cost.total();
        breakdown.push(cost);
        rho = element_transfer_unchecked(&rho, a, j);
    }
    Ok((total, breakdown))
}

impl Permutation {
    pub(crate) fn check_same_universe_len(&self, universe: usize) -> Result<()> {
        if self.len() == universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                left: self.len(),
                right: universe,
            })
        }
    }
}
