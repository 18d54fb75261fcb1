//! Independent exact baselines for small lists.
//!
//! Each oracle is a dynamic program over all `l!` orderings, free of the element-transfer
//! restriction the solver relies on:
//!
//! * [`brute_force_opt_all_transpositions`]: any reorganization before every access,
//!   charged its Kendall tau distance (every transposition counts).
//! * [`brute_force_opt_paid_free`]: paid reorganization before the access, then a free
//!   forward move of the accessed item.
//! * [`subset_transfer_opt`]: one subset transfer of the requested item before each access.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::permutation::{kendall_tau, kendall_tau_unchecked, rank, Permutation};
use crate::model::sequence::RequestSequence;
use crate::model::transfer::{element_transfer_unchecked, enumerate_subset_transfers};
use crate::table::{check_size, PermTable};

pub const DEFAULT_MAX_L: usize = 5;
pub const DEFAULT_MAX_M: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_l: usize,
    pub max_m: usize,
    /// Reconstruct an action trace alongside the optimum.
    pub witness: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_l: DEFAULT_MAX_L,
            max_m: DEFAULT_MAX_M,
            witness: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    AllTranspositions,
    PaidFree,
    SubsetTransfer,
}

impl OracleKind {
    pub const ALL: [OracleKind; 3] = [
        OracleKind::AllTranspositions,
        OracleKind::PaidFree,
        OracleKind::SubsetTransfer,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OracleKind::AllTranspositions => "all",
            OracleKind::PaidFree => "paid-free",
            OracleKind::SubsetTransfer => "subset",
        }
    }
}

impl std::str::FromStr for OracleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" | "all-transpositions" => Ok(OracleKind::AllTranspositions),
            "paid-free" => Ok(OracleKind::PaidFree),
            "subset" | "subset-transfer" => Ok(OracleKind::SubsetTransfer),
            other => Err(Error::Usage(format!("unknown oracle `{other}`"))),
        }
    }
}

/// One serviced request in an oracle trace.
///
/// The list is reorganized to `reorganized` (charged its Kendall tau distance from the
/// previous `after`), the request is accessed at `access`, and the accessed item may then
/// move forward for free, giving `after`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleStep {
    pub reorganized: Permutation,
    pub access: usize,
    pub after: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub total: u64,
    pub witness: Option<Vec<OracleStep>>,
}

pub fn run_oracle(
    kind: OracleKind,
    rho0: &Permutation,
    sigma: &RequestSequence,
    config: &OracleConfig,
) -> Result<OracleResult> {
    match kind {
        OracleKind::AllTranspositions => brute_force_opt_all_transpositions(rho0, sigma, config),
        OracleKind::PaidFree => brute_force_opt_paid_free(rho0, sigma, config),
        OracleKind::SubsetTransfer => subset_transfer_opt(rho0, sigma, config),
    }
}

fn guard(rho0: &Permutation, sigma: &RequestSequence, config: &OracleConfig) -> Result<()> {
    check_size(rho0.len(), config.max_l)?;
    rho0.check_same_universe_len(sigma.universe())?;
    if sigma.len() > config.max_m {
        return Err(Error::SequenceLimit {
            len: sigma.len(),
            max: config.max_m,
        });
    }
    Ok(())
}

const INF: u64 = u64::MAX;
const NONE: u32 = u32::MAX;

/// Kendall tau between every pair of orderings, row-major by rank.
fn distance_matrix(table: &PermTable) -> Vec<u16> {
    let n = table.n();
    let perms: Vec<Permutation> = (0..n).map(|r| table.permutation(r)).collect();
    let mut d = vec![0u16; n * n];
    for a in 0..n {
        for b in a + 1..n {
            let k = kendall_tau_unchecked(&perms[a], &perms[b]) as u16;
            d[a * n + b] = k;
            d[b * n + a] = k;
        }
    }
    d
}

/// `out[y] = min over x of dist[x] + kt(x, y)`, with the minimizing `x` (smallest on ties).
fn reorganize(dist: &[u64], kt: &[u16], n: usize) -> (Vec<u64>, Vec<u32>) {
    let live: Vec<usize> = (0..n).filter(|&x| dist[x] != INF).collect();
    let mut out = vec![INF; n];
    let mut arg = vec![NONE; n];
    for y in 0..n {
        for &x in &live {
            let c = dist[x] + kt[x * n + y] as u64;
            if c < out[y] {
                out[y] = c;
                arg[y] = x as u32;
            }
        }
    }
    (out, arg)
}

fn min_entry(dist: &[u64]) -> (usize, u64) {
    dist.iter().enumerate().fold(
        (0, INF),
        |best, (r, &d)| if d < best.1 { (r, d) } else { best },
    )
}

pub fn brute_force_opt_all_transpositions(
    rho0: &Permutation,
    sigma: &RequestSequence,
    config: &OracleConfig,
) -> Result<OracleResult> {
    guard(rho0, sigma, config)?;
    if sigma.is_empty() {
        return Ok(empty_result(config));
    }
    let table = PermTable::new(rho0.len(), config.max_l)?;
    let n = table.n();
    let kt = distance_matrix(&table);
    let mut dist = vec![INF; n];
    dist[rank(rho0)] = 0;
    let mut parents: Vec<Vec<u32>> = Vec::new();
    for &a in sigma.requests() {
        let (mut next, arg) = reorganize(&dist, &kt, n);
        for (y, d) in next.iter_mut().enumerate() {
            *d += table.pos(y, a) as u64;
        }
        if config.witness {
            parents.push(arg);
        }
        dist = next;
    }
    let (mut r, total) = min_entry(&dist);
    let witness = config.witness.then(|| {
        let mut steps = Vec::with_capacity(sigma.len());
        for (i, arg) in parents.iter().enumerate().rev() {
            let rho = table.permutation(r);
            steps.push(OracleStep {
                access: table.pos(r, sigma.requests()[i]),
                reorganized: rho.clone(),
                after: rho,
            });
            r = arg[r] as usize;
        }
        steps.reverse();
        steps
    });
    Ok(OracleResult { total, witness })
}

pub fn brute_force_opt_paid_free(
    rho0: &Permutation,
    sigma: &RequestSequence,
    config: &OracleConfig,
) -> Result<OracleResult> {
    guard(rho0, sigma, config)?;
    if sigma.is_empty() {
        return Ok(empty_result(config));
    }
    let table = PermTable::new(rho0.len(), config.max_l)?;
    let n = table.n();
    let kt = distance_matrix(&table);
    let mut dist = vec![INF; n];
    dist[rank(rho0)] = 0;
    // per request: (reorganization argmin, access-configuration argmin)
    let mut parents: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    for &a in sigma.requests() {
        let (pre, arg) = reorganize(&dist, &kt, n);
        let mut next = vec![INF; n];
        let mut from = vec![NONE; n];
        for (y, &d) in pre.iter().enumerate() {
            if d == INF {
                continue;
            }
            let p = table.pos(y, a);
            let c = d + p as u64;
            for j in 1..=p {
                let z = table.transfer(y, a, j);
                if c < next[z] || (c == next[z] && (y as u32) < from[z]) {
                    next[z] = c;
                    from[z] = y as u32;
                }
            }
        }
        if config.witness {
            parents.push((arg, from));
        }
        dist = next;
    }
    let (mut r, total) = min_entry(&dist);
    let witness = config.witness.then(|| {
        let mut steps = Vec::with_capacity(sigma.len());
        for (i, (arg, from)) in parents.iter().enumerate().rev() {
            let y = from[r] as usize;
            steps.push(OracleStep {
                reorganized: table.permutation(y),
                access: table.pos(y, sigma.requests()[i]),
                after: table.permutation(r),
            });
            r = arg[y] as usize;
        }
        steps.reverse();
        steps
    });
    Ok(OracleResult { total, witness })
}

pub fn subset_transfer_opt(
    rho0: &Permutation,
    sigma: &RequestSequence,
    config: &OracleConfig,
) -> Result<OracleResult> {
    guard(rho0, sigma, config)?;
    if sigma.is_empty() {
        return Ok(empty_result(config));
    }
    let table = PermTable::new(rho0.len(), config.max_l)?;
    let n = table.n();
    let mut dist = vec![INF; n];
    dist[rank(rho0)] = 0;
    let mut parents: Vec<Vec<u32>> = Vec::new();
    for &a in sigma.requests() {
        let mut next = vec![INF; n];
        let mut from = vec![NONE; n];
        for (x, &d) in dist.iter().enumerate() {
            if d == INF {
                continue;
            }
            let rho = table.permutation(x);
            for (_, after, cost) in enumerate_subset_transfers(&rho, a)? {
                let y = rank(&after);
                let c = d + cost + after.pos(a) as u64;
                if c < next[y] {
                    next[y] = c;
                    from[y] = x as u32;
                }
            }
        }
        if config.witness {
            parents.push(from);
        }
        dist = next;
    }
    let (mut r, total) = min_entry(&dist);
    let witness = config.witness.then(|| {
        let mut steps = Vec::with_capacity(sigma.len());
        for (i, from) in parents.iter().enumerate().rev() {
            let rho = table.permutation(r);
            steps.push(OracleStep {
                access: table.pos(r, sigma.requests()[i]),
                reorganized: rho.clone(),
                after: rho,
            });
            r = from[r] as usize;
        }
        steps.reverse();
        steps
    });
    Ok(OracleResult { total, witness })
}

fn empty_result(config: &OracleConfig) -> OracleResult {
    OracleResult {
        total: 0,
        witness: config.witness.then(Vec::new),
    }
}

/// Checks that a witness is a legal trace for `sigma` and returns its cost.
pub fn replay_witness(
    rho0: &Permutation,
    sigma: &RequestSequence,
    steps: &[OracleStep],
) -> Result<u64> {
    rho0.check_same_universe_len(sigma.universe())?;
    if steps.len() != sigma.len() {
        return Err(Error::LengthMismatch {
            targets: steps.len(),
            requests: sigma.len(),
        });
    }
    let mut current = rho0.clone();
    let mut total = 0;
    for (i, (step, &a)) in steps.iter().zip(sigma.requests()).enumerate() {
        total += kendall_tau(&current, &step.reorganized)?;
        let p = step.reorganized.position(a)?;
        if p != step.access {
            return Err(Error::InvalidWitness(format!(
                "step {}: access recorded at {} but item sits at {p}",
                i + 1,
                step.access
            )));
        }
        total += p as u64;
        let j = step.after.position(a)?;
        if j > p || element_transfer_unchecked(&step.reorganized, a, j) != step.after {
            return Err(Error::InvalidWitness(format!(
                "step {}: post-access move is not a forward move of the accessed item",
                i + 1
            )));
        }
        current = step.after.clone();
    }
    Ok(total)
}
