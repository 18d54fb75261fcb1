//! Exact offline solver: shortest path through the layered network of element transfers.
//!
//! Layer `i` holds one node per ordering of the list; a node is the configuration in
//! which request `i` is accessed. The source connects to every layer-1 node at cost
//! `kendall_tau(rho0, rho) + position(rho, σ_1)`. From layer `i - 1` to layer `i` the
//! arcs are the `l` element transfers of `σ_i`, each costing `|p - j| + j`. Arcs into
//! the sink cost nothing. Arcs are generated on the fly from [`PermTable`]; the network
//! is never materialized.
//!
//! Work is `O(m · l · l!)`: each layer is relaxed by visiting `l` arcs per node.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::permutation::{kendall_tau_unchecked, rank, Permutation};
use crate::model::schedule::Schedule;
use crate::model::sequence::RequestSequence;
use crate::table::{check_size, PermTable};

/// Default bound on the list size for `l!`-indexed solving.
pub const DEFAULT_MAX_L: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_l: usize,
    /// Relax each layer across the rayon pool. Results are identical either way.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_l: DEFAULT_MAX_L,
            parallel: false,
        }
    }
}

/// Marker stored in [`Layer::choice`] for nodes reached directly from the source.
pub const FROM_SOURCE: u8 = 0;

/// Shortest distances to the nodes of one layer.
///
/// `choice[r]` is the 1-based position the requested item occupied in the predecessor
/// ordering, or [`FROM_SOURCE`] for layer 1. The arc's target position is implied by the
/// node itself (where the item sits in ordering `r`), so every arc into `r` shares the same
/// target and ties resolve to the smallest predecessor rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub dist: Vec<u64>,
    pub choice: Vec<u8>,
}

impl Layer {
    /// Cheapest node, smallest rank on ties.
    pub fn best(&self) -> (usize, u64) {
        let mut best = (0, u64::MAX);
        for (r, &d) in self.dist.iter().enumerate() {
            if d < best.1 {
                best = (r, d);
            }
        }
        best
    }
}

pub struct ActionNetwork {
    table: PermTable,
    parallel: bool,
}

impl ActionNetwork {
    pub fn new(l: usize, config: &SolverConfig) -> Result<Self> {
        Ok(ActionNetwork {
            table: PermTable::new(l, config.max_l)?,
            parallel: config.parallel,
        })
    }

    pub fn table(&self) -> &PermTable {
        &self.table
    }

    fn check_item(&self, a: usize) -> Result<()> {
        if a < self.table.l() {
            Ok(())
        } else {
            Err(Error::UnknownItem {
                index: a,
                len: self.table.l(),
            })
        }
    }

    /// Source arcs: `dist[rank(rho)] = kendall_tau(rho0, rho) + position(rho, first_request)`.
    pub fn initial_layer(&self, rho0: &Permutation, first_request: usize) -> Result<Layer> {
        rho0.check_same_universe_len(self.table.l())?;
        self.check_item(first_request)?;
        let t = &self.table;
        let dist_of = |r: usize| {
            let rho = t.permutation(r);
            kendall_tau_unchecked(rho0, &rho) + t.pos(r, first_request) as u64
        };
        let dist = if self.parallel {
            (0..t.n()).into_par_iter().map(dist_of).collect()
        } else {
            (0..t.n()).map(dist_of).collect()
        };
        Ok(Layer {
            dist,
            choice: vec![FROM_SOURCE; t.n()],
        })
    }

    /// Relaxes the `l` element-transfer arcs of `request` out of every node of `prev`.
    ///
    /// Evaluated pull-style: the predecessors of an ordering under transfers of `a` are
    /// exactly the orderings reachable from it by moving `a` anywhere, so each target node
    /// scans its `l` incoming arcs independently. That makes the parallel and sequential
    /// paths produce identical layers.
    pub fn layer_relax(&self, prev: &Layer, request: usize) -> Result<Layer> {
        self.check_item(request)?;
        if prev.dist.len() != self.table.n() {
            return Err(Error::UniverseMismatch {
                left: prev.dist.len(),
                right: self.table.n(),
            });
        }
        let n = self.table.n();
        let mut dist = vec![u64::MAX; n];
        let mut choice = vec![FROM_SOURCE; n];
        if self.parallel {
            dist.par_iter_mut()
                .zip(choice.par_iter_mut())
                .enumerate()
                .for_each(|(r, (d, c))| (*d, *c) = self.pull(prev, request, r));
        } else {
            for r in 0..n {
                (dist[r], choice[r]) = self.pull(prev, request, r);
            }
        }
        Ok(Layer { dist, choice })
    }

    #[inline]
    fn pull(&self, prev: &Layer, a: usize, r: usize) -> (u64, u8) {
        let t = &self.table;
        let j = t.pos(r, a);
        let mut best = (u64::MAX, usize::MAX, 0u8);
        for p in 1..=t.l() {
            let pred = t.transfer(r, a, p);
            let d = prev.dist[pred];
            if d == u64::MAX {
                continue;
            }
            let cost = d + (p.abs_diff(j) + j) as u64;
            if (cost, pred) < (best.0, best.1) {
                best = (cost, pred, p as u8);
            }
        }
        (best.0, best.2)
    }

    /// Optimal schedule for `sigma` starting from `rho0`.
    pub fn solve(&self, rho0: &Permutation, sigma: &RequestSequence) -> Result<Schedule> {
        rho0.check_same_universe_len(self.table.l())?;
        sigma.check_universe(self.table.l())?;
        let requests = sigma.requests();
        if requests.is_empty() {
            return Schedule::identity(rho0, sigma);
        }
        let mut layer = self.initial_layer(rho0, requests[0])?;
        let mut log: Vec<Vec<u8>> = Vec::with_capacity(requests.len() - 1);
        for &a in &requests[1..] {
            let next = self.layer_relax(&layer, a)?;
            layer = Layer {
                dist: next.dist,
                choice: Vec::new(),
            };
            log.push(next.choice);
        }
        let (mut r, _) = layer.best();

        // walk back from the last layer to layer 1
        let t = &self.table;
        let mut targets = vec![0usize; requests.len()];
        for (i, choices) in log.iter().enumerate().rev() {
            let a = requests[i + 1];
            targets[i + 1] = t.pos(r, a);
            r = t.transfer(r, a, choices[r] as usize);
        }
        let initial = t.permutation(r);
        targets[0] = t.pos(r, requests[0]);
        Schedule::from_targets(rho0, sigma, initial, targets)
    }
}

/// Solves with the default configuration.
pub fn solve(rho0: &Permutation, sigma: &RequestSequence) -> Result<Schedule> {
    solve_with(rho0, sigma, &SolverConfig::default())
}

pub fn solve_with(
    rho0: &Permutation,
    sigma: &RequestSequence,
    config: &SolverConfig,
) -> Result<Schedule> {
    check_size(rho0.len(), config.max_l)?;
    ActionNetwork::new(rho0.len(), config)?.solve(rho0, sigma)
}

/// Rank of `rho` within its layer.
pub fn node_of(rho: &Permutation) -> usize {
    rank(rho)
}

impl RequestSequence {
    pub(crate) fn check_universe(&self, l: usize) -> Result<()> {
        if self.universe() == l {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                left: l,
                right: self.universe(),
            })
        }
    }
}
