//! Rank-indexed lookup tables over all `l!` orderings.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::permutation::{factorial, rank, unrank_unchecked, Permutation};
use crate::model::transfer::element_transfer_unchecked;

/// Hard ceiling for any `l!`-indexed structure; ranks are stored as `u32`.
pub const HARD_MAX_L: usize = 12;

/// Position and element-transfer lookups for every ordering of `l` items.
#[derive(Debug, Clone)]
pub struct PermTable {
    l: usize,
    n: usize,
    pos: Vec<u8>,
    transfer: Vec<u32>,
}

impl PermTable {
    pub fn new(l: usize, max_l: usize) -> Result<Self> {
        check_size(l, max_l)?;
        let n = factorial(l).expect("guarded size");
        let mut pos = vec![0u8; n * l];
        let mut transfer = vec![0u32; n * l * l];
        pos.par_chunks_mut(l.max(1))
            .zip(transfer.par_chunks_mut((l * l).max(1)))
            .enumerate()
            .for_each(|(r, (pos_row, tr_row))| {
                let rho = unrank_unchecked(r, l);
                for a in 0..l {
                    pos_row[a] = rho.pos(a) as u8;
                    for j in 1..=l {
                        let next = element_transfer_unchecked(&rho, a, j);
                        tr_row[a * l + j - 1] = rank(&next) as u32;
                    }
                }
            });
        Ok(PermTable {
            l,
            n,
            pos,
            transfer,
        })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of orderings, `l!`.
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn pos(&self, r: usize, a: usize) -> usize {
        self.pos[r * self.l + a] as usize
    }

    /// Rank of the ordering obtained by moving `a` to position `j` in ordering `r`.
    #[inline]
    pub fn transfer(&self, r: usize, a: usize, j: usize) -> usize {
        self.transfer[(r * self.l + a) * self.l + j - 1] as usize
    }

    pub fn permutation(&self, r: usize) -> Permutation {
        unrank_unchecked(r, self.l)
    }
}

pub(crate) fn check_size(l: usize, max_l: usize) -> Result<()> {
    if l == 0 {
        return Err(Error::EmptyList);
    }
    let max = max_l.min(HARD_MAX_L);
    if l > max {
        return Err(Error::SizeLimit { len: l, max });
    }
    Ok(())
}

/// Rough bytes needed by the solver tables plus its per-layer choice log.
pub fn solver_memory_estimate(l: usize, m: usize) -> Option<u128> {
    let n = factorial(l)? as u128;
    let l = l as u128;
    Some(n * l + n * l * l * 4 + n * 16 + n * m as u128)
}
