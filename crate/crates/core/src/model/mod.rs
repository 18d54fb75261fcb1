//! Orderings, reorganization actions and the service cost model.
//!
//! Accessing the item at position `i` costs `i`. Reorganization is charged one unit per
//! adjacent transposition, free or paid alike.

pub mod permutation;
pub mod schedule;
pub mod sequence;
pub mod transfer;

pub use permutation::{factorial, kendall_tau, rank, unrank, ItemList, Permutation};
pub use schedule::{schedule_cost, CostBreakdown, RequestRecord, Schedule, ScheduleRecord};
pub use sequence::RequestSequence;
pub use transfer::{
    apply_element_transfer, apply_subset_transfer, apply_swaps, enumerate_element_transfers,
    enumerate_subset_transfers, ElementTransfer, SubsetTransfer, Swap,
};

/// 1-based position of `a` in `rho`.
pub fn position(rho: &Permutation, a: usize) -> crate::Result<usize> {
    rho.position(a)
}
