use serde::{Deserialize, Serialize};

use super::permutation::Permutation;
use crate::error::{Error, Result};

/// Move `item` to the 1-based position `target`; every other item keeps its relative order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementTransfer {
    pub item: usize,
    pub target: usize,
}

/// Move every member of `subset` (all of which precede `item`) to just behind `item`,
/// keeping the members in their current relative order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetTransfer {
    pub item: usize,
    pub subset: Vec<usize>,
}

/// An adjacent transposition of the items at 1-based positions `p` and `p + 1`.
pub type Swap = usize;

impl ElementTransfer {
    pub fn new(item: usize, target: usize) -> Self {
        ElementTransfer { item, target }
    }

    /// Applies the transfer, returning the new ordering and its transposition count.
    pub fn apply(&self, rho: &Permutation) -> Result<(Permutation, u64)> {
        rho.check_item(self.item)?;
        if self.target == 0 || self.target > rho.len() {
            return Err(Error::PositionOutOfRange {
                position: self.target,
                len: rho.len(),
            });
        }
        let p = rho.pos(self.item);
        Ok((
            element_transfer_unchecked(rho, self.item, self.target),
            p.abs_diff(self.target) as u64,
        ))
    }

    /// Canonical decomposition: the item moves one adjacent swap at a time.
    pub fn transpositions(&self, rho: &Permutation) -> Result<Vec<Swap>> {
        self.apply(rho)?;
        let p = rho.pos(self.item);
        Ok(if self.target < p {
            (self.target..p).rev().collect()
        } else {
            (p..self.target).collect()
        })
    }
}

pub(crate) fn element_transfer_unchecked(
    rho: &Permutation,
    item: usize,
    target: usize,
) -> Permutation {
    let p = rho.pos(item);
    let mut order = rho.order().to_vec();
    if target < p {
        order[target - 1..p].rotate_right(1);
    } else {
        order[p - 1..target].rotate_left(1);
    }
    Permutation::from_order_unchecked(order)
}

pub fn apply_element_transfer(rho: &Permutation, t: ElementTransfer) -> Result<(Permutation, u64)> {
    t.apply(rho)
}

/// All `l` element transfers of `a`, ordered by target position `1..=l`.
pub fn enumerate_element_transfers(rho: &Permutation, a: usize) -> Result<Vec<(Permutation, u64)>> {
    rho.check_item(a)?;
    let p = rho.pos(a);
    Ok((1..=rho.len())
        .map(|j| (element_transfer_unchecked(rho, a, j), p.abs_diff(j) as u64))
        .collect())
}

impl SubsetTransfer {
    pub fn new(item: usize, subset: Vec<usize>) -> Self {
        SubsetTransfer { item, subset }
    }

    fn validate(&self, rho: &Permutation) -> Result<Vec<bool>> {
        rho.check_item(self.item)?;
        let k = rho.pos(self.item);
        let mut member = vec![false; rho.len()];
        for &s in &self.subset {
            rho.check_item(s)?;
            if rho.pos(s) >= k {
                return Err(Error::SubsetNotPreceding {
                    member: s,
                    item: self.item,
                });
            }
            member[s] = true;
        }
        Ok(member)
    }

    pub fn apply(&self, rho: &Permutation) -> Result<(Permutation, u64)> {
        let member = self.validate(rho)?;
        Ok(subset_transfer_unchecked(rho, self.item, &member))
    }

    /// Canonical decomposition: members move one at a time, nearest to the item first,
    /// each sliding right until it sits just behind the item and the members already moved.
    pub fn transpositions(&self, rho: &Permutation) -> Result<Vec<Swap>> {
        let member = self.validate(rho)?;
        let k = rho.pos(self.item);
        let mut order = rho.order().to_vec();
        let mut swaps = Vec::new();
        // slot where the next moved member comes to rest
        let mut dest = k;
        for p in (1..k).rev() {
            if !member[order[p - 1]] {
                continue;
            }
            for q in p..dest {
                order.swap(q - 1, q);
                swaps.push(q);
            }
            dest -= 1;
        }
        Ok(swaps)
    }
}

/// Returns the reorganized list and its cost `sum over s in S of (1 + non-members strictly between s and item)`.
pub(crate) fn subset_transfer_unchecked(
    rho: &Permutation,
    item: usize,
    member: &[bool],
) -> (Permutation, u64) {
    let k = rho.pos(item);
    let order = rho.order();
    let mut front = Vec::with_capacity(order.len());
    let mut moved = Vec::new();
    let mut cost = 0u64;
    let mut non_members_after = 0u64;
    for p in (1..k).rev() {
        let x = order[p - 1];
        if member[x] {
            cost += 1 + non_members_after;
        } else {
            non_members_after += 1;
        }
    }
    for &x in &order[..k - 1] {
        if member[x] {
            moved.push(x);
        } else {
            front.push(x);
        }
    }
    front.push(item);
    front.extend(moved);
    front.extend_from_slice(&order[k..]);
    (Permutation::from_order_unchecked(front), cost)
}

pub fn apply_subset_transfer(rho: &Permutation, t: &SubsetTransfer) -> Result<(Permutation, u64)> {
    t.apply(rho)
}

/// Every subset transfer of `a`: one entry per subset of its `k - 1` predecessors,
/// in order of the subset bitmask over predecessor positions (bit `i` = position `i + 1`).
pub fn enumerate_subset_transfers(
    rho: &Permutation,
    a: usize,
) -> Result<impl Iterator<Item = (SubsetTransfer, Permutation, u64)> + '_> {
    rho.check_item(a)?;
    let k = rho.pos(a);
    let preds = &rho.order()[..k - 1];
    if k > usize::BITS as usize - 1 {
        return Err(Error::SizeLimit {
            len: k,
            max: usize::BITS as usize - 1,
        });
    }
    let count = 1usize << (k - 1);
    let mut member = vec![false; rho.len()];
    Ok((0..count).map(move |mask| {
        let mut subset = Vec::new();
        for (i, &x) in preds.iter().enumerate() {
            let take = mask >> i & 1 == 1;
            member[x] = take;
            if take {
                subset.push(x);
            }
        }
        let (next, cost) = subset_transfer_unchecked(rho, a, &member);
        (SubsetTransfer::new(a, subset), next, cost)
    }))
}

/// Replays adjacent swaps (1-based left positions) on an ordering.
pub fn apply_swaps(rho: &Permutation, swaps: &[Swap]) -> Result<Permutation> {
    let mut order = rho.order().to_vec();
    for &q in swaps {
        if q == 0 || q >= order.len() {
            return Err(Error::PositionOutOfRange {
                position: q,
                len: order.len(),
            });
        }
        order.swap(q - 1, q);
    }
    Ok(Permutation::from_order_unchecked(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::permutation::{kendall_tau, ItemList};

    fn perm(list: &ItemList, tokens: &str) -> Permutation {
        let toks: Vec<&str> = tokens.split(',').collect();
        list.permutation(&toks).unwrap()
    }

    #[test]
    fn element_transfer_examples() {
        let l = ItemList::parse_csv("a,b,c,d").unwrap();
        let rho = l.identity();
        let idx = |s| l.index_of(s).unwrap();

        let (r, c) = apply_element_transfer(&rho, ElementTransfer::new(idx("d"), 1)).unwrap();
        assert_eq!((r, c), (perm(&l, "d,a,b,c"), 3));
        let (r, c) = apply_element_transfer(&rho, ElementTransfer::new(idx("b"), 2)).unwrap();
        assert_eq!((r, c), (rho.clone(), 0));
        let (r, c) = apply_element_transfer(&rho, ElementTransfer::new(idx("a"), 3)).unwrap();
        assert_eq!((r, c), (perm(&l, "b,c,a,d"), 2));

        assert!(matches!(
            apply_element_transfer(&rho, ElementTransfer::new(0, 5)),
            Err(Error::PositionOutOfRange {
                position: 5,
                len: 4
            })
        ));
        assert!(matches!(
            apply_element_transfer(&rho, ElementTransfer::new(0, 0)),
            Err(Error::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn subset_transfer_examples() {
        let l = ItemList::parse_csv("x,y,z,a").unwrap();
        let idx = |s| l.index_of(s).unwrap();
        let rho = l.identity();
        let t = SubsetTransfer::new(idx("a"), vec![idx("x"), idx("z")]);
        let (r, c) = apply_subset_transfer(&rho, &t).unwrap();
        assert_eq!((r, c), (perm(&l, "y,a,x,z"), 3));

        let (r, c) = apply_subset_transfer(&rho, &SubsetTransfer::new(idx("a"), vec![])).unwrap();
        assert_eq!((r, c), (rho.clone(), 0));

        let l3 = ItemList::parse_csv("x,y,a").unwrap();
        let t = SubsetTransfer::new(2, vec![0, 1]);
        assert_eq!(
            apply_subset_transfer(&l3.identity(), &t).unwrap(),
            (perm(&l3, "a,x,y"), 2)
        );

        let bad = SubsetTransfer::new(idx("y"), vec![idx("z")]);
        assert_eq!(
            apply_subset_transfer(&rho, &bad),
            Err(Error::SubsetNotPreceding {
                member: idx("z"),
                item: idx("y")
            })
        );
    }

    #[test]
    fn enumerate_element_transfer_examples() {
        let l = ItemList::parse_csv("a,b").unwrap();
        let all = enumerate_element_transfers(&l.identity(), 1).unwrap();
        assert_eq!(all, vec![(perm(&l, "b,a"), 1), (l.identity(), 0)]);

        let l = ItemList::parse_csv("a,b,c").unwrap();
        let costs: Vec<u64> = enumerate_element_transfers(&l.identity(), 2)
            .unwrap()
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        assert_eq!(costs, vec![2, 1, 0]);
        assert!(enumerate_element_transfers(&l.identity(), 3).is_err());
    }

    #[test]
    fn enumerate_subset_transfer_examples() {
        let l = ItemList::parse_csv("x,y,a").unwrap();
        let rho = l.identity();
        assert_eq!(enumerate_subset_transfers(&rho, 0).unwrap().count(), 1);
        let all: Vec<_> = enumerate_subset_transfers(&rho, 2).unwrap().collect();
        assert_eq!(all.len(), 4);
        let full = all.iter().find(|(t, _, _)| t.subset == vec![0, 1]).unwrap();
        assert_eq!((full.1.clone(), full.2), (perm(&l, "a,x,y"), 2));
        for (t, next, _) in &all {
            assert_eq!(next.position(2).unwrap(), 3 - t.subset.len());
        }
    }

    #[test]
    fn canonical_decompositions_are_minimal_and_replay() {
        let l = ItemList::parse_csv("x,y,z,w,a,b").unwrap();
        let rho = perm(&l, "b,x,z,y,w,a");
        for j in 1..=6 {
            let t = ElementTransfer::new(0, j);
            let swaps = t.transpositions(&rho).unwrap();
            let (after, cost) = t.apply(&rho).unwrap();
            assert_eq!(swaps.len() as u64, cost);
            assert_eq!(apply_swaps(&rho, &swaps).unwrap(), after);
        }
        let t = SubsetTransfer::new(4, vec![5, 2, 3]);
        let swaps = t.transpositions(&rho).unwrap();
        let (after, cost) = t.apply(&rho).unwrap();
        assert_eq!(swaps.len() as u64, cost);
        assert_eq!(apply_swaps(&rho, &swaps).unwrap(), after);
        assert_eq!(kendall_tau(&rho, &after).unwrap(), cost);
        // member nearest the item (w at 5) moves first
        assert_eq!(swaps[0], 5);
    }
}
