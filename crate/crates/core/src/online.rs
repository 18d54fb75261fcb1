//! Classic online list-update policies.
//!
//! Costs use the free-exchange accounting: the access costs the item's position and the
//! policy's forward move of the accessed item is free.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::permutation::Permutation;
use crate::model::sequence::RequestSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OnlinePolicy {
    MoveToFront,
    Transpose,
    FrequencyCount,
}

impl OnlinePolicy {
    pub const ALL: [OnlinePolicy; 3] = [
        OnlinePolicy::MoveToFront,
        OnlinePolicy::Transpose,
        OnlinePolicy::FrequencyCount,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OnlinePolicy::MoveToFront => "mtf",
            OnlinePolicy::Transpose => "transpose",
            OnlinePolicy::FrequencyCount => "frequency-count",
        }
    }
}

impl std::str::FromStr for OnlinePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mtf" | "move-to-front" => Ok(OnlinePolicy::MoveToFront),
            "transpose" => Ok(OnlinePolicy::Transpose),
            "fc" | "frequency-count" => Ok(OnlinePolicy::FrequencyCount),
            other => Err(Error::UnknownPolicy(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnlineRun {
    pub total: u64,
    pub costs: Vec<u64>,
    #[serde(rename = "final")]
    pub final_order: Permutation,
}

pub fn simulate(
    policy: OnlinePolicy,
    rho0: &Permutation,
    sigma: &RequestSequence,
) -> Result<OnlineRun> {
    rho0.check_same_universe_len(sigma.universe())?;
    let mut order = rho0.order().to_vec();
    let mut pos: Vec<usize> = (0..order.len()).map(|a| rho0.pos(a) - 1).collect();
    let mut counts = vec![0u64; order.len()];
    let mut costs = Vec::with_capacity(sigma.len());

    for &a in sigma.requests() {
        let p = pos[a];
        costs.push(p as u64 + 1);
        let dest = match policy {
            OnlinePolicy::MoveToFront => 0,
            OnlinePolicy::Transpose => p.saturating_sub(1),
            OnlinePolicy::FrequencyCount => {
                counts[a] += 1;
                let mut d = p;
                while d > 0 && counts[order[d - 1]] < counts[a] {
                    d -= 1;
                }
                d
            }
        };
        order[dest..=p].rotate_right(1);
        for (i, &x) in order.iter().enumerate().take(p + 1).skip(dest) {
            pos[x] = i;
        }
    }

    Ok(OnlineRun {
        total: costs.iter().sum(),
        costs,
        final_order: Permutation::from_order_unchecked(order),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::permutation::ItemList;

    fn run(policy: OnlinePolicy, list: &str, req: &str) -> OnlineRun {
        let l = ItemList::parse_csv(list).unwrap();
        let s = RequestSequence::parse_csv(&l, req).unwrap();
        simulate(policy, &l.identity(), &s).unwrap()
    }

    #[test]
    fn hand_simulations() {
        let mtf = run(OnlinePolicy::MoveToFront, "a,b,c", "c,c");
        assert_eq!((mtf.total, mtf.costs), (4, vec![3, 1]));
        let tr = run(OnlinePolicy::Transpose, "a,b,c", "c,c");
        assert_eq!((tr.total, tr.costs), (5, vec![3, 2]));
        for policy in OnlinePolicy::ALL {
            assert_eq!(run(policy, "a,b,c", "a,a,a,a").total, 4);
        }
    }

    #[test]
    fn frequency_count_is_stable_on_ties() {
        // after c,b: counts a0 b1 c1; b passes a only, so b stays behind c
        let fc = run(OnlinePolicy::FrequencyCount, "a,b,c", "c,b");
        assert_eq!(fc.costs, vec![3, 3]);
        assert_eq!(fc.final_order.order(), &[2, 1, 0]);
        let fc = run(OnlinePolicy::FrequencyCount, "a,b,c", "c,b,b");
        assert_eq!(fc.costs, vec![3, 3, 2]);
        assert_eq!(fc.final_order.order(), &[1, 2, 0]);
    }

    #[test]
    fn unknown_policy_is_a_domain_error() {
        assert_eq!(
            "bit".parse::<OnlinePolicy>().unwrap_err(),
            Error::UnknownPolicy("bit".into())
        );
    }
}
