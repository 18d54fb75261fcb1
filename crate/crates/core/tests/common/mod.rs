//! Reference implementations written independently of the library, on plain vectors.
#![allow(dead_code)]

use listopt::model::{ItemList, Permutation, RequestSequence};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Inversion count by checking every pair.
pub fn pairwise_kt(a: &[usize], b: &[usize]) -> u64 {
    let pos_b = positions(b);
    let mut n = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if pos_b[a[i]] > pos_b[a[j]] {
                n += 1;
            }
        }
    }
    n
}

pub fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i + 1;
    }
    pos
}

/// Remove the item and reinsert it at the 1-based target.
pub fn naive_element_transfer(order: &[usize], item: usize, target: usize) -> Vec<usize> {
    let mut v: Vec<usize> = order.iter().copied().filter(|&x| x != item).collect();
    v.insert(target - 1, item);
    v
}

/// Members pulled out of the prefix and placed right after the item.
pub fn naive_subset_transfer(order: &[usize], item: usize, subset: &[usize]) -> Vec<usize> {
    let k = order.iter().position(|&x| x == item).unwrap();
    let mut out: Vec<usize> = order[..k]
        .iter()
        .copied()
        .filter(|x| !subset.contains(x))
        .collect();
    out.push(item);
    out.extend(order[..k].iter().copied().filter(|x| subset.contains(x)));
    out.extend_from_slice(&order[k + 1..]);
    out
}

pub fn all_orders(l: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; l], &mut out);
    out
}

/// Exact optimum by dynamic programming over orderings: reorganize (paid by inversions)
/// before each access. Quadratic in `l!`, for tiny lists only.
pub fn naive_opt(rho0: &[usize], sigma: &[usize]) -> u64 {
    let states = all_orders(rho0.len());
    let mut dist: Vec<u64> = states.iter().map(|s| pairwise_kt(rho0, s)).collect();
    let mut first = true;
    for &a in sigma {
        let cur: Vec<u64> = states
            .iter()
            .map(|t| {
                let access = positions(t)[a] as u64;
                if first {
                    return dist[states.iter().position(|s| s == t).unwrap()] + access;
                }
                states
                    .iter()
                    .zip(&dist)
                    .map(|(s, d)| d + pairwise_kt(s, t))
                    .min()
                    .unwrap()
                    + access
            })
            .collect();
        dist = cur;
        first = false;
    }
    dist.into_iter().min().unwrap_or(0)
}

/// Move-to-front cost with free exchanges, on a plain vector.
pub fn naive_mtf(rho0: &[usize], sigma: &[usize]) -> u64 {
    let mut v = rho0.to_vec();
    let mut total = 0;
    for &a in sigma {
        let p = v.iter().position(|&x| x == a).unwrap();
        total += p as u64 + 1;
        v.remove(p);
        v.insert(0, a);
    }
    total
}

pub fn random_order(rng: &mut ChaCha8Rng, l: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..l).collect();
    v.shuffle(rng);
    v
}

pub fn random_requests(rng: &mut ChaCha8Rng, l: usize, m: usize) -> Vec<usize> {
    (0..m).map(|_| rng.gen_range(0..l)).collect()
}

pub fn perm(order: &[usize]) -> Permutation {
    Permutation::from_order(order.to_vec()).unwrap()
}

pub fn seq(requests: &[usize], l: usize) -> RequestSequence {
    RequestSequence::new(requests.to_vec(), l).unwrap()
}

pub fn labelled(list: &str, requests: &str) -> (ItemList, Permutation, RequestSequence) {
    let list = ItemList::parse_csv(list).unwrap();
    let sigma = RequestSequence::parse_csv(&list, requests).unwrap();
    let rho0 = list.identity();
    (list, rho0, sigma)
}
