use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The item universe of a list: distinct, non-empty labels with stable indices
/// `0..l` assigned in construction order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemList {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl ItemList {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut list = ItemList {
            labels: Vec::new(),
            index: HashMap::new(),
        };
        for label in labels {
            let label = label.into();
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if list.index.contains_key(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            list.index.insert(label.clone(), list.labels.len());
            list.labels.push(label);
        }
        if list.labels.is_empty() {
            return Err(Error::EmptyList);
        }
        Ok(list)
    }

    /// Parses a comma-separated label list such as `a,b,c`.
    pub fn parse_csv(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Err(Error::EmptyList);
        }
        Self::new(text.split(',').map(str::trim))
    }

    /// Default labels for generated workloads: `a..z` up to 26 items, `i0..` beyond.
    pub fn generated(l: usize) -> Result<Self> {
        if l <= 26 {
            Self::new((0..l).map(|i| ((b'a' + i as u8) as char).to_string()))
        } else {
            Self::new((0..l).map(|i| format!("i{i}")))
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Result<&str> {
        self.labels
            .get(index)
            .map(String::as_str)
            .ok_or(Error::UnknownItem {
                index,
                len: self.len(),
            })
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// The list in its given order, which is the initial ordering of every instance.
    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.len())
    }

    /// Maps a token sequence onto a permutation of this universe.
    pub fn permutation<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Permutation> {
        let order = tokens
            .iter()
            .map(|t| self.index_of(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_order(order)
    }

    pub fn labels_of(&self, rho: &Permutation) -> Vec<String> {
        rho.order()
            .iter()
            .map(|&i| self.labels[i].clone())
            .collect()
    }
}

/// An ordering of the items `0..l`, with constant-time position lookup.
///
/// Positions are 1-based: the front item is at position 1 and costs 1 to access.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    order: Vec<usize>,
    positions: Vec<usize>,
}

impl Permutation {
    pub fn identity(l: usize) -> Self {
        Permutation {
            order: (0..l).collect(),
            positions: (1..=l).collect(),
        }
    }

    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        let l = order.len();
        let mut positions = vec![0usize; l];
        for (p, &item) in order.iter().enumerate() {
            if item >= l {
                return Err(Error::InvalidPermutation(format!(
                    "item {item} out of range for {l} items"
                )));
            }
            if positions[item] != 0 {
                return Err(Error::InvalidPermutation(format!("item {item} repeated")));
            }
            positions[item] = p + 1;
        }
        Ok(Permutation { order, positions })
    }

    pub(crate) fn from_order_unchecked(order: Vec<usize>) -> Self {
        let mut positions = vec![0usize; order.len()];
        for (p, &item) in order.iter().enumerate() {
            positions[item] = p + 1;
        }
        Permutation { order, positions }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }

    /// 1-based position of item `a`.
    pub fn position(&self, a: usize) -> Result<usize> {
        self.positions.get(a).copied().ok_or(Error::UnknownItem {
            index: a,
            len: self.len(),
        })
    }

    #[inline]
    pub(crate) fn pos(&self, a: usize) -> usize {
        self.positions[a]
    }

    /// Item at 1-based position `p`.
    pub fn item_at(&self, p: usize) -> Result<usize> {
        if p == 0 || p > self.len() {
            return Err(Error::PositionOutOfRange {
                position: p,
                len: self.len(),
            });
        }
        Ok(self.order[p - 1])
    }

    pub(crate) fn check_item(&self, a: usize) -> Result<()> {
        if a < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownItem {
                index: a,
                len: self.len(),
            })
        }
    }

    pub(crate) fn check_same_universe(&self, other: &Permutation) -> Result<()> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                left: self.len(),
                right: other.len(),
            })
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.order)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(order: Vec<usize>) -> Result<Self> {
        Permutation::from_order(order)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.order
    }
}

/// Number of item pairs whose relative order differs between `rho` and `rho2`,
/// i.e. the minimum number of adjacent transpositions turning one into the other.
pub fn kendall_tau(rho: &Permutation, rho2: &Permutation) -> Result<u64> {
    rho.check_same_universe(rho2)?;
    Ok(kendall_tau_unchecked(rho, rho2))
}

pub(crate) fn kendall_tau_unchecked(rho: &Permutation, rho2: &Permutation) -> u64 {
    // positions in rho2 listed in rho's order; inversions of that sequence
    let mut seq: Vec<usize> = rho.order.iter().map(|&a| rho2.pos(a)).collect();
    if seq.len() <= 16 {
        let mut count = 0u64;
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                if seq[i] > seq[j] {
                    count += 1;
                }
            }
        }
        return count;
    }
    let mut buf = vec![0usize; seq.len()];
    merge_count(&mut seq, &mut buf)
}

fn merge_count(seq: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (left, right) = seq.split_at_mut(mid);
        let (bl, br) = buf.split_at_mut(mid);
        merge_count(left, bl) + merge_count(right, br)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if seq[i] <= seq[j] {
            buf[k] = seq[i];
            i += 1;
        } else {
            buf[k] = seq[j];
            count += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + (mid - i)].copy_from_slice(&seq[i..mid]);
    k += mid - i;
    buf[k..k + (n - j)].copy_from_slice(&seq[j..n]);
    seq.copy_from_slice(&buf[..n]);
    count
}

/// `l!`, or `None` when it does not fit in `usize`.
pub fn factorial(l: usize) -> Option<usize> {
    (1..=l).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// Lexicographic (Lehmer code) rank of `rho` among all orderings of its items.
pub fn rank(rho: &Permutation) -> usize {
    let l = rho.len();
    let mut used = 0u64;
    let mut r = 0usize;
    for (i, &item) in rho.order.iter().enumerate() {
        let smaller_unused = item - (used & ((1u64 << item) - 1)).count_ones() as usize;
        r = r * (l - i) + smaller_unused;
        used |= 1 << item;
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(k: usize, l: usize) -> Result<Permutation> {
    let total = factorial(l).ok_or(Error::RankOutOfRange { rank: k, len: l })?;
    if k >= total {
        return Err(Error::RankOutOfRange { rank: k, len: l });
    }
    Ok(unrank_unchecked(k, l))
}

pub(crate) fn unrank_unchecked(mut k: usize, l: usize) -> Permutation {
    let mut digits = vec![0usize; l];
    for i in (0..l).rev() {
        let radix = l - i;
        digits[i] = k % radix;
        k /= radix;
    }
    let mut pool: Vec<usize> = (0..l).collect();
    let order = digits.into_iter().map(|d| pool.remove(d)).collect();
    Permutation::from_order_unchecked(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(list: &ItemList, tokens: &str) -> Permutation {
        let toks: Vec<&str> = tokens.split(',').collect();
        list.permutation(&toks).unwrap()
    }

    #[test]
    fn position_examples() {
        let abc = ItemList::parse_csv("a,b,c").unwrap();
        let rho = abc.identity();
        assert_eq!(rho.position(abc.index_of("a").unwrap()).unwrap(), 1);
        assert_eq!(rho.position(abc.index_of("c").unwrap()).unwrap(), 3);

        let abcd = ItemList::parse_csv("a,b,c,d").unwrap();
        let rho = labels(&abcd, "b,d,a,c");
        assert_eq!(rho.position(abcd.index_of("a").unwrap()).unwrap(), 3);
        assert!(matches!(
            rho.position(7),
            Err(Error::UnknownItem { index: 7, len: 4 })
        ));
    }

    #[test]
    fn kendall_tau_examples() {
        let abcd = ItemList::parse_csv("a,b,c,d").unwrap();
        let rho = abcd.identity();
        assert_eq!(kendall_tau(&rho, &rho).unwrap(), 0);
        let abc = ItemList::parse_csv("a,b,c").unwrap();
        assert_eq!(
            kendall_tau(&abc.identity(), &labels(&abc, "c,b,a")).unwrap(),
            3
        );
        assert_eq!(kendall_tau(&rho, &labels(&abcd, "b,d,a,c")).unwrap(), 3);
        assert!(matches!(
            kendall_tau(&rho, &abc.identity()),
            Err(Error::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn kendall_tau_long_lists_use_merge_path() {
        // full reversal of 40 items has 40*39/2 discordant pairs
        let fwd = Permutation::identity(40);
        let rev = Permutation::from_order((0..40).rev().collect()).unwrap();
        assert_eq!(kendall_tau(&fwd, &rev).unwrap(), 780);
        let rotated = Permutation::from_order((1..40).chain([0]).collect()).unwrap();
        assert_eq!(kendall_tau(&fwd, &rotated).unwrap(), 39);
    }

    #[test]
    fn rank_examples() {
        let abc = ItemList::parse_csv("a,b,c").unwrap();
        assert_eq!(rank(&abc.identity()), 0);
        assert_eq!(rank(&labels(&abc, "c,b,a")), 5);
        assert_eq!(rank(&labels(&abc, "b,a,c")), 2);
        assert!(matches!(
            unrank(6, 3),
            Err(Error::RankOutOfRange { rank: 6, len: 3 })
        ));
    }

    #[test]
    fn rank_unrank_round_trip_small() {
        for l in 0..=6 {
            let n = factorial(l).unwrap();
            let mut prev: Option<Vec<usize>> = None;
            for k in 0..n {
                let rho = unrank(k, l).unwrap();
                assert_eq!(rank(&rho), k);
                if let Some(p) = &prev {
                    assert!(p.as_slice() < rho.order(), "lexicographic order");
                }
                prev = Some(rho.order().to_vec());
            }
        }
    }

    #[test]
    fn item_list_validation() {
        assert_eq!(ItemList::parse_csv(""), Err(Error::EmptyList));
        assert_eq!(
            ItemList::parse_csv("a,a"),
            Err(Error::DuplicateLabel("a".into()))
        );
        assert_eq!(ItemList::parse_csv("a,,b"), Err(Error::EmptyLabel));
        assert_eq!(ItemList::generated(3).unwrap().labels(), ["a", "b", "c"]);
        assert_eq!(ItemList::generated(30).unwrap().label(29).unwrap(), "i29");
    }

    #[test]
    fn permutation_rejects_non_bijections() {
        assert!(Permutation::from_order(vec![0, 0]).is_err());
        assert!(Permutation::from_order(vec![0, 2]).is_err());
        let p: Permutation = serde_json::from_str("[2,0,1]").unwrap();
        assert_eq!(p.position(2).unwrap(), 1);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }
}
