use serde::{Deserialize, Serialize};

use super::permutation::ItemList;
use crate::error::{Error, Result};

/// A request sequence over the items `0..l` of one list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequestSequence {
    requests: Vec<usize>,
    universe: usize,
}

impl RequestSequence {
    pub fn new(requests: Vec<usize>, universe: usize) -> Result<Self> {
        if let Some(&bad) = requests.iter().find(|&&r| r >= universe) {
            return Err(Error::UnknownItem {
                index: bad,
                len: universe,
            });
        }
        Ok(RequestSequence { requests, universe })
    }

    pub fn empty(universe: usize) -> Self {
        RequestSequence {
            requests: Vec::new(),
            universe,
        }
    }

    /// Resolves labels against `list`; unknown labels are a domain error.
    pub fn from_labels<S: AsRef<str>>(list: &ItemList, tokens: &[S]) -> Result<Self> {
        let requests = tokens
            .iter()
            .map(|t| list.index_of(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(RequestSequence {
            requests,
            universe: list.len(),
        })
    }

    /// Parses `b,a,b` style request lists; an empty string is the empty sequence.
    pub fn parse_csv(list: &ItemList, text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .collect();
        Self::from_labels(list, &tokens)
    }

    pub fn requests(&self) -> &[usize] {
        &self.requests
    }

    pub fn len(&self) -> usize {
        self.requests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.requests.is_empty()
    }

    /// Size of the list the requests refer to.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// The 1-based `i`th request.
    pub fn get(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.len() {
            return Err(Error::RequestIndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(self.requests[i - 1])
    }

    /// Smallest 1-based `i` with `σ_i = a`, or `None` if `a` is never requested.
    pub fn first_occurrence(&self, a: usize) -> Result<Option<usize>> {
        self.check_item(a)?;
        Ok(self.requests.iter().position(|&r| r == a).map(|i| i + 1))
    }

    /// Smallest `j > i` with `σ_j = a`; `m + 1` when there is no later request.
    pub fn next_occurrence(&self, i: usize, a: usize) -> Result<usize> {
        self.check_item(a)?;
        if i == 0 || i > self.len() {
            return Err(Error::RequestIndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(self.requests[i..]
            .iter()
            .position(|&r| r == a)
            .map_or(self.len() + 1, |off| i + off + 1))
    }

    /// A copy with one more request appended.
    pub fn pushed(&self, a: usize) -> Result<Self> {
        self.check_item(a)?;
        let mut requests = self.requests.clone();
        requests.push(a);
        Ok(RequestSequence {
            requests,
            universe: self.universe,
        })
    }

    pub fn labels(&self, list: &ItemList) -> Vec<String> {
        self.requests
            .iter()
            .map(|&r| list.labels()[r].clone())
            .collect()
    }

    fn check_item(&self, a: usize) -> Result<()> {
        if a < self.universe {
            Ok(())
        } else {
            Err(Error::UnknownItem {
                index: a,
                len: self.universe,
            })
        }
    }
}
