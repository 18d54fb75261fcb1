use std::fmt;
use std::path::PathBuf;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::sequence::RequestSequence;

/// Seeded generator used for every workload and random search.
///
/// ChaCha8 seeded through `seed_from_u64` is specified bit-for-bit by `rand_chacha`, so
/// the same seed yields the same requests on every platform.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WorkloadKind {
    Uniform,
    Zipf {
        s: f64,
    },
    /// Always request the item an MTF list would have at its tail.
    Adversarial,
    Trace {
        path: PathBuf,
    },
}

impl fmt::Display for WorkloadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WorkloadKind::Uniform => f.write_str("uniform"),
            WorkloadKind::Zipf { s } => write!(f, "zipf(s={s})"),
            WorkloadKind::Adversarial => f.write_str("adversarial"),
            WorkloadKind::Trace { path } => write!(f, "trace({})", path.display()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkloadSpec {
    pub kind: WorkloadKind,
    pub l: usize,
    pub m: usize,
    pub seed: u64,
}

impl WorkloadSpec {
    pub fn validate(&self) -> Result<()> {
        if self.l == 0 {
            return Err(Error::InvalidWorkload(
                "list size must be at least 1".into(),
            ));
        }
        if let WorkloadKind::Zipf { s } = self.kind {
            if !(s.is_finite() && s >= 0.0) {
                return Err(Error::InvalidWorkload(format!(
                    "zipf exponent must be a finite value >= 0, got {s}"
                )));
            }
        }
        Ok(())
    }
}

/// Requests over items `0..l`; identical specs give identical sequences.
pub fn generate(spec: &WorkloadSpec) -> Result<RequestSequence> {
    spec.validate()?;
    let (l, m) = (spec.l, spec.m);
    let mut rng = seeded_rng(spec.seed);
    let requests = match &spec.kind {
        WorkloadKind::Uniform => (0..m).map(|_| rng.gen_range(0..l)).collect(),
        WorkloadKind::Zipf { s } => {
            let weights: Vec<f64> = (1..=l).map(|rank| (rank as f64).powf(-s)).collect();
            let dist =
                WeightedIndex::new(&weights).map_err(|e| Error::InvalidWorkload(e.to_string()))?;
            (0..m).map(|_| dist.sample(&mut rng)).collect()
        }
        WorkloadKind::Adversarial => {
            let mut order: Vec<usize> = (0..l).collect();
            let mut out = Vec::with_capacity(m);
            for _ in 0..m {
                let last = order[l - 1];
                out.push(last);
                order.rotate_right(1);
            }
            out
        }
        WorkloadKind::Trace { .. } => {
            return Err(Error::Usage(
                "trace workloads are read with ingest_trace, not generated".into(),
            ))
        }
    };
    RequestSequence::new(requests, l)
}
