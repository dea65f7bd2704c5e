//! Named pass/fail results with an optional located counterexample.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// `Full` exhausts every sweep; `Fast` samples the cubic-cost ones.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CheckLevel {
    Fast,
    #[default]
    Full,
}

/// Chooses which of `total` enumerated cases a sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampler {
    pub level: CheckLevel,
    pub seed: u64,
    pub budget: usize,
}

impl Sampler {
    pub const FAST_BUDGET: usize = 512;

    pub fn full() -> Sampler {
        Sampler { level: CheckLevel::Full, seed: 0, budget: usize::MAX }
    }

    pub fn new(level: CheckLevel, seed: u64) -> Sampler {
        match level {
            CheckLevel::Full => Sampler::full(),
            CheckLevel::Fast => Sampler { level, seed, budget: Sampler::FAST_BUDGET },
        }
    }

    /// Sorted indices into `0..total`: all of them, or a seeded sample of `budget` of them.
    pub fn select(&self, total: usize) -> Vec<usize> {
        if total <= self.budget {
            return (0..total).collect();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut v = sample(&mut rng, total, self.budget).into_vec();
        v.sort_unstable();
        v
    }

    /// Cases `(i, j, k)` of `0..a × 0..b × 0..c`.
    pub fn triples(&self, a: usize, b: usize, c: usize) -> Vec<(usize, usize, usize)> {
        self.select(a * b * c).into_iter().map(|t| (t / (b * c), (t / c) % b, t % c)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckList {
    pub items: Vec<Check>,
}

impl CheckList {
    pub fn new() -> CheckList {
        CheckList::default()
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool) {
        self.items.push(Check { name: name.into(), pass, witness: None });
    }

    /// Records a check that passes exactly when no counterexample was found.
    pub fn push_witness(&mut self, name: impl Into<String>, witness: Option<String>) {
        self.items.push(Check { name: name.into(), pass: witness.is_none(), witness });
    }

    /// Runs `bad` over `cases` and records the first case it flags.
    pub fn sweep<T: std::fmt::Debug>(&mut self, name: impl Into<String>, cases: impl IntoIterator<Item = T>, mut bad: impl FnMut(&T) -> bool) {
        let w = cases.into_iter().find(|c| bad(c)).map(|c| format!("{c:?}"));
        self.push_witness(name, w);
    }

    pub fn extend(&mut self, other: CheckList) {
        self.items.extend(other.items);
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.items.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.items.iter().filter(|c| !c.pass).collect()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_records_first_counterexample() {
        let mut c = CheckList::new();
        c.sweep("even", 0..10, |x| x % 2 == 1 && *x > 4);
        c.push("plain", true);
        assert!(!c.all_pass());
        assert_eq!(c.get("even").unwrap().witness.as_deref(), Some("5"));
        assert_eq!(c.failures().len(), 1);
        assert!(c.passed("plain"));
    }

    #[test]
    fn sampler_is_seeded_and_exhaustive_when_full() {
        assert_eq!(Sampler::full().triples(2, 3, 4).len(), 24);
        let s = Sampler::new(CheckLevel::Fast, 9);
        let a = s.triples(20, 20, 20);
        assert_eq!(a.len(), Sampler::FAST_BUDGET);
        assert_eq!(a, s.triples(20, 20, 20));
        assert!(a.iter().all(|&(i, j, k)| i < 20 && j < 20 && k < 20));
    }
}
