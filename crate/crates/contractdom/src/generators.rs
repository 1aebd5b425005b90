//! Instance factories: named families, exhaustive labeled connected graphs,
//! and seed-deterministic random corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::structure::{is_free, PatternSpec};

/// Identifier of the random stream recorded in corpus metadata.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Rejection-sampling attempt budget per instance.
pub const DEFAULT_REJECTION_BUDGET: usize = 10_000;

/// Labeled exhaustive enumeration beyond this needs the explicit gate.
pub const EXHAUSTIVE_DEFAULT_LIMIT: usize = 6;
pub const EXHAUSTIVE_HARD_LIMIT: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("family {family:?} needs at least {min} vertices, got {n}")]
    TooSmall { family: Family, min: usize, n: usize },
    #[error("exhaustive enumeration limited to n <= {limit}, got {n}")]
    ExhaustiveTooLarge { n: usize, limit: usize },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    CompleteBipartite,
}

/// Deterministic labeling: paths and cycles in vertex order, star centered
/// at 0, complete bipartite split as first ⌊n/2⌋ against the rest.
pub fn named(family: Family, n: usize) -> Result<Graph, GeneratorError> {
    let min = match family {
        Family::Path | Family::Complete => 1,
        Family::Star | Family::CompleteBipartite => 2,
        Family::Cycle => 3,
    };
    if n < min {
        return Err(GeneratorError::TooSmall { family, min, n });
    }
    let mut edges = Vec::new();
    match family {
        Family::Path => edges.extend((0..n - 1).map(|i| (i, i + 1))),
        Family::Cycle => {
            edges.extend((0..n - 1).map(|i| (i, i + 1)));
            edges.push((0, n - 1));
        }
        Family::Complete => {
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
        }
        Family::Star => edges.extend((1..n).map(|v| (0, v))),
        Family::CompleteBipartite => {
            let left = n / 2;
            for u in 0..left {
                for v in left..n {
                    edges.push((u, v));
                }
            }
        }
    }
    Ok(Graph::from_edge_list(n, &edges).expect("named families are valid"))
}

/// Streams every connected labeled graph on `n` vertices exactly once, in
/// ascending edge-mask order (bit i of the mask is the i-th pair (u,v),
/// u < v, lexicographically).
pub struct ExhaustiveConnected {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next_mask: u64,
    end: u64,
}

impl Iterator for ExhaustiveConnected {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next_mask < self.end {
            let mask = self.next_mask;
            self.next_mask += 1;
            let edges: Vec<_> = self
                .pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edge_list(self.n, &edges).expect("mask edges are valid");
            if g.is_connected() {
                return Some(g);
            }
        }
        None
    }
}

pub fn exhaustive_connected(n: usize) -> Result<ExhaustiveConnected, GeneratorError> {
    if n > EXHAUSTIVE_DEFAULT_LIMIT {
        return Err(GeneratorError::ExhaustiveTooLarge { n, limit: EXHAUSTIVE_DEFAULT_LIMIT });
    }
    Ok(exhaustive_stream(n))
}

/// Same stream with the n = 7 gate lifted (2^21 masks).
pub fn exhaustive_connected_gated(n: usize) -> Result<ExhaustiveConnected, GeneratorError> {
    if n > EXHAUSTIVE_HARD_LIMIT {
        return Err(GeneratorError::ExhaustiveTooLarge { n, limit: EXHAUSTIVE_HARD_LIMIT });
    }
    Ok(exhaustive_stream(n))
}

fn exhaustive_stream(n: usize) -> ExhaustiveConnected {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    let end = 1u64 << pairs.len();
    ExhaustiveConnected { n, pairs, next_mask: 0, end }
}

/// Outcome of one rejection-sampling run.
#[derive(Clone, Debug)]
pub struct SampleOutcome {
    pub graph: Option<Graph>,
    pub attempts: usize,
}

fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).expect("gnp edges are valid")
}

/// First connected G(n, p) variate within the budget.
pub fn random_connected(n: usize, p: f64, seed: u64) -> SampleOutcome {
    sample(n, p, seed, DEFAULT_REJECTION_BUDGET, |g| g.is_connected())
}

/// First connected and P3+kP2-free G(n, p) variate within the budget.
/// `None` graph on budget exhaustion; seed fully determines the outcome.
pub fn random_free_connected(n: usize, p: f64, k: usize, seed: u64) -> SampleOutcome {
    let pattern = PatternSpec::p3_plus(k);
    sample(n, p, seed, DEFAULT_REJECTION_BUDGET, |g| {
        g.is_connected() && is_free(g, pattern)
    })
}

fn sample(
    n: usize,
    p: f64,
    seed: u64,
    budget: usize,
    accept: impl Fn(&Graph) -> bool,
) -> SampleOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=budget {
        let g = gnp(&mut rng, n, p);
        if accept(&g) {
            return SampleOutcome { graph: Some(g), attempts: attempt };
        }
    }
    SampleOutcome { graph: None, attempts: budget }
}

/// Splittable seeding: instance `index` of a corpus draws from stream
/// `index` of the base seed, so corpora are order-independent.
pub fn corpus_seed_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Specification of a corpus, serialized into manifests.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    pub rng: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    Named,
    Exhaustive,
    RandomGnp,
    RandomFree,
}

impl GeneratorSpec {
    /// Materializes the corpus. Random kinds draw one splittable stream per
    /// index; budget-exhausted indices are skipped.
    pub fn generate(&self) -> Result<Vec<Graph>, GeneratorError> {
        match self.kind {
            GeneratorKind::Named => {
                let family = self.family.unwrap_or(Family::Path);
                Ok(vec![named(family, self.n)?])
            }
            GeneratorKind::Exhaustive => {
                let stream = if self.n > EXHAUSTIVE_DEFAULT_LIMIT {
                    exhaustive_connected_gated(self.n)?
                } else {
                    exhaustive_connected(self.n)?
                };
                Ok(stream.collect())
            }
            GeneratorKind::RandomGnp | GeneratorKind::RandomFree => {
                let p = self.p.unwrap_or(0.5);
                let seed = self.seed.unwrap_or(0);
                let count = self.count.unwrap_or(1);
                let mut out = Vec::with_capacity(count);
                for index in 0..count as u64 {
                    let mut rng = corpus_seed_rng(seed, index);
                    let accepted = (1..=DEFAULT_REJECTION_BUDGET).find_map(|_| {
                        let g = gnp(&mut rng, self.n, p);
                        let ok = match self.kind {
                            GeneratorKind::RandomFree => {
                                g.is_connected()
                                    && is_free(&g, PatternSpec::p3_plus(self.k.unwrap_or(1)))
                            }
                            _ => g.is_connected(),
                        };
                        ok.then_some(g)
                    });
                    if let Some(g) = accepted {
                        out.push(g);
                    }
                }
                Ok(out)
            }
        }
    }
}
