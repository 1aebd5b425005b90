//! Structural computations behind the polynomial-time decider: induced
//! linear-forest detection, the A/B/C distance partition, clique
//! neighbourhoods, regular vertices, and the cardinality bound f(k).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DistanceMatrix, Graph, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("vertex {vertex} is at distance {dist:?} from A; the A/B/C partition requires distance <= 2")]
    DistantVertex { vertex: usize, dist: Option<usize> },
    #[error("A does not induce the expected pattern")]
    BadPattern,
}

/// The linear forest made of one P3 and `p2_count` disjoint P2s, all
/// pairwise anticomplete (3 + 2·p2_count vertices).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSpec {
    pub p2_count: usize,
}

impl PatternSpec {
    pub fn p3_plus(p2_count: usize) -> Self {
        PatternSpec { p2_count }
    }

    pub fn vertex_count(self) -> usize {
        3 + 2 * self.p2_count
    }
}

/// The quantities of the structural setup for one instance: the chosen
/// pattern copy A, the distance classes B and C, the vertices of C with
/// clique neighbourhoods, the regular vertices, and f(k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralContext {
    pub k: usize,
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    pub clique_c: VertexSet,
    pub regular: VertexSet,
    pub f_k: usize,
}

/// Finds a vertex set inducing P3 + j·P2, or `None`. P3 triples are tried
/// in lexicographic order, then extended by pairwise anticomplete edges in
/// lexicographic order; the first witness wins.
pub fn find_induced(g: &Graph, p: PatternSpec) -> Option<VertexSet> {
    let n = g.vertex_count();
    if n < p.vertex_count() {
        return None;
    }
    let edges = g.edges();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let triple = VertexSet::from_iter([a, b, c]);
                if !induces_p3(g, a, b, c) {
                    continue;
                }
                if let Some(ws) = extend_p2(g, &edges, triple, 0, p.p2_count) {
                    return Some(ws);
                }
            }
        }
    }
    None
}

fn induces_p3(g: &Graph, a: usize, b: usize, c: usize) -> bool {
    let e = usize::from(g.has_edge(a, b)) + usize::from(g.has_edge(a, c)) + usize::from(g.has_edge(b, c));
    e == 2
}

fn extend_p2(
    g: &Graph,
    edges: &[(usize, usize)],
    chosen: VertexSet,
    from: usize,
    remaining: usize,
) -> Option<VertexSet> {
    if remaining == 0 {
        return Some(chosen);
    }
    for (i, &(u, v)) in edges.iter().enumerate().skip(from) {
        if chosen.contains(u) || chosen.contains(v) {
            continue;
        }
        // The edge must be anticomplete to everything chosen so far.
        if !g.neighbours(u).is_disjoint(chosen) || !g.neighbours(v).is_disjoint(chosen) {
            continue;
        }
        if let Some(ws) = extend_p2(g, edges, chosen.with(u).with(v), i + 1, remaining - 1) {
            return Some(ws);
        }
    }
    None
}

pub fn is_free(g: &Graph, p: PatternSpec) -> bool {
    find_induced(g, p).is_none()
}

/// Distance classes around A: B at distance exactly 1, C at distance
/// exactly 2. A vertex farther away falsifies the caller's freeness
/// precondition and is reported as an error.
pub fn partition_abc(
    g: &Graph,
    a: VertexSet,
    dist: &DistanceMatrix,
) -> Result<(VertexSet, VertexSet), StructureError> {
    let mut b = VertexSet::EMPTY;
    let mut c = VertexSet::EMPTY;
    for v in g.vertices().difference(a).iter() {
        let d = a.iter().filter_map(|u| dist.get(u, v)).min();
        match d {
            Some(1) => b.insert(v),
            Some(2) => c.insert(v),
            other => return Err(StructureError::DistantVertex { vertex: v, dist: other }),
        }
    }
    Ok((b, c))
}

/// 𝒞 = vertices of C whose open neighbourhood is a clique.
pub fn clique_neighbourhood_set(g: &Graph, c: VertexSet) -> VertexSet {
    c.iter().filter(|&v| g.is_clique(g.neighbours(v))).collect()
}

/// Regular vertices: v ∈ 𝒞 extendable to k+1 members of 𝒞 pairwise at
/// distance at least four. Exact clique search in the auxiliary
/// distance-≥4 graph on 𝒞; greedy selection would miss witnesses.
pub fn regular_vertices(dist: &DistanceMatrix, clique_c: VertexSet, k: usize) -> VertexSet {
    let far = |x: usize, y: usize| matches!(dist.get(x, y), Some(d) if d >= 4);
    clique_c
        .iter()
        .filter(|&v| {
            let candidates: VertexSet = clique_c.iter().filter(|&w| w != v && far(v, w)).collect();
            has_far_clique(&far, candidates, k)
        })
        .collect()
}

/// True iff `candidates` contains `size` vertices pairwise satisfying `far`.
fn has_far_clique(far: &impl Fn(usize, usize) -> bool, candidates: VertexSet, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    if candidates.len() < size {
        return false;
    }
    for v in candidates.iter() {
        let rest: VertexSet = candidates
            .iter()
            .filter(|&w| w > v && far(v, w))
            .collect();
        if has_far_clique(far, rest, size - 1) {
            return true;
        }
    }
    false
}

/// All (k+1)-tuples of distinct members of `clique_c` pairwise at distance
/// at least four, as vertex sets. Small-n helper for the claim suite.
pub fn far_tuples(dist: &DistanceMatrix, clique_c: VertexSet, k: usize) -> Vec<VertexSet> {
    let far = |x: usize, y: usize| matches!(dist.get(x, y), Some(d) if d >= 4);
    let mut out = Vec::new();
    let mut current = Vec::new();
    collect_far_cliques(&far, clique_c, k + 1, &mut current, &mut out);
    out
}

fn collect_far_cliques(
    far: &impl Fn(usize, usize) -> bool,
    candidates: VertexSet,
    size: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<VertexSet>,
) {
    if current.len() == size {
        out.push(current.iter().copied().collect());
        return;
    }
    for v in candidates.iter() {
        if current.iter().any(|&u| u >= v || !far(u, v)) {
            continue;
        }
        current.push(v);
        let rest: VertexSet = candidates.iter().filter(|&w| w > v && far(v, w)).collect();
        collect_far_cliques(far, rest, size, current, out);
        current.pop();
    }
}

/// f(k) = 2(|A| + (k+1)^2) + (k+2)|A| + k - 4.
pub fn f_bound(k: usize, a_size: usize) -> usize {
    2 * (a_size + (k + 1) * (k + 1)) + (k + 2) * a_size + k - 4
}

impl StructuralContext {
    /// Assembles the full context around a chosen pattern copy `a`.
    pub fn build(
        g: &Graph,
        k: usize,
        a: VertexSet,
        dist: &DistanceMatrix,
    ) -> Result<StructuralContext, StructureError> {
        if a.len() != 3 + 2 * (k - 1) {
            return Err(StructureError::BadPattern);
        }
        let (b, c) = partition_abc(g, a, dist)?;
        let clique_c = clique_neighbourhood_set(g, c);
        let regular = regular_vertices(dist, clique_c, k);
        Ok(StructuralContext {
            k,
            a,
            b,
            c,
            clique_c,
            regular,
            f_k: f_bound(k, a.len()),
        })
    }
}
