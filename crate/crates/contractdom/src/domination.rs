//! Exact minimum-dominating-set machinery: the branch-and-bound solver,
//! forced-inclusion variants, small-n enumeration, and private neighbours.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DominationError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} is not in the dominating set")]
    NotInSet(usize),
}

/// A minimum dominating set together with its cardinality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationResult {
    pub gamma: usize,
    pub witness: VertexSet,
}

/// Minimum size of a dominating set `D` with `forced ⊆ D ⊆ forced ∪ allowed`,
/// or `None` if no such set of size at most `cap` exists.
///
/// Branching: pick an undominated vertex whose set of usable dominators is
/// smallest and try each dominator in ascending order.
pub(crate) fn min_ds_size(
    g: &Graph,
    forced: VertexSet,
    allowed: VertexSet,
    cap: usize,
) -> Option<usize> {
    if forced.len() > cap {
        return None;
    }
    let dominated = g.closed_neighbourhood_set(forced);
    let mut best = greedy_upper_bound(g, forced, allowed).filter(|&ub| ub <= cap);
    let limit = best.map_or(cap, |ub| ub.saturating_sub(1));
    branch(g, forced, dominated, allowed, limit, &mut best);
    best
}

/// Greedy cover from `forced`, always picking the vertex whose closed
/// neighbourhood covers the most undominated vertices. `None` if even the
/// greedy run cannot dominate (infeasible `allowed`).
fn greedy_upper_bound(g: &Graph, forced: VertexSet, allowed: VertexSet) -> Option<usize> {
    let mut chosen = forced;
    let mut dominated = g.closed_neighbourhood_set(forced);
    let all = g.vertices();
    while dominated != all {
        let pick = allowed
            .difference(chosen)
            .iter()
            .max_by_key(|&v| g.closed_neighbourhood(v).difference(dominated).len())?;
        if g.closed_neighbourhood(pick).difference(dominated).is_empty() {
            return None;
        }
        chosen.insert(pick);
        dominated = dominated.union(g.closed_neighbourhood(pick));
    }
    Some(chosen.len())
}

/// Explores extensions of `chosen` of size at most `limit`, shrinking
/// `limit` to `best - 1` whenever a better solution is found.
fn branch(
    g: &Graph,
    chosen: VertexSet,
    dominated: VertexSet,
    allowed: VertexSet,
    mut limit: usize,
    best: &mut Option<usize>,
) {
    if dominated == g.vertices() {
        *best = Some(chosen.len());
        return;
    }
    if chosen.len() >= limit {
        return;
    }
    let budget = limit - chosen.len();
    let undominated = g.vertices().difference(dominated);
    // Lower bound: each pick covers at most max |N[v]| undominated vertices.
    let max_cover = allowed
        .difference(chosen)
        .iter()
        .map(|v| g.closed_neighbourhood(v).intersection(undominated).len())
        .max()
        .unwrap_or(0);
    if max_cover == 0 || budget * max_cover < undominated.len() {
        return;
    }
    // Branch on the undominated vertex with the fewest usable dominators.
    let pivot = undominated
        .iter()
        .min_by_key(|&w| g.closed_neighbourhood(w).intersection(allowed).difference(chosen).len())
        .expect("undominated is non-empty");
    let candidates = g
        .closed_neighbourhood(pivot)
        .intersection(allowed)
        .difference(chosen);
    for c in candidates.iter() {
        branch(
            g,
            chosen.with(c),
            dominated.union(g.closed_neighbourhood(c)),
            allowed,
            limit,
            best,
        );
        if let Some(b) = *best {
            if b <= chosen.len() {
                return;
            }
            limit = limit.min(b - 1);
            if chosen.len() >= limit {
                return;
            }
        }
    }
}

/// Lexicographically smallest dominating set of size exactly `target`
/// containing `forced`. Assumes one exists.
fn lex_min_ds(g: &Graph, forced: VertexSet, target: usize) -> VertexSet {
    let n = g.vertex_count();
    let mut prefix = VertexSet::EMPTY;
    for v in 0..n {
        if forced.contains(v) {
            prefix.insert(v);
            continue;
        }
        if prefix.union(forced).len() >= target {
            break;
        }
        // Accept v iff a size-target solution exists whose remaining free
        // picks all lie above v.
        let tail: VertexSet = (v + 1..n).collect();
        let with_v = prefix.union(forced).with(v);
        if min_ds_size(g, with_v, tail, target).is_some() {
            prefix.insert(v);
        }
    }
    let result = prefix.union(forced);
    debug_assert_eq!(result.len(), target);
    debug_assert!(g.is_dominating(result));
    result
}

/// Domination number with witness; `None` when a cap is given and exceeded.
pub fn gamma(g: &Graph, cap: Option<usize>) -> Result<Option<DominationResult>, DominationError> {
    gamma_forced(g, VertexSet::EMPTY, cap)
}

/// Minimum dominating set among those containing `forced`.
pub fn gamma_forced(
    g: &Graph,
    forced: VertexSet,
    cap: Option<usize>,
) -> Result<Option<DominationResult>, DominationError> {
    if !g.is_connected() {
        return Err(DominationError::Disconnected);
    }
    let cap = cap.unwrap_or(g.vertex_count());
    match min_ds_size(g, forced, g.vertices(), cap) {
        None => Ok(None),
        Some(size) => Ok(Some(DominationResult {
            gamma: size,
            witness: lex_min_ds(g, forced, size),
        })),
    }
}

/// All dominating sets of size exactly γ(G), lexicographically sorted.
/// Exhaustive over subsets; intended for small n only.
pub fn enumerate_min_ds(g: &Graph) -> Result<Vec<VertexSet>, DominationError> {
    let result = gamma(g, None)?.expect("uncapped gamma always resolves");
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut members = Vec::with_capacity(result.gamma);
    subsets_of_size(n, result.gamma, 0, &mut members, &mut |s| {
        if g.is_dominating(s) {
            out.push(s);
        }
    });
    Ok(out)
}

fn subsets_of_size(
    n: usize,
    size: usize,
    from: usize,
    members: &mut Vec<usize>,
    visit: &mut impl FnMut(VertexSet),
) {
    if members.len() == size {
        visit(members.iter().copied().collect());
        return;
    }
    let need = size - members.len();
    for v in from..=n.saturating_sub(need) {
        members.push(v);
        subsets_of_size(n, size, v + 1, members, visit);
        members.pop();
    }
}

/// Private neighbours of `u` with respect to `D`: all v with N[v] ∩ D = {u}.
pub fn private_neighbours(
    g: &Graph,
    d: VertexSet,
    u: usize,
) -> Result<VertexSet, DominationError> {
    if !d.contains(u) {
        return Err(DominationError::NotInSet(u));
    }
    Ok(g.vertices()
        .iter()
        .filter(|&v| g.closed_neighbourhood(v).intersection(d) == VertexSet::singleton(u))
        .collect())
}

/// Searches for a minimum dominating set containing an edge. Returns the
/// lexicographically smallest qualifying edge with a witnessing set.
pub fn has_nonstable_min_ds(
    g: &Graph,
) -> Result<Option<((usize, usize), VertexSet)>, DominationError> {
    let base = gamma(g, None)?.expect("uncapped gamma always resolves");
    for (u, v) in g.edges() {
        let forced = VertexSet::singleton(u).with(v);
        if min_ds_size(g, forced, g.vertices(), base.gamma).is_some() {
            let witness = lex_min_ds(g, forced, base.gamma);
            return Ok(Some(((u, v), witness)));
        }
    }
    Ok(None)
}
