//! The six-step polynomial-time decider for P3+kP2-free graphs, the
//! minimum-cover subproblem of steps 3-5, and the driver that picks the
//! effective parameter and dispatches degenerate cases.

use thiserror::Error;

use crate::domination::{self, DominationError};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{self, Decision, Method, StructuralProvenance};
use crate::structure::{find_induced, is_free, PatternSpec, StructuralContext, StructureError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph contains no induced P3+{}P2; use the driver or the oracle", .0.p2_count)]
    PatternAbsent(PatternSpec),
    #[error("graph is not P3+{}P2-free (witness {witness:?}); use the oracle", pattern.p2_count)]
    NotFree { pattern: PatternSpec, witness: VertexSet },
    #[error("k must be at least 1")]
    BadParameter,
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl From<DominationError> for PolyError {
    fn from(e: DominationError) -> Self {
        match e {
            DominationError::Disconnected => PolyError::Disconnected,
            other => unreachable!("unexpected domination error: {other}"),
        }
    }
}

/// The cover instance of steps 3-5: V1 at distance exactly one from N[ℛ],
/// V2 the rest, and the cap f(k) on acceptable cover sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverProblem {
    pub v1: VertexSet,
    pub v2: VertexSet,
    pub cap: usize,
}

impl CoverProblem {
    pub fn universe(&self) -> VertexSet {
        self.v1.union(self.v2)
    }
}

/// Minimum size of `S` with `forced ⊆ S ⊆ V1 ∪ V2` such that every x in V2
/// is covered by S in the closed sense: N[x] ∩ S is non-empty, so x in S
/// covers itself. `None` when the cap is exceeded or no cover exists.
pub fn min_v2_cover(
    g: &Graph,
    cp: &CoverProblem,
    forced: VertexSet,
) -> Option<(usize, VertexSet)> {
    let size = min_cover_size(g, cp.v2, forced, cp.universe(), cp.cap)?;
    Some((size, lex_min_cover(g, cp, forced, size)))
}

fn covered_by(g: &Graph, v2: VertexSet, s: VertexSet) -> VertexSet {
    v2.iter().filter(|&x| !g.neighbours(x).with(x).is_disjoint(s)).collect()
}

/// V2 vertices newly covered when `s` joins the cover.
fn covers(g: &Graph, v2: VertexSet, s: usize) -> VertexSet {
    g.neighbours(s).with(s).intersection(v2)
}

fn min_cover_size(
    g: &Graph,
    v2: VertexSet,
    forced: VertexSet,
    allowed: VertexSet,
    cap: usize,
) -> Option<usize> {
    if forced.len() > cap {
        return None;
    }
    let covered = covered_by(g, v2, forced);
    let mut best = greedy_cover_bound(g, v2, forced, allowed).filter(|&ub| ub <= cap);
    let limit = best.map_or(cap, |ub| ub.saturating_sub(1));
    cover_branch(g, v2, forced, covered, allowed, limit, &mut best);
    best
}

fn greedy_cover_bound(
    g: &Graph,
    v2: VertexSet,
    forced: VertexSet,
    allowed: VertexSet,
) -> Option<usize> {
    let mut chosen = forced;
    let mut covered = covered_by(g, v2, forced);
    while covered != v2 {
        let pick = allowed
            .difference(chosen)
            .iter()
            .max_by_key(|&s| covers(g, v2, s).difference(covered).len())?;
        if covers(g, v2, pick).difference(covered).is_empty() {
            return None;
        }
        chosen.insert(pick);
        covered = covered.union(covers(g, v2, pick));
    }
    Some(chosen.len())
}

fn cover_branch(
    g: &Graph,
    v2: VertexSet,
    chosen: VertexSet,
    covered: VertexSet,
    allowed: VertexSet,
    mut limit: usize,
    best: &mut Option<usize>,
) {
    if covered == v2 {
        *best = Some(chosen.len());
        return;
    }
    if chosen.len() >= limit {
        return;
    }
    let budget = limit - chosen.len();
    let uncovered = v2.difference(covered);
    let max_cover = allowed
        .difference(chosen)
        .iter()
        .map(|s| covers(g, v2, s).intersection(uncovered).len())
        .max()
        .unwrap_or(0);
    if max_cover == 0 || budget * max_cover < uncovered.len() {
        return;
    }
    let pivot = uncovered
        .iter()
        .min_by_key(|&x| g.neighbours(x).with(x).intersection(allowed).difference(chosen).len())
        .expect("uncovered is non-empty");
    for s in g.neighbours(pivot).with(pivot).intersection(allowed).difference(chosen).iter() {
        cover_branch(
            g,
            v2,
            chosen.with(s),
            covered.union(covers(g, v2, s)),
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

fn lex_min_cover(g: &Graph, cp: &CoverProblem, forced: VertexSet, target: usize) -> VertexSet {
    let universe = cp.universe();
    let mut prefix = VertexSet::EMPTY;
    for v in universe.iter() {
        if forced.contains(v) {
            prefix.insert(v);
            continue;
        }
        if prefix.union(forced).len() >= target {
            break;
        }
        let tail: VertexSet = universe.iter().filter(|&w| w > v).collect();
        let with_v = prefix.union(forced).with(v);
        if min_cover_size(g, cp.v2, with_v, with_v.union(tail), target).is_some() {
            prefix.insert(v);
        }
    }
    let result = prefix.union(forced);
    debug_assert_eq!(result.len(), target);
    result
}

/// Steps 1-6 for a connected P3+kP2-free graph containing an induced
/// P3+(k-1)P2. Yes-paths through steps 2, 4 and 5 report the fired step
/// without a witness; use [`recover_witness`] when one is wanted.
pub fn decide_structural(g: &Graph, k: usize) -> Result<Decision, PolyError> {
    if k == 0 {
        return Err(PolyError::BadParameter);
    }
    if !g.is_connected() {
        return Err(PolyError::Disconnected);
    }
    let pattern = PatternSpec::p3_plus(k - 1);
    let a = find_induced(g, pattern).ok_or(PolyError::PatternAbsent(pattern))?;
    let dist = g.distances();
    let ctx = StructuralContext::build(g, k, a, &dist)?;
    let done = |answer: bool, step: &str, gamma: Option<usize>| Decision {
        answer,
        method: Method::Structural,
        witness_edge: None,
        witness_set: None,
        provenance: Some(StructuralProvenance {
            fired_step: step.to_string(),
            j: k,
            a_size: ctx.a.len(),
            f_k: ctx.f_k,
            gamma,
        }),
    };

    // Step 1.1: no regular vertices. Bounded gamma dispatch.
    if ctx.regular.is_empty() {
        return match domination::gamma(g, Some(ctx.f_k))? {
            None => Ok(done(true, "1.1.1", None)),
            Some(result) => {
                let nonstable = domination::has_nonstable_min_ds(g)?;
                let mut d = done(nonstable.is_some(), "1.1.2", Some(result.gamma));
                if let Some((edge, set)) = nonstable {
                    d.witness_edge = Some(edge);
                    d.witness_set = Some(set);
                }
                Ok(d)
            }
        };
    }

    // Step 2: two regular vertices at distance at most three.
    let reg: Vec<usize> = ctx.regular.to_vec();
    for (i, &x) in reg.iter().enumerate() {
        for &y in &reg[i + 1..] {
            if dist.within(x, y, 3) {
                return Ok(done(true, "2", None));
            }
        }
    }

    // Step 3: V1 at distance exactly one from N[R], V2 the rest.
    let n_closed_r = g.closed_neighbourhood_set(ctx.regular);
    let v1: VertexSet = g
        .vertices()
        .difference(n_closed_r)
        .iter()
        .filter(|&v| !g.neighbours(v).is_disjoint(n_closed_r))
        .collect();
    let v2 = g.vertices().difference(n_closed_r).difference(v1);
    if v2.is_empty() {
        return Ok(done(false, "3", None));
    }
    let cp = CoverProblem { v1, v2, cap: ctx.f_k };

    // Step 4: no cover of size at most f(k).
    let Some((s_star, _)) = min_v2_cover(g, &cp, VertexSet::EMPTY) else {
        return Ok(done(true, "4", None));
    };

    // Step 5(i): some minimum cover contains an edge.
    for (u, v) in g.edges() {
        if cp.universe().contains(u) && cp.universe().contains(v) {
            let forced = VertexSet::singleton(u).with(v);
            if min_cover_size(g, cp.v2, forced, cp.universe(), s_star).is_some() {
                return Ok(done(true, "5i", None));
            }
        }
    }
    // Step 5(ii): some minimum cover meets V1.
    for y in cp.v1.iter() {
        if min_cover_size(g, cp.v2, VertexSet::singleton(y), cp.universe(), s_star).is_some() {
            return Ok(done(true, "5ii", None));
        }
    }

    Ok(done(false, "6", None))
}

/// Top-level decider. P3-free graphs are cliques and immediate no-instances;
/// otherwise the largest j with an induced P3+(j-1)P2 is selected, which by
/// maximality makes G P3+jP2-free, and the structural algorithm runs with
/// that parameter.
pub fn decide_driver(g: &Graph, k_max: usize) -> Result<Decision, PolyError> {
    if !g.is_connected() {
        return Err(PolyError::Disconnected);
    }
    if is_free(g, PatternSpec::p3_plus(0)) {
        let mut d = Decision::plain(false, Method::Structural);
        d.provenance = Some(StructuralProvenance {
            fired_step: "clique".to_string(),
            j: 0,
            a_size: 0,
            f_k: 0,
            gamma: None,
        });
        return Ok(d);
    }
    if k_max == 0 {
        // Not P3-free, so not in the claimed class.
        let pattern = PatternSpec::p3_plus(0);
        let witness = find_induced(g, pattern).expect("pattern present");
        return Err(PolyError::NotFree { pattern, witness });
    }
    let pattern = PatternSpec::p3_plus(k_max);
    if let Some(witness) = find_induced(g, pattern) {
        return Err(PolyError::NotFree { pattern, witness });
    }
    let j = (1..=k_max)
        .rev()
        .find(|&j| find_induced(g, PatternSpec::p3_plus(j - 1)).is_some())
        .expect("an induced P3 exists");
    decide_structural(g, j)
}

/// Fills in a concrete witness for a yes answer by delegating to the
/// characterization decider; the structural yes-paths are existence
/// arguments and do not produce one themselves.
pub fn recover_witness(g: &Graph, mut decision: Decision) -> Result<Decision, DominationError> {
    if decision.answer && decision.witness_edge.is_none() {
        let c = oracle::decide_characterization(g)?;
        decision.witness_edge = c.witness_edge;
        decision.witness_set = c.witness_set;
    }
    Ok(decision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{exhaustive_connected, named, random_free_connected, Family};
    use crate::oracle::decide_bruteforce;

    fn fired(d: &Decision) -> &str {
        d.provenance.as_ref().map(|p| p.fired_step.as_str()).unwrap_or("")
    }

    #[test]
    fn structural_examples() {
        let c6 = named(Family::Cycle, 6).unwrap();
        let d = decide_structural(&c6, 1).unwrap();
        assert!(!d.answer);
        assert_eq!(fired(&d), "1.1.2");

        let p4 = named(Family::Path, 4).unwrap();
        let d = decide_structural(&p4, 1).unwrap();
        assert!(d.answer);
        assert_eq!(d.witness_set, Some(VertexSet::from_iter([1, 2])));

        let star = named(Family::Star, 5).unwrap();
        assert!(!decide_structural(&star, 1).unwrap().answer);
    }

    #[test]
    fn structural_rejects_misuse() {
        let k5 = named(Family::Complete, 5).unwrap();
        assert_eq!(
            decide_structural(&k5, 1),
            Err(PolyError::PatternAbsent(PatternSpec::p3_plus(0)))
        );
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(decide_structural(&g, 1), Err(PolyError::Disconnected));
        let p4 = named(Family::Path, 4).unwrap();
        assert_eq!(decide_structural(&p4, 0), Err(PolyError::BadParameter));
    }

    #[test]
    fn driver_examples() {
        let k7 = named(Family::Complete, 7).unwrap();
        let d = decide_driver(&k7, 1).unwrap();
        assert!(!d.answer);
        assert_eq!(fired(&d), "clique");

        let c6 = named(Family::Cycle, 6).unwrap();
        assert!(!decide_driver(&c6, 1).unwrap().answer);

        let p4 = named(Family::Path, 4).unwrap();
        let d = decide_driver(&p4, 2).unwrap();
        assert!(d.answer);
        assert_eq!(d.provenance.as_ref().unwrap().j, 1);
    }

    #[test]
    fn driver_rejects_out_of_class() {
        let p7 = named(Family::Path, 7).unwrap();
        assert!(matches!(
            decide_driver(&p7, 1),
            Err(PolyError::NotFree { .. })
        ));
    }

    #[test]
    fn cover_examples() {
        // V2 empty: the forced set itself is the cover.
        let p4 = named(Family::Path, 4).unwrap();
        let cp = CoverProblem { v1: VertexSet::from_iter([0, 1]), v2: VertexSet::EMPTY, cap: 5 };
        let (size, witness) = min_v2_cover(&p4, &cp, VertexSet::singleton(0)).unwrap();
        assert_eq!((size, witness), (1, VertexSet::singleton(0)));

        // Single element with a unique neighbour.
        let cp = CoverProblem { v1: VertexSet::from_iter([0, 1, 2]), v2: VertexSet::singleton(3), cap: 5 };
        let (size, witness) = min_v2_cover(&p4, &cp, VertexSet::EMPTY).unwrap();
        assert_eq!((size, witness), (1, VertexSet::singleton(2)));

        // Two elements sharing a unique common neighbour: star K1,4 with the
        // outer vertices 1,2 in V2 and the center in V1.
        let star = named(Family::Star, 5).unwrap();
        let cp = CoverProblem {
            v1: VertexSet::from_iter([0, 3, 4]),
            v2: VertexSet::from_iter([1, 2]),
            cap: 5,
        };
        let (size, witness) = min_v2_cover(&star, &cp, VertexSet::EMPTY).unwrap();
        assert_eq!((size, witness), (1, VertexSet::singleton(0)));
    }

    #[test]
    fn cover_cap_and_self_cover() {
        let p4 = named(Family::Path, 4).unwrap();
        // Vertex 0's only neighbour is outside the universe, but coverage is
        // closed: 0 covers itself.
        let cp = CoverProblem { v1: VertexSet::from_iter([2, 3]), v2: VertexSet::singleton(0), cap: 5 };
        assert_eq!(min_v2_cover(&p4, &cp, VertexSet::EMPTY), Some((1, VertexSet::singleton(0))));

        // The cap makes any cover unacceptable.
        let cp = CoverProblem { v1: VertexSet::from_iter([0, 1, 2]), v2: VertexSet::singleton(3), cap: 0 };
        assert_eq!(min_v2_cover(&p4, &cp, VertexSet::EMPTY), None);
    }

    /// Brute-force family oracle for steps 4-5 on small instances.
    fn cover_family(g: &Graph, cp: &CoverProblem, size: usize) -> Vec<VertexSet> {
        let universe: Vec<usize> = cp.universe().to_vec();
        let mut out = Vec::new();
        for mask in 0u64..1 << universe.len() {
            let s: VertexSet = universe
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            if s.len() == size && covered_by(g, cp.v2, s) == cp.v2 {
                out.push(s);
            }
        }
        out
    }

    #[test]
    fn forced_solves_match_family_enumeration() {
        // No n <= 6 free instance carries regular vertices, so the cover
        // stage is exercised on synthetic V1/V2 splits instead: every third
        // vertex (with a neighbour) goes to V2, the rest to V1.
        let mut exercised = 0;
        for g in exhaustive_connected(5).unwrap() {
            let n = g.vertex_count();
            let v2: VertexSet = (0..n).filter(|&v| v % 3 == 2 && g.degree(v) > 0).collect();
            if v2.is_empty() {
                continue;
            }
            let v1 = g.vertices().difference(v2);
            let cp = CoverProblem { v1, v2, cap: n };
            let Some((s_star, witness)) = min_v2_cover(&g, &cp, VertexSet::EMPTY) else { continue };
            assert_eq!(covered_by(&g, cp.v2, witness), cp.v2);
            let family = cover_family(&g, &cp, s_star);
            assert!(family.contains(&witness));
            // No smaller cover exists.
            if s_star > 0 {
                assert!(cover_family(&g, &cp, s_star - 1).is_empty());
            }
            let edge_member = family.iter().any(|&s| !g.is_stable(s));
            let edge_solver = g.edges().iter().any(|&(u, v)| {
                cp.universe().contains(u)
                    && cp.universe().contains(v)
                    && min_cover_size(&g, cp.v2, VertexSet::from_iter([u, v]), cp.universe(), s_star)
                        .is_some()
            });
            assert_eq!(edge_member, edge_solver, "{g:?}");
            let v1_member = family.iter().any(|&s| !s.is_disjoint(cp.v1));
            let v1_solver = cp.v1.iter().any(|y| {
                min_cover_size(&g, cp.v2, VertexSet::singleton(y), cp.universe(), s_star).is_some()
            });
            assert_eq!(v1_member, v1_solver, "{g:?}");
            exercised += 1;
        }
        assert!(exercised > 100);
    }

    #[test]
    fn structural_agrees_with_bruteforce_on_random_free() {
        let mut agreed = 0;
        for seed in 0..400u64 {
            let n = 5 + (seed as usize % 6);
            let Some(g) = random_free_connected(n, 0.6, 1, seed).graph else { continue };
            let d = decide_driver(&g, 1).unwrap();
            let b = decide_bruteforce(&g).unwrap();
            assert_eq!(d.answer, b.answer, "{g:?}");
            agreed += 1;
        }
        assert!(agreed >= 50);
    }

    #[test]
    fn witness_recovery() {
        let p4 = named(Family::Path, 4).unwrap();
        let d = decide_driver(&p4, 1).unwrap();
        let d = recover_witness(&p4, d).unwrap();
        assert_eq!(d.witness_edge, Some((1, 2)));
    }
}
