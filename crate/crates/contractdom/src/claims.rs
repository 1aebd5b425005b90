//! Testable forms of the structural claims: each one is evaluated on an
//! instance whenever its hypotheses hold, with hypothesis-vacuous cases
//! counted separately. Violations indicate implementation bugs, never
//! acceptable outcomes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domination::{enumerate_min_ds, private_neighbours, DominationError};
use crate::graph::{Graph, VertexSet};
use crate::oracle::decide_bruteforce;
use crate::structure::{far_tuples, find_induced, is_free, PatternSpec, StructuralContext};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClaimError {
    #[error("instance is not P3+{k}P2-free; the claims do not apply")]
    OutOfClass { k: usize },
    #[error(transparent)]
    Domination(#[from] DominationError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimStatus {
    Pass,
    Vacuous,
    Violated(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub name: String,
    pub status: ClaimStatus,
}

pub const CLAIM_NAMES: &[&str] = &[
    "partition_abc",
    "c_is_stable",
    "vertex_completeness",
    "one_vertex_in_d_per_regular",
    "regular_no_common_neighbour",
    "regular_neighbourhood_shift",
    "only_one_pn_in_c",
    "shared_responsibilities_distributed",
    "few_vertices_in_c_without_pn",
    "b_cap_d_is_small",
    "most_vertices_in_c",
    "most_neighbourhoods_are_cliques",
    "almost_all_are_distance_three",
    "most_vertices_are_regular",
];

/// Evaluates the full suite on one connected P3+kP2-free graph. Instances
/// without an induced P3+(k-1)P2 report every claim as vacuous.
pub fn check_instance(g: &Graph, k: usize) -> Result<Vec<ClaimOutcome>, ClaimError> {
    if !is_free(g, PatternSpec::p3_plus(k)) {
        return Err(ClaimError::OutOfClass { k });
    }
    let Some(a) = find_induced(g, PatternSpec::p3_plus(k - 1)) else {
        return Ok(CLAIM_NAMES
            .iter()
            .map(|&name| ClaimOutcome { name: name.to_string(), status: ClaimStatus::Vacuous })
            .collect());
    };
    let dist = g.distances();
    let mut out = Vec::with_capacity(CLAIM_NAMES.len());
    let mut push = |name: &str, status: ClaimStatus| {
        out.push(ClaimOutcome { name: name.to_string(), status });
    };

    let ctx = match StructuralContext::build(g, k, a, &dist) {
        Ok(ctx) => ctx,
        Err(e) => {
            // The partition is itself the first claim under test.
            push("partition_abc", ClaimStatus::Violated(e.to_string()));
            for &name in &CLAIM_NAMES[1..] {
                push(name, ClaimStatus::Vacuous);
            }
            return Ok(out);
        }
    };
    let a_size = ctx.a.len();

    // Setup facts: A, B, C partition V(G) and C is stable.
    let partition_ok = ctx.a.union(ctx.b).union(ctx.c) == g.vertices()
        && ctx.a.is_disjoint(ctx.b)
        && ctx.a.is_disjoint(ctx.c)
        && ctx.b.is_disjoint(ctx.c);
    push(
        "partition_abc",
        if partition_ok {
            ClaimStatus::Pass
        } else {
            ClaimStatus::Violated(format!("A={:?} B={:?} C={:?}", ctx.a, ctx.b, ctx.c))
        },
    );
    push(
        "c_is_stable",
        if g.is_stable(ctx.c) {
            ClaimStatus::Pass
        } else {
            ClaimStatus::Violated(format!("C={:?} contains an edge", ctx.c))
        },
    );

    // Vertex completeness around regular vertices.
    let mut vc = ClaimStatus::Vacuous;
    'vc: for c1 in ctx.regular.iter() {
        for v in g.vertices().difference(g.closed_neighbourhood(c1)).iter() {
            if g.neighbours(v).is_disjoint(g.neighbours(c1)) {
                continue;
            }
            let ok = ctx
                .regular
                .iter()
                .any(|c| g.neighbours(c).iter().all(|w| g.has_edge(v, w)));
            if !ok {
                vc = ClaimStatus::Violated(format!("c1={c1}, v={v}"));
                break 'vc;
            }
            vc = ClaimStatus::Pass;
        }
    }
    push("vertex_completeness", vc);

    let min_sets = enumerate_min_ds(g)?;

    // |D ∩ N[c1]| = 1 for every minimum dominating set and regular c1.
    let mut claim2 = ClaimStatus::Vacuous;
    'c2: for &d in &min_sets {
        for c1 in ctx.regular.iter() {
            let hits = d.intersection(g.closed_neighbourhood(c1)).len();
            if hits != 1 {
                claim2 = ClaimStatus::Violated(format!("D={d:?}, c1={c1}, |D∩N[c1]|={hits}"));
                break 'c2;
            }
            claim2 = ClaimStatus::Pass;
        }
    }
    push("one_vertex_in_d_per_regular", claim2);

    // No two regular vertices share a common neighbour.
    let reg: Vec<usize> = ctx.regular.to_vec();
    let mut ncn = if reg.len() < 2 { ClaimStatus::Vacuous } else { ClaimStatus::Pass };
    for (i, &x) in reg.iter().enumerate() {
        for &y in &reg[i + 1..] {
            if !g.neighbours(x).is_disjoint(g.neighbours(y)) {
                ncn = ClaimStatus::Violated(format!("{x} and {y} share a neighbour"));
            }
        }
    }
    push("regular_no_common_neighbour", ncn);

    // Neighbourhood shift: replacing D ∩ ∪N[c_i] by one neighbour per c_i
    // keeps a dominating set of no larger size.
    let tuples = far_tuples(&dist, ctx.regular, k);
    let mut shift = ClaimStatus::Vacuous;
    'shift: for tuple in &tuples {
        let mut shifted_base = VertexSet::EMPTY;
        let mut removed = VertexSet::EMPTY;
        for c in tuple.iter() {
            shifted_base.insert(g.neighbours(c).min().expect("connected, n >= 2"));
            removed = removed.union(g.closed_neighbourhood(c));
        }
        for &d in &min_sets {
            let shifted = d.difference(removed).union(shifted_base);
            if !g.is_dominating(shifted) || shifted.len() > d.len() {
                shift = ClaimStatus::Violated(format!("tuple={tuple:?}, D={d:?}"));
                break 'shift;
            }
            shift = ClaimStatus::Pass;
        }
    }
    push("regular_neighbourhood_shift", shift);

    // Remaining claims are conditional on G being a no-instance.
    let is_no = !decide_bruteforce(g)?.answer;
    if !is_no {
        for &name in &CLAIM_NAMES[6..] {
            push(name, ClaimStatus::Vacuous);
        }
        return Ok(out);
    }

    let b_cap = |d: VertexSet| d.intersection(ctx.b);

    // A vertex of B∩D with two private neighbours in C bounds |B∩D|.
    let mut one_pn = ClaimStatus::Vacuous;
    'pn: for &d in &min_sets {
        for b0 in b_cap(d).iter() {
            let pn_in_c = private_neighbours(g, d, b0)?.intersection(ctx.c);
            if pn_in_c.len() >= 2 {
                if b_cap(d).len() > k * a_size {
                    one_pn = ClaimStatus::Violated(format!("D={d:?}, b0={b0}"));
                    break 'pn;
                }
                one_pn = ClaimStatus::Pass;
            }
        }
    }
    push("only_one_pn_in_c", one_pn);

    // A vertex of C with two dominators sees nearly all of B∩D.
    let mut shared = ClaimStatus::Vacuous;
    'shared: for &d in &min_sets {
        for c in ctx.c.iter() {
            if g.neighbours(c).intersection(d).len() >= 2 {
                let missed = b_cap(d).difference(g.neighbours(c)).len();
                if missed + 1 > k * a_size {
                    shared = ClaimStatus::Violated(format!("D={d:?}, c={c}, missed={missed}"));
                    break 'shared;
                }
                shared = ClaimStatus::Pass;
            }
        }
    }
    push("shared_responsibilities_distributed", shared);

    // Many B∩D vertices without private neighbours in C bound |B∩D|.
    let mut few = ClaimStatus::Vacuous;
    for &d in &min_sets {
        let without_pn = b_cap(d)
            .iter()
            .filter(|&b| {
                private_neighbours(g, d, b)
                    .map(|pn| pn.intersection(ctx.c).is_empty())
                    .unwrap_or(false)
            })
            .count();
        if without_pn >= a_size {
            if b_cap(d).len() + 1 > (k + 1) * a_size {
                few = ClaimStatus::Violated(format!("D={d:?}"));
                break;
            }
            few = ClaimStatus::Pass;
        }
    }
    push("few_vertices_in_c_without_pn", few);

    // Split private neighbours (one in C, one elsewhere, non-adjacent)
    // bound |B∩D|.
    let mut small = ClaimStatus::Vacuous;
    'small: for &d in &min_sets {
        for v in b_cap(d).iter() {
            let pn = private_neighbours(g, d, v)?.intersection(g.neighbours(v));
            let split = pn.intersection(ctx.c).iter().any(|c| {
                pn.without(c).iter().any(|b| !g.has_edge(b, c))
            });
            if split {
                if b_cap(d).len() > (k + 1) * a_size {
                    small = ClaimStatus::Violated(format!("D={d:?}, v={v}"));
                    break 'small;
                }
                small = ClaimStatus::Pass;
            }
        }
    }
    push("b_cap_d_is_small", small);

    // Existence claims: some minimum dominating set is concentrated in C,
    // respectively in the regular vertices.
    let best_outside_c = min_sets.iter().map(|&d| d.difference(ctx.c).len()).min();
    push(
        "most_vertices_in_c",
        match best_outside_c {
            Some(m) if m <= (k + 2) * a_size => ClaimStatus::Pass,
            Some(m) => ClaimStatus::Violated(format!("min |D∖C| = {m}")),
            None => ClaimStatus::Vacuous,
        },
    );

    // Pairwise-distance-≥3 subsets of C∩D with non-clique neighbourhoods
    // are bounded by (k+1)^2 - 1.
    let bound = (k + 1) * (k + 1) - 1;
    let mut cliques = ClaimStatus::Vacuous;
    'cl: for &d in &min_sets {
        let candidates: Vec<usize> = ctx
            .c
            .intersection(d)
            .iter()
            .filter(|&v| !g.is_clique(g.neighbours(v)))
            .collect();
        if candidates.is_empty() {
            continue;
        }
        cliques = ClaimStatus::Pass;
        // Largest subset pairwise at distance >= 3; candidate lists are
        // tiny (subsets of a minimum dominating set).
        for mask in 0u64..1 << candidates.len() {
            let chosen: Vec<usize> = candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let pairwise_far = chosen.iter().enumerate().all(|(i, &x)| {
                chosen[i + 1..].iter().all(|&y| matches!(dist.get(x, y), Some(dd) if dd >= 3))
            });
            if pairwise_far && chosen.len() > bound {
                cliques = ClaimStatus::Violated(format!("D={d:?}, S={chosen:?}"));
                break 'cl;
            }
        }
    }
    push("most_neighbourhoods_are_cliques", cliques);

    // Vertices of C∩D at distance two from another vertex of C∩D.
    let da_bound = 2 * a_size + (k + 1) * (k + 1) - 3;
    let mut da = ClaimStatus::Pass;
    for &d in &min_sets {
        let cd = ctx.c.intersection(d);
        let close = cd
            .iter()
            .filter(|&x| cd.without(x).iter().any(|y| dist.get(x, y) == Some(2)))
            .count();
        if close > da_bound {
            da = ClaimStatus::Violated(format!("D={d:?}, count={close}"));
        }
    }
    push("almost_all_are_distance_three", da);

    let best_outside_r = min_sets.iter().map(|&d| d.difference(ctx.regular).len()).min();
    push(
        "most_vertices_are_regular",
        match best_outside_r {
            Some(m) if m <= ctx.f_k => ClaimStatus::Pass,
            Some(m) => ClaimStatus::Violated(format!("min |D∖R| = {m} > f(k) = {}", ctx.f_k)),
            None => ClaimStatus::Vacuous,
        },
    );

    Ok(out)
}

/// Per-claim tallies over a corpus.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimsSummary {
    pub instances: usize,
    pub out_of_class: usize,
    pub claims: Vec<ClaimCounts>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCounts {
    pub name: String,
    pub passed: usize,
    pub vacuous: usize,
    pub violations: Vec<String>,
}

impl ClaimsSummary {
    pub fn total_violations(&self) -> usize {
        self.claims.iter().map(|c| c.violations.len()).sum()
    }
}

/// Runs the suite over a corpus, skipping out-of-class instances.
pub fn check_corpus<'a, I>(graphs: I, k: usize) -> Result<ClaimsSummary, ClaimError>
where
    I: IntoIterator<Item = &'a Graph>,
{
    let mut summary = ClaimsSummary {
        instances: 0,
        out_of_class: 0,
        claims: CLAIM_NAMES
            .iter()
            .map(|&name| ClaimCounts {
                name: name.to_string(),
                passed: 0,
                vacuous: 0,
                violations: Vec::new(),
            })
            .collect(),
    };
    for (index, g) in graphs.into_iter().enumerate() {
        match check_instance(g, k) {
            Err(ClaimError::OutOfClass { .. }) => summary.out_of_class += 1,
            Err(other) => return Err(other),
            Ok(outcomes) => {
                summary.instances += 1;
                for (slot, outcome) in summary.claims.iter_mut().zip(outcomes) {
                    debug_assert_eq!(slot.name, outcome.name);
                    match outcome.status {
                        ClaimStatus::Pass => slot.passed += 1,
                        ClaimStatus::Vacuous => slot.vacuous += 1,
                        ClaimStatus::Violated(detail) => {
                            slot.violations.push(format!("instance {index}: {detail}"))
                        }
                    }
                }
            }
        }
    }
    Ok(summary)
}
