//! The two general-graph deciders and their mutual consistency check.
//! These are ground truth for validating the structural algorithm.

use serde::{Deserialize, Serialize};

use crate::domination::{self, DominationError};
use crate::graph::{Graph, VertexSet};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    BruteForce,
    Characterization,
    Structural,
}

/// Extra facts recorded by the structural decider.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralProvenance {
    pub fired_step: String,
    pub j: usize,
    pub a_size: usize,
    pub f_k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
}

/// Outcome of a decider run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub answer: bool,
    pub method: Method,
    /// For brute force: an edge whose contraction reduces γ. For the
    /// characterization: the edge inside the witness set.
    pub witness_edge: Option<(usize, usize)>,
    /// A minimum dominating set containing the witness edge.
    pub witness_set: Option<VertexSet>,
    pub provenance: Option<StructuralProvenance>,
}

impl Decision {
    pub(crate) fn plain(answer: bool, method: Method) -> Decision {
        Decision { answer, method, witness_edge: None, witness_set: None, provenance: None }
    }
}

/// Tries every contraction: yes iff some edge e has γ(G/e) < γ(G). The
/// witness is the lexicographically smallest such edge. Each contraction
/// is solved with cap γ(G) - 1, which the sandwich bound makes sufficient.
pub fn decide_bruteforce(g: &Graph) -> Result<Decision, DominationError> {
    let base = domination::gamma(g, None)?.expect("uncapped gamma always resolves");
    if base.gamma == 1 {
        return Ok(Decision::plain(false, Method::BruteForce));
    }
    for e in g.edges() {
        let (contracted, _) = g.contract_edge(e).expect("edges() yields present edges");
        if domination::gamma(&contracted, Some(base.gamma - 1))?.is_some() {
            return Ok(Decision {
                answer: true,
                method: Method::BruteForce,
                witness_edge: Some(e),
                witness_set: None,
                provenance: None,
            });
        }
    }
    Ok(Decision::plain(false, Method::BruteForce))
}

/// Yes iff some minimum dominating set of G is not stable.
pub fn decide_characterization(g: &Graph) -> Result<Decision, DominationError> {
    match domination::has_nonstable_min_ds(g)? {
        Some((edge, set)) => Ok(Decision {
            answer: true,
            method: Method::Characterization,
            witness_edge: Some(edge),
            witness_set: Some(set),
            provenance: None,
        }),
        None => Ok(Decision::plain(false, Method::Characterization)),
    }
}

#[derive(Clone, Debug)]
pub struct CrosscheckReport {
    pub bruteforce: Decision,
    pub characterization: Decision,
    pub agree: bool,
}

/// Runs both deciders. Disagreement is always an implementation bug: the
/// characterization is a theorem.
pub fn crosscheck(g: &Graph) -> Result<CrosscheckReport, DominationError> {
    let bruteforce = decide_bruteforce(g)?;
    let characterization = decide_characterization(g)?;
    let agree = bruteforce.answer == characterization.answer;
    Ok(CrosscheckReport { bruteforce, characterization, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::gamma;
    use crate::generators::{named, random_connected, Family};
    use rand::seq::IndexedRandom;
    use rand::SeedableRng;

    #[test]
    fn bruteforce_examples() {
        for n in 2..=6 {
            let kn = named(Family::Complete, n).unwrap();
            assert!(!decide_bruteforce(&kn).unwrap().answer);
        }
        // Both end-edge and middle-edge contractions of P4 give P3 with
        // gamma 1; the lexicographically smallest edge wins.
        let p4 = named(Family::Path, 4).unwrap();
        let d = decide_bruteforce(&p4).unwrap();
        assert!(d.answer);
        assert_eq!(d.witness_edge, Some((0, 1)));

        let c6 = named(Family::Cycle, 6).unwrap();
        assert!(!decide_bruteforce(&c6).unwrap().answer);
    }

    #[test]
    fn characterization_examples() {
        let p4 = named(Family::Path, 4).unwrap();
        let d = decide_characterization(&p4).unwrap();
        assert!(d.answer);
        assert_eq!(d.witness_set, Some(VertexSet::from_iter([1, 2])));

        let c4 = named(Family::Cycle, 4).unwrap();
        let d = decide_characterization(&c4).unwrap();
        assert!(d.answer);
        assert_eq!(d.witness_set, Some(VertexSet::from_iter([0, 1])));

        let p5 = named(Family::Path, 5).unwrap();
        assert!(!decide_characterization(&p5).unwrap().answer);
    }

    #[test]
    fn crosscheck_examples() {
        let c6 = named(Family::Cycle, 6).unwrap();
        let r = crosscheck(&c6).unwrap();
        assert!(r.agree && !r.bruteforce.answer);

        let p4 = named(Family::Path, 4).unwrap();
        let r = crosscheck(&p4).unwrap();
        assert!(r.agree && r.bruteforce.answer);

        let k1 = named(Family::Complete, 1).unwrap();
        let r = crosscheck(&k1).unwrap();
        assert!(r.agree && !r.bruteforce.answer);
    }

    #[test]
    fn k2_is_a_no_instance() {
        let k2 = named(Family::Complete, 2).unwrap();
        assert!(!decide_bruteforce(&k2).unwrap().answer);
        assert!(!decide_characterization(&k2).unwrap().answer);
    }

    #[test]
    fn gamma_sandwich_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut pairs = 0;
        let mut seed = 0;
        while pairs < 200 {
            seed += 1;
            let n = 4 + (seed as usize % 7);
            let Some(g) = random_connected(n, 0.4, seed).graph else { continue };
            let edges = g.edges();
            let Some(&e) = edges.choose(&mut rng) else { continue };
            let base = gamma(&g, None).unwrap().unwrap().gamma;
            let (h, _) = g.contract_edge(e).unwrap();
            let contracted = gamma(&h, None).unwrap().unwrap().gamma;
            assert!(contracted + 1 >= base && contracted <= base, "{g:?} {e:?}");
            pairs += 1;
        }
    }

    #[test]
    fn witnesses_revalidate() {
        let mut checked = 0;
        for seed in 0..200u64 {
            let n = 4 + (seed as usize % 5);
            let Some(g) = random_connected(n, 0.5, seed).graph else { continue };
            let base = gamma(&g, None).unwrap().unwrap().gamma;
            let d = decide_bruteforce(&g).unwrap();
            if let Some(e) = d.witness_edge {
                let (h, _) = g.contract_edge(e).unwrap();
                assert_eq!(gamma(&h, None).unwrap().unwrap().gamma, base - 1);
                checked += 1;
            }
            let c = decide_characterization(&g).unwrap();
            if let Some(set) = c.witness_set {
                assert!(g.is_dominating(set));
                assert_eq!(set.len(), base);
                assert!(!g.is_stable(set));
            }
            assert_eq!(d.answer, c.answer);
        }
        assert!(checked > 0);
    }
}
