//! Machine-readable run reports. The JSON rendering is deterministic:
//! wall-clock timing goes to the human-readable channel only, so identical
//! inputs always serialize to identical bytes.

use serde::{Deserialize, Serialize};

use crate::claims::ClaimsSummary;
use crate::graph::VertexSet;
use crate::oracle::{Decision, StructuralProvenance};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub answer: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_set: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_edge: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<StructuralProvenance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crosscheck: Option<CrosscheckSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claims: Option<ClaimsSummary>,
    pub exit_status: i32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckSummary {
    pub corpus_size: usize,
    pub yes_count: usize,
    pub no_count: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
    /// Instances a selected method could not handle (e.g. structural on an
    /// out-of-class graph); they are compared across the methods that ran.
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub index: usize,
    pub answers: Vec<(String, String)>,
    pub fixture: String,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport { command: command.to_string(), ..RunReport::default() }
    }

    pub fn with_decision(mut self, d: &Decision) -> RunReport {
        self.answer = Some(if d.answer { "yes" } else { "no" }.to_string());
        self.method = Some(format!("{:?}", d.method).to_lowercase());
        self.witness_edge = d.witness_edge;
        self.witness_set = d.witness_set.map(VertexSet::to_vec);
        self.provenance = d.provenance.clone();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human rendering; same facts as the JSON.
    pub fn render_text(&self) -> String {
        let mut lines = vec![format!("command: {}", self.command)];
        if let Some(d) = &self.input_digest {
            lines.push(format!("input: sha256:{d}"));
        }
        if let Some(a) = &self.answer {
            lines.push(format!("answer: {a}"));
        }
        if let Some(m) = &self.method {
            lines.push(format!("method: {m}"));
        }
        if let Some(g) = self.gamma {
            lines.push(format!("gamma: {g}"));
        }
        if let Some(w) = &self.witness_set {
            lines.push(format!("witness set: {w:?}"));
        }
        if let Some((u, v)) = self.witness_edge {
            lines.push(format!("witness edge: ({u}, {v})"));
        }
        if let Some(p) = &self.provenance {
            lines.push(format!(
                "fired step: {} (j={}, |A|={}, f={}{})",
                p.fired_step,
                p.j,
                p.a_size,
                p.f_k,
                p.gamma.map(|g| format!(", gamma={g}")).unwrap_or_default()
            ));
        }
        if let Some(x) = &self.crosscheck {
            lines.push(format!(
                "crosscheck: {} instances, {} yes / {} no, {} agreements, {} disagreements, {} skipped",
                x.corpus_size,
                x.yes_count,
                x.no_count,
                x.agreements,
                x.disagreements.len(),
                x.skipped
            ));
            for d in &x.disagreements {
                lines.push(format!("  DISAGREEMENT at instance {}: {:?} -> {}", d.index, d.answers, d.fixture));
            }
        }
        if let Some(c) = &self.claims {
            lines.push(format!(
                "claims: {} instances checked, {} out of class",
                c.instances, c.out_of_class
            ));
            for cc in &c.claims {
                lines.push(format!(
                    "  {:<38} pass={:<6} vacuous={:<6} violations={}",
                    cc.name,
                    cc.passed,
                    cc.vacuous,
                    cc.violations.len()
                ));
            }
        }
        lines.push(format!("exit status: {}", self.exit_status));
        lines.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{named, Family};
    use crate::oracle::decide_bruteforce;

    #[test]
    fn json_round_trip() {
        let p4 = named(Family::Path, 4).unwrap();
        let d = decide_bruteforce(&p4).unwrap();
        let report = RunReport::new("decide")
            .with_decision(&d);
        let parsed: RunReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(parsed, report);
    }

    #[test]
    fn text_contains_same_facts() {
        let mut r = RunReport::new("gamma");
        r.gamma = Some(2);
        r.witness_set = Some(vec![1, 2]);
        let text = r.render_text();
        assert!(text.contains("gamma: 2"));
        assert!(text.contains("[1, 2]"));
    }
}
