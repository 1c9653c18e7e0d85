//! Structured outcomes of checks and suites.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// No counterexample among the sampled cases; nothing is concluded.
    InconclusiveSampled,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    pub fn fails(self) -> bool {
        self == Verdict::Fails
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::InconclusiveSampled => "inconclusive_sampled",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

/// How a quantifier was discharged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Quantifier {
    /// Exhaustive for `m = 3`, sampled with the default seed otherwise.
    #[default]
    Auto,
    Exhaustive,
    Sampled {
        samples: u64,
        seed: u64,
    },
}

/// Seed used when sampling is requested without one.
pub const DEFAULT_SEED: u64 = 42;
/// Sample count used when sampling is requested without one.
pub const DEFAULT_SAMPLES: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scope {
    pub mode: Mode,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    /// Number of cases examined (exact domain size when exhaustive).
    pub domain_size: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<u64>,
}

impl Scope {
    pub fn exhaustive(m: usize, n: Option<usize>, domain_size: u64) -> Scope {
        Scope {
            mode: Mode::Exhaustive,
            m,
            n,
            domain_size,
            seed: None,
            samples: None,
        }
    }

    pub fn sampled(m: usize, n: Option<usize>, domain_size: u64, seed: u64, samples: u64) -> Scope {
        Scope {
            mode: Mode::Sampled,
            m,
            n,
            domain_size,
            seed: Some(seed),
            samples: Some(samples),
        }
    }
}

/// Data needed to reproduce a verdict. Preorders are rendered; agents are
/// 1-based.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub profiles: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub agents: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub pairs: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub agendas: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub elements: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub coalitions: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub permutation: Vec<usize>,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub note: String,
}

impl Witness {
    pub fn note(text: impl Into<String>) -> Witness {
        Witness {
            note: text.into(),
            ..Witness::default()
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub axiom: String,
    pub rule: String,
    pub scope: Scope,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub details: BTreeMap<String, Value>,
    /// Wall-clock time; left unset by default so reports are reproducible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl CheckReport {
    pub fn new(axiom: &str, rule: &str, scope: Scope, verdict: Verdict) -> CheckReport {
        CheckReport {
            schema_version: SCHEMA_VERSION,
            axiom: axiom.to_string(),
            rule: rule.to_string(),
            scope,
            verdict,
            witness: None,
            details: BTreeMap::new(),
            elapsed_ms: None,
        }
    }

    pub fn with_witness(mut self, w: Witness) -> CheckReport {
        self.witness = Some(w);
        self
    }

    pub fn detail(mut self, key: &str, value: impl Into<Value>) -> CheckReport {
        self.details.insert(key.to_string(), value.into());
        self
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} / {}: {} ({} {} cases)",
            self.axiom,
            self.rule,
            self.verdict.as_str(),
            match self.scope.mode {
                Mode::Exhaustive => "exhaustive,",
                Mode::Sampled => "sampled,",
            },
            self.scope.domain_size
        );
        if let Some(w) = &self.witness {
            if !w.profiles.is_empty() {
                let ps: Vec<String> = w.profiles.iter().map(|p| format!("({})", p.join(", "))).collect();
                s.push_str(&format!("; profiles {}", ps.join(" ")));
            }
            if !w.outputs.is_empty() {
                s.push_str(&format!("; outputs [{}]", w.outputs.join(", ")));
            }
            if !w.note.is_empty() {
                s.push_str(&format!("; {}", w.note));
            }
        }
        s
    }
}

/// One claim of a verification suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub suite: String,
    pub id: String,
    /// Short description of the statement being reproduced.
    pub anchor: String,
    /// Whether a failure makes the suite fail. Open questions are reported
    /// without gating.
    pub gating: bool,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub note: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub evidence: Vec<CheckReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub claims: usize,
    pub passed: usize,
    pub failed_gating: usize,
    pub failed_open: usize,
}

/// Outcome of a verification suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub claims: Vec<Claim>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, claims: Vec<Claim>) -> SuiteReport {
        let summary = Summary {
            claims: claims.len(),
            passed: claims.iter().filter(|c| c.passed).count(),
            failed_gating: claims.iter().filter(|c| !c.passed && c.gating).count(),
            failed_open: claims.iter().filter(|c| !c.passed && !c.gating).count(),
        };
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            seed,
            claims,
            summary,
        }
    }

    pub fn ok(&self) -> bool {
        self.summary.failed_gating == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_fields_are_omitted() {
        let r = CheckReport::new("id", "comajority", Scope::exhaustive(3, Some(3), 13), Verdict::Holds);
        let json = serde_json::to_string(&r).unwrap();
        assert!(!json.contains("witness"));
        assert!(!json.contains("elapsed_ms"));
        assert!(json.contains("\"verdict\":\"holds\""));
        let back: CheckReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn summary_counts() {
        let claim = |passed, gating| Claim {
            suite: "s".into(),
            id: "c".into(),
            anchor: "a".into(),
            gating,
            passed,
            note: String::new(),
            evidence: vec![],
        };
        let s = SuiteReport::new(
            "s",
            42,
            vec![claim(true, true), claim(false, false), claim(false, true)],
        );
        assert_eq!(s.summary.passed, 1);
        assert_eq!(s.summary.failed_open, 1);
        assert_eq!(s.summary.failed_gating, 1);
        assert!(!s.ok());
    }
}
