//! Verification reports shared by the verifier and the evaluation oracle.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    /// A closed equation, decided once.
    Symbolic,
    /// Sampled substitutions.
    Randomized,
    /// Every assignment over a finite carrier.
    Exhaustive,
}

impl fmt::Display for CheckMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckMode::Symbolic => "symbolic",
            CheckMode::Randomized => "randomized",
            CheckMode::Exhaustive => "exhaustive",
        })
    }
}

/// One failed trial: the substitution and both evaluated sides.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub subst: BTreeMap<String, String>,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub mode: CheckMode,
    pub trials: usize,
    /// Trials abandoned because of the monomial budget or unmet premises.
    pub skipped: usize,
    pub failures: Vec<Failure>,
    pub seed: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["verdict"] = Value::from(self.verdict());
        v
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<6} {:<28} {:<10} trials={:<4} skipped={:<3} failures={}",
            self.verdict().to_uppercase(),
            self.name,
            self.mode,
            self.trials,
            self.skipped,
            self.failures.len()
        )?;
        if let Some(first) = self.failures.first() {
            let subst: Vec<String> = first
                .subst
                .iter()
                .map(|(k, v)| format!("{k} := {v}"))
                .collect();
            write!(
                f,
                "\n       first counterexample (trial {}): {{{}}} lhs={} rhs={}",
                first.trial,
                subst.join(", "),
                first.lhs,
                first.rhs
            )?;
        }
        Ok(())
    }
}
