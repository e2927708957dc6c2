//! Proof trees, whole-proof checking, derived constructions, backward
//! proof search and cut/resolution elimination.

use std::fmt;

use crate::calculi::{InferenceViolation, RuleApp, RuleId};
use crate::sequent::Sequent;

pub(crate) mod build;
mod check;
mod derive;
mod elim;
mod search;

pub use check::check_proof;
pub use derive::{derive_all_phi, translate_a_to_r, translate_r_to_a, TranslateError};
pub use elim::{eliminate_cuts, ElimError};
pub use search::{prove, BudgetReport, ProveOutcome, SearchBudget};

/// A rule-instance tree. Leaves are axiom instances or hypothesis
/// references; inner nodes carry the rule application that derives the
/// conclusion from the premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTree {
    pub conclusion: Sequent,
    pub rule: RuleApp,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn leaf(conclusion: Sequent, rule: RuleApp) -> Self {
        ProofTree {
            conclusion,
            rule,
            premises: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(|p| p.node_count()).sum::<usize>()
    }

    /// Number of nodes using the given rule.
    pub fn count_rule_uses(&self, rule: RuleId) -> usize {
        let here = usize::from(self.rule.rule_id() == rule);
        here + self
            .premises
            .iter()
            .map(|p| p.count_rule_uses(rule))
            .sum::<usize>()
    }

    pub fn uses_any(&self, rules: &[RuleId]) -> bool {
        rules.contains(&self.rule.rule_id()) || self.premises.iter().any(|p| p.uses_any(rules))
    }
}

/// A violation at a specific node; the path lists premise indices from
/// the root.
#[derive(Debug, PartialEq, Eq)]
pub struct ProofViolation {
    pub path: Vec<usize>,
    pub violation: InferenceViolation,
}

impl fmt::Display for ProofViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("at root")?;
        for i in &self.path {
            write!(f, "/{i}")?;
        }
        write!(f, ": {}", self.violation)
    }
}

impl std::error::Error for ProofViolation {}
