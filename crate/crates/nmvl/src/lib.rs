//! A deduction toolkit for non-deterministic many-valued logics.
//!
//! A logic is given as an Nmatrix: a number of truth values `n >= 2` and,
//! for every connective, a total truth table mapping argument-value tuples
//! to non-empty sets of values. From the tables the toolkit generates six
//! labelled sequent calculi, decides semantic entailment by finite
//! countermodel search, checks and searches proofs, translates proofs
//! between the axiom-style and rule-style calculi, and eliminates cut and
//! resolution from proofs in the rule-style calculi.

pub mod calculi;
pub mod formula;
pub mod fuzz;
pub mod logic;
pub mod proof;
pub mod semantics;
pub mod sequent;
pub mod syntax;

pub use calculi::{Calculus, RuleApp, RuleId};
pub use formula::{Closure, Formula, Label, LabelledFormula};
pub use logic::{LabelSet, Logic, LogicDef};
pub use proof::{ProofTree, ProveOutcome, SearchBudget};
pub use semantics::{EntailmentVerdict, Valuation};
pub use sequent::{LfSet, Sequent};
