//! Derived constructions: the all-labels sequent and the translations
//! between the axiom-style and rule-style calculi.

use thiserror::Error;

use crate::calculi::{table_axiom, Calculus, RuleApp};
use crate::formula::{Formula, Label};
use crate::logic::Logic;
use crate::sequent::{LfSet, Sequent};

use super::build::{ax_leaf, l_shift_node, weaken_to};
use super::{ProofTree, ProofViolation};

/// Checker-valid proof of `|- phi:1, ..., phi:n`: the axiom for
/// `(phi, 1)` followed by one left shift. Both rules belong to every
/// calculus, so the same two nodes work in each.
pub fn derive_all_phi(logic: &Logic, calculus: Calculus, phi: &Formula) -> ProofTree {
    let leaf = ax_leaf(&phi.labelled(1));
    let proof = l_shift_node(logic, leaf, phi, 1);
    debug_assert_eq!(super::check_proof(logic, calculus, &[], &proof), Ok(()));
    proof
}

#[derive(Debug, Error)]
pub enum TranslateError {
    #[error("input proof does not check in {calculus}: {violation}")]
    InvalidInput {
        calculus: Calculus,
        violation: ProofViolation,
    },
}

/// Replaces every table-axiom leaf by axioms, left weakenings and one
/// table rule. The output has the same conclusion, checks in the
/// rule-style calculus and contains no table-axiom nodes. Hypothesis
/// leaves pass through unchanged.
pub fn translate_a_to_r(
    logic: &Logic,
    hypotheses: &[Sequent],
    proof: &ProofTree,
) -> Result<ProofTree, TranslateError> {
    super::check_proof(logic, Calculus::A, hypotheses, proof).map_err(|violation| {
        TranslateError::InvalidInput {
            calculus: Calculus::A,
            violation,
        }
    })?;
    Ok(a_to_r(proof))
}

fn a_to_r(node: &ProofTree) -> ProofTree {
    if let RuleApp::TableAx { conn, args, labels } = &node.rule {
        let antecedent: LfSet = args
            .iter()
            .zip(labels)
            .map(|(f, &k)| f.labelled(k))
            .collect();
        let premises: Vec<ProofTree> = args
            .iter()
            .zip(labels)
            .map(|(arg, &k)| {
                let target = Sequent::new(
                    antecedent.clone(),
                    [arg.labelled(k)].into_iter().collect(),
                );
                weaken_to(ax_leaf(&arg.labelled(k)), &target)
            })
            .collect();
        return ProofTree {
            conclusion: node.conclusion.clone(),
            rule: RuleApp::TableR {
                conn: conn.clone(),
                args: args.clone(),
                labels: labels.clone(),
            },
            premises,
        };
    }
    ProofTree {
        conclusion: node.conclusion.clone(),
        rule: node.rule.clone(),
        premises: node.premises.iter().map(a_to_r).collect(),
    }
}

/// Replaces every table-rule node by the table axiom and one cut per
/// argument, with weakenings aligning the contexts. The output has the
/// same conclusion, checks in the axiom-style calculus and contains no
/// table-rule nodes.
pub fn translate_r_to_a(
    logic: &Logic,
    hypotheses: &[Sequent],
    proof: &ProofTree,
) -> Result<ProofTree, TranslateError> {
    super::check_proof(logic, Calculus::R, hypotheses, proof).map_err(|violation| {
        TranslateError::InvalidInput {
            calculus: Calculus::R,
            violation,
        }
    })?;
    Ok(r_to_a(logic, proof))
}

fn r_to_a(logic: &Logic, node: &ProofTree) -> ProofTree {
    if let RuleApp::TableR { conn, args, labels } = &node.rule {
        let translated: Vec<ProofTree> = node.premises.iter().map(|p| r_to_a(logic, p)).collect();
        let gamma = node.conclusion.antecedent.clone();
        let succ = node.conclusion.succedent.clone();
        let axiom_sequent = table_axiom(logic, conn, args, labels).expect("checked instance");
        let axiom = ProofTree::leaf(
            axiom_sequent.clone(),
            RuleApp::TableAx {
                conn: conn.clone(),
                args: args.clone(),
                labels: labels.clone(),
            },
        );
        // Weaken the table axiom into the full contexts, then cut each
        // argument assumption away against the translated premises.
        let arg_lfs: Vec<(Formula, Label)> = args
            .iter()
            .zip(labels)
            .map(|(f, &k)| (f.clone(), k))
            .collect();
        let full_ante = arg_lfs
            .iter()
            .fold(gamma.clone(), |acc, (f, k)| acc.with(f.labelled(*k)));
        let mut current = weaken_to(axiom, &Sequent::new(full_ante, succ.clone()));
        for (j, (arg, k)) in arg_lfs.iter().enumerate().rev() {
            let lf = arg.labelled(*k);
            let below = arg_lfs[..j]
                .iter()
                .fold(gamma.clone(), |acc, (f, kk)| acc.with(f.labelled(*kk)));
            let left = weaken_to(
                translated[j].clone(),
                &Sequent::new(below.clone(), succ.with(lf.clone())),
            );
            current = ProofTree {
                conclusion: Sequent::new(below, succ.clone()),
                rule: RuleApp::Cut {
                    formula: arg.clone(),
                    label: *k,
                },
                premises: vec![left, current],
            };
        }
        debug_assert_eq!(current.conclusion, node.conclusion);
        return current;
    }
    ProofTree {
        conclusion: node.conclusion.clone(),
        rule: node.rule.clone(),
        premises: node.premises.iter().map(|p| r_to_a(logic, p)).collect(),
    }
}
