//! Whole-proof checking: every node must pass the single-step checker.

use crate::calculi::{check_inference, Calculus};
use crate::logic::Logic;
use crate::sequent::Sequent;

use super::{ProofTree, ProofViolation};

/// Checks every node of the proof in the given calculus. Violations
/// report the path from the root as premise indices.
pub fn check_proof(
    logic: &Logic,
    calculus: Calculus,
    hypotheses: &[Sequent],
    proof: &ProofTree,
) -> Result<(), ProofViolation> {
    let mut path = Vec::new();
    check_node(logic, calculus, hypotheses, proof, &mut path)
}

fn check_node(
    logic: &Logic,
    calculus: Calculus,
    hypotheses: &[Sequent],
    node: &ProofTree,
    path: &mut Vec<usize>,
) -> Result<(), ProofViolation> {
    let premises: Vec<Sequent> = node.premises.iter().map(|p| p.conclusion.clone()).collect();
    if let Err(violation) = check_inference(
        logic,
        calculus,
        &node.conclusion,
        &node.rule,
        &premises,
        hypotheses,
    ) {
        return Err(ProofViolation {
            path: path.clone(),
            violation,
        });
    }
    for (i, premise) in node.premises.iter().enumerate() {
        path.push(i);
        check_node(logic, calculus, hypotheses, premise, path)?;
        path.pop();
    }
    Ok(())
}
