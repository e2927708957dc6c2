//! Cut and resolution elimination for the rule-style calculi.
//!
//! Cuts are first rewritten into a left shift followed by a chain of
//! resolutions (the two rules are derivable from each other), so the
//! elimination proper only handles resolution. Resolutions are removed
//! bottom-up; each one is reduced by a mix procedure over its two
//! premise derivations with the measure (formula size, occurrence rank)
//! decreasing lexicographically on every recursive step:
//!
//! * an occurrence that persists above the premise root permutes the mix
//!   upward (rank decreases);
//! * a resolution between two table-rule introductions of the same
//!   compound either collapses to one premise (equal tuples) or resolves
//!   a differing argument (formula size decreases);
//! * axiom and weakening introductions dissolve directly;
//! * crossed shift introductions close by a multi-shift where the
//!   calculus has it.
//!
//! The few remaining shapes (crossed shifts without multi-shift, unequal
//! output sets of the inverse-image rule, mixed table/shift pairs) have
//! no local reduct here; their targets are derivable and are closed by
//! rerunning the cut-free prover on the target sequent.

use thiserror::Error;

use crate::calculi::{Calculus, RuleApp, RuleId};
use crate::formula::{Formula, Label, LabelledFormula};
use crate::logic::{LabelSet, Logic};
use crate::sequent::{LfSet, Sequent};

use super::build::{
    l_shift_node, multi_shift_node, r_shift_node, res_node, table_l_dd_node, table_l_node,
    table_r_dd_node, table_r_node, weaken_to,
};
use super::search::{prove, ProveOutcome, SearchBudget};
use super::{ProofTree, ProofViolation};

#[derive(Debug, Error)]
pub enum ElimError {
    #[error("cut elimination applies to the rule-style calculi, not {0}")]
    WrongCalculus(Calculus),
    #[error("proof contains hypothesis leaves")]
    ContainsHypotheses,
    #[error("input proof does not check: {0}")]
    InvalidInput(ProofViolation),
}

/// Removes every cut and resolution from a hypothesis-free proof in one
/// of the rule-style calculi. The result has the same conclusion and
/// checks in the same calculus; for the antecedent-style calculi the
/// output may use multi-shift.
pub fn eliminate_cuts(
    logic: &Logic,
    calculus: Calculus,
    proof: &ProofTree,
) -> Result<ProofTree, ElimError> {
    if !matches!(
        calculus,
        Calculus::R | Calculus::Rdd | Calculus::Rsd | Calculus::Rddsd
    ) {
        return Err(ElimError::WrongCalculus(calculus));
    }
    if proof.count_rule_uses(RuleId::Hyp) > 0 {
        return Err(ElimError::ContainsHypotheses);
    }
    super::check_proof(logic, calculus, &[], proof).map_err(ElimError::InvalidInput)?;

    let mut elim = Eliminator {
        logic,
        calculus,
        fuel: 10_000_000,
    };
    let without_cuts = elim.cuts_to_res(proof.clone());
    let result = elim.eliminate(without_cuts);
    debug_assert_eq!(result.conclusion, proof.conclusion);
    debug_assert_eq!(result.count_rule_uses(RuleId::Cut), 0);
    debug_assert_eq!(result.count_rule_uses(RuleId::Res), 0);
    debug_assert_eq!(super::check_proof(logic, calculus, &[], &result), Ok(()));
    Ok(result)
}

/// Consecutive occurrences of `x` in the succedent, from the root up.
fn rank(node: &ProofTree, x: &LabelledFormula) -> usize {
    1 + node
        .premises
        .iter()
        .filter(|p| p.conclusion.succedent.contains(x))
        .map(|p| rank(p, x))
        .max()
        .unwrap_or(0)
}

/// The mix target: union of contexts, resolved occurrences removed.
fn mix_target(d1: &ProofTree, d2: &ProofTree, x1: &LabelledFormula, x2: &LabelledFormula) -> Sequent {
    Sequent::new(
        d1.conclusion.antecedent.union(&d2.conclusion.antecedent),
        d1.conclusion
            .succedent
            .without(x1)
            .union(&d2.conclusion.succedent.without(x2)),
    )
}

struct Eliminator<'a> {
    logic: &'a Logic,
    calculus: Calculus,
    fuel: usize,
}

impl<'a> Eliminator<'a> {
    /// Rewrites every cut into one left shift plus a resolution chain.
    fn cuts_to_res(&self, node: ProofTree) -> ProofTree {
        let conclusion = node.conclusion;
        let rule = node.rule;
        let mut premises: Vec<ProofTree> =
            node.premises.into_iter().map(|p| self.cuts_to_res(p)).collect();
        if let RuleApp::Cut { formula, label } = &rule {
            let x = formula.labelled(*label);
            let gamma = &conclusion.antecedent;
            let delta = &conclusion.succedent;
            let d2 = premises.pop().unwrap();
            let d1 = premises.pop().unwrap();
            if delta.contains(&x) {
                return d1; // already proves the conclusion
            }
            if gamma.contains(&x) {
                return d2;
            }
            let mut current = l_shift_node(self.logic, d2, formula, *label);
            let mut remaining: LfSet = LabelSet::singleton(*label)
                .complement(self.logic.n())
                .iter()
                .map(|j| formula.labelled(j))
                .filter(|lf| !delta.contains(lf))
                .collect();
            while let Some(lf) = remaining.iter().next().cloned() {
                remaining.remove(&lf);
                let right_rest = delta.union(&remaining);
                current = res_node(
                    d1.clone(),
                    current,
                    formula,
                    *label,
                    lf.label,
                    delta.clone(),
                    right_rest,
                );
            }
            debug_assert_eq!(current.conclusion, conclusion);
            return current;
        }
        ProofTree {
            conclusion,
            rule,
            premises,
        }
    }

    /// Removes every resolution node bottom-up.
    fn eliminate(&mut self, node: ProofTree) -> ProofTree {
        let conclusion = node.conclusion;
        let rule = node.rule;
        let mut premises: Vec<ProofTree> =
            node.premises.into_iter().map(|p| self.eliminate(p)).collect();
        if let RuleApp::Res {
            formula,
            left_label,
            right_label,
            left_rest,
            right_rest,
        } = &rule
        {
            let x1 = formula.labelled(*left_label);
            let x2 = formula.labelled(*right_label);
            let d2 = premises.pop().unwrap();
            let d1 = premises.pop().unwrap();
            if left_rest.contains(&x1) {
                return weaken_to(d1, &conclusion);
            }
            if right_rest.contains(&x2) {
                return weaken_to(d2, &conclusion);
            }
            let reduced = self.res_mix(&d1, &d2, formula, *left_label, *right_label);
            return weaken_to(reduced, &conclusion);
        }
        ProofTree {
            conclusion,
            rule,
            premises,
        }
    }

    /// Given cut/res-free proofs of `G1 |- D1, (phi,k1)` and
    /// `G2 |- D2, (phi,k2)`, builds a cut/res-free proof of a
    /// subsequent of `G1,G2 |- D1, D2`.
    fn res_mix(
        &mut self,
        d1: &ProofTree,
        d2: &ProofTree,
        phi: &Formula,
        k1: Label,
        k2: Label,
    ) -> ProofTree {
        self.fuel = self
            .fuel
            .checked_sub(1)
            .expect("reduction measure failed to decrease");
        let x1 = phi.labelled(k1);
        let x2 = phi.labelled(k2);
        debug_assert!(k1 != k2);
        debug_assert!(d1.conclusion.succedent.contains(&x1));
        debug_assert!(d2.conclusion.succedent.contains(&x2));
        let target = mix_target(d1, d2, &x1, &x2);

        // The other derivation already supplies the resolved occurrence.
        if d2.conclusion.succedent.without(&x2).contains(&x1) {
            return d1.clone();
        }
        if d1.conclusion.succedent.without(&x1).contains(&x2) {
            return d2.clone();
        }

        let r1 = rank(d1, &x1);
        let r2 = rank(d2, &x2);
        let result = if r1 > 1 && r1 >= r2 {
            self.permute(d1, d2, phi, k1, k2)
        } else if r2 > 1 {
            self.permute(d2, d1, phi, k2, k1)
        } else {
            self.principal(d1, d2, phi, k1, k2)
        };
        debug_assert!(
            result.conclusion.is_subsequent_of(&target),
            "mix escaped its target: {} vs {}",
            result.conclusion,
            target
        );
        result
    }

    /// The resolved occurrence persists above `active`'s root: mix the
    /// premises and re-apply the root rule. If the rule re-introduces
    /// the occurrence, one more mix (now at rank 1) removes it.
    fn permute(
        &mut self,
        active: &ProofTree,
        other: &ProofTree,
        phi: &Formula,
        ka: Label,
        kb: Label,
    ) -> ProofTree {
        let xa = phi.labelled(ka);
        let g_other = &other.conclusion.antecedent;
        let d_other = other.conclusion.succedent.without(&phi.labelled(kb));

        match &active.rule {
            RuleApp::LWeak { .. } | RuleApp::RWeak { .. } => {
                self.res_mix(&active.premises[0], other, phi, ka, kb)
            }
            RuleApp::LShift { formula, label } => {
                let p = &active.premises[0];
                let e = self.res_mix(p, other, phi, ka, kb);
                let shape = Sequent::new(
                    p.conclusion.antecedent.union(g_other),
                    p.conclusion.succedent.without(&xa).union(&d_other),
                );
                let f = l_shift_node(self.logic, weaken_to(e, &shape), formula, *label);
                if formula == phi && *label != ka {
                    // the shifted family re-introduces the occurrence
                    self.res_mix(&f, other, phi, ka, kb)
                } else {
                    f
                }
            }
            RuleApp::RShift { formula, from, to } => {
                let p = &active.premises[0];
                let e = self.res_mix(p, other, phi, ka, kb);
                let shape = Sequent::new(
                    p.conclusion.antecedent.union(g_other),
                    p.conclusion
                        .succedent
                        .without(&xa)
                        .union(&d_other)
                        .with(formula.labelled(*from)),
                );
                r_shift_node(weaken_to(e, &shape), formula, *from, *to)
            }
            RuleApp::MultiShift { formula, label_set } => {
                let gamma = active.conclusion.antecedent.union(g_other);
                let delta: LfSet = active.premises[0]
                    .conclusion
                    .succedent
                    .without(&xa)
                    .union(&d_other);
                let premises = active
                    .premises
                    .iter()
                    .zip(label_set.iter())
                    .map(|(p, k)| {
                        let e = self.res_mix(p, other, phi, ka, kb);
                        weaken_to(
                            e,
                            &Sequent::new(gamma.with(formula.labelled(k)), delta.clone()),
                        )
                    })
                    .collect();
                let f = multi_shift_node(self.logic, premises, formula, *label_set, gamma, delta);
                if formula == phi && !label_set.contains(ka) {
                    self.res_mix(&f, other, phi, ka, kb)
                } else {
                    f
                }
            }
            RuleApp::TableR { conn, args, labels } => {
                let gamma = active.conclusion.antecedent.union(g_other);
                let delta = active.conclusion.succedent.without(&xa).union(&d_other);
                let premises = args
                    .iter()
                    .zip(labels)
                    .zip(&active.premises)
                    .map(|((arg, &k), p)| {
                        let shape = Sequent::new(gamma.clone(), delta.with(arg.labelled(k)));
                        if p.conclusion.succedent.contains(&xa) {
                            weaken_to(self.res_mix(p, other, phi, ka, kb), &shape)
                        } else {
                            weaken_to(p.clone(), &shape)
                        }
                    })
                    .collect();
                let f = table_r_node(self.logic, premises, conn, args, labels, gamma, delta);
                let compound = Formula::apply(conn.clone(), args.clone());
                let out = self
                    .logic
                    .connective(conn)
                    .unwrap()
                    .output(labels, self.logic.n());
                if compound == *phi && out.contains(ka) {
                    self.res_mix(&f, other, phi, ka, kb)
                } else {
                    f
                }
            }
            RuleApp::TableRDd {
                conn,
                args,
                label_set,
            } => {
                let gamma = active.conclusion.antecedent.union(g_other);
                let delta = active.conclusion.succedent.without(&xa).union(&d_other);
                let lambdas = premise_lambdas(self.logic, conn, args, *label_set);
                let premises = lambdas
                    .iter()
                    .zip(&active.premises)
                    .map(|(lambda, p)| {
                        let shape = Sequent::new(gamma.clone(), delta.union(lambda));
                        if p.conclusion.succedent.contains(&xa) {
                            weaken_to(self.res_mix(p, other, phi, ka, kb), &shape)
                        } else {
                            weaken_to(p.clone(), &shape)
                        }
                    })
                    .collect();
                let f = table_r_dd_node(premises, conn, args, *label_set, gamma, delta);
                let compound = Formula::apply(conn.clone(), args.clone());
                if compound == *phi && label_set.contains(ka) {
                    self.res_mix(&f, other, phi, ka, kb)
                } else {
                    f
                }
            }
            RuleApp::TableL { conn, args, label } => {
                let gamma = active.conclusion.antecedent.union(g_other);
                let delta = active.conclusion.succedent.without(&xa).union(&d_other);
                let thetas = table_l_thetas(self.logic, conn, args, *label);
                let premises = thetas
                    .iter()
                    .zip(&active.premises)
                    .map(|(theta, p)| {
                        let e = self.res_mix(p, other, phi, ka, kb);
                        weaken_to(e, &Sequent::new(gamma.union(theta), delta.clone()))
                    })
                    .collect();
                table_l_node(premises, conn, args, *label, gamma, delta)
            }
            RuleApp::TableLDd {
                conn,
                args,
                label,
                lambda,
            } => {
                let gamma = active.conclusion.antecedent.union(g_other);
                let delta = active.conclusion.succedent.without(&xa).union(&d_other);
                let premises = lambda
                    .iter()
                    .zip(&active.premises)
                    .map(|(lf, p)| {
                        let e = self.res_mix(p, other, phi, ka, kb);
                        weaken_to(e, &Sequent::new(gamma.with(lf.clone()), delta.clone()))
                    })
                    .collect();
                table_l_dd_node(
                    premises,
                    conn,
                    args,
                    *label,
                    lambda.clone(),
                    gamma,
                    delta,
                )
            }
            RuleApp::Ax { .. }
            | RuleApp::TableAx { .. }
            | RuleApp::DualAx { .. }
            | RuleApp::Hyp
            | RuleApp::Cut { .. }
            | RuleApp::Res { .. } => {
                unreachable!("rank > 1 requires premises and cut/res-free input")
            }
        }
    }

    /// Both derivations introduce their occurrence at the root.
    fn principal(
        &mut self,
        d1: &ProofTree,
        d2: &ProofTree,
        phi: &Formula,
        k1: Label,
        k2: Label,
    ) -> ProofTree {
        let x1 = phi.labelled(k1);
        let x2 = phi.labelled(k2);
        let target = mix_target(d1, d2, &x1, &x2);

        // Axiom: the other derivation shifts the occurrence across.
        if matches!(d1.rule, RuleApp::Ax { .. }) {
            return r_shift_node(d2.clone(), phi, k2, k1);
        }
        if matches!(d2.rule, RuleApp::Ax { .. }) {
            return r_shift_node(d1.clone(), phi, k1, k2);
        }

        // Weakening-introduced occurrences dissolve.
        if let RuleApp::RWeak { formula, label } = &d1.rule {
            debug_assert!(formula == phi && *label == k1);
            return d1.premises[0].clone();
        }
        if let RuleApp::RWeak { formula, label } = &d2.rule {
            debug_assert!(formula == phi && *label == k2);
            return d2.premises[0].clone();
        }

        // Zero-premise rules conclude anything of their shape; rebuild
        // at the target when that does not re-introduce the occurrence.
        for (d, x) in [(d1, &x1), (d2, &x2)] {
            if !d.premises.is_empty() {
                continue;
            }
            match &d.rule {
                RuleApp::TableL { conn, args, label } => {
                    return table_l_node(
                        Vec::new(),
                        conn,
                        args,
                        *label,
                        target.antecedent.clone(),
                        target.succedent.clone(),
                    );
                }
                RuleApp::MultiShift { formula, label_set } => {
                    debug_assert!(label_set.is_empty());
                    if formula != phi {
                        return multi_shift_node(
                            self.logic,
                            Vec::new(),
                            formula,
                            *label_set,
                            target.antecedent.clone(),
                            target.succedent.clone(),
                        );
                    }
                }
                RuleApp::TableR { conn, args, labels } => {
                    let out = self
                        .logic
                        .connective(conn)
                        .unwrap()
                        .output(labels, self.logic.n());
                    let compound = Formula::apply(conn.clone(), args.clone());
                    if !(compound == *phi && out.contains(x.label)) {
                        return table_r_node(
                            self.logic,
                            Vec::new(),
                            conn,
                            args,
                            labels,
                            target.antecedent.clone(),
                            target.succedent.clone(),
                        );
                    }
                }
                RuleApp::TableRDd {
                    conn,
                    args,
                    label_set,
                } => {
                    let compound = Formula::apply(conn.clone(), args.clone());
                    if !(compound == *phi && label_set.contains(x.label)) {
                        return table_r_dd_node(
                            Vec::new(),
                            conn,
                            args,
                            *label_set,
                            target.antecedent.clone(),
                            target.succedent.clone(),
                        );
                    }
                }
                _ => {}
            }
        }

        // Two table introductions of the same compound.
        if let (
            RuleApp::TableR {
                args: a1,
                labels: l1,
                ..
            },
            RuleApp::TableR { labels: l2, .. },
        ) = (&d1.rule, &d2.rule)
        {
            if l1 == l2 {
                // equal tuples: either premise family already proves it
                return d1.clone();
            }
            let j = l1
                .iter()
                .zip(l2)
                .position(|(a, b)| a != b)
                .expect("unequal tuples differ somewhere");
            return self.res_mix(&d1.premises[j], &d2.premises[j], &a1[j], l1[j], l2[j]);
        }
        if let (
            RuleApp::TableRDd { label_set: s1, .. },
            RuleApp::TableRDd { label_set: s2, .. },
        ) = (&d1.rule, &d2.rule)
        {
            if s1 == s2 {
                return d1.clone();
            }
            return self.reprove(&target);
        }

        // Two shift introductions of the occurrence's formula.
        let shift_set = |d: &ProofTree| -> Option<LabelSet> {
            match &d.rule {
                RuleApp::LShift { formula, label } if formula == phi => {
                    Some(LabelSet::singleton(*label))
                }
                RuleApp::MultiShift { formula, label_set } if formula == phi => Some(*label_set),
                _ => None,
            }
        };
        if let (Some(ks1), Some(ks2)) = (shift_set(d1), shift_set(d2)) {
            let mut merged = ks1;
            merged.insert(k1);
            let mut merged2 = ks2;
            merged2.insert(k2);
            let star = LabelSet::from_bits(merged.bits() & merged2.bits());
            let proper = star != LabelSet::full(self.logic.n());
            let has_multi_shift =
                matches!(self.calculus, Calculus::Rsd | Calculus::Rddsd);
            if proper && has_multi_shift {
                let gamma = d1
                    .conclusion
                    .antecedent
                    .union(&d2.conclusion.antecedent);
                let delta = d1.premises[0]
                    .conclusion
                    .succedent
                    .union(&d2.premises[0].conclusion.succedent);
                let premises = star
                    .iter()
                    .map(|k| {
                        let source = if ks1.contains(k) {
                            premise_for_label(d1, &ks1, k)
                        } else {
                            premise_for_label(d2, &ks2, k)
                        };
                        weaken_to(
                            source.clone(),
                            &Sequent::new(gamma.with(phi.labelled(k)), delta.clone()),
                        )
                    })
                    .collect();
                return multi_shift_node(self.logic, premises, phi, star, gamma, delta);
            }
            return self.reprove(&target);
        }

        // Mixed introductions have no local reduct; the target is
        // derivable, so close it with the cut-free prover.
        self.reprove(&target)
    }

    fn reprove(&mut self, goal: &Sequent) -> ProofTree {
        let budget = SearchBudget {
            max_nodes: usize::MAX,
            allow_analytic_cut: false,
        };
        match prove(self.logic, self.calculus, &[], goal, budget) {
            ProveOutcome::Proved(tree) => tree,
            outcome => unreachable!(
                "elimination target {goal} must be derivable in {}: {outcome:?}",
                self.calculus
            ),
        }
    }
}

/// Premise of a shift node for a particular member label.
fn premise_for_label<'t>(d: &'t ProofTree, ks: &LabelSet, k: Label) -> &'t ProofTree {
    let index = ks.iter().position(|j| j == k).expect("label in shift set");
    match d.rule {
        RuleApp::LShift { .. } => &d.premises[0],
        RuleApp::MultiShift { .. } => &d.premises[index],
        _ => unreachable!("not a shift node"),
    }
}

fn premise_lambdas(logic: &Logic, conn: &str, args: &[Formula], ks: LabelSet) -> Vec<LfSet> {
    let image = crate::calculi::inverse_image_set(logic, conn, args, ks).unwrap();
    crate::calculi::vee_product(image.sets()).unwrap_or_default()
}

fn table_l_thetas(logic: &Logic, conn: &str, args: &[Formula], label: Label) -> Vec<LfSet> {
    let c = logic.connective(conn).unwrap();
    c.rows(logic.n())
        .filter(|&(_, out)| out.contains(label))
        .map(|(tuple, _)| {
            args.iter()
                .zip(&tuple)
                .map(|(f, &k)| f.labelled(k))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::fixtures::{circ2, const2};
    use crate::proof::check_proof;
    use crate::syntax::{parse_proof, parse_sequent};

    fn assert_eliminated(logic: &Logic, calc: Calculus, proof: &ProofTree) -> ProofTree {
        let out = eliminate_cuts(logic, calc, proof).unwrap();
        assert_eq!(out.conclusion, proof.conclusion);
        assert_eq!(out.count_rule_uses(RuleId::Cut), 0);
        assert_eq!(out.count_rule_uses(RuleId::Res), 0);
        assert_eq!(check_proof(logic, calc, &[], &out), Ok(()));
        out
    }

    #[test]
    fn weakening_cut_dissolves_to_axiom() {
        let logic = circ2();
        let text = "\
(cut {phi=q, k=1} \"p:1 |- p:1\"
  (r_weak {phi=q, k=1} \"p:1 |- p:1, q:1\"
    (ax {phi=p, k=1} \"p:1 |- p:1\"))
  (l_weak {phi=q, k=1} \"p:1, q:1 |- p:1\"
    (ax {phi=p, k=1} \"p:1 |- p:1\")))
";
        let proof = parse_proof(text, &logic).unwrap();
        assert_eq!(check_proof(&logic, Calculus::R, &[], &proof), Ok(()));
        let out = assert_eliminated(&logic, Calculus::R, &proof);
        // the cut formula was weakened in on both sides: the whole proof
        // collapses back to the single axiom leaf
        assert_eq!(out, parse_proof("(ax {phi=p, k=1} \"p:1 |- p:1\")", &logic).unwrap());
    }

    fn table_r_circ_proof(logic: &Logic) -> ProofTree {
        parse_proof(
            "(table_r {conn=circ, args=[p], labels=[1]} \"p:1 |- circ(p):1, circ(p):2\"\n  (ax {phi=p, k=1} \"p:1 |- p:1\"))",
            logic,
        )
        .unwrap()
    }

    #[test]
    fn equal_tuple_resolution_collapses_to_premise() {
        let logic = circ2();
        let premise = table_r_circ_proof(&logic);
        // resolve circ(p):1 against circ(p):2 between two copies
        let conclusion = parse_sequent("p:1 |- circ(p):1, circ(p):2", &logic).unwrap();
        let proof = ProofTree {
            conclusion: conclusion.clone(),
            rule: RuleApp::Res {
                formula: crate::syntax::parse_formula("circ(p)", &logic).unwrap(),
                left_label: 1,
                right_label: 2,
                left_rest: parse_sequent("|- circ(p):2", &logic).unwrap().succedent,
                right_rest: parse_sequent("|- circ(p):1", &logic).unwrap().succedent,
            },
            premises: vec![premise.clone(), premise.clone()],
        };
        assert_eq!(check_proof(&logic, Calculus::R, &[], &proof), Ok(()));
        let out = assert_eliminated(&logic, Calculus::R, &proof);
        // equal-tuple case: one premise copy survives
        assert_eq!(out, premise);
    }

    #[test]
    fn unequal_tuples_resolve_the_argument() {
        // table_r over tuple (1,2) resolved against table_r over tuple
        // (2,2): the reduct resolves the differing first argument.
        let logic = circ2();
        let gamma = parse_sequent("p:1, q:2 |-", &logic).unwrap().antecedent;
        let p = crate::formula::Formula::atom("p");
        let q = crate::formula::Formula::atom("q");
        let ax = |lf: &crate::formula::LabelledFormula| {
            crate::proof::build::ax_leaf(lf)
        };

        let d1 = table_r_node(
            &logic,
            vec![
                weaken_to(ax(&p.labelled(1)), &Sequent::new(gamma.clone(), [p.labelled(1)].into_iter().collect())),
                weaken_to(ax(&q.labelled(2)), &Sequent::new(gamma.clone(), [q.labelled(2)].into_iter().collect())),
            ],
            "or",
            &[p.clone(), q.clone()],
            &[1, 2],
            gamma.clone(),
            LfSet::new(),
        );
        assert_eq!(d1.conclusion, parse_sequent("p:1, q:2 |- or(p, q):1", &logic).unwrap());

        let delta2: LfSet = [p.labelled(1)].into_iter().collect();
        let d2 = table_r_node(
            &logic,
            vec![
                weaken_to(ax(&p.labelled(1)), &Sequent::new(gamma.clone(), delta2.with(p.labelled(2)))),
                weaken_to(ax(&q.labelled(2)), &Sequent::new(gamma.clone(), delta2.with(q.labelled(2)))),
            ],
            "or",
            &[p.clone(), q.clone()],
            &[2, 2],
            gamma.clone(),
            delta2.clone(),
        );
        assert_eq!(
            d2.conclusion,
            parse_sequent("p:1, q:2 |- p:1, or(p, q):2", &logic).unwrap()
        );

        let or_pq = crate::syntax::parse_formula("or(p, q)", &logic).unwrap();
        let proof = res_node(d1, d2, &or_pq, 1, 2, LfSet::new(), delta2);
        assert_eq!(
            proof.conclusion,
            parse_sequent("p:1, q:2 |- p:1", &logic).unwrap()
        );
        assert_eq!(check_proof(&logic, Calculus::R, &[], &proof), Ok(()));
        assert_eliminated(&logic, Calculus::R, &proof);
    }

    #[test]
    fn crossed_shifts_in_r_fall_back_to_reproving() {
        let logic = const2();
        // d1': c(p):1, p:1 |- c(p):1   d2': c(p):1, p:2 |- c(p):1
        // l_shift both, then resolve (p,2) against (p,1)
        let goal1 = parse_sequent("c(p):1, p:1 |- c(p):1", &logic).unwrap();
        let goal2 = parse_sequent("c(p):1, p:2 |- c(p):1", &logic).unwrap();
        let d1 = match prove(&logic, Calculus::R, &[], &goal1, SearchBudget::default()) {
            ProveOutcome::Proved(t) => t,
            other => panic!("{other:?}"),
        };
        let d2 = match prove(&logic, Calculus::R, &[], &goal2, SearchBudget::default()) {
            ProveOutcome::Proved(t) => t,
            other => panic!("{other:?}"),
        };
        let p = crate::formula::Formula::atom("p");
        let e1 = l_shift_node(&logic, d1, &p, 1); // c(p):1 |- c(p):1, p:2
        let e2 = l_shift_node(&logic, d2, &p, 2); // c(p):1 |- c(p):1, p:1
        let rest = e1.conclusion.succedent.without(&p.labelled(2));
        let proof = res_node(e1, e2, &p, 2, 1, rest.clone(), rest.clone());
        assert_eq!(check_proof(&logic, Calculus::R, &[], &proof), Ok(()));
        assert_eliminated(&logic, Calculus::R, &proof);
    }

    #[test]
    fn crossed_shifts_in_rsd_use_multi_shift() {
        // same shape in a 3-valued logic where the merged label set stays
        // proper, so the multi-shift construction applies
        let def = crate::logic::LogicDef {
            name: "three".into(),
            n: 3,
            connectives: vec![(
                "f".into(),
                crate::logic::ConnectiveDef {
                    arity: 1,
                    entries: (1..=3)
                        .map(|k| (vec![k], [1].into_iter().collect()))
                        .collect(),
                },
            )],
        };
        let logic = crate::logic::validate_logic(&def).unwrap();
        let goal1 = parse_sequent("f(p):1, p:1 |- f(p):1", &logic).unwrap();
        let goal2 = parse_sequent("f(p):1, p:2 |- f(p):1", &logic).unwrap();
        let d1 = prove(&logic, Calculus::Rsd, &[], &goal1, SearchBudget::default());
        let d2 = prove(&logic, Calculus::Rsd, &[], &goal2, SearchBudget::default());
        let p = crate::formula::Formula::atom("p");
        let e1 = l_shift_node(&logic, d1.proof().unwrap().clone(), &p, 1);
        let e2 = l_shift_node(&logic, d2.proof().unwrap().clone(), &p, 2);
        // resolve (p,2) from e1 against (p,1) from e2
        let dl = e1.conclusion.succedent.without(&p.labelled(2));
        let dr = e2.conclusion.succedent.without(&p.labelled(1));
        let proof = res_node(e1, e2, &p, 2, 1, dl, dr);
        assert_eq!(check_proof(&logic, Calculus::Rsd, &[], &proof), Ok(()));
        let out = assert_eliminated(&logic, Calculus::Rsd, &proof);
        assert!(out.count_rule_uses(RuleId::MultiShift) > 0);
    }

    #[test]
    fn unequal_output_sets_in_rdd_close_by_reproving() {
        // n=3 unary c with outputs {1,2}, {2,3}, {3}: resolving between
        // introductions keyed by different exact output sets has no
        // local reduct.
        let def = crate::logic::LogicDef {
            name: "steps".into(),
            n: 3,
            connectives: vec![(
                "c".into(),
                crate::logic::ConnectiveDef {
                    arity: 1,
                    entries: vec![
                        (vec![1], [1, 2].into_iter().collect()),
                        (vec![2], [2, 3].into_iter().collect()),
                        (vec![3], [3].into_iter().collect()),
                    ],
                },
            )],
        };
        let logic = crate::logic::validate_logic(&def).unwrap();
        let p = crate::formula::Formula::atom("p");
        let gamma: LfSet = [p.labelled(1)].into_iter().collect();

        // |- {c}x{1,2} from the lone K={1,2} selection {p:1}
        let d1 = table_r_dd_node(
            vec![weaken_to(
                crate::proof::build::ax_leaf(&p.labelled(1)),
                &Sequent::new(gamma.clone(), [p.labelled(1)].into_iter().collect()),
            )],
            "c",
            std::slice::from_ref(&p),
            [1, 2].into_iter().collect(),
            gamma.clone(),
            LfSet::new(),
        );
        // |- p:1, {c}x{2,3} from the lone K={2,3} selection {p:2}
        let delta2: LfSet = [p.labelled(1)].into_iter().collect();
        let d2 = table_r_dd_node(
            vec![weaken_to(
                crate::proof::build::ax_leaf(&p.labelled(1)),
                &Sequent::new(gamma.clone(), delta2.with(p.labelled(2))),
            )],
            "c",
            std::slice::from_ref(&p),
            [2, 3].into_iter().collect(),
            gamma.clone(),
            delta2.clone(),
        );
        let c_p = crate::formula::Formula::apply("c", vec![p.clone()]);
        let dl = d1.conclusion.succedent.without(&c_p.labelled(1));
        let dr = d2.conclusion.succedent.without(&c_p.labelled(3));
        let proof = res_node(d1, d2, &c_p, 1, 3, dl, dr);
        assert_eq!(check_proof(&logic, Calculus::Rdd, &[], &proof), Ok(()));
        assert_eliminated(&logic, Calculus::Rdd, &proof);
    }

    #[test]
    fn mixed_table_and_shift_introductions_close_by_reproving() {
        let logic = circ2();
        let p = crate::formula::Formula::atom("p");
        let q = crate::formula::Formula::atom("q");
        let circ_p = crate::syntax::parse_formula("circ(p)", &logic).unwrap();
        let gamma: LfSet = [p.labelled(2)].into_iter().collect();

        // table_r over tuple (2): p:2 |- q:1, circ(p):2
        let delta1: LfSet = [q.labelled(1)].into_iter().collect();
        let d1 = table_r_node(
            &logic,
            vec![weaken_to(
                crate::proof::build::ax_leaf(&p.labelled(2)),
                &Sequent::new(gamma.clone(), delta1.with(p.labelled(2))),
            )],
            "circ",
            std::slice::from_ref(&p),
            &[2],
            gamma.clone(),
            delta1,
        );
        // l_shift of circ(p):2: p:2 |- p:2, circ(p):1
        let d2_premise = weaken_to(
            crate::proof::build::ax_leaf(&p.labelled(2)),
            &Sequent::new(
                gamma.with(circ_p.labelled(2)),
                [p.labelled(2)].into_iter().collect(),
            ),
        );
        let d2 = l_shift_node(&logic, d2_premise, &circ_p, 2);

        let dl = d1.conclusion.succedent.without(&circ_p.labelled(2));
        let dr = d2.conclusion.succedent.without(&circ_p.labelled(1));
        let proof = res_node(d1, d2, &circ_p, 2, 1, dl, dr);
        assert_eq!(check_proof(&logic, Calculus::R, &[], &proof), Ok(()));
        assert_eliminated(&logic, Calculus::R, &proof);
    }

    #[test]
    fn rejects_wrong_calculus_and_hypotheses() {
        let logic = circ2();
        let proof = parse_proof("(ax {phi=p, k=1} \"p:1 |- p:1\")", &logic).unwrap();
        assert!(matches!(
            eliminate_cuts(&logic, Calculus::A, &proof),
            Err(ElimError::WrongCalculus(_))
        ));
        let hyp_proof = ProofTree::leaf(
            parse_sequent("p:1 |- q:1", &logic).unwrap(),
            RuleApp::Hyp,
        );
        assert!(matches!(
            eliminate_cuts(&logic, Calculus::R, &hyp_proof),
            Err(ElimError::ContainsHypotheses)
        ));
    }
}
