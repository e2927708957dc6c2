//! Constructors for single proof steps. Each builds the exact schema
//! instance from a premise tree, so the result checks by construction.

use crate::calculi::RuleApp;
use crate::formula::{Formula, Label, LabelledFormula};
use crate::logic::{LabelSet, Logic};
use crate::sequent::{LfSet, Sequent};

use super::ProofTree;

pub(crate) fn ax_leaf(lf: &LabelledFormula) -> ProofTree {
    let side: LfSet = [lf.clone()].into_iter().collect();
    ProofTree::leaf(
        Sequent::new(side.clone(), side),
        RuleApp::Ax {
            formula: lf.formula.clone(),
            label: lf.label,
        },
    )
}

/// Weakens a proof up to a target sequent containing its conclusion:
/// one `l_weak` per missing antecedent member, then one `r_weak` per
/// missing succedent member, in canonical order.
pub(crate) fn weaken_to(proof: ProofTree, target: &Sequent) -> ProofTree {
    debug_assert!(
        proof.conclusion.is_subsequent_of(target),
        "cannot weaken {} to {}",
        proof.conclusion,
        target
    );
    let mut current = proof;
    let missing_left: Vec<LabelledFormula> = target
        .antecedent
        .iter()
        .filter(|lf| !current.conclusion.antecedent.contains(lf))
        .cloned()
        .collect();
    for lf in missing_left {
        let conclusion = Sequent::new(
            current.conclusion.antecedent.with(lf.clone()),
            current.conclusion.succedent.clone(),
        );
        current = ProofTree {
            conclusion,
            rule: RuleApp::LWeak {
                formula: lf.formula.clone(),
                label: lf.label,
            },
            premises: vec![current],
        };
    }
    let missing_right: Vec<LabelledFormula> = target
        .succedent
        .iter()
        .filter(|lf| !current.conclusion.succedent.contains(lf))
        .cloned()
        .collect();
    for lf in missing_right {
        let conclusion = Sequent::new(
            current.conclusion.antecedent.clone(),
            current.conclusion.succedent.with(lf.clone()),
        );
        current = ProofTree {
            conclusion,
            rule: RuleApp::RWeak {
                formula: lf.formula.clone(),
                label: lf.label,
            },
            premises: vec![current],
        };
    }
    current
}

/// `l_shift`: the premise must contain `(phi, k)` in the antecedent; the
/// conclusion drops it and adds the complementary labels on the right.
pub(crate) fn l_shift_node(
    logic: &Logic,
    premise: ProofTree,
    phi: &Formula,
    k: Label,
) -> ProofTree {
    let lf = phi.labelled(k);
    debug_assert!(premise.conclusion.antecedent.contains(&lf));
    let family: LfSet = LabelSet::singleton(k)
        .complement(logic.n())
        .iter()
        .map(|j| phi.labelled(j))
        .collect();
    let conclusion = Sequent::new(
        premise.conclusion.antecedent.without(&lf),
        premise.conclusion.succedent.union(&family),
    );
    ProofTree {
        conclusion,
        rule: RuleApp::LShift {
            formula: phi.clone(),
            label: k,
        },
        premises: vec![premise],
    }
}

/// `r_shift`: the premise must contain `(phi, from)` in the succedent;
/// the conclusion drops it and adds `(phi, to)` on the left.
pub(crate) fn r_shift_node(
    premise: ProofTree,
    phi: &Formula,
    from: Label,
    to: Label,
) -> ProofTree {
    debug_assert_ne!(from, to);
    let source = phi.labelled(from);
    debug_assert!(premise.conclusion.succedent.contains(&source));
    let conclusion = Sequent::new(
        premise.conclusion.antecedent.with(phi.labelled(to)),
        premise.conclusion.succedent.without(&source),
    );
    ProofTree {
        conclusion,
        rule: RuleApp::RShift {
            formula: phi.clone(),
            from,
            to,
        },
        premises: vec![premise],
    }
}

/// Resolution with an explicit split; premises prove
/// `G |- left_rest, (phi,k1)` and `G |- right_rest, (phi,k2)`.
pub(crate) fn res_node(
    left: ProofTree,
    right: ProofTree,
    phi: &Formula,
    left_label: Label,
    right_label: Label,
    left_rest: LfSet,
    right_rest: LfSet,
) -> ProofTree {
    let conclusion = Sequent::new(
        left.conclusion.antecedent.clone(),
        left_rest.union(&right_rest),
    );
    ProofTree {
        conclusion,
        rule: RuleApp::Res {
            formula: phi.clone(),
            left_label,
            right_label,
            left_rest,
            right_rest,
        },
        premises: vec![left, right],
    }
}

/// Multi-shift over a proper label subset; one premise per member label,
/// all sharing antecedent context and succedent.
pub(crate) fn multi_shift_node(
    logic: &Logic,
    premises: Vec<ProofTree>,
    phi: &Formula,
    ks: LabelSet,
    gamma: LfSet,
    delta: LfSet,
) -> ProofTree {
    let family: LfSet = ks
        .complement(logic.n())
        .iter()
        .map(|j| phi.labelled(j))
        .collect();
    let conclusion = Sequent::new(gamma, delta.union(&family));
    ProofTree {
        conclusion,
        rule: RuleApp::MultiShift {
            formula: phi.clone(),
            label_set: ks,
        },
        premises,
    }
}

/// Table rule for the succedent: premises prove `G |- D, (arg_j, k_j)`;
/// the conclusion adds the full output family.
pub(crate) fn table_r_node(
    logic: &Logic,
    premises: Vec<ProofTree>,
    conn: &str,
    args: &[Formula],
    labels: &[Label],
    gamma: LfSet,
    delta: LfSet,
) -> ProofTree {
    let out = logic
        .connective(conn)
        .expect("connective not in logic")
        .output(labels, logic.n());
    let compound = Formula::apply(conn, args.to_vec());
    let out_side: LfSet = out.iter().map(|k| compound.labelled(k)).collect();
    let conclusion = Sequent::new(gamma, delta.union(&out_side));
    ProofTree {
        conclusion,
        rule: RuleApp::TableR {
            conn: conn.to_string(),
            args: args.to_vec(),
            labels: labels.to_vec(),
        },
        premises,
    }
}

/// Output-set keyed table rule for the succedent: premises prove
/// `G |- D, Lambda` per selection; the conclusion adds `{conn(args)} x K`.
pub(crate) fn table_r_dd_node(
    premises: Vec<ProofTree>,
    conn: &str,
    args: &[Formula],
    ks: LabelSet,
    gamma: LfSet,
    delta: LfSet,
) -> ProofTree {
    let compound = Formula::apply(conn, args.to_vec());
    let out_side: LfSet = ks.iter().map(|k| compound.labelled(k)).collect();
    let conclusion = Sequent::new(gamma, delta.union(&out_side));
    ProofTree {
        conclusion,
        rule: RuleApp::TableRDd {
            conn: conn.to_string(),
            args: args.to_vec(),
            label_set: ks,
        },
        premises,
    }
}

/// Table rule for the antecedent: premises prove `G, Theta_q |- D` per
/// qualifying tuple; the conclusion replaces them by the compound.
pub(crate) fn table_l_node(
    premises: Vec<ProofTree>,
    conn: &str,
    args: &[Formula],
    label: Label,
    gamma: LfSet,
    delta: LfSet,
) -> ProofTree {
    let compound = Formula::apply(conn, args.to_vec());
    let conclusion = Sequent::new(gamma.with(compound.labelled(label)), delta);
    ProofTree {
        conclusion,
        rule: RuleApp::TableL {
            conn: conn.to_string(),
            args: args.to_vec(),
            label,
        },
        premises,
    }
}

/// Rebuilds a proof with minimal contexts: weakenings are dropped and
/// every rule is re-applied over the pruned premises, so the result
/// proves a subsequent of the original conclusion. Steps whose active
/// formula disappeared are dropped entirely.
pub(crate) fn prune(logic: &Logic, node: &ProofTree) -> ProofTree {
    match &node.rule {
        RuleApp::Ax { .. }
        | RuleApp::TableAx { .. }
        | RuleApp::DualAx { .. }
        | RuleApp::Hyp => node.clone(),
        RuleApp::LWeak { .. } | RuleApp::RWeak { .. } => prune(logic, &node.premises[0]),
        RuleApp::LShift { formula, label } => {
            let p = prune(logic, &node.premises[0]);
            if p.conclusion.antecedent.contains(&formula.labelled(*label)) {
                l_shift_node(logic, p, formula, *label)
            } else {
                p
            }
        }
        RuleApp::RShift { formula, from, to } => {
            let p = prune(logic, &node.premises[0]);
            if p.conclusion.succedent.contains(&formula.labelled(*from)) {
                r_shift_node(p, formula, *from, *to)
            } else {
                p
            }
        }
        RuleApp::Cut { formula, label } => {
            let left = prune(logic, &node.premises[0]);
            let right = prune(logic, &node.premises[1]);
            let lf = formula.labelled(*label);
            if !left.conclusion.succedent.contains(&lf) {
                return left;
            }
            if !right.conclusion.antecedent.contains(&lf) {
                return right;
            }
            let gamma = left
                .conclusion
                .antecedent
                .union(&right.conclusion.antecedent.without(&lf));
            let delta = left
                .conclusion
                .succedent
                .without(&lf)
                .union(&right.conclusion.succedent);
            let left = weaken_to(left, &Sequent::new(gamma.clone(), delta.with(lf.clone())));
            let right = weaken_to(right, &Sequent::new(gamma.with(lf), delta.clone()));
            ProofTree {
                conclusion: Sequent::new(gamma, delta),
                rule: node.rule.clone(),
                premises: vec![left, right],
            }
        }
        RuleApp::Res {
            formula,
            left_label,
            right_label,
            ..
        } => {
            let left = prune(logic, &node.premises[0]);
            let right = prune(logic, &node.premises[1]);
            let x1 = formula.labelled(*left_label);
            let x2 = formula.labelled(*right_label);
            if !left.conclusion.succedent.contains(&x1) {
                return left;
            }
            if !right.conclusion.succedent.contains(&x2) {
                return right;
            }
            let gamma = left
                .conclusion
                .antecedent
                .union(&right.conclusion.antecedent);
            let left_rest = left.conclusion.succedent.without(&x1);
            let right_rest = right.conclusion.succedent.without(&x2);
            let left = weaken_to(left, &Sequent::new(gamma.clone(), left_rest.with(x1)));
            let right = weaken_to(right, &Sequent::new(gamma, right_rest.with(x2)));
            res_node(
                left,
                right,
                formula,
                *left_label,
                *right_label,
                left_rest,
                right_rest,
            )
        }
        RuleApp::TableR { conn, args, labels } => {
            let pruned: Vec<ProofTree> =
                node.premises.iter().map(|p| prune(logic, p)).collect();
            let mut gamma = LfSet::new();
            let mut delta = LfSet::new();
            for (p, (arg, &k)) in pruned.iter().zip(args.iter().zip(labels)) {
                gamma = gamma.union(&p.conclusion.antecedent);
                delta = delta.union(&p.conclusion.succedent.without(&arg.labelled(k)));
            }
            let premises = pruned
                .into_iter()
                .zip(args.iter().zip(labels))
                .map(|(p, (arg, &k))| {
                    weaken_to(p, &Sequent::new(gamma.clone(), delta.with(arg.labelled(k))))
                })
                .collect();
            table_r_node(logic, premises, conn, args, labels, gamma, delta)
        }
        RuleApp::TableRDd {
            conn,
            args,
            label_set,
        } => {
            let image = crate::calculi::inverse_image_set(logic, conn, args, *label_set)
                .expect("checked instance");
            let lambdas = crate::calculi::vee_product(image.sets()).expect("non-empty family");
            let pruned: Vec<ProofTree> =
                node.premises.iter().map(|p| prune(logic, p)).collect();
            let mut gamma = LfSet::new();
            let mut delta = LfSet::new();
            for (p, lambda) in pruned.iter().zip(&lambdas) {
                gamma = gamma.union(&p.conclusion.antecedent);
                delta = delta.union(&p.conclusion.succedent.minus(lambda));
            }
            let premises = pruned
                .into_iter()
                .zip(&lambdas)
                .map(|(p, lambda)| {
                    weaken_to(p, &Sequent::new(gamma.clone(), delta.union(lambda)))
                })
                .collect();
            table_r_dd_node(premises, conn, args, *label_set, gamma, delta)
        }
        RuleApp::MultiShift { formula, label_set } => {
            let pruned: Vec<ProofTree> =
                node.premises.iter().map(|p| prune(logic, p)).collect();
            for (p, k) in pruned.iter().zip(label_set.iter()) {
                if !p.conclusion.antecedent.contains(&formula.labelled(k)) {
                    return p.clone();
                }
            }
            let mut gamma = LfSet::new();
            let mut delta = LfSet::new();
            for (p, k) in pruned.iter().zip(label_set.iter()) {
                gamma = gamma.union(&p.conclusion.antecedent.without(&formula.labelled(k)));
                delta = delta.union(&p.conclusion.succedent);
            }
            let premises = pruned
                .into_iter()
                .zip(label_set.iter())
                .map(|(p, k)| {
                    weaken_to(
                        p,
                        &Sequent::new(gamma.with(formula.labelled(k)), delta.clone()),
                    )
                })
                .collect();
            multi_shift_node(logic, premises, formula, *label_set, gamma, delta)
        }
        RuleApp::TableL { conn, args, label } => {
            let c = logic.connective(conn).expect("checked instance");
            let thetas: Vec<LfSet> = c
                .rows(logic.n())
                .filter(|&(_, out)| out.contains(*label))
                .map(|(tuple, _)| {
                    args.iter()
                        .zip(&tuple)
                        .map(|(f, &k)| f.labelled(k))
                        .collect()
                })
                .collect();
            let pruned: Vec<ProofTree> =
                node.premises.iter().map(|p| prune(logic, p)).collect();
            let mut gamma = LfSet::new();
            let mut delta = LfSet::new();
            for (p, theta) in pruned.iter().zip(&thetas) {
                gamma = gamma.union(&p.conclusion.antecedent.minus(theta));
                delta = delta.union(&p.conclusion.succedent);
            }
            let premises = pruned
                .into_iter()
                .zip(&thetas)
                .map(|(p, theta)| {
                    weaken_to(p, &Sequent::new(gamma.union(theta), delta.clone()))
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
            let pruned: Vec<ProofTree> =
                node.premises.iter().map(|p| prune(logic, p)).collect();
            let mut gamma = LfSet::new();
            let mut delta = LfSet::new();
            for (p, lf) in pruned.iter().zip(lambda.iter()) {
                gamma = gamma.union(&p.conclusion.antecedent.without(lf));
                delta = delta.union(&p.conclusion.succedent);
            }
            let premises = pruned
                .into_iter()
                .zip(lambda.iter())
                .map(|(p, lf)| {
                    weaken_to(p, &Sequent::new(gamma.with(lf.clone()), delta.clone()))
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
    }
}

/// Inverse-image keyed table rule for the antecedent: premises prove
/// `G, (phi_j, k_j) |- D` per member of the selection.
pub(crate) fn table_l_dd_node(
    premises: Vec<ProofTree>,
    conn: &str,
    args: &[Formula],
    label: Label,
    lambda: LfSet,
    gamma: LfSet,
    delta: LfSet,
) -> ProofTree {
    let compound = Formula::apply(conn, args.to_vec());
    let conclusion = Sequent::new(gamma.with(compound.labelled(label)), delta);
    ProofTree {
        conclusion,
        rule: RuleApp::TableLDd {
            conn: conn.to_string(),
            args: args.to_vec(),
            label,
            lambda,
        },
        premises,
    }
}
