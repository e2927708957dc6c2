//! Backward proof search with memoization over the labelled universe.
//!
//! The search works on weakening-absorbed sequents: axioms and
//! hypotheses match by inclusion and every rule is applied with maximal
//! shared contexts, which is complete because weakening is admissible.
//! Found derivations are reconstructed into strict proof trees with
//! explicit weakening chains at the leaves.
//!
//! Refutations are never produced syntactically: the semantic oracle is
//! consulted first and its countermodel is authoritative. For the
//! rule-style calculi the hypothesis-free search is cut- and
//! resolution-free; the axiom-style calculi additionally search
//! resolution steps, which their axioms need for completeness. With
//! hypotheses (or on request) analytic cuts over the universe are tried.

use std::collections::HashMap;
use std::rc::Rc;

use crate::calculi::{
    dual_selections, inverse_image_set, table_axiom, vee_product, Calculus, RuleApp,
};
use crate::formula::{Formula, Label, LabelledFormula};
use crate::logic::{LabelSet, Logic};
use crate::semantics::{entails, joint_closure, legal_valuations, EntailmentVerdict, Valuation};
use crate::sequent::{LfSet, Sequent};

use super::build::{ax_leaf, prune, weaken_to};
use super::ProofTree;

/// Bounds for one search run.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_nodes: usize,
    pub allow_analytic_cut: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 200_000,
            allow_analytic_cut: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetReport {
    pub expanded: usize,
    pub max_nodes: usize,
}

#[derive(Debug)]
pub enum ProveOutcome {
    Proved(ProofTree),
    Refuted(Valuation),
    /// The oracle says entailed but no proof was found within budget.
    Exhausted(BudgetReport),
}

impl ProveOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProveOutcome::Proved(_))
    }

    pub fn proof(&self) -> Option<&ProofTree> {
        match self {
            ProveOutcome::Proved(t) => Some(t),
            _ => None,
        }
    }
}

/// Decides the goal. `Refuted` comes from the semantic oracle; `Proved`
/// trees pass the proof checker; `Exhausted` is only returned when the
/// oracle says entailed but the budget ran out.
pub fn prove(
    logic: &Logic,
    calculus: Calculus,
    hypotheses: &[Sequent],
    goal: &Sequent,
    budget: SearchBudget,
) -> ProveOutcome {
    match entails(logic, hypotheses, goal) {
        EntailmentVerdict::Refuted(v) => return ProveOutcome::Refuted(v),
        EntailmentVerdict::Entailed => {}
    }
    let mut searcher = Searcher::new(logic, calculus, hypotheses, goal, budget);
    let mut ancestors = Vec::new();
    match searcher.search(goal, &mut ancestors) {
        Outcome::Proved(plan) => {
            let raw = searcher.reconstruct(goal, &plan);
            let tree = weaken_to(prune(logic, &raw), goal);
            debug_assert_eq!(
                super::check_proof(logic, calculus, hypotheses, &tree),
                Ok(()),
                "reconstructed proof does not check"
            );
            ProveOutcome::Proved(tree)
        }
        Outcome::Failed { .. } | Outcome::OutOfBudget => ProveOutcome::Exhausted(BudgetReport {
            expanded: searcher.expanded,
            max_nodes: budget.max_nodes,
        }),
    }
}

/// A found derivation in absorbed form; premise sequents are recomputed
/// deterministically during reconstruction.
enum Step {
    AxEmbed(LabelledFormula),
    HypEmbed(usize),
    TableAxEmbed {
        conn: String,
        args: Vec<Formula>,
        labels: Vec<Label>,
    },
    DualAxEmbed {
        conn: String,
        args: Vec<Formula>,
        label: Label,
        lambda: LfSet,
    },
    Apply(RuleApp),
}

struct Plan {
    step: Step,
    children: Vec<Rc<Plan>>,
}

enum Outcome {
    Proved(Rc<Plan>),
    Failed { clean: bool },
    OutOfBudget,
}

enum Memo {
    Proved(Rc<Plan>),
    Failed,
}

struct Searcher<'a> {
    logic: &'a Logic,
    calculus: Calculus,
    hypotheses: &'a [Sequent],
    /// Closure formulas in canonical order.
    formulas: Vec<Formula>,
    /// Compound closure formulas, with connective name and arguments.
    compounds: Vec<(Formula, String, Vec<Formula>)>,
    /// Legal valuations satisfying all hypotheses, for validity pruning.
    /// `None` when the space was too large to enumerate.
    models: Option<Vec<Valuation>>,
    memo: HashMap<Sequent, Memo>,
    expanded: usize,
    max_nodes: usize,
    use_res: bool,
    use_cut: bool,
    out_of_budget: bool,
}

impl<'a> Searcher<'a> {
    fn new(
        logic: &'a Logic,
        calculus: Calculus,
        hypotheses: &'a [Sequent],
        goal: &Sequent,
        budget: SearchBudget,
    ) -> Self {
        let closure = joint_closure(hypotheses, goal);
        let formulas = closure.formulas().to_vec();
        let compounds = formulas
            .iter()
            .filter_map(|f| {
                f.as_apply()
                    .map(|(conn, args)| (f.clone(), conn.to_string(), args.to_vec()))
            })
            .collect();
        // Bound the raw assignment space before enumerating models.
        let mut space: f64 = 1.0;
        for f in closure.formulas() {
            let branch = match f.as_apply() {
                None => logic.n() as f64,
                Some((conn, _)) => logic
                    .connective(conn)
                    .map(|c| {
                        c.rows(logic.n())
                            .map(|(_, out)| out.len())
                            .max()
                            .unwrap_or(1) as f64
                    })
                    .unwrap_or(1.0),
            };
            space *= branch;
        }
        let models = if space <= 250_000.0 {
            Some(
                legal_valuations(logic, &closure)
                    .into_iter()
                    .filter(|v| hypotheses.iter().all(|h| v.satisfies(h).unwrap()))
                    .collect(),
            )
        } else {
            None
        };
        let use_res = matches!(calculus, Calculus::A | Calculus::Add);
        let use_cut = !hypotheses.is_empty() || budget.allow_analytic_cut;
        Searcher {
            logic,
            calculus,
            hypotheses,
            formulas,
            compounds,
            models,
            memo: HashMap::new(),
            expanded: 0,
            max_nodes: budget.max_nodes,
            use_res,
            use_cut,
            out_of_budget: false,
        }
    }

    /// Sound pruning: a provable sequent is satisfied by every model of
    /// the hypotheses, so an invalid one cannot be proved.
    fn is_valid(&self, s: &Sequent) -> bool {
        match &self.models {
            Some(models) => models.iter().all(|v| v.satisfies(s).unwrap_or(true)),
            None => true,
        }
    }

    fn search(&mut self, s: &Sequent, ancestors: &mut Vec<Sequent>) -> Outcome {
        if let Some(memo) = self.memo.get(s) {
            return match memo {
                Memo::Proved(plan) => Outcome::Proved(plan.clone()),
                Memo::Failed => Outcome::Failed { clean: true },
            };
        }
        if ancestors.contains(s) {
            return Outcome::Failed { clean: false };
        }
        if self.out_of_budget || self.expanded >= self.max_nodes {
            self.out_of_budget = true;
            return Outcome::OutOfBudget;
        }
        self.expanded += 1;
        if !self.is_valid(s) {
            self.memo.insert(s.clone(), Memo::Failed);
            return Outcome::Failed { clean: true };
        }
        if let Some(plan) = self.leaf_embed(s) {
            let plan = Rc::new(plan);
            self.memo.insert(s.clone(), Memo::Proved(plan.clone()));
            return Outcome::Proved(plan);
        }
        ancestors.push(s.clone());
        let mut all_clean = true;
        let mut proved: Option<Rc<Plan>> = None;
        let moves = self.moves(s);
        'moves: for app in moves {
            let premises = premise_targets(self.logic, s, &app);
            let mut children = Vec::with_capacity(premises.len());
            for premise in &premises {
                match self.search(premise, ancestors) {
                    Outcome::Proved(plan) => children.push(plan),
                    Outcome::Failed { clean } => {
                        all_clean &= clean;
                        continue 'moves;
                    }
                    Outcome::OutOfBudget => {
                        ancestors.pop();
                        return Outcome::OutOfBudget;
                    }
                }
            }
            proved = Some(Rc::new(Plan {
                step: Step::Apply(app),
                children,
            }));
            break;
        }
        ancestors.pop();
        match proved {
            Some(plan) => {
                self.memo.insert(s.clone(), Memo::Proved(plan.clone()));
                Outcome::Proved(plan)
            }
            None => {
                if all_clean {
                    self.memo.insert(s.clone(), Memo::Failed);
                }
                Outcome::Failed { clean: all_clean }
            }
        }
    }

    fn leaf_embed(&self, s: &Sequent) -> Option<Plan> {
        if let Some(lf) = s.antecedent.first_common(&s.succedent) {
            return Some(Plan {
                step: Step::AxEmbed(lf.clone()),
                children: Vec::new(),
            });
        }
        for (i, h) in self.hypotheses.iter().enumerate() {
            if h.is_subsequent_of(s) {
                return Some(Plan {
                    step: Step::HypEmbed(i),
                    children: Vec::new(),
                });
            }
        }
        if self.calculus == Calculus::A {
            for (_, conn, args) in &self.compounds {
                let c = self.logic.connective(conn).unwrap();
                for (tuple, _) in c.rows(self.logic.n()) {
                    let axiom = table_axiom(self.logic, conn, args, &tuple).unwrap();
                    if axiom.is_subsequent_of(s) {
                        return Some(Plan {
                            step: Step::TableAxEmbed {
                                conn: conn.clone(),
                                args: args.clone(),
                                labels: tuple,
                            },
                            children: Vec::new(),
                        });
                    }
                }
            }
        }
        if self.calculus == Calculus::Add {
            for (formula, conn, args) in &self.compounds {
                for k in self.logic.labels() {
                    if !s.antecedent.contains(&formula.labelled(k)) {
                        continue;
                    }
                    for lambda in dual_selections(self.logic, conn, args, k).unwrap() {
                        if lambda.is_subset(&s.succedent) {
                            return Some(Plan {
                                step: Step::DualAxEmbed {
                                    conn: conn.clone(),
                                    args: args.clone(),
                                    label: k,
                                    lambda,
                                },
                                children: Vec::new(),
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// Applicable backward moves at `s`, in the fixed tie-break order:
    /// rule id order, then canonical parameter order.
    fn moves(&self, s: &Sequent) -> Vec<RuleApp> {
        let n = self.logic.n();
        let mut out = Vec::new();

        // l_shift: needs the complementary family in the succedent.
        for f in &self.formulas {
            for k in 1..=n {
                let lf = f.labelled(k);
                if s.antecedent.contains(&lf) {
                    continue; // premise would equal the goal
                }
                let family_in = LabelSet::singleton(k)
                    .complement(n)
                    .iter()
                    .all(|j| s.succedent.contains(&f.labelled(j)));
                if family_in {
                    out.push(RuleApp::LShift {
                        formula: f.clone(),
                        label: k,
                    });
                }
            }
        }

        // r_shift: move an antecedent member back to the succedent.
        for lf in &s.antecedent {
            for from in 1..=n {
                if from == lf.label || s.succedent.contains(&lf.formula.labelled(from)) {
                    continue;
                }
                out.push(RuleApp::RShift {
                    formula: lf.formula.clone(),
                    from,
                    to: lf.label,
                });
            }
        }

        // multi_shift over every proper label subset.
        if matches!(self.calculus, Calculus::Rsd | Calculus::Rddsd) {
            let full = LabelSet::full(n);
            for f in &self.formulas {
                for bits in 0..full.bits() {
                    let ks = LabelSet::from_bits(bits);
                    let family_in = ks
                        .complement(n)
                        .iter()
                        .all(|j| s.succedent.contains(&f.labelled(j)));
                    if !family_in {
                        continue;
                    }
                    if ks.iter().any(|k| s.antecedent.contains(&f.labelled(k))) {
                        continue; // some premise would equal the goal
                    }
                    out.push(RuleApp::MultiShift {
                        formula: f.clone(),
                        label_set: ks,
                    });
                }
            }
        }

        if self.calculus == Calculus::R {
            for (formula, conn, args) in &self.compounds {
                let c = self.logic.connective(conn).unwrap();
                for (tuple, out_set) in c.rows(self.logic.n()) {
                    let covered = out_set.iter().all(|k| {
                        s.succedent.contains(&formula.labelled(k))
                    });
                    if !covered {
                        continue;
                    }
                    if args
                        .iter()
                        .zip(&tuple)
                        .all(|(a, &k)| s.succedent.contains(&a.labelled(k)))
                    {
                        continue; // every premise would equal the goal
                    }
                    out.push(RuleApp::TableR {
                        conn: conn.clone(),
                        args: args.clone(),
                        labels: tuple,
                    });
                }
            }
        }

        if self.calculus == Calculus::Rdd {
            for (formula, conn, args) in &self.compounds {
                let full = LabelSet::full(n);
                for bits in 1..=full.bits() {
                    let ks = LabelSet::from_bits(bits);
                    if !ks.is_subset(full) {
                        continue;
                    }
                    let covered = ks.iter().all(|k| s.succedent.contains(&formula.labelled(k)));
                    if !covered {
                        continue;
                    }
                    let image = inverse_image_set(self.logic, conn, args, ks).unwrap();
                    if image.is_empty() {
                        continue;
                    }
                    out.push(RuleApp::TableRDd {
                        conn: conn.clone(),
                        args: args.clone(),
                        label_set: ks,
                    });
                }
            }
        }

        if self.calculus == Calculus::Rsd {
            for lf in &s.antecedent {
                if let Some((conn, args)) = lf.formula.as_apply() {
                    out.push(RuleApp::TableL {
                        conn: conn.to_string(),
                        args: args.to_vec(),
                        label: lf.label,
                    });
                }
            }
        }

        if self.calculus == Calculus::Rddsd {
            for lf in &s.antecedent {
                if let Some((conn, args)) = lf.formula.as_apply() {
                    for lambda in dual_selections(self.logic, conn, args, lf.label).unwrap() {
                        out.push(RuleApp::TableLDd {
                            conn: conn.to_string(),
                            args: args.to_vec(),
                            label: lf.label,
                            lambda,
                        });
                    }
                }
            }
        }

        if self.use_res {
            for f in &self.formulas {
                for k1 in 1..=n {
                    for k2 in k1 + 1..=n {
                        if s.succedent.contains(&f.labelled(k1))
                            || s.succedent.contains(&f.labelled(k2))
                        {
                            continue; // a premise would equal the goal
                        }
                        out.push(RuleApp::Res {
                            formula: f.clone(),
                            left_label: k1,
                            right_label: k2,
                            left_rest: s.succedent.clone(),
                            right_rest: s.succedent.clone(),
                        });
                    }
                }
            }
        }

        if self.use_cut {
            for f in &self.formulas {
                for k in 1..=n {
                    let lf = f.labelled(k);
                    if s.antecedent.contains(&lf) || s.succedent.contains(&lf) {
                        continue;
                    }
                    out.push(RuleApp::Cut {
                        formula: f.clone(),
                        label: k,
                    });
                }
            }
        }

        out
    }

    fn reconstruct(&self, s: &Sequent, plan: &Plan) -> ProofTree {
        match &plan.step {
            Step::AxEmbed(lf) => weaken_to(ax_leaf(lf), s),
            Step::HypEmbed(i) => weaken_to(
                ProofTree::leaf(self.hypotheses[*i].clone(), RuleApp::Hyp),
                s,
            ),
            Step::TableAxEmbed { conn, args, labels } => {
                let axiom = table_axiom(self.logic, conn, args, labels).unwrap();
                weaken_to(
                    ProofTree::leaf(
                        axiom,
                        RuleApp::TableAx {
                            conn: conn.clone(),
                            args: args.clone(),
                            labels: labels.clone(),
                        },
                    ),
                    s,
                )
            }
            Step::DualAxEmbed {
                conn,
                args,
                label,
                lambda,
            } => {
                let compound = Formula::apply(conn.clone(), args.clone());
                let conclusion = Sequent::new(
                    [compound.labelled(*label)].into_iter().collect(),
                    lambda.clone(),
                );
                weaken_to(
                    ProofTree::leaf(
                        conclusion,
                        RuleApp::DualAx {
                            conn: conn.clone(),
                            args: args.clone(),
                            label: *label,
                        },
                    ),
                    s,
                )
            }
            Step::Apply(app) => {
                let premises = premise_targets(self.logic, s, app);
                let children = premises
                    .iter()
                    .zip(&plan.children)
                    .map(|(premise, child)| self.reconstruct(premise, child))
                    .collect();
                ProofTree {
                    conclusion: s.clone(),
                    rule: app.clone(),
                    premises: children,
                }
            }
        }
    }
}

/// The premise sequents of a maximal-context backward application at a
/// conclusion; deterministic given the rule parameters.
fn premise_targets(logic: &Logic, s: &Sequent, app: &RuleApp) -> Vec<Sequent> {
    match app {
        RuleApp::Ax { .. }
        | RuleApp::TableAx { .. }
        | RuleApp::DualAx { .. }
        | RuleApp::Hyp => Vec::new(),
        RuleApp::LShift { formula, label } => vec![Sequent::new(
            s.antecedent.with(formula.labelled(*label)),
            s.succedent.clone(),
        )],
        RuleApp::RShift { formula, from, .. } => vec![Sequent::new(
            s.antecedent.clone(),
            s.succedent.with(formula.labelled(*from)),
        )],
        RuleApp::LWeak { formula, label } => vec![Sequent::new(
            s.antecedent.without(&formula.labelled(*label)),
            s.succedent.clone(),
        )],
        RuleApp::RWeak { formula, label } => vec![Sequent::new(
            s.antecedent.clone(),
            s.succedent.without(&formula.labelled(*label)),
        )],
        RuleApp::Cut { formula, label } => {
            let lf = formula.labelled(*label);
            vec![
                Sequent::new(s.antecedent.clone(), s.succedent.with(lf.clone())),
                Sequent::new(s.antecedent.with(lf), s.succedent.clone()),
            ]
        }
        RuleApp::Res {
            formula,
            left_label,
            right_label,
            left_rest,
            right_rest,
        } => vec![
            Sequent::new(
                s.antecedent.clone(),
                left_rest.with(formula.labelled(*left_label)),
            ),
            Sequent::new(
                s.antecedent.clone(),
                right_rest.with(formula.labelled(*right_label)),
            ),
        ],
        RuleApp::TableR { args, labels, .. } => args
            .iter()
            .zip(labels)
            .map(|(arg, &k)| {
                Sequent::new(s.antecedent.clone(), s.succedent.with(arg.labelled(k)))
            })
            .collect(),
        RuleApp::TableRDd { conn, args, label_set } => {
            let image = inverse_image_set(logic, conn, args, *label_set).unwrap();
            vee_product(image.sets())
                .unwrap()
                .into_iter()
                .map(|lambda| {
                    Sequent::new(s.antecedent.clone(), s.succedent.union(&lambda))
                })
                .collect()
        }
        RuleApp::MultiShift { formula, label_set } => label_set
            .iter()
            .map(|k| {
                Sequent::new(
                    s.antecedent.with(formula.labelled(k)),
                    s.succedent.clone(),
                )
            })
            .collect(),
        RuleApp::TableL { conn, args, label } => {
            let c = logic.connective(conn).unwrap();
            c.rows(logic.n())
                .filter(|&(_, out)| out.contains(*label))
                .map(|(tuple, _)| {
                    let theta: LfSet = args
                        .iter()
                        .zip(&tuple)
                        .map(|(f, &k)| f.labelled(k))
                        .collect();
                    Sequent::new(s.antecedent.union(&theta), s.succedent.clone())
                })
                .collect()
        }
        RuleApp::TableLDd { lambda, .. } => lambda
            .iter()
            .map(|lf| Sequent::new(s.antecedent.with(lf.clone()), s.succedent.clone()))
            .collect(),
    }
}
