//! The six calculi: axiom and rule schemas generated from truth tables,
//! inverse-image combinatorics, and validation of single inference steps.
//!
//! All six calculi share the axiom `(psi,k) |- (psi,k)` and the structural
//! rules (shifts, weakenings, cut, resolution). They differ in how the
//! truth tables enter:
//!
//! * `A` — one axiom per table entry (the table axioms).
//! * `R` — one succedent-introduction rule per table entry.
//! * `Add` — axioms dual to the table axioms, built from inverse images.
//! * `Rdd` — succedent introduction keyed by exact output sets.
//! * `Rsd` — antecedent introduction per table entry, plus multi-shift.
//! * `Rddsd` — antecedent introduction from inverse images, plus
//!   multi-shift.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{Formula, Label, LabelledFormula};
use crate::logic::{Connective, LabelSet, Logic};
use crate::sequent::{LfSet, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Calculus {
    A,
    R,
    Add,
    Rdd,
    Rsd,
    Rddsd,
}

impl Calculus {
    pub const ALL: [Calculus; 6] = [
        Calculus::A,
        Calculus::R,
        Calculus::Add,
        Calculus::Rdd,
        Calculus::Rsd,
        Calculus::Rddsd,
    ];

    /// Rules proper to the calculus. `hyp` is admitted everywhere when
    /// hypotheses are supplied and is not listed here.
    pub fn members(self) -> &'static [RuleId] {
        use RuleId::*;
        match self {
            Calculus::A => &[Ax, TableAx, LShift, RShift, LWeak, RWeak, Cut, Res],
            Calculus::R => &[Ax, LShift, RShift, LWeak, RWeak, Cut, Res, TableR],
            Calculus::Add => &[Ax, DualAx, LShift, RShift, LWeak, RWeak, Cut, Res],
            Calculus::Rdd => &[Ax, LShift, RShift, LWeak, RWeak, Cut, Res, TableRDd],
            Calculus::Rsd => &[
                Ax, LShift, RShift, LWeak, RWeak, Cut, Res, TableL, MultiShift,
            ],
            Calculus::Rddsd => &[
                Ax, LShift, RShift, LWeak, RWeak, Cut, Res, TableLDd, MultiShift,
            ],
        }
    }

    pub fn admits(self, rule: RuleId) -> bool {
        rule == RuleId::Hyp || self.members().contains(&rule)
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Calculus::A => "A",
            Calculus::R => "R",
            Calculus::Add => "Add",
            Calculus::Rdd => "Rdd",
            Calculus::Rsd => "Rsd",
            Calculus::Rddsd => "Rddsd",
        };
        f.write_str(s)
    }
}

impl FromStr for Calculus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(Calculus::A),
            "R" => Ok(Calculus::R),
            "Add" => Ok(Calculus::Add),
            "Rdd" => Ok(Calculus::Rdd),
            "Rsd" => Ok(Calculus::Rsd),
            "Rddsd" => Ok(Calculus::Rddsd),
            other => Err(format!(
                "unknown calculus {other}; expected one of A, R, Add, Rdd, Rsd, Rddsd"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Ax,
    TableAx,
    LShift,
    RShift,
    LWeak,
    RWeak,
    Cut,
    Res,
    TableR,
    DualAx,
    TableRDd,
    MultiShift,
    TableL,
    TableLDd,
    Hyp,
}

impl RuleId {
    pub const ALL: [RuleId; 15] = [
        RuleId::Ax,
        RuleId::TableAx,
        RuleId::LShift,
        RuleId::RShift,
        RuleId::LWeak,
        RuleId::RWeak,
        RuleId::Cut,
        RuleId::Res,
        RuleId::TableR,
        RuleId::DualAx,
        RuleId::TableRDd,
        RuleId::MultiShift,
        RuleId::TableL,
        RuleId::TableLDd,
        RuleId::Hyp,
    ];

    /// Identifier used in the proof text format.
    pub fn id(self) -> &'static str {
        match self {
            RuleId::Ax => "ax",
            RuleId::TableAx => "table_ax",
            RuleId::LShift => "l_shift",
            RuleId::RShift => "r_shift",
            RuleId::LWeak => "l_weak",
            RuleId::RWeak => "r_weak",
            RuleId::Cut => "cut",
            RuleId::Res => "res",
            RuleId::TableR => "table_r",
            RuleId::DualAx => "dual_ax",
            RuleId::TableRDd => "table_r_dd",
            RuleId::MultiShift => "multi_shift",
            RuleId::TableL => "table_l",
            RuleId::TableLDd => "table_l_dd",
            RuleId::Hyp => "hyp",
        }
    }

    pub fn from_id(s: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.id() == s)
    }

    pub fn is_leaf(self) -> bool {
        matches!(
            self,
            RuleId::Ax | RuleId::TableAx | RuleId::DualAx | RuleId::Hyp
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A rule identifier together with its instantiation parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RuleApp {
    Ax {
        formula: Formula,
        label: Label,
    },
    TableAx {
        conn: String,
        args: Vec<Formula>,
        labels: Vec<Label>,
    },
    LShift {
        formula: Formula,
        label: Label,
    },
    /// Premise holds `(formula, from)` in the succedent; the conclusion
    /// adds `(formula, to)` to the antecedent; `from != to`.
    RShift {
        formula: Formula,
        from: Label,
        to: Label,
    },
    LWeak {
        formula: Formula,
        label: Label,
    },
    RWeak {
        formula: Formula,
        label: Label,
    },
    Cut {
        formula: Formula,
        label: Label,
    },
    /// The succedent split is carried explicitly: the conclusion is
    /// `left_rest union right_rest`, which is not recoverable from the
    /// conclusion alone.
    Res {
        formula: Formula,
        left_label: Label,
        right_label: Label,
        left_rest: LfSet,
        right_rest: LfSet,
    },
    TableR {
        conn: String,
        args: Vec<Formula>,
        labels: Vec<Label>,
    },
    DualAx {
        conn: String,
        args: Vec<Formula>,
        label: Label,
    },
    TableRDd {
        conn: String,
        args: Vec<Formula>,
        label_set: LabelSet,
    },
    MultiShift {
        formula: Formula,
        label_set: LabelSet,
    },
    TableL {
        conn: String,
        args: Vec<Formula>,
        label: Label,
    },
    TableLDd {
        conn: String,
        args: Vec<Formula>,
        label: Label,
        lambda: LfSet,
    },
    Hyp,
}

impl RuleApp {
    pub fn rule_id(&self) -> RuleId {
        match self {
            RuleApp::Ax { .. } => RuleId::Ax,
            RuleApp::TableAx { .. } => RuleId::TableAx,
            RuleApp::LShift { .. } => RuleId::LShift,
            RuleApp::RShift { .. } => RuleId::RShift,
            RuleApp::LWeak { .. } => RuleId::LWeak,
            RuleApp::RWeak { .. } => RuleId::RWeak,
            RuleApp::Cut { .. } => RuleId::Cut,
            RuleApp::Res { .. } => RuleId::Res,
            RuleApp::TableR { .. } => RuleId::TableR,
            RuleApp::DualAx { .. } => RuleId::DualAx,
            RuleApp::TableRDd { .. } => RuleId::TableRDd,
            RuleApp::MultiShift { .. } => RuleId::MultiShift,
            RuleApp::TableL { .. } => RuleId::TableL,
            RuleApp::TableLDd { .. } => RuleId::TableLDd,
            RuleApp::Hyp => RuleId::Hyp,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CalculiError {
    #[error("unknown connective {0}")]
    UnknownConnective(String),
    #[error("{conn} expects {want} arguments, got {got}")]
    ArityMismatch { conn: String, want: usize, got: usize },
    #[error("label {0} out of range")]
    LabelOutOfRange(Label),
    #[error("empty label set")]
    EmptyLabelSet,
    #[error("product over zero sets is undefined")]
    EmptyProduct,
}

fn lookup<'a>(
    logic: &'a Logic,
    conn: &str,
    args: &[Formula],
) -> Result<&'a Connective, CalculiError> {
    let c = logic
        .connective(conn)
        .ok_or_else(|| CalculiError::UnknownConnective(conn.to_string()))?;
    if c.arity != args.len() {
        return Err(CalculiError::ArityMismatch {
            conn: conn.to_string(),
            want: c.arity,
            got: args.len(),
        });
    }
    Ok(c)
}

/// The compound formula and the set `{ (conn(args), k) : k in out }`.
fn output_side(conn: &str, args: &[Formula], out: LabelSet) -> (Formula, LfSet) {
    let compound = Formula::apply(conn, args.to_vec());
    let set = out.iter().map(|k| compound.labelled(k)).collect();
    (compound, set)
}

/// The table axiom for one table entry:
/// `(phi_1,k_1), ..., (phi_l,k_l) |- { (conn(args), k) : k in out }`.
pub fn table_axiom(
    logic: &Logic,
    conn: &str,
    args: &[Formula],
    labels: &[Label],
) -> Result<Sequent, CalculiError> {
    let c = lookup(logic, conn, args)?;
    if labels.len() != c.arity {
        return Err(CalculiError::ArityMismatch {
            conn: conn.to_string(),
            want: c.arity,
            got: labels.len(),
        });
    }
    if let Some(&bad) = labels.iter().find(|&&k| k < 1 || k > logic.n()) {
        return Err(CalculiError::LabelOutOfRange(bad));
    }
    let out = c.output(labels, logic.n());
    let antecedent: LfSet = args
        .iter()
        .zip(labels)
        .map(|(f, &k)| f.labelled(k))
        .collect();
    let (_, succedent) = output_side(conn, args, out);
    Ok(Sequent::new(antecedent, succedent))
}

/// The sets `Theta_q` of an inverse image: one set of labelled formulas
/// per qualifying table entry, deduplicated and in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseImage {
    sets: Vec<LfSet>,
}

impl InverseImage {
    pub fn sets(&self) -> &[LfSet] {
        &self.sets
    }

    /// The count `s` of distinct sets.
    pub fn count(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

fn inverse_image_by(
    logic: &Logic,
    conn: &str,
    args: &[Formula],
    keep: impl Fn(LabelSet) -> bool,
) -> Result<InverseImage, CalculiError> {
    let c = lookup(logic, conn, args)?;
    let mut sets: Vec<LfSet> = c
        .rows(logic.n())
        .filter(|&(_, out)| keep(out))
        .map(|(tuple, _)| {
            args.iter()
                .zip(&tuple)
                .map(|(f, &k)| f.labelled(k))
                .collect()
        })
        .collect();
    sets.sort();
    sets.dedup();
    Ok(InverseImage { sets })
}

/// All argument-label tuples whose table output contains value `k`.
pub fn inverse_image_point(
    logic: &Logic,
    conn: &str,
    args: &[Formula],
    k: Label,
) -> Result<InverseImage, CalculiError> {
    if k < 1 || k > logic.n() {
        return Err(CalculiError::LabelOutOfRange(k));
    }
    inverse_image_by(logic, conn, args, |out| out.contains(k))
}

/// All argument-label tuples whose table output equals the set `ks`
/// exactly. May be empty.
pub fn inverse_image_set(
    logic: &Logic,
    conn: &str,
    args: &[Formula],
    ks: LabelSet,
) -> Result<InverseImage, CalculiError> {
    if ks.is_empty() {
        return Err(CalculiError::EmptyLabelSet);
    }
    if !ks.is_subset(LabelSet::full(logic.n())) {
        return Err(CalculiError::LabelOutOfRange(ks.iter().last().unwrap()));
    }
    inverse_image_by(logic, conn, args, |out| out == ks)
}

/// All ways of picking exactly one labelled formula from each set, each
/// selection collapsed to a set; the result is deduplicated and in
/// canonical order. Errors on an empty list of sets.
pub fn vee_product(thetas: &[LfSet]) -> Result<Vec<LfSet>, CalculiError> {
    if thetas.is_empty() {
        return Err(CalculiError::EmptyProduct);
    }
    let mut acc: Vec<LfSet> = vec![LfSet::new()];
    for theta in thetas {
        let mut next = Vec::new();
        for partial in &acc {
            for lf in theta {
                next.push(partial.with(lf.clone()));
            }
        }
        next.sort();
        next.dedup();
        acc = next;
    }
    Ok(acc)
}

/// Selections from the point inverse image of `(conn(args), k)`. When
/// the image is empty (no table entry ever outputs `k`), the product
/// over zero sets has exactly the empty selection: the value is
/// impossible, which reads as one empty clause, not as no clauses.
pub fn dual_selections(
    logic: &Logic,
    conn: &str,
    args: &[Formula],
    k: Label,
) -> Result<Vec<LfSet>, CalculiError> {
    let image = inverse_image_point(logic, conn, args, k)?;
    if image.is_empty() {
        return Ok(vec![LfSet::new()]);
    }
    vee_product(image.sets())
}

/// The dual axioms for `(conn(args), k)`: one sequent
/// `(conn(args),k) |- Lambda` per selection `Lambda` from the point
/// inverse image. A value outside every output yields the single axiom
/// with an empty succedent.
pub fn dual_axiom_instances(
    logic: &Logic,
    conn: &str,
    args: &[Formula],
    k: Label,
) -> Result<Vec<Sequent>, CalculiError> {
    let compound = Formula::apply(conn, args.to_vec());
    let antecedent: LfSet = [compound.labelled(k)].into_iter().collect();
    Ok(dual_selections(logic, conn, args, k)?
        .into_iter()
        .map(|lambda| Sequent::new(antecedent.clone(), lambda))
        .collect())
}

/// Why a proposed inference step is not a schema instance.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum InferenceViolation {
    #[error("{rule} not in {calculus}")]
    RuleNotInCalculus { rule: RuleId, calculus: Calculus },
    #[error("{rule} takes {want} premises, got {got}")]
    PremiseCount { rule: RuleId, want: usize, got: usize },
    #[error("contexts not shared: {0}")]
    ContextMismatch(String),
    #[error("side condition failed: {0}")]
    SideCondition(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("conclusion is not the axiom instance")]
    NotAnAxiom,
    #[error("hyp leaf matches no hypothesis")]
    HypMismatch,
}

fn want_premises(
    rule: RuleId,
    want: usize,
    premises: &[Sequent],
) -> Result<(), InferenceViolation> {
    if premises.len() != want {
        return Err(InferenceViolation::PremiseCount {
            rule,
            want,
            got: premises.len(),
        });
    }
    Ok(())
}

fn shared(cond: bool, what: &str) -> Result<(), InferenceViolation> {
    if cond {
        Ok(())
    } else {
        Err(InferenceViolation::ContextMismatch(what.to_string()))
    }
}

fn family_label(f: &Formula, ks: LabelSet) -> LfSet {
    ks.iter().map(|k| f.labelled(k)).collect()
}

fn check_label(logic: &Logic, k: Label) -> Result<(), InferenceViolation> {
    if k < 1 || k > logic.n() {
        return Err(InferenceViolation::BadParams(format!(
            "label {k} out of range 1..{}",
            logic.n()
        )));
    }
    Ok(())
}

/// Validates one inference step: the conclusion and premises must be
/// exactly a schema instance of the rule in the given calculus, with
/// contexts matched additively as sets.
pub fn check_inference(
    logic: &Logic,
    calculus: Calculus,
    conclusion: &Sequent,
    app: &RuleApp,
    premises: &[Sequent],
    hypotheses: &[Sequent],
) -> Result<(), InferenceViolation> {
    let rule = app.rule_id();
    if !calculus.admits(rule) {
        return Err(InferenceViolation::RuleNotInCalculus { rule, calculus });
    }
    match app {
        RuleApp::Ax { formula, label } => {
            want_premises(rule, 0, premises)?;
            check_label(logic, *label)?;
            let lf: LfSet = [formula.labelled(*label)].into_iter().collect();
            if conclusion.antecedent != lf || conclusion.succedent != lf {
                return Err(InferenceViolation::NotAnAxiom);
            }
            Ok(())
        }
        RuleApp::TableAx { conn, args, labels } => {
            want_premises(rule, 0, premises)?;
            let axiom = table_axiom(logic, conn, args, labels)
                .map_err(|e| InferenceViolation::BadParams(e.to_string()))?;
            if *conclusion != axiom {
                return Err(InferenceViolation::NotAnAxiom);
            }
            Ok(())
        }
        RuleApp::LShift { formula, label } => {
            want_premises(rule, 1, premises)?;
            check_label(logic, *label)?;
            let p = &premises[0];
            let lf = formula.labelled(*label);
            let fam = family_label(formula, LabelSet::singleton(*label).complement(logic.n()));
            shared(
                conclusion.antecedent.with(lf) == p.antecedent,
                "premise antecedent must be the conclusion antecedent plus the shifted formula",
            )?;
            shared(
                conclusion.succedent == p.succedent.union(&fam),
                "conclusion succedent must add the complementary labels",
            )?;
            Ok(())
        }
        RuleApp::RShift { formula, from, to } => {
            want_premises(rule, 1, premises)?;
            check_label(logic, *from)?;
            check_label(logic, *to)?;
            if from == to {
                return Err(InferenceViolation::SideCondition(
                    "r_shift labels must differ".into(),
                ));
            }
            let p = &premises[0];
            shared(
                conclusion.antecedent == p.antecedent.with(formula.labelled(*to)),
                "conclusion antecedent must add the shifted formula",
            )?;
            shared(
                p.succedent == conclusion.succedent.with(formula.labelled(*from)),
                "premise succedent must be the conclusion succedent plus the source formula",
            )?;
            Ok(())
        }
        RuleApp::LWeak { formula, label } => {
            want_premises(rule, 1, premises)?;
            check_label(logic, *label)?;
            let p = &premises[0];
            shared(
                conclusion.antecedent == p.antecedent.with(formula.labelled(*label)),
                "conclusion antecedent must add the weakened formula",
            )?;
            shared(
                conclusion.succedent == p.succedent,
                "succedent must be unchanged",
            )?;
            Ok(())
        }
        RuleApp::RWeak { formula, label } => {
            want_premises(rule, 1, premises)?;
            check_label(logic, *label)?;
            let p = &premises[0];
            shared(
                conclusion.succedent == p.succedent.with(formula.labelled(*label)),
                "conclusion succedent must add the weakened formula",
            )?;
            shared(
                conclusion.antecedent == p.antecedent,
                "antecedent must be unchanged",
            )?;
            Ok(())
        }
        RuleApp::Cut { formula, label } => {
            want_premises(rule, 2, premises)?;
            check_label(logic, *label)?;
            let lf = formula.labelled(*label);
            let (left, right) = (&premises[0], &premises[1]);
            shared(
                left.antecedent == conclusion.antecedent
                    && right.succedent == conclusion.succedent
                    && left.succedent == conclusion.succedent.with(lf.clone())
                    && right.antecedent == conclusion.antecedent.with(lf),
                "contexts not shared",
            )?;
            Ok(())
        }
        RuleApp::Res {
            formula,
            left_label,
            right_label,
            left_rest,
            right_rest,
        } => {
            want_premises(rule, 2, premises)?;
            check_label(logic, *left_label)?;
            check_label(logic, *right_label)?;
            if left_label == right_label {
                return Err(InferenceViolation::SideCondition(
                    "resolution labels must differ".into(),
                ));
            }
            let (left, right) = (&premises[0], &premises[1]);
            shared(
                left.antecedent == conclusion.antecedent
                    && right.antecedent == conclusion.antecedent,
                "antecedents not shared",
            )?;
            shared(
                conclusion.succedent == left_rest.union(right_rest),
                "conclusion succedent must be the union of the two rests",
            )?;
            shared(
                left.succedent == left_rest.with(formula.labelled(*left_label))
                    && right.succedent == right_rest.with(formula.labelled(*right_label)),
                "premise succedents must be rest plus resolved formula",
            )?;
            Ok(())
        }
        RuleApp::TableR { conn, args, labels } => {
            let c = lookup(logic, conn, args)
                .map_err(|e| InferenceViolation::BadParams(e.to_string()))?;
            if labels.len() != c.arity {
                return Err(InferenceViolation::BadParams(format!(
                    "{} labels for arity {}",
                    labels.len(),
                    c.arity
                )));
            }
            for &k in labels {
                check_label(logic, k)?;
            }
            want_premises(rule, c.arity, premises)?;
            let out = c.output(labels, logic.n());
            let (_, out_side) = output_side(conn, args, out);
            for p in premises {
                shared(
                    p.antecedent == conclusion.antecedent,
                    "antecedents not shared",
                )?;
            }
            // Smallest shared succedent consistent with all premises.
            let mut delta = conclusion.succedent.minus(&out_side);
            for (p, (arg, &k)) in premises.iter().zip(args.iter().zip(labels)) {
                delta = delta.union(&p.succedent.without(&arg.labelled(k)));
            }
            for (p, (arg, &k)) in premises.iter().zip(args.iter().zip(labels)) {
                shared(
                    p.succedent == delta.with(arg.labelled(k)),
                    "premise succedents not shared",
                )?;
            }
            shared(
                conclusion.succedent == delta.union(&out_side),
                "conclusion succedent must add the table outputs",
            )?;
            Ok(())
        }
        RuleApp::DualAx { conn, args, label } => {
            want_premises(rule, 0, premises)?;
            let instances = dual_axiom_instances(logic, conn, args, *label)
                .map_err(|e| InferenceViolation::BadParams(e.to_string()))?;
            if instances.iter().any(|s| s == conclusion) {
                Ok(())
            } else {
                Err(InferenceViolation::NotAnAxiom)
            }
        }
        RuleApp::TableRDd {
            conn,
            args,
            label_set,
        } => {
            let image = inverse_image_set(logic, conn, args, *label_set)
                .map_err(|e| InferenceViolation::BadParams(e.to_string()))?;
            if image.is_empty() {
                return Err(InferenceViolation::SideCondition(
                    "empty premise family: no table entry has exactly this output set".into(),
                ));
            }
            let lambdas = vee_product(image.sets())
                .map_err(|e| InferenceViolation::BadParams(e.to_string()))?;
            want_premises(rule, lambdas.len(), premises)?;
            let compound = Formula::apply(conn.clone(), args.to_vec());
            let out_side = family_label(&compound, *label_set);
            for p in premises {
                shared(
                    p.antecedent == conclusion.antecedent,
                    "antecedents not shared",
                )?;
            }
            let mut delta = conclusion.succedent.minus(&out_side);
            for (p, lambda) in premises.iter().zip(&lambdas) {
                delta = delta.union(&p.succedent.minus(lambda));
            }
            for (p, lambda) in premises.iter().zip(&lambdas) {
                shared(
                    p.succedent == delta.union(lambda),
                    "premise succedents not shared",
                )?;
            }
            shared(
                conclusion.succedent == delta.union(&out_side),
                "conclusion succedent must add the labelled compound family",
            )?;
            Ok(())
        }
        RuleApp::MultiShift { formula, label_set } => {
            if !label_set.is_subset(LabelSet::full(logic.n()))
                || *label_set == LabelSet::full(logic.n())
            {
                return Err(InferenceViolation::SideCondition(
                    "multi-shift set must be a proper subset of the labels".into(),
                ));
            }
            let ks: Vec<Label> = label_set.iter().collect();
            want_premises(rule, ks.len(), premises)?;
            let fam = family_label(formula, label_set.complement(logic.n()));
            let delta = match premises.first() {
                Some(p) => p.succedent.clone(),
                None => conclusion.succedent.minus(&fam),
            };
            for (p, &k) in premises.iter().zip(&ks) {
                shared(
                    p.antecedent == conclusion.antecedent.with(formula.labelled(k)),
                    "premise antecedent must be the conclusion antecedent plus the shifted formula",
                )?;
                shared(p.succedent == delta, "premise succedents not shared")?;
            }
            shared(
                conclusion.succedent == delta.union(&fam),
                "conclusion succedent must add the complementary labels",
            )?;
            Ok(())
        }
        RuleApp::TableL { conn, args, label } => {
            let c = lookup(logic, conn, args)
                .map_err(|e| InferenceViolation::BadParams(e.to_string()))?;
            check_label(logic, *label)?;
            let compound = Formula::apply(conn.clone(), args.to_vec());
            let principal = compound.labelled(*label);
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
            want_premises(rule, thetas.len(), premises)?;
            for p in premises {
                shared(
                    p.succedent == conclusion.succedent,
                    "succedents not shared",
                )?;
            }
            let mut gamma = conclusion.antecedent.without(&principal);
            for (p, theta) in premises.iter().zip(&thetas) {
                gamma = gamma.union(&p.antecedent.minus(theta));
            }
            for (p, theta) in premises.iter().zip(&thetas) {
                shared(
                    p.antecedent == gamma.union(theta),
                    "premise antecedents not shared",
                )?;
            }
            shared(
                conclusion.antecedent == gamma.with(principal),
                "conclusion antecedent must add the principal formula",
            )?;
            Ok(())
        }
        RuleApp::TableLDd {
            conn,
            args,
            label,
            lambda,
        } => {
            check_label(logic, *label)?;
            let lambdas = dual_selections(logic, conn, args, *label)
                .map_err(|e| InferenceViolation::BadParams(e.to_string()))?;
            if !lambdas.contains(lambda) {
                return Err(InferenceViolation::BadParams(
                    "lambda is not a selection from the inverse image".into(),
                ));
            }
            let members: Vec<&LabelledFormula> = lambda.iter().collect();
            want_premises(rule, members.len(), premises)?;
            let compound = Formula::apply(conn.clone(), args.to_vec());
            let principal = compound.labelled(*label);
            for p in premises {
                shared(
                    p.succedent == conclusion.succedent,
                    "succedents not shared",
                )?;
            }
            let mut gamma = conclusion.antecedent.without(&principal);
            for (p, lf) in premises.iter().zip(&members) {
                gamma = gamma.union(&p.antecedent.without(lf));
            }
            for (p, lf) in premises.iter().zip(&members) {
                shared(
                    p.antecedent == gamma.with((*lf).clone()),
                    "premise antecedents not shared",
                )?;
            }
            shared(
                conclusion.antecedent == gamma.with(principal),
                "conclusion antecedent must add the principal formula",
            )?;
            Ok(())
        }
        RuleApp::Hyp => {
            want_premises(rule, 0, premises)?;
            if hypotheses.iter().any(|h| h == conclusion) {
                Ok(())
            } else {
                Err(InferenceViolation::HypMismatch)
            }
        }
    }
}

/// One schema of a calculus, rendered for listings. Table-derived rules
/// are expanded per connective entry.
#[derive(Clone, Debug)]
pub struct RuleSchema {
    pub rule: RuleId,
    /// Connective the instance belongs to, for table-derived families.
    pub conn: Option<String>,
    pub premises: Vec<String>,
    pub conclusion: String,
    pub side_condition: Option<String>,
}

impl RuleSchema {
    fn structural(rule: RuleId, premises: &[&str], conclusion: &str, side: Option<&str>) -> Self {
        RuleSchema {
            rule,
            conn: None,
            premises: premises.iter().map(|s| s.to_string()).collect(),
            conclusion: conclusion.to_string(),
            side_condition: side.map(|s| s.to_string()),
        }
    }
}

fn meta_args(arity: usize) -> Vec<Formula> {
    (1..=arity).map(|i| Formula::atom(format!("phi{i}"))).collect()
}

fn tuple_string(tuple: &[Label]) -> String {
    let parts: Vec<String> = tuple.iter().map(|k| k.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Every axiom and rule schema of the calculus over the given logic,
/// table-derived families expanded per connective entry.
pub fn rule_schemas(calculus: Calculus, logic: &Logic) -> Vec<RuleSchema> {
    let mut out = Vec::new();
    for &rule in calculus.members() {
        match rule {
            RuleId::Ax => out.push(RuleSchema::structural(
                rule,
                &[],
                "psi:k |- psi:k",
                Some("k = 1..n"),
            )),
            RuleId::LShift => out.push(RuleSchema::structural(
                rule,
                &["G, phi:k |- D"],
                "G |- D, {phi} x co{k}",
                Some("k = 1..n"),
            )),
            RuleId::RShift => out.push(RuleSchema::structural(
                rule,
                &["G |- D, phi:k'"],
                "G, phi:k'' |- D",
                Some("k' != k''"),
            )),
            RuleId::LWeak => out.push(RuleSchema::structural(
                rule,
                &["G |- D"],
                "G, phi:k |- D",
                Some("k = 1..n"),
            )),
            RuleId::RWeak => out.push(RuleSchema::structural(
                rule,
                &["G |- D"],
                "G |- D, phi:k",
                Some("k = 1..n"),
            )),
            RuleId::Cut => out.push(RuleSchema::structural(
                rule,
                &["G |- D, phi:k", "G, phi:k |- D"],
                "G |- D",
                Some("k = 1..n"),
            )),
            RuleId::Res => out.push(RuleSchema::structural(
                rule,
                &["G |- D', phi:k'", "G |- D'', phi:k''"],
                "G |- D', D''",
                Some("k' != k''"),
            )),
            RuleId::MultiShift => out.push(RuleSchema::structural(
                rule,
                &["G, phi:k |- D   for k in K"],
                "G |- D, {phi} x coK",
                Some("K a proper subset of {1..n}"),
            )),
            RuleId::TableAx => {
                for c in logic.connectives() {
                    let args = meta_args(c.arity);
                    for (tuple, _) in c.rows(logic.n()) {
                        let axiom = table_axiom(logic, &c.name, &args, &tuple).unwrap();
                        out.push(RuleSchema {
                            rule,
                            conn: Some(format!("{}{}", c.name, tuple_string(&tuple))),
                            premises: vec![],
                            conclusion: axiom.to_string(),
                            side_condition: None,
                        });
                    }
                }
            }
            RuleId::TableR => {
                for c in logic.connectives() {
                    let args = meta_args(c.arity);
                    for (tuple, out_set) in c.rows(logic.n()) {
                        let premises: Vec<String> = args
                            .iter()
                            .zip(&tuple)
                            .map(|(a, k)| format!("G |- D, {a}:{k}"))
                            .collect();
                        let (_, side) = output_side(&c.name, &args, out_set);
                        out.push(RuleSchema {
                            rule,
                            conn: Some(format!("{}{}", c.name, tuple_string(&tuple))),
                            premises,
                            conclusion: format!("G |- D, {side}"),
                            side_condition: None,
                        });
                    }
                }
            }
            RuleId::DualAx => {
                for c in logic.connectives() {
                    let args = meta_args(c.arity);
                    for k in logic.labels() {
                        for inst in dual_axiom_instances(logic, &c.name, &args, k).unwrap() {
                            out.push(RuleSchema {
                                rule,
                                conn: Some(format!("{} k={k}", c.name)),
                                premises: vec![],
                                conclusion: inst.to_string(),
                                side_condition: None,
                            });
                        }
                    }
                }
            }
            RuleId::TableRDd => {
                for c in logic.connectives() {
                    let args = meta_args(c.arity);
                    let outputs: std::collections::BTreeSet<LabelSet> =
                        c.rows(logic.n()).map(|(_, out)| out).collect();
                    for ks in outputs {
                        let image = inverse_image_set(logic, &c.name, &args, ks).unwrap();
                        let lambdas = vee_product(image.sets()).unwrap();
                        let premises: Vec<String> = lambdas
                            .iter()
                            .map(|l| format!("G |- D, {l}"))
                            .collect();
                        let compound = Formula::apply(c.name.clone(), args.clone());
                        out.push(RuleSchema {
                            rule,
                            conn: Some(format!("{} K={ks}", c.name)),
                            premises,
                            conclusion: format!(
                                "G |- D, {}",
                                family_label(&compound, ks)
                            ),
                            side_condition: None,
                        });
                    }
                }
            }
            RuleId::TableL => {
                for c in logic.connectives() {
                    let args = meta_args(c.arity);
                    let compound = Formula::apply(c.name.clone(), args.clone());
                    for k in logic.labels() {
                        let premises: Vec<String> = c
                            .rows(logic.n())
                            .filter(|&(_, out)| out.contains(k))
                            .map(|(tuple, _)| {
                                let theta: LfSet = args
                                    .iter()
                                    .zip(&tuple)
                                    .map(|(f, &j)| f.labelled(j))
                                    .collect();
                                format!("G, {theta} |- D")
                            })
                            .collect();
                        out.push(RuleSchema {
                            rule,
                            conn: Some(format!("{} k={k}", c.name)),
                            premises,
                            conclusion: format!("G, {compound}:{k} |- D"),
                            side_condition: None,
                        });
                    }
                }
            }
            RuleId::TableLDd => {
                for c in logic.connectives() {
                    let args = meta_args(c.arity);
                    let compound = Formula::apply(c.name.clone(), args.clone());
                    for k in logic.labels() {
                        for lambda in dual_selections(logic, &c.name, &args, k).unwrap() {
                            let premises: Vec<String> = lambda
                                .iter()
                                .map(|lf| format!("G, {lf} |- D"))
                                .collect();
                            out.push(RuleSchema {
                                rule,
                                conn: Some(format!("{} k={k}", c.name)),
                                premises,
                                conclusion: format!("G, {compound}:{k} |- D"),
                                side_condition: None,
                            });
                        }
                    }
                }
            }
            RuleId::Hyp => unreachable!("hyp is not a calculus member"),
        }
    }
    out
}

/// Plain-text listing: premises above a rule line, name at the right,
/// followed by a machine-readable section using the proof-format ids.
pub fn render_schemas(calculus: Calculus, logic: &Logic) -> String {
    let schemas = rule_schemas(calculus, logic);
    let mut out = String::new();
    out.push_str(&format!("calculus {calculus} over {}\n\n", logic.name()));
    for s in &schemas {
        let width = s
            .premises
            .iter()
            .map(|p| p.len())
            .chain([s.conclusion.len()])
            .max()
            .unwrap_or(0);
        for p in &s.premises {
            out.push_str(&format!("  {p}\n"));
        }
        let name = match &s.conn {
            Some(c) => format!("{} [{c}]", s.rule),
            None => s.rule.to_string(),
        };
        out.push_str(&format!("  {:-<width$}  {name}\n", "", width = width));
        out.push_str(&format!("  {}\n", s.conclusion));
        if let Some(side) = &s.side_condition {
            out.push_str(&format!("  where {side}\n"));
        }
        out.push('\n');
    }
    out.push_str("# machine\n");
    for s in &schemas {
        let conn = s.conn.as_deref().unwrap_or("-");
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            s.rule,
            conn,
            s.premises.join(" ; "),
            s.conclusion
        ));
    }
    out
}
