//! Legal valuations, satisfaction and semantic entailment.
//!
//! A valuation on a subformula-closed domain is legal when the value of
//! every compound formula lies in its table's output for the argument
//! values. Entailment is decided by enumerating all legal valuations on
//! the joint closure of the hypotheses and the goal; the first valuation
//! (in enumeration order) that satisfies every hypothesis and falsifies
//! the goal is returned as a countermodel.
//!
//! Enumeration order is lexicographic in closure order: the value of the
//! first closure formula varies slowest. Since atoms precede compounds,
//! the atom assignment forms the most significant block, which is also the
//! split used for parallel search; the verdict does not depend on the
//! split.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::formula::{subformula_closure, Closure, Formula, Label};
use crate::logic::Logic;
use crate::sequent::Sequent;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("assignment has {got} values for a domain of {want} formulas")]
    WrongArity { want: usize, got: usize },
    #[error("formula {0} outside the valuation domain")]
    OutsideDomain(Formula),
}

/// A total assignment of value indices to a subformula-closed formula set.
#[derive(Clone, PartialEq, Eq)]
pub struct Valuation {
    closure: Arc<Closure>,
    values: Vec<Label>,
}

impl Valuation {
    pub fn new(closure: Arc<Closure>, values: Vec<Label>) -> Result<Self, SemanticsError> {
        if values.len() != closure.len() {
            return Err(SemanticsError::WrongArity {
                want: closure.len(),
                got: values.len(),
            });
        }
        Ok(Valuation { closure, values })
    }

    pub fn closure(&self) -> &Closure {
        &self.closure
    }

    pub fn values(&self) -> &[Label] {
        &self.values
    }

    pub fn value(&self, f: &Formula) -> Result<Label, SemanticsError> {
        self.closure
            .position(f)
            .map(|i| self.values[i])
            .ok_or_else(|| SemanticsError::OutsideDomain(f.clone()))
    }

    /// The legality condition at every compound formula of the domain.
    pub fn is_legal(&self, logic: &Logic) -> bool {
        self.closure.formulas().iter().enumerate().all(|(i, f)| {
            match f.as_apply() {
                None => true,
                Some((conn, args)) => {
                    let conn = match logic.connective(conn) {
                        Some(c) => c,
                        None => return false,
                    };
                    let tuple: Vec<Label> = args
                        .iter()
                        .map(|a| self.values[self.closure.position(a).unwrap()])
                        .collect();
                    conn.output(&tuple, logic.n()).contains(self.values[i])
                }
            }
        })
    }

    /// Definition of satisfaction: if every antecedent member holds, some
    /// succedent member holds. Errors if the sequent mentions a formula
    /// outside the domain.
    pub fn satisfies(&self, sequent: &Sequent) -> Result<bool, SemanticsError> {
        for lf in &sequent.antecedent {
            if self.value(&lf.formula)? != lf.label {
                return Ok(true);
            }
        }
        for lf in &sequent.succedent {
            if self.value(&lf.formula)? == lf.label {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, formula) in self.closure.formulas().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} = {}", formula, self.values[i])?;
        }
        Ok(())
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, formula) in self.closure.formulas().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} -> {}", formula, self.values[i])?;
        }
        f.write_str("}")
    }
}

/// Verdict of [`entails`]. A countermodel satisfies every hypothesis and
/// falsifies the goal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntailmentVerdict {
    Entailed,
    Refuted(Valuation),
}

impl EntailmentVerdict {
    pub fn is_entailed(&self) -> bool {
        matches!(self, EntailmentVerdict::Entailed)
    }
}

/// Depth-first enumeration of legal assignments on `closure.formulas()
/// [from..]`, values already fixed below `from`. Returns the first value
/// `Some(r)` produced by the visitor.
fn dfs<R>(
    logic: &Logic,
    closure: &Closure,
    values: &mut Vec<Label>,
    from: usize,
    visit: &mut impl FnMut(&[Label]) -> Option<R>,
) -> Option<R> {
    if from == closure.len() {
        return visit(values);
    }
    let f = &closure.formulas()[from];
    match f.as_apply() {
        None => {
            for k in logic.labels() {
                values.push(k);
                if let Some(r) = dfs(logic, closure, values, from + 1, visit) {
                    return Some(r);
                }
                values.pop();
            }
            None
        }
        Some((conn, args)) => {
            let conn = logic.connective(conn).expect("connective not in logic");
            let tuple: Vec<Label> = args
                .iter()
                .map(|a| values[closure.position(a).expect("domain not closed")])
                .collect();
            for k in conn.output(&tuple, logic.n()).iter() {
                values.push(k);
                if let Some(r) = dfs(logic, closure, values, from + 1, visit) {
                    return Some(r);
                }
                values.pop();
            }
            None
        }
    }
}

/// All legal valuations on the closure, in enumeration order.
pub fn legal_valuations(logic: &Logic, closure: &Arc<Closure>) -> Vec<Valuation> {
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(closure.len());
    dfs::<()>(logic, closure, &mut values, 0, &mut |vals| {
        out.push(Valuation {
            closure: closure.clone(),
            values: vals.to_vec(),
        });
        None
    });
    out
}

/// First legal valuation (in enumeration order) accepted by `pred`.
pub fn find_legal<P>(logic: &Logic, closure: &Arc<Closure>, pred: P) -> Option<Valuation>
where
    P: Fn(&Valuation) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    {
        find_legal_par(logic, closure, &pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        find_legal_seq(logic, closure, &pred)
    }
}

/// Sequential variant of [`find_legal`]; same order, same result.
pub fn find_legal_seq<P>(logic: &Logic, closure: &Arc<Closure>, pred: P) -> Option<Valuation>
where
    P: Fn(&Valuation) -> bool,
{
    let mut values = Vec::with_capacity(closure.len());
    dfs(logic, closure, &mut values, 0, &mut |vals| {
        let v = Valuation {
            closure: closure.clone(),
            values: vals.to_vec(),
        };
        pred(&v).then_some(v)
    })
}

#[cfg(feature = "parallel")]
fn find_legal_par<P>(logic: &Logic, closure: &Arc<Closure>, pred: &P) -> Option<Valuation>
where
    P: Fn(&Valuation) -> bool + Sync,
{
    use rayon::prelude::*;

    let n = logic.n() as u128;
    // Split on a prefix of the atom block: blocks are contiguous in
    // enumeration order, so find_map_first gives the global first match.
    let atoms = closure.atom_count();
    let mut prefix = 0usize;
    let mut blocks: u128 = 1;
    let target = 8 * rayon::current_num_threads().max(1) as u128;
    while prefix < atoms && blocks < target {
        blocks *= n;
        prefix += 1;
    }
    if blocks <= 1 {
        return find_legal_seq(logic, closure, pred);
    }
    (0..blocks as u64)
        .into_par_iter()
        .find_map_first(|block| {
            // Decode the block index into the first `prefix` atom values,
            // most significant first.
            let mut values = Vec::with_capacity(closure.len());
            let mut rest = block;
            for i in 0..prefix {
                let place = (n as u64).pow((prefix - 1 - i) as u32);
                values.push((rest / place) as Label + 1);
                rest %= place;
            }
            dfs(logic, closure, &mut values, prefix, &mut |vals| {
                let v = Valuation {
                    closure: closure.clone(),
                    values: vals.to_vec(),
                };
                pred(&v).then_some(v)
            })
        })
}

/// Joint subformula closure of a goal and hypotheses.
pub fn joint_closure(hypotheses: &[Sequent], goal: &Sequent) -> Arc<Closure> {
    let formulas: Vec<&Formula> = hypotheses
        .iter()
        .flat_map(|s| s.formulas())
        .chain(goal.formulas())
        .collect();
    Arc::new(subformula_closure(formulas))
}

/// Decides whether every legal valuation satisfying all hypotheses
/// satisfies the goal, over the joint closure. Uses the parallel
/// enumeration when the `parallel` feature is on.
pub fn entails(logic: &Logic, hypotheses: &[Sequent], goal: &Sequent) -> EntailmentVerdict {
    let closure = joint_closure(hypotheses, goal);
    match find_legal(logic, &closure, |v| refutes(v, hypotheses, goal)) {
        Some(v) => EntailmentVerdict::Refuted(v),
        None => EntailmentVerdict::Entailed,
    }
}

/// Sequential [`entails`]; the verdict (including the countermodel) is
/// identical regardless of how the search is split.
pub fn entails_seq(logic: &Logic, hypotheses: &[Sequent], goal: &Sequent) -> EntailmentVerdict {
    let closure = joint_closure(hypotheses, goal);
    match find_legal_seq(logic, &closure, |v| refutes(v, hypotheses, goal)) {
        Some(v) => EntailmentVerdict::Refuted(v),
        None => EntailmentVerdict::Entailed,
    }
}

fn refutes(v: &Valuation, hypotheses: &[Sequent], goal: &Sequent) -> bool {
    hypotheses.iter().all(|h| v.satisfies(h).unwrap()) && !v.satisfies(goal).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{labelled_universe, Formula};
    use crate::logic::fixtures::{circ2, classical2};
    use crate::syntax::{parse_formula, parse_sequent};

    fn vals(logic: &Logic, roots: &[Formula]) -> Vec<Vec<Label>> {
        let closure = Arc::new(subformula_closure(roots));
        legal_valuations(logic, &closure)
            .into_iter()
            .map(|v| v.values().to_vec())
            .collect()
    }

    #[test]
    fn is_legal_table_lookup() {
        let logic = circ2();
        let circ_p = parse_formula("circ(p)", &logic).unwrap();
        let closure = Arc::new(subformula_closure(&[circ_p]));
        let legal = |values: Vec<Label>| {
            Valuation::new(closure.clone(), values).unwrap().is_legal(&logic)
        };
        assert!(legal(vec![1, 2])); // 2 in circ(1) = {1,2}
        assert!(!legal(vec![2, 1])); // 1 not in circ(2) = {2}
        assert!(legal(vec![2, 2]));
    }

    #[test]
    fn legal_valuations_of_circ_closure() {
        // Oracle: filter the 4 raw assignments by the legality condition.
        let logic = circ2();
        let circ_p = parse_formula("circ(p)", &logic).unwrap();
        let closure = Arc::new(subformula_closure(&[circ_p]));
        let mut expected = Vec::new();
        for p in 1..=2 {
            for c in 1..=2 {
                let v = Valuation::new(closure.clone(), vec![p, c]).unwrap();
                if v.is_legal(&logic) {
                    expected.push(vec![p, c]);
                }
            }
        }
        assert_eq!(expected, vec![vec![1, 1], vec![1, 2], vec![2, 2]]);
        assert_eq!(vals(&logic, closure.formulas()), expected);
    }

    #[test]
    fn atoms_are_unconstrained() {
        let logic = circ2();
        assert_eq!(vals(&logic, &[Formula::atom("p")]).len(), 2);
    }

    #[test]
    fn deterministic_connective_forces_value() {
        // or is deterministic, so only the 4 atom assignments survive.
        let logic = circ2();
        let f = parse_formula("or(p, q)", &logic).unwrap();
        assert_eq!(vals(&logic, &[f]).len(), 4);
    }

    #[test]
    fn satisfies_definition() {
        let logic = circ2();
        let circ_p = parse_formula("circ(p)", &logic).unwrap();
        let closure = Arc::new(subformula_closure(&[circ_p]));
        let v = Valuation::new(closure, vec![2, 2]).unwrap();

        let vacuous = parse_sequent("p:1 |- circ(p):1", &logic).unwrap();
        assert!(v.satisfies(&vacuous).unwrap());

        let falsified = parse_sequent("p:2 |- circ(p):1", &logic).unwrap();
        assert!(!v.satisfies(&falsified).unwrap());

        let all_labels = parse_sequent("|- p:1, p:2", &logic).unwrap();
        assert!(v.satisfies(&all_labels).unwrap());
    }

    #[test]
    fn satisfies_outside_domain_errors() {
        let logic = circ2();
        let closure = Arc::new(subformula_closure(&[Formula::atom("p")]));
        let v = Valuation::new(closure, vec![1]).unwrap();
        let s = parse_sequent("q:1 |-", &logic).unwrap();
        assert!(matches!(
            v.satisfies(&s),
            Err(SemanticsError::OutsideDomain(_))
        ));
    }

    #[test]
    fn entails_examples() {
        let logic = circ2();
        let goal = parse_sequent("|- p:1, p:2", &logic).unwrap();
        assert_eq!(entails(&logic, &[], &goal), EntailmentVerdict::Entailed);

        let goal = parse_sequent("circ(p):1 |- p:1", &logic).unwrap();
        assert_eq!(entails(&logic, &[], &goal), EntailmentVerdict::Entailed);

        let goal = parse_sequent("p:2 |- circ(p):1", &logic).unwrap();
        match entails(&logic, &[], &goal) {
            EntailmentVerdict::Refuted(v) => {
                assert_eq!(v.values(), &[2, 2]);
                assert_eq!(v.to_string(), "p = 2\ncirc(p) = 2");
            }
            EntailmentVerdict::Entailed => panic!("expected a countermodel"),
        }
    }

    #[test]
    fn countermodel_contract() {
        let logic = circ2();
        let hyp = parse_sequent("|- q:1, q:2", &logic).unwrap();
        let goal = parse_sequent("p:2 |- circ(p):1", &logic).unwrap();
        match entails(&logic, std::slice::from_ref(&hyp), &goal) {
            EntailmentVerdict::Refuted(v) => {
                assert!(v.is_legal(&logic));
                assert!(v.satisfies(&hyp).unwrap());
                assert!(!v.satisfies(&goal).unwrap());
            }
            EntailmentVerdict::Entailed => panic!("expected a countermodel"),
        }
    }

    #[test]
    fn entails_monotone_in_hypotheses() {
        let logic = circ2();
        let goal = parse_sequent("circ(p):1 |- p:1", &logic).unwrap();
        let hyp = parse_sequent("q:2 |-", &logic).unwrap();
        assert!(entails(&logic, &[], &goal).is_entailed());
        assert!(entails(&logic, &[hyp], &goal).is_entailed());
    }

    #[test]
    fn extension_property() {
        // A legal valuation on a closed subset extends to a legal
        // valuation on a closed superset by choosing any table output
        // bottom-up.
        let logic = circ2();
        let small = Arc::new(subformula_closure(&[Formula::atom("p")]));
        let big = Arc::new(subformula_closure(&[
            parse_formula("circ(or(p, q))", &logic).unwrap()
        ]));
        for v in legal_valuations(&logic, &small) {
            let mut values = Vec::new();
            for f in big.formulas() {
                let k = match small.position(f) {
                    Some(i) => v.values()[i],
                    None => match f.as_apply() {
                        None => 1,
                        Some((conn, args)) => {
                            let tuple: Vec<Label> = args
                                .iter()
                                .map(|a| values[big.position(a).unwrap()])
                                .collect();
                            logic
                                .connective(conn)
                                .unwrap()
                                .output(&tuple, logic.n())
                                .iter()
                                .next()
                                .unwrap()
                        }
                    },
                };
                values.push(k);
            }
            assert!(Valuation::new(big.clone(), values).unwrap().is_legal(&logic));
        }
    }

    #[test]
    fn restriction_property() {
        let logic = circ2();
        let big = Arc::new(subformula_closure(&[
            parse_formula("circ(circ(p))", &logic).unwrap()
        ]));
        let small = Arc::new(subformula_closure(&[
            parse_formula("circ(p)", &logic).unwrap()
        ]));
        for v in legal_valuations(&logic, &big) {
            let values: Vec<Label> = small
                .formulas()
                .iter()
                .map(|f| v.value(f).unwrap())
                .collect();
            assert!(Valuation::new(small.clone(), values)
                .unwrap()
                .is_legal(&logic));
        }
    }

    #[test]
    fn deterministic_degeneration() {
        // All-singleton tables: exactly n^(number of atoms) valuations.
        let logic = classical2();
        let f = parse_formula("or(p, neg(q))", &logic).unwrap();
        let closure = Arc::new(subformula_closure(&[f]));
        assert_eq!(legal_valuations(&logic, &closure).len(), 4);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let logic = circ2();
        let goals = [
            "|- p:1, p:2",
            "p:2 |- circ(p):1",
            "circ(p):1 |- p:1",
            "or(p, q):1 |- p:1, q:1",
            "|- circ(or(p, q)):1",
        ];
        for text in goals {
            let goal = parse_sequent(text, &logic).unwrap();
            assert_eq!(
                entails(&logic, &[], &goal),
                entails_seq(&logic, &[], &goal),
                "verdict depends on split for {text}"
            );
        }
    }

    #[test]
    fn universe_size_matches() {
        let logic = circ2();
        let f = parse_formula("circ(p)", &logic).unwrap();
        let closure = subformula_closure(&[f]);
        assert_eq!(labelled_universe(&closure, logic.n()).len(), 4);
    }
}
