//! Randomized cross-validation: random logics, sequents and proofs, a
//! differential harness comparing the prover against the semantic
//! oracle in all six calculi, and reproducer shrinking.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculi::{Calculus, RuleApp, RuleId};
use crate::formula::{Formula, Label};
use crate::logic::{validate_logic, ConnectiveDef, LabelSet, Logic, LogicDef};
use crate::proof::{
    check_proof, eliminate_cuts, prove, translate_a_to_r, translate_r_to_a, ProofTree,
    ProveOutcome, SearchBudget,
};
use crate::semantics::{entails, EntailmentVerdict};
use crate::sequent::{LfSet, Sequent};
use crate::syntax::render_logic;

/// Bounds for one fuzzing run; runs are reproducible from the seed.
#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub seed: u64,
    pub instances: usize,
    pub max_values: Label,
    pub max_connectives: usize,
    pub max_arity: usize,
    pub max_formula_depth: usize,
    pub max_hypotheses: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            instances: 100,
            max_values: 3,
            max_connectives: 2,
            max_arity: 2,
            max_formula_depth: 2,
            max_hypotheses: 2,
        }
    }
}

/// One generated problem.
#[derive(Clone, Debug)]
pub struct Instance {
    pub logic: Logic,
    pub hypotheses: Vec<Sequent>,
    pub goal: Sequent,
}

#[derive(Debug)]
pub struct FuzzReport {
    pub passed: usize,
    pub exhausted: usize,
    pub failure: Option<FuzzFailure>,
}

#[derive(Debug)]
pub struct FuzzFailure {
    pub description: String,
    pub reproducer: String,
}

/// A random logic: connectives `c1..`, total tables with random
/// non-empty output sets. Arity is at least 1: the antecedent
/// introduction rules of the dual calculi have no instances for
/// zero-ary connectives.
pub fn random_logic(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> Logic {
    let n = rng.gen_range(2..=cfg.max_values.max(2));
    let count = rng.gen_range(1..=cfg.max_connectives.max(1));
    let connectives = (1..=count)
        .map(|i| {
            let arity = rng.gen_range(1..=cfg.max_arity.max(1));
            let total = (n as usize).pow(arity as u32);
            let entries = (0..total)
                .map(|r| {
                    let tuple = crate::logic::rank_tuple(r, arity, n);
                    let mut out = LabelSet::EMPTY;
                    for k in 1..=n {
                        if rng.gen_bool(0.5) {
                            out.insert(k);
                        }
                    }
                    if out.is_empty() {
                        out.insert(rng.gen_range(1..=n));
                    }
                    (tuple, out)
                })
                .collect();
            (format!("c{i}"), ConnectiveDef { arity, entries })
        })
        .collect();
    let def = LogicDef {
        name: "fuzz".into(),
        n,
        connectives,
    };
    validate_logic(&def).expect("generated logic is valid by construction")
}

pub fn random_formula(
    rng: &mut ChaCha8Rng,
    logic: &Logic,
    atoms: &[&str],
    depth: usize,
) -> Formula {
    if depth == 0 || logic.connectives().is_empty() || rng.gen_bool(0.4) {
        return Formula::atom(*atoms.choose(rng).unwrap());
    }
    let conn = &logic.connectives()[rng.gen_range(0..logic.connectives().len())];
    let args = (0..conn.arity)
        .map(|_| random_formula(rng, logic, atoms, depth - 1))
        .collect();
    Formula::apply(conn.name.clone(), args)
}

fn random_side(
    rng: &mut ChaCha8Rng,
    logic: &Logic,
    atoms: &[&str],
    depth: usize,
    max_len: usize,
) -> LfSet {
    (0..rng.gen_range(0..=max_len))
        .map(|_| {
            random_formula(rng, logic, atoms, depth).labelled(rng.gen_range(1..=logic.n()))
        })
        .collect()
}

pub fn random_sequent(
    rng: &mut ChaCha8Rng,
    logic: &Logic,
    atoms: &[&str],
    depth: usize,
) -> Sequent {
    Sequent::new(
        random_side(rng, logic, atoms, depth, 3),
        random_side(rng, logic, atoms, depth, 3),
    )
}

pub fn random_instance(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> Instance {
    let logic = random_logic(rng, cfg);
    let atoms = ["p", "q"];
    let hypotheses = (0..rng.gen_range(0..=cfg.max_hypotheses))
        .map(|_| {
            // hypotheses range over atoms only
            Sequent::new(
                random_side(rng, &logic, &atoms, 0, 2),
                random_side(rng, &logic, &atoms, 0, 2),
            )
        })
        .collect();
    let goal = random_sequent(rng, &logic, &atoms, cfg.max_formula_depth);
    Instance {
        logic,
        hypotheses,
        goal,
    }
}

/// A checker-valid proof grown by random rule applications, optionally
/// salted with cuts and resolutions. Grown bottom-up from axiom leaves,
/// so validity holds by construction.
pub fn random_proof(
    rng: &mut ChaCha8Rng,
    logic: &Logic,
    calculus: Calculus,
    max_nodes: usize,
    with_cut_res: bool,
) -> ProofTree {
    let atoms = ["p", "q"];
    let pool_formulas: Vec<Formula> = (0..6)
        .map(|_| random_formula(rng, logic, &atoms, 2))
        .collect();
    let mut current = builder_seed(rng, logic, calculus, &pool_formulas);
    for _ in 0..4 * max_nodes {
        if current.node_count() >= max_nodes {
            break;
        }
        current = grow_step(rng, logic, calculus, current, &pool_formulas, with_cut_res);
    }
    current
}

fn builder_seed(
    rng: &mut ChaCha8Rng,
    logic: &Logic,
    calculus: Calculus,
    pool: &[Formula],
) -> ProofTree {
    if calculus == Calculus::A && rng.gen_bool(0.5) {
        // a table axiom leaf
        let conn = &logic.connectives()[rng.gen_range(0..logic.connectives().len())];
        let args: Vec<Formula> = (0..conn.arity)
            .map(|_| pool[rng.gen_range(0..pool.len())].clone())
            .collect();
        let labels: Vec<Label> = (0..conn.arity)
            .map(|_| rng.gen_range(1..=logic.n()))
            .collect();
        let conclusion = crate::calculi::table_axiom(logic, &conn.name, &args, &labels).unwrap();
        return ProofTree::leaf(
            conclusion,
            RuleApp::TableAx {
                conn: conn.name.clone(),
                args,
                labels,
            },
        );
    }
    let lf = pool[rng.gen_range(0..pool.len())].labelled(rng.gen_range(1..=logic.n()));
    let side: LfSet = [lf.clone()].into_iter().collect();
    ProofTree::leaf(
        Sequent::new(side.clone(), side),
        RuleApp::Ax {
            formula: lf.formula,
            label: lf.label,
        },
    )
}

fn grow_step(
    rng: &mut ChaCha8Rng,
    logic: &Logic,
    calculus: Calculus,
    d: ProofTree,
    pool: &[Formula],
    with_cut_res: bool,
) -> ProofTree {
    use crate::proof::build::{
        l_shift_node, multi_shift_node, r_shift_node, res_node, table_l_dd_node, table_l_node,
        table_r_dd_node, table_r_node, weaken_to,
    };

    let n = logic.n();
    let gamma = d.conclusion.antecedent.clone();
    let delta = d.conclusion.succedent.clone();
    let pick_lf = |rng: &mut ChaCha8Rng| {
        pool[rng.gen_range(0..pool.len())].labelled(rng.gen_range(1..=n))
    };
    let choice = rng.gen_range(0u32..12);
    match choice {
        // weakenings
        0 => {
            let lf = pick_lf(rng);
            weaken_to(
                d,
                &Sequent::new(gamma.with(lf), delta),
            )
        }
        1 => {
            let lf = pick_lf(rng);
            weaken_to(d, &Sequent::new(gamma, delta.with(lf)))
        }
        // shifts
        2 => {
            let candidates: Vec<_> = gamma.iter().cloned().collect();
            match candidates.choose(rng) {
                Some(lf) => l_shift_node(logic, d, &lf.formula, lf.label),
                None => d,
            }
        }
        3 => {
            let candidates: Vec<_> = delta.iter().cloned().collect();
            match candidates.choose(rng) {
                Some(lf) if n >= 2 => {
                    let mut to = rng.gen_range(1..=n);
                    if to == lf.label {
                        to = if lf.label == n { 1 } else { lf.label + 1 };
                    }
                    r_shift_node(d, &lf.formula, lf.label, to)
                }
                _ => d,
            }
        }
        // weakening-introduced cut
        4 if with_cut_res => {
            let lf = pick_lf(rng);
            if gamma.contains(&lf) || delta.contains(&lf) {
                return d;
            }
            let left = weaken_to(d.clone(), &Sequent::new(gamma.clone(), delta.with(lf.clone())));
            let right = weaken_to(d, &Sequent::new(gamma.clone(), delta.clone()));
            let right = weaken_to(right, &Sequent::new(gamma.with(lf.clone()), delta.clone()));
            ProofTree {
                conclusion: Sequent::new(gamma, delta),
                rule: RuleApp::Cut {
                    formula: lf.formula,
                    label: lf.label,
                },
                premises: vec![left, right],
            }
        }
        // weakening-introduced resolution
        5 if with_cut_res => {
            let phi = pool[rng.gen_range(0..pool.len())].clone();
            let k1 = rng.gen_range(1..=n);
            let mut k2 = rng.gen_range(1..=n);
            if k2 == k1 {
                k2 = if k1 == n { 1 } else { k1 + 1 };
            }
            if delta.contains(&phi.labelled(k1)) || delta.contains(&phi.labelled(k2)) {
                return d;
            }
            let left = weaken_to(
                d.clone(),
                &Sequent::new(gamma.clone(), delta.with(phi.labelled(k1))),
            );
            let right = weaken_to(d, &Sequent::new(gamma.clone(), delta.with(phi.labelled(k2))));
            res_node(left, right, &phi, k1, k2, delta.clone(), delta)
        }
        // crossed-shift resolution: assumes (phi,a) and (phi,b), shifts
        // both and resolves across the two families
        6 if with_cut_res && n >= 2 => {
            let phi = pool[rng.gen_range(0..pool.len())].clone();
            let a = rng.gen_range(1..=n);
            let b = if a == n { 1 } else { a + 1 };
            if gamma.contains(&phi.labelled(a)) || gamma.contains(&phi.labelled(b)) {
                return d;
            }
            let d1 = weaken_to(
                d.clone(),
                &Sequent::new(gamma.with(phi.labelled(a)), delta.clone()),
            );
            let d2 = weaken_to(d, &Sequent::new(gamma.with(phi.labelled(b)), delta.clone()));
            let e1 = l_shift_node(logic, d1, &phi, a); // gamma |- delta, {phi} x co{a}
            let e2 = l_shift_node(logic, d2, &phi, b);
            let dl = e1.conclusion.succedent.without(&phi.labelled(b));
            let dr = e2.conclusion.succedent.without(&phi.labelled(a));
            res_node(e1, e2, &phi, b, a, dl, dr)
        }
        // table rules of the calculus
        7 => {
            let conn = &logic.connectives()[rng.gen_range(0..logic.connectives().len())];
            let args: Vec<Formula> = (0..conn.arity)
                .map(|_| pool[rng.gen_range(0..pool.len())].clone())
                .collect();
            let labels: Vec<Label> = (0..conn.arity)
                .map(|_| rng.gen_range(1..=n))
                .collect();
            match calculus {
                Calculus::R => {
                    let premises = args
                        .iter()
                        .zip(&labels)
                        .map(|(arg, &k)| {
                            weaken_to(
                                d.clone(),
                                &Sequent::new(gamma.clone(), delta.with(arg.labelled(k))),
                            )
                        })
                        .collect();
                    table_r_node(logic, premises, &conn.name, &args, &labels, gamma, delta)
                }
                Calculus::Rdd => {
                    let ks = conn.output(&labels, n);
                    let image =
                        crate::calculi::inverse_image_set(logic, &conn.name, &args, ks).unwrap();
                    let lambdas = crate::calculi::vee_product(image.sets()).unwrap();
                    let premises = lambdas
                        .iter()
                        .map(|lambda| {
                            weaken_to(
                                d.clone(),
                                &Sequent::new(gamma.clone(), delta.union(lambda)),
                            )
                        })
                        .collect();
                    table_r_dd_node(premises, &conn.name, &args, ks, gamma, delta)
                }
                Calculus::Rsd => {
                    let k = rng.gen_range(1..=n);
                    let thetas: Vec<LfSet> = conn
                        .rows(n)
                        .filter(|&(_, out)| out.contains(k))
                        .map(|(tuple, _)| {
                            args.iter()
                                .zip(&tuple)
                                .map(|(f, &j)| f.labelled(j))
                                .collect()
                        })
                        .collect();
                    let premises = thetas
                        .iter()
                        .map(|theta| {
                            weaken_to(
                                d.clone(),
                                &Sequent::new(gamma.union(theta), delta.clone()),
                            )
                        })
                        .collect();
                    table_l_node(premises, &conn.name, &args, k, gamma, delta)
                }
                Calculus::Rddsd => {
                    let k = rng.gen_range(1..=n);
                    let image =
                        crate::calculi::inverse_image_point(logic, &conn.name, &args, k).unwrap();
                    if image.is_empty() {
                        return d;
                    }
                    let lambdas = crate::calculi::vee_product(image.sets()).unwrap();
                    let lambda = lambdas[rng.gen_range(0..lambdas.len())].clone();
                    let premises = lambda
                        .iter()
                        .map(|lf| {
                            weaken_to(
                                d.clone(),
                                &Sequent::new(gamma.with(lf.clone()), delta.clone()),
                            )
                        })
                        .collect();
                    table_l_dd_node(premises, &conn.name, &args, k, lambda, gamma, delta)
                }
                Calculus::A => {
                    // anchor on a fresh table axiom instead
                    d
                }
                Calculus::Add => d,
            }
        }
        // multi-shift
        8 if matches!(calculus, Calculus::Rsd | Calculus::Rddsd) => {
            let phi = pool[rng.gen_range(0..pool.len())].clone();
            let mut ks = LabelSet::EMPTY;
            for k in 1..=n {
                if rng.gen_bool(0.5) {
                    ks.insert(k);
                }
            }
            if ks == LabelSet::full(n) || ks.is_empty() {
                return d;
            }
            let premises = ks
                .iter()
                .map(|k| {
                    weaken_to(
                        d.clone(),
                        &Sequent::new(gamma.with(phi.labelled(k)), delta.clone()),
                    )
                })
                .collect();
            multi_shift_node(logic, premises, &phi, ks, gamma, delta)
        }
        _ => d,
    }
}

/// Checks one instance against the oracle in every calculus, plus
/// translation validity and, on hypothesis-free instances, the
/// elimination postconditions. Returns the number of exhausted searches
/// or a discrepancy description.
pub fn check_instance(
    instance: &Instance,
    budget: SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Result<usize, String> {
    let Instance {
        logic,
        hypotheses,
        goal,
    } = instance;
    let verdict = entails(logic, hypotheses, goal);
    let mut exhausted = 0usize;
    for calc in Calculus::ALL {
        match (prove(logic, calc, hypotheses, goal, budget), &verdict) {
            (ProveOutcome::Proved(tree), EntailmentVerdict::Entailed) => {
                if let Err(e) = check_proof(logic, calc, hypotheses, &tree) {
                    return Err(format!("{calc}: proof fails to check: {e}"));
                }
                if calc == Calculus::A {
                    let translated = translate_a_to_r(logic, hypotheses, &tree)
                        .map_err(|e| format!("A-to-R translation failed: {e}"))?;
                    if translated.conclusion != tree.conclusion {
                        return Err("A-to-R translation changed the conclusion".into());
                    }
                    if let Err(e) = check_proof(logic, Calculus::R, hypotheses, &translated) {
                        return Err(format!("A-to-R output fails in R: {e}"));
                    }
                }
                if calc == Calculus::R {
                    let translated = translate_r_to_a(logic, hypotheses, &tree)
                        .map_err(|e| format!("R-to-A translation failed: {e}"))?;
                    if let Err(e) = check_proof(logic, Calculus::A, hypotheses, &translated) {
                        return Err(format!("R-to-A output fails in A: {e}"));
                    }
                }
                if hypotheses.is_empty()
                    && matches!(
                        calc,
                        Calculus::R | Calculus::Rdd | Calculus::Rsd | Calculus::Rddsd
                    )
                {
                    // salt the proof with cuts/resolutions, then eliminate
                    let salted = resalt(rng, logic, calc, &tree);
                    let eliminated = eliminate_cuts(logic, calc, &salted)
                        .map_err(|e| format!("{calc}: elimination failed: {e}"))?;
                    if eliminated.conclusion != salted.conclusion {
                        return Err(format!("{calc}: elimination changed the conclusion"));
                    }
                    if eliminated.count_rule_uses(RuleId::Cut) != 0
                        || eliminated.count_rule_uses(RuleId::Res) != 0
                    {
                        return Err(format!("{calc}: elimination left cut or res"));
                    }
                    if let Err(e) = check_proof(logic, calc, &[], &eliminated) {
                        return Err(format!("{calc}: eliminated proof fails: {e}"));
                    }
                }
            }
            (ProveOutcome::Refuted(v), EntailmentVerdict::Refuted(_)) => {
                if !v.is_legal(logic) {
                    return Err(format!("{calc}: countermodel is not legal"));
                }
                if !hypotheses
                    .iter()
                    .all(|h| v.satisfies(h).unwrap_or(false))
                {
                    return Err(format!("{calc}: countermodel violates a hypothesis"));
                }
                if v.satisfies(goal).unwrap_or(true) {
                    return Err(format!("{calc}: countermodel satisfies the goal"));
                }
            }
            (ProveOutcome::Exhausted(_), EntailmentVerdict::Entailed) => exhausted += 1,
            (got, want) => {
                return Err(format!(
                    "{calc}: prover and oracle disagree (prover: {got:?}, oracle: {})",
                    if want.is_entailed() { "entailed" } else { "refuted" }
                ));
            }
        }
    }
    Ok(exhausted)
}

fn resalt(rng: &mut ChaCha8Rng, logic: &Logic, calc: Calculus, tree: &ProofTree) -> ProofTree {
    let mut salted = tree.clone();
    for _ in 0..rng.gen_range(1..=2) {
        salted = grow_step(rng, logic, calc, salted, &pool_of(tree), true);
    }
    salted
}

fn pool_of(tree: &ProofTree) -> Vec<Formula> {
    let mut pool: Vec<Formula> = tree.conclusion.formulas().cloned().collect();
    if pool.is_empty() {
        pool.push(Formula::atom("p"));
    }
    pool.sort();
    pool.dedup();
    pool
}

fn reproducer(instance: &Instance) -> String {
    let mut out = String::new();
    out.push_str(&render_logic(&instance.logic));
    for h in &instance.hypotheses {
        out.push_str(&format!("hyp: {h}\n"));
    }
    out.push_str(&format!("goal: {}\n", instance.goal));
    out
}

/// Shrink candidates: drop a hypothesis, drop a labelled formula from
/// the goal, or replace a formula by one of its arguments.
fn shrink_candidates(instance: &Instance) -> Vec<Instance> {
    let mut out = Vec::new();
    for i in 0..instance.hypotheses.len() {
        let mut smaller = instance.clone();
        smaller.hypotheses.remove(i);
        out.push(smaller);
    }
    let goal = &instance.goal;
    for (left, lf) in goal
        .antecedent
        .iter()
        .map(|lf| (true, lf))
        .chain(goal.succedent.iter().map(|lf| (false, lf)))
    {
        let mut smaller = instance.clone();
        if left {
            smaller.goal.antecedent.remove(lf);
        } else {
            smaller.goal.succedent.remove(lf);
        }
        out.push(smaller);
        for arg in lf.formula.args() {
            let mut replaced = instance.clone();
            let new_lf = arg.labelled(lf.label);
            if left {
                replaced.goal.antecedent.remove(lf);
                replaced.goal.antecedent.insert(new_lf);
            } else {
                replaced.goal.succedent.remove(lf);
                replaced.goal.succedent.insert(new_lf);
            }
            out.push(replaced);
        }
    }
    out
}

/// Runs the differential harness. Stops at the first discrepancy and
/// returns a minimized reproducer.
pub fn run_fuzz(config: &FuzzConfig, mut progress: impl FnMut(usize)) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let budget = SearchBudget::default();
    let mut exhausted = 0usize;
    for i in 0..config.instances {
        let instance = random_instance(&mut rng, config);
        match check_instance(&instance, budget, &mut rng) {
            Ok(n) => exhausted += n,
            Err(description) => {
                // greedy shrinking: keep any smaller instance that still fails
                let mut smallest = instance;
                let mut reason = description;
                'shrink: for _ in 0..32 {
                    for candidate in shrink_candidates(&smallest) {
                        let mut shrink_rng = ChaCha8Rng::seed_from_u64(config.seed);
                        if let Err(e) = check_instance(&candidate, budget, &mut shrink_rng) {
                            smallest = candidate;
                            reason = e;
                            continue 'shrink;
                        }
                    }
                    break;
                }
                return FuzzReport {
                    passed: i,
                    exhausted,
                    failure: Some(FuzzFailure {
                        description: reason,
                        reproducer: reproducer(&smallest),
                    }),
                };
            }
        }
        progress(i + 1);
    }
    FuzzReport {
        passed: config.instances,
        exhausted,
        failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fuzz_small_run_is_clean() {
        let config = FuzzConfig {
            seed: 1,
            instances: 25,
            max_values: 2,
            ..FuzzConfig::default()
        };
        let report = run_fuzz(&config, |_| {});
        assert!(report.failure.is_none(), "{:?}", report.failure);
        assert_eq!(report.passed, 25);
        assert_eq!(report.exhausted, 0);
    }

    #[test]
    fn fuzz_is_reproducible() {
        let config = FuzzConfig {
            seed: 7,
            instances: 5,
            ..FuzzConfig::default()
        };
        let mut rng1 = ChaCha8Rng::seed_from_u64(config.seed);
        let mut rng2 = ChaCha8Rng::seed_from_u64(config.seed);
        for _ in 0..config.instances {
            let a = random_instance(&mut rng1, &config);
            let b = random_instance(&mut rng2, &config);
            assert_eq!(a.goal, b.goal);
            assert_eq!(a.hypotheses, b.hypotheses);
            assert_eq!(a.logic.to_def(), b.logic.to_def());
        }
    }

    #[test]
    fn random_proofs_check_and_conclude_entailed_sequents() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let config = FuzzConfig::default();
        for _ in 0..10 {
            let logic = random_logic(&mut rng, &config);
            for calc in Calculus::ALL {
                let with_cut_res = calc != Calculus::A && calc != Calculus::Add;
                let proof = random_proof(&mut rng, &logic, calc, 25, with_cut_res);
                assert_eq!(
                    check_proof(&logic, calc, &[], &proof),
                    Ok(()),
                    "generated proof invalid in {calc}"
                );
                // end-to-end soundness: a checker-valid conclusion is
                // semantically entailed
                assert!(
                    entails(&logic, &[], &proof.conclusion).is_entailed(),
                    "{calc} proved the non-entailed {}",
                    proof.conclusion
                );
            }
        }
    }
}
