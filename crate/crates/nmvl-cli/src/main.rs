//! Command-line front end: validation, schema listing, entailment,
//! proof search, proof checking, translation, cut elimination and
//! randomized cross-validation.
//!
//! Exit status: 0 = success / entailed / proved / valid; 1 = refuted /
//! invalid / violations (with a report); 2 = usage or parse error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nmvl::fuzz::{run_fuzz, FuzzConfig};
use nmvl::proof::{
    check_proof, eliminate_cuts, prove, translate_a_to_r, translate_r_to_a, ProveOutcome,
    SearchBudget,
};
use nmvl::semantics::{entails, EntailmentVerdict};
use nmvl::syntax::{
    parse_hypotheses, parse_logic, parse_proof, parse_sequent, render_proof,
};
use nmvl::{Calculus, Logic, Sequent};

#[derive(Parser)]
#[command(name = "nmvl", version, about = "Deduction toolkit for non-deterministic many-valued logics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct HypArgs {
    /// Hypothesis sequent (repeatable).
    #[arg(long = "hyp")]
    hyp: Vec<String>,
    /// File with one hypothesis sequent per line.
    #[arg(long = "hyp-file")]
    hyp_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a logic file against the Nmatrix invariants.
    Validate { logic: PathBuf },
    /// List every axiom and rule schema of a calculus over a logic.
    Schemas {
        #[arg(long, default_value = "A")]
        calc: Calculus,
        logic: PathBuf,
    },
    /// Decide semantic entailment; prints ENTAILED or a countermodel.
    Entails {
        #[command(flatten)]
        hyps: HypArgs,
        logic: PathBuf,
        goal: String,
    },
    /// Search for a proof; prints the proof or a countermodel.
    Prove {
        #[arg(long, default_value = "A")]
        calc: Calculus,
        #[command(flatten)]
        hyps: HypArgs,
        /// Search node budget.
        #[arg(long = "max-nodes", default_value_t = 200_000)]
        max_nodes: usize,
        /// Also try analytic cuts without hypotheses.
        #[arg(long = "analytic-cut")]
        analytic_cut: bool,
        /// Write the proof here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        logic: PathBuf,
        goal: String,
    },
    /// Check a proof file in a calculus.
    Check {
        #[arg(long, default_value = "A")]
        calc: Calculus,
        #[command(flatten)]
        hyps: HypArgs,
        logic: PathBuf,
        proof: PathBuf,
    },
    /// Translate a proof between the axiom-style and rule-style calculi.
    Translate {
        /// Source calculus: A or R.
        #[arg(long)]
        from: Calculus,
        /// Target calculus: R or A.
        #[arg(long)]
        to: Calculus,
        #[arg(long)]
        out: Option<PathBuf>,
        logic: PathBuf,
        proof: PathBuf,
    },
    /// Remove every cut and resolution from a proof.
    Elimcut {
        #[arg(long, default_value = "R")]
        calc: Calculus,
        #[arg(long)]
        out: Option<PathBuf>,
        logic: PathBuf,
        proof: PathBuf,
    },
    /// Randomized differential testing of the whole toolchain.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long = "max-values", default_value_t = 3)]
        max_values: u8,
        #[arg(long = "max-connectives", default_value_t = 2)]
        max_connectives: usize,
        #[arg(long = "max-arity", default_value_t = 2)]
        max_arity: usize,
        #[arg(long = "max-depth", default_value_t = 2)]
        max_depth: usize,
        #[arg(long = "max-hypotheses", default_value_t = 2)]
        max_hypotheses: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("{message}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_logic(path: &Path) -> Result<Logic, String> {
    let text = read(path)?;
    parse_logic(&text).map_err(|errors| {
        errors
            .iter()
            .map(|e| format!("{}: {e}", path.display()))
            .collect::<Vec<_>>()
            .join("\n")
    })
}

fn load_hyps(logic: &Logic, args: &HypArgs) -> Result<Vec<Sequent>, String> {
    let mut hyps = Vec::new();
    for text in &args.hyp {
        hyps.push(parse_sequent(text, logic).map_err(|e| format!("--hyp {text}: {e}"))?);
    }
    if let Some(path) = &args.hyp_file {
        let text = read(path)?;
        hyps.extend(
            parse_hypotheses(&text, logic).map_err(|e| format!("{}: {e}", path.display()))?,
        );
    }
    Ok(hyps)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Validate { logic } => {
            let text = read(&logic)?;
            let def = nmvl::syntax::parse_logic_def(&text).map_err(|errors| {
                errors
                    .iter()
                    .map(|e| format!("{}: {e}", logic.display()))
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            match nmvl::logic::validate_logic(&def) {
                Ok(_) => {
                    println!("OK");
                    Ok(ExitCode::SUCCESS)
                }
                Err(violations) => {
                    for v in violations {
                        println!("{v}");
                    }
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Schemas { calc, logic } => {
            let logic = load_logic(&logic)?;
            print!("{}", nmvl::calculi::render_schemas(calc, &logic));
            Ok(ExitCode::SUCCESS)
        }
        Command::Entails { hyps, logic, goal } => {
            let logic = load_logic(&logic)?;
            let hyps = load_hyps(&logic, &hyps)?;
            let goal = parse_sequent(&goal, &logic).map_err(|e| format!("goal: {e}"))?;
            match entails(&logic, &hyps, &goal) {
                EntailmentVerdict::Entailed => {
                    println!("ENTAILED");
                    Ok(ExitCode::SUCCESS)
                }
                EntailmentVerdict::Refuted(v) => {
                    println!("COUNTERMODEL");
                    println!("{v}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Prove {
            calc,
            hyps,
            max_nodes,
            analytic_cut,
            out,
            logic,
            goal,
        } => {
            let logic = load_logic(&logic)?;
            let hyps = load_hyps(&logic, &hyps)?;
            let goal = parse_sequent(&goal, &logic).map_err(|e| format!("goal: {e}"))?;
            let budget = SearchBudget {
                max_nodes,
                allow_analytic_cut: analytic_cut,
            };
            match prove(&logic, calc, &hyps, &goal, budget) {
                ProveOutcome::Proved(tree) => {
                    emit(&out, &render_proof(&tree))?;
                    Ok(ExitCode::SUCCESS)
                }
                ProveOutcome::Refuted(v) => {
                    println!("COUNTERMODEL");
                    println!("{v}");
                    Ok(ExitCode::from(1))
                }
                ProveOutcome::Exhausted(report) => {
                    println!(
                        "EXHAUSTED after {} of {} nodes",
                        report.expanded, report.max_nodes
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Check {
            calc,
            hyps,
            logic,
            proof,
        } => {
            let logic = load_logic(&logic)?;
            let hyps = load_hyps(&logic, &hyps)?;
            let text = read(&proof)?;
            let tree =
                parse_proof(&text, &logic).map_err(|e| format!("{}: {e}", proof.display()))?;
            match check_proof(&logic, calc, &hyps, &tree) {
                Ok(()) => {
                    println!("OK");
                    Ok(ExitCode::SUCCESS)
                }
                Err(violation) => {
                    println!("{violation}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Translate {
            from,
            to,
            out,
            logic,
            proof,
        } => {
            let logic = load_logic(&logic)?;
            let text = read(&proof)?;
            let tree =
                parse_proof(&text, &logic).map_err(|e| format!("{}: {e}", proof.display()))?;
            let translated = match (from, to) {
                (Calculus::A, Calculus::R) => translate_a_to_r(&logic, &[], &tree),
                (Calculus::R, Calculus::A) => translate_r_to_a(&logic, &[], &tree),
                (from, to) => {
                    return Err(format!(
                        "translation is defined between A and R, not {from} to {to}"
                    ))
                }
            };
            match translated {
                Ok(tree) => {
                    emit(&out, &render_proof(&tree))?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("{e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Elimcut {
            calc,
            out,
            logic,
            proof,
        } => {
            let logic = load_logic(&logic)?;
            let text = read(&proof)?;
            let tree =
                parse_proof(&text, &logic).map_err(|e| format!("{}: {e}", proof.display()))?;
            match eliminate_cuts(&logic, calc, &tree) {
                Ok(tree) => {
                    emit(&out, &render_proof(&tree))?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("{e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Fuzz {
            seed,
            instances,
            max_values,
            max_connectives,
            max_arity,
            max_depth,
            max_hypotheses,
        } => {
            if instances == 0 {
                return Err("fuzz requires at least one instance".into());
            }
            let config = FuzzConfig {
                seed,
                instances,
                max_values,
                max_connectives,
                max_arity,
                max_formula_depth: max_depth,
                max_hypotheses,
            };
            let report = run_fuzz(&config, |_| {});
            match report.failure {
                None => {
                    println!("{} ok (exhausted: {})", report.passed, report.exhausted);
                    Ok(ExitCode::SUCCESS)
                }
                Some(failure) => {
                    println!("discrepancy after {} instances", report.passed);
                    println!("{}", failure.description);
                    println!("reproducer:");
                    print!("{}", failure.reproducer);
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}
