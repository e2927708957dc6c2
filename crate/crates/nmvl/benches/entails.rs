//! Entailment benchmarks: the parallel valuation search against the
//! sequential one on growing closures.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nmvl::logic::{validate_logic, ConnectiveDef, LogicDef};
use nmvl::semantics::{entails, entails_seq};
use nmvl::syntax::parse_sequent;
use nmvl::Logic;

/// Classical two-valued logic (1 = true) with or and neg.
fn classical() -> Logic {
    let def = LogicDef {
        name: "classical2".into(),
        n: 2,
        connectives: vec![
            (
                "or".into(),
                ConnectiveDef {
                    arity: 2,
                    entries: vec![
                        (vec![1, 1], [1].into_iter().collect()),
                        (vec![1, 2], [1].into_iter().collect()),
                        (vec![2, 1], [1].into_iter().collect()),
                        (vec![2, 2], [2].into_iter().collect()),
                    ],
                },
            ),
            (
                "neg".into(),
                ConnectiveDef {
                    arity: 1,
                    entries: vec![
                        (vec![1], [2].into_iter().collect()),
                        (vec![2], [1].into_iter().collect()),
                    ],
                },
            ),
        ],
    };
    validate_logic(&def).unwrap()
}

/// A non-deterministic 3-valued logic: every output is a 2-element set,
/// so the valuation space grows much faster than the atom count.
fn noisy3() -> Logic {
    let entries = |pairs: &[(u8, u8, [u8; 2])]| {
        pairs
            .iter()
            .map(|&(a, b, out)| (vec![a, b], out.into_iter().collect()))
            .collect()
    };
    let mut table = Vec::new();
    for a in 1..=3u8 {
        for b in 1..=3u8 {
            let lo = a.min(b);
            let hi = a.max(b);
            table.push((a, b, [lo, hi]));
        }
    }
    let def = LogicDef {
        name: "noisy3".into(),
        n: 3,
        connectives: vec![("j".into(), ConnectiveDef {
            arity: 2,
            entries: entries(&table),
        })],
    };
    validate_logic(&def).unwrap()
}

/// `|- or(p1, or(neg(p1), or(p2, ...))) : 1` over `width` atoms: a valid
/// goal whose closure forces a full sweep of 2^width assignments.
fn tautology_goal(width: usize) -> String {
    let mut inner = format!("or(p{width}, neg(p{width}))");
    for i in (1..width).rev() {
        inner = format!("or(or(p{i}, neg(p{i})), {inner})");
    }
    format!("|- {inner}:1")
}

/// An unsatisfiable-antecedent goal in the noisy logic; refuting or
/// confirming it walks a large legal-valuation space.
fn noisy_goal(width: usize) -> String {
    let mut inner = "p1".to_string();
    for i in 2..=width {
        inner = format!("j(p{i}, {inner})");
    }
    format!("{inner}:1 |- p1:1, p1:2")
}

fn bench_entails(c: &mut Criterion) {
    let classical = classical();
    let mut group = c.benchmark_group("classical_tautology");
    for width in [10usize, 14, 16] {
        let goal = parse_sequent(&tautology_goal(width), &classical).unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", width), &goal, |b, goal| {
            b.iter(|| entails(&classical, &[], goal))
        });
        group.bench_with_input(BenchmarkId::new("sequential", width), &goal, |b, goal| {
            b.iter(|| entails_seq(&classical, &[], goal))
        });
    }
    group.finish();

    let noisy = noisy3();
    let mut group = c.benchmark_group("noisy3_sweep");
    for width in [6usize, 8, 10] {
        let goal = parse_sequent(&noisy_goal(width), &noisy).unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", width), &goal, |b, goal| {
            b.iter(|| entails(&noisy, &[], goal))
        });
        group.bench_with_input(BenchmarkId::new("sequential", width), &goal, |b, goal| {
            b.iter(|| entails_seq(&noisy, &[], goal))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_entails);
criterion_main!(benches);
