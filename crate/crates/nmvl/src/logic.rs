//! Logic definitions: truth-value count and per-connective truth tables.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::formula::Label;

/// Maximum supported number of truth values. Value sets are stored as
/// 64-bit masks.
pub const MAX_VALUES: Label = 64;

/// A subset of the truth-value indices `{1..=n}`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LabelSet {
    bits: u64,
}

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet { bits: 0 };

    pub fn singleton(k: Label) -> Self {
        LabelSet {
            bits: 1u64 << (k - 1),
        }
    }

    pub fn full(n: Label) -> Self {
        if n == 64 {
            LabelSet { bits: u64::MAX }
        } else {
            LabelSet {
                bits: (1u64 << n) - 1,
            }
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        LabelSet { bits }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn insert(&mut self, k: Label) {
        self.bits |= 1u64 << (k - 1);
    }

    pub fn contains(self, k: Label) -> bool {
        k >= 1 && self.bits & (1u64 << (k - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_subset(self, other: LabelSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// Complement against `{1..=n}`.
    pub fn complement(self, n: Label) -> LabelSet {
        LabelSet {
            bits: Self::full(n).bits & !self.bits,
        }
    }

    pub fn union(self, other: LabelSet) -> LabelSet {
        LabelSet {
            bits: self.bits | other.bits,
        }
    }

    /// Member labels in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Label> {
        (1..=64u16)
            .map(|k| k as Label)
            .filter(move |&k| self.contains(k))
    }
}

impl FromIterator<Label> for LabelSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        let mut set = LabelSet::EMPTY;
        for k in iter {
            set.insert(k);
        }
        set
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, k) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A connective as declared: arity plus the table entries in declaration
/// order. The table may be partial or ill-formed; validation happens in
/// [`validate_logic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectiveDef {
    pub arity: usize,
    /// Pairs of argument-label tuple and output value set.
    pub entries: Vec<(Vec<Label>, LabelSet)>,
}

/// A logic as written down: may violate the invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicDef {
    pub name: String,
    pub n: Label,
    pub connectives: Vec<(String, ConnectiveDef)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LogicViolation {
    #[error("at least 2 truth values required, got {0}")]
    TooFewValues(u64),
    #[error("at most {MAX_VALUES} truth values supported, got {0}")]
    TooManyValues(u64),
    #[error("duplicate connective {0}")]
    DuplicateConnective(String),
    #[error("{conn}: tuple {} has {} indices, arity is {arity}", TupleDisplay(tuple), tuple.len())]
    TupleArity {
        conn: String,
        tuple: Vec<Label>,
        arity: usize,
    },
    #[error("{conn}: index {value} out of range 1..{n} at {}", TupleDisplay(tuple))]
    OutOfRange {
        conn: String,
        tuple: Vec<Label>,
        value: u64,
        n: Label,
    },
    #[error("empty output set at {conn}{}", TupleDisplay(tuple))]
    EmptyOutput { conn: String, tuple: Vec<Label> },
    #[error("duplicate entry {conn}{}", TupleDisplay(tuple))]
    DuplicateEntry { conn: String, tuple: Vec<Label> },
    #[error("table not total: {conn} missing {}", TupleDisplay(tuple))]
    MissingEntry { conn: String, tuple: Vec<Label> },
}

struct TupleDisplay<'a>(&'a [Label]);

impl fmt::Display for TupleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

/// A compiled connective: dense table indexed by tuple rank.
#[derive(Clone, Debug)]
pub struct Connective {
    pub name: String,
    pub arity: usize,
    table: Vec<LabelSet>,
}

impl Connective {
    /// Output set for an argument-label tuple.
    pub fn output(&self, tuple: &[Label], n: Label) -> LabelSet {
        debug_assert_eq!(tuple.len(), self.arity);
        self.table[tuple_rank(tuple, n)]
    }

    /// All tuples in ascending lexicographic order, paired with outputs.
    pub fn rows<'a>(&'a self, n: Label) -> impl Iterator<Item = (Vec<Label>, LabelSet)> + 'a {
        (0..self.table.len()).map(move |r| (rank_tuple(r, self.arity, n), self.table[r]))
    }

    pub fn entry_count(&self) -> usize {
        self.table.len()
    }
}

/// Rank of a tuple in lexicographic order, first index most significant.
pub fn tuple_rank(tuple: &[Label], n: Label) -> usize {
    let mut r = 0usize;
    for &k in tuple {
        r = r * n as usize + (k as usize - 1);
    }
    r
}

/// Inverse of [`tuple_rank`].
pub fn rank_tuple(mut rank: usize, arity: usize, n: Label) -> Vec<Label> {
    let mut tuple = vec![1 as Label; arity];
    for i in (0..arity).rev() {
        tuple[i] = (rank % n as usize) as Label + 1;
        rank /= n as usize;
    }
    tuple
}

/// A validated logic. Tables are total, outputs non-empty, all indices in
/// range. Construction goes through [`validate_logic`].
#[derive(Clone, Debug)]
pub struct Logic {
    name: String,
    n: Label,
    connectives: Vec<Connective>,
    by_name: HashMap<String, usize>,
}

impl Logic {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> Label {
        self.n
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> {
        1..=self.n
    }

    pub fn connectives(&self) -> &[Connective] {
        &self.connectives
    }

    pub fn connective(&self, name: &str) -> Option<&Connective> {
        self.by_name.get(name).map(|&i| &self.connectives[i])
    }

    /// The definition this logic compiles back to, entries in tuple order.
    pub fn to_def(&self) -> LogicDef {
        LogicDef {
            name: self.name.clone(),
            n: self.n,
            connectives: self
                .connectives
                .iter()
                .map(|c| {
                    (
                        c.name.clone(),
                        ConnectiveDef {
                            arity: c.arity,
                            entries: c.rows(self.n).collect(),
                        },
                    )
                })
                .collect(),
        }
    }
}

/// Checks every invariant of a logic definition. On success the returned
/// [`Logic`] has dense, total tables; on failure every violation is
/// reported.
pub fn validate_logic(def: &LogicDef) -> Result<Logic, Vec<LogicViolation>> {
    let mut violations = Vec::new();
    if def.n < 2 {
        violations.push(LogicViolation::TooFewValues(def.n as u64));
    }
    if def.n > MAX_VALUES {
        violations.push(LogicViolation::TooManyValues(def.n as u64));
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    let n = def.n;

    let mut connectives = Vec::new();
    let mut by_name = HashMap::new();
    for (name, cdef) in &def.connectives {
        if by_name.contains_key(name) {
            violations.push(LogicViolation::DuplicateConnective(name.clone()));
            continue;
        }
        let total = (n as usize).pow(cdef.arity as u32);
        let mut table: Vec<Option<LabelSet>> = vec![None; total];
        for (tuple, out) in &cdef.entries {
            if tuple.len() != cdef.arity {
                violations.push(LogicViolation::TupleArity {
                    conn: name.clone(),
                    tuple: tuple.clone(),
                    arity: cdef.arity,
                });
                continue;
            }
            if let Some(&bad) = tuple.iter().find(|&&k| k < 1 || k > n) {
                violations.push(LogicViolation::OutOfRange {
                    conn: name.clone(),
                    tuple: tuple.clone(),
                    value: bad as u64,
                    n,
                });
                continue;
            }
            // A bad output still occupies its slot, so a single broken
            // entry is not additionally reported as missing.
            if out.is_empty() {
                violations.push(LogicViolation::EmptyOutput {
                    conn: name.clone(),
                    tuple: tuple.clone(),
                });
            } else if !out.is_subset(LabelSet::full(n)) {
                let bad = out.iter().find(|&k| k > n).unwrap();
                violations.push(LogicViolation::OutOfRange {
                    conn: name.clone(),
                    tuple: tuple.clone(),
                    value: bad as u64,
                    n,
                });
            }
            let r = tuple_rank(tuple, n);
            if table[r].is_some() {
                violations.push(LogicViolation::DuplicateEntry {
                    conn: name.clone(),
                    tuple: tuple.clone(),
                });
            } else {
                table[r] = Some(*out);
            }
        }
        let mut dense = Vec::with_capacity(total);
        for (r, slot) in table.into_iter().enumerate() {
            match slot {
                Some(out) => dense.push(out),
                None => {
                    violations.push(LogicViolation::MissingEntry {
                        conn: name.clone(),
                        tuple: rank_tuple(r, cdef.arity, n),
                    });
                }
            }
        }
        if dense.len() == total {
            by_name.insert(name.clone(), connectives.len());
            connectives.push(Connective {
                name: name.clone(),
                arity: cdef.arity,
                table: dense,
            });
        }
    }

    if violations.is_empty() {
        Ok(Logic {
            name: def.name.clone(),
            n,
            connectives,
            by_name,
        })
    } else {
        Err(violations)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// 2-valued logic with a non-deterministic unary `circ` and a
    /// deterministic binary `or`.
    pub fn circ2_def() -> LogicDef {
        LogicDef {
            name: "circ2".into(),
            n: 2,
            connectives: vec![
                (
                    "circ".into(),
                    ConnectiveDef {
                        arity: 1,
                        entries: vec![
                            (vec![1], [1, 2].into_iter().collect()),
                            (vec![2], [2].into_iter().collect()),
                        ],
                    },
                ),
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
            ],
        }
    }

    pub fn circ2() -> Logic {
        validate_logic(&circ2_def()).unwrap()
    }

    /// Classical two-valued logic with 1 = true, singleton tables.
    pub fn classical2() -> Logic {
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

    /// Unary connective whose output is always {1}; used to exercise
    /// searches that need resolution in the axiom-style calculi.
    pub fn const2() -> Logic {
        let def = LogicDef {
            name: "const2".into(),
            n: 2,
            connectives: vec![(
                "c".into(),
                ConnectiveDef {
                    arity: 1,
                    entries: vec![
                        (vec![1], [1].into_iter().collect()),
                        (vec![2], [1].into_iter().collect()),
                    ],
                },
            )],
        };
        validate_logic(&def).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn circ2_is_valid() {
        let logic = circ2();
        assert_eq!(logic.n(), 2);
        assert_eq!(logic.connectives().len(), 2);
        let circ = logic.connective("circ").unwrap();
        assert_eq!(circ.output(&[1], 2), [1, 2].into_iter().collect());
        assert_eq!(circ.output(&[2], 2), [2].into_iter().collect());
    }

    #[test]
    fn empty_output_is_reported() {
        let mut def = circ2_def();
        def.connectives[0].1.entries[1].1 = LabelSet::EMPTY;
        let errs = validate_logic(&def).unwrap_err();
        assert_eq!(
            errs,
            vec![LogicViolation::EmptyOutput {
                conn: "circ".into(),
                tuple: vec![2],
            }]
        );
        assert_eq!(errs[0].to_string(), "empty output set at circ(2)");
    }

    #[test]
    fn missing_entry_is_reported() {
        let mut def = circ2_def();
        def.connectives[1].1.entries.pop();
        let errs = validate_logic(&def).unwrap_err();
        assert_eq!(
            errs,
            vec![LogicViolation::MissingEntry {
                conn: "or".into(),
                tuple: vec![2, 2],
            }]
        );
        assert_eq!(errs[0].to_string(), "table not total: or missing (2,2)");
    }

    #[test]
    fn too_few_values() {
        let def = LogicDef {
            name: "bad".into(),
            n: 1,
            connectives: vec![],
        };
        assert_eq!(
            validate_logic(&def).unwrap_err(),
            vec![LogicViolation::TooFewValues(1)]
        );
    }

    #[test]
    fn out_of_range_index() {
        let mut def = circ2_def();
        def.connectives[0].1.entries[0].0 = vec![3];
        let errs = validate_logic(&def).unwrap_err();
        assert!(matches!(
            errs[0],
            LogicViolation::OutOfRange { value: 3, n: 2, .. }
        ));
        // the tuple it replaced is now missing
        assert!(errs
            .iter()
            .any(|e| matches!(e, LogicViolation::MissingEntry { .. })));
    }

    #[test]
    fn duplicate_connective() {
        let mut def = circ2_def();
        let dup = def.connectives[0].clone();
        def.connectives.push(dup);
        let errs = validate_logic(&def).unwrap_err();
        assert_eq!(errs, vec![LogicViolation::DuplicateConnective("circ".into())]);
    }

    #[test]
    fn label_set_ops() {
        let s: LabelSet = [1, 3].into_iter().collect();
        assert!(s.contains(1) && !s.contains(2) && s.contains(3));
        assert_eq!(s.complement(3), LabelSet::singleton(2));
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(s.to_string(), "{1,3}");
    }

    #[test]
    fn value_count_boundaries() {
        let full64 = LabelSet::full(64);
        assert_eq!(full64.len(), 64);
        assert!(full64.contains(64) && full64.contains(1));
        assert_eq!(LabelSet::singleton(64).complement(64).len(), 63);

        let def = LogicDef {
            name: "wide".into(),
            n: 64,
            connectives: vec![],
        };
        assert!(validate_logic(&def).is_ok());

        let def = LogicDef {
            name: "toowide".into(),
            n: 65,
            connectives: vec![],
        };
        assert_eq!(
            validate_logic(&def).unwrap_err(),
            vec![LogicViolation::TooManyValues(65)]
        );
    }

    #[test]
    fn tuple_rank_round_trip() {
        let n = 3;
        for r in 0..27 {
            let t = rank_tuple(r, 3, n);
            assert_eq!(tuple_rank(&t, n), r);
        }
        // lexicographic: (1,1) < (1,2) < (2,1)
        assert!(tuple_rank(&[1, 2], 2) < tuple_rank(&[2, 1], 2));
    }
}
