//! Formulas, labelled formulas and subformula closures.
//!
//! Formulas are immutable trees shared via `Arc`, so clones are cheap and
//! values can cross threads freely. Equality is structural with a pointer
//! fast path. The total order on formulas sorts by node count first, which
//! makes any sorted list of formulas bottom-up: a formula always appears
//! after all of its arguments.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Index of a truth value, `1..=n` for the governing logic.
pub type Label = u8;

#[derive(Clone)]
pub struct Formula(Arc<Node>);

struct Node {
    kind: Kind,
    /// Total node count, cached so ordering is O(1) in the common case.
    size: u32,
}

enum Kind {
    Atom(String),
    Apply { conn: String, args: Vec<Formula> },
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula(Arc::new(Node {
            kind: Kind::Atom(name.into()),
            size: 1,
        }))
    }

    pub fn apply(conn: impl Into<String>, args: Vec<Formula>) -> Self {
        let size = 1 + args.iter().map(|a| a.size()).sum::<u32>();
        Formula(Arc::new(Node {
            kind: Kind::Apply {
                conn: conn.into(),
                args,
            },
            size,
        }))
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    pub fn is_atom(&self) -> bool {
        matches!(self.0.kind, Kind::Atom(_))
    }

    pub fn as_atom(&self) -> Option<&str> {
        match &self.0.kind {
            Kind::Atom(name) => Some(name),
            Kind::Apply { .. } => None,
        }
    }

    pub fn as_apply(&self) -> Option<(&str, &[Formula])> {
        match &self.0.kind {
            Kind::Atom(_) => None,
            Kind::Apply { conn, args } => Some((conn, args)),
        }
    }

    /// Immediate arguments (empty for atoms and 0-ary applications).
    pub fn args(&self) -> &[Formula] {
        match &self.0.kind {
            Kind::Atom(_) => &[],
            Kind::Apply { args, .. } => args,
        }
    }

    pub fn labelled(&self, label: Label) -> LabelledFormula {
        LabelledFormula {
            formula: self.clone(),
            label,
        }
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.size != other.0.size {
            return false;
        }
        match (&self.0.kind, &other.0.kind) {
            (Kind::Atom(a), Kind::Atom(b)) => a == b,
            (
                Kind::Apply { conn: c1, args: a1 },
                Kind::Apply { conn: c2, args: a2 },
            ) => c1 == c2 && a1 == a2,
            _ => false,
        }
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0.kind {
            Kind::Atom(name) => {
                0u8.hash(state);
                name.hash(state);
            }
            Kind::Apply { conn, args } => {
                1u8.hash(state);
                conn.hash(state);
                args.hash(state);
            }
        }
    }
}

impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0
            .size
            .cmp(&other.0.size)
            .then_with(|| match (&self.0.kind, &other.0.kind) {
                (Kind::Atom(a), Kind::Atom(b)) => a.cmp(b),
                (Kind::Atom(_), Kind::Apply { .. }) => Ordering::Less,
                (Kind::Apply { .. }, Kind::Atom(_)) => Ordering::Greater,
                (
                    Kind::Apply { conn: c1, args: a1 },
                    Kind::Apply { conn: c2, args: a2 },
                ) => c1.cmp(c2).then_with(|| a1.cmp(a2)),
            })
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Atom(name) => f.write_str(name),
            Kind::Apply { conn, args } => {
                write!(f, "{conn}(")?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{arg}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A formula paired with a truth-value index: the assertion that the
/// formula takes the value with that index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledFormula {
    pub formula: Formula,
    pub label: Label,
}

impl fmt::Display for LabelledFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.formula, self.label)
    }
}

impl fmt::Debug for LabelledFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A subformula-closed, deterministically ordered set of formulas.
///
/// The order is the formula order, so every formula appears after all of
/// its arguments and all atoms precede all compound formulas.
#[derive(Clone, PartialEq, Eq)]
pub struct Closure {
    formulas: Vec<Formula>,
    index: HashMap<Formula, usize>,
}

impl Closure {
    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.index.contains_key(f)
    }

    pub fn position(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Number of leading entries that are atoms.
    pub fn atom_count(&self) -> usize {
        self.formulas.iter().take_while(|f| f.is_atom()).count()
    }
}

impl fmt::Debug for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.formulas.iter()).finish()
    }
}

/// Smallest set containing `roots` and closed under taking immediate
/// arguments, in bottom-up order.
pub fn subformula_closure<'a>(roots: impl IntoIterator<Item = &'a Formula>) -> Closure {
    let mut seen: HashMap<Formula, usize> = HashMap::new();
    let mut stack: Vec<Formula> = roots.into_iter().cloned().collect();
    while let Some(f) = stack.pop() {
        if seen.contains_key(&f) {
            continue;
        }
        stack.extend(f.args().iter().cloned());
        seen.insert(f, 0);
    }
    let mut formulas: Vec<Formula> = seen.keys().cloned().collect();
    formulas.sort();
    for (i, f) in formulas.iter().enumerate() {
        seen.insert(f.clone(), i);
    }
    Closure {
        formulas,
        index: seen,
    }
}

/// All labelled formulas `(phi, k)` with `phi` in the closure and
/// `1 <= k <= n`, ordered by (formula, label).
pub fn labelled_universe(closure: &Closure, n: Label) -> Vec<LabelledFormula> {
    let mut out = Vec::with_capacity(closure.len() * n as usize);
    for f in closure.formulas() {
        for k in 1..=n {
            out.push(f.labelled(k));
        }
    }
    out
}
