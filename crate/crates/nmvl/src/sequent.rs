//! Sequents: pairs of finite sets of labelled formulas.

use std::fmt;

use crate::formula::{Formula, LabelledFormula};

/// A finite set of labelled formulas, kept sorted and deduplicated so
/// equality, hashing and iteration order are canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LfSet {
    items: Vec<LabelledFormula>,
}

impl LfSet {
    pub fn new() -> Self {
        LfSet::default()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LabelledFormula> {
        self.items.iter()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, lf: &LabelledFormula) -> bool {
        self.items.binary_search(lf).is_ok()
    }

    pub fn insert(&mut self, lf: LabelledFormula) {
        if let Err(pos) = self.items.binary_search(&lf) {
            self.items.insert(pos, lf);
        }
    }

    pub fn remove(&mut self, lf: &LabelledFormula) {
        if let Ok(pos) = self.items.binary_search(lf) {
            self.items.remove(pos);
        }
    }

    #[must_use]
    pub fn with(&self, lf: LabelledFormula) -> Self {
        let mut out = self.clone();
        out.insert(lf);
        out
    }

    #[must_use]
    pub fn without(&self, lf: &LabelledFormula) -> Self {
        let mut out = self.clone();
        out.remove(lf);
        out
    }

    #[must_use]
    pub fn union(&self, other: &LfSet) -> Self {
        let mut out = self.clone();
        for lf in other.iter() {
            out.insert(lf.clone());
        }
        out
    }

    #[must_use]
    pub fn minus(&self, other: &LfSet) -> Self {
        LfSet {
            items: self
                .items
                .iter()
                .filter(|lf| !other.contains(lf))
                .cloned()
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &LfSet) -> bool {
        self.items.iter().all(|lf| other.contains(lf))
    }

    pub fn intersects(&self, other: &LfSet) -> bool {
        self.items.iter().any(|lf| other.contains(lf))
    }

    /// First common element in canonical order, if any.
    pub fn first_common(&self, other: &LfSet) -> Option<&LabelledFormula> {
        self.items.iter().find(|lf| other.contains(lf))
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.items.iter().map(|lf| &lf.formula)
    }
}

impl FromIterator<LabelledFormula> for LfSet {
    fn from_iter<I: IntoIterator<Item = LabelledFormula>>(iter: I) -> Self {
        let mut items: Vec<LabelledFormula> = iter.into_iter().collect();
        items.sort();
        items.dedup();
        LfSet { items }
    }
}

impl<'a> IntoIterator for &'a LfSet {
    type Item = &'a LabelledFormula;
    type IntoIter = std::slice::Iter<'a, LabelledFormula>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

impl fmt::Display for LfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, lf) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{lf}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// `antecedent |- succedent`. Both sides are sets: adding an element that
/// is already present is a no-op and equality is extensional.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Sequent {
    pub antecedent: LfSet,
    pub succedent: LfSet,
}

impl Sequent {
    pub fn new(antecedent: LfSet, succedent: LfSet) -> Self {
        Sequent {
            antecedent,
            succedent,
        }
    }

    pub fn empty() -> Self {
        Sequent::default()
    }

    pub fn is_empty(&self) -> bool {
        self.antecedent.is_empty() && self.succedent.is_empty()
    }

    /// Every formula occurring on either side, with duplicates.
    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedent.formulas().chain(self.succedent.formulas())
    }

    /// Both sides contained in the corresponding sides of `other`.
    pub fn is_subsequent_of(&self, other: &Sequent) -> bool {
        self.antecedent.is_subset(&other.antecedent)
            && self.succedent.is_subset(&other.succedent)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.antecedent.is_empty() {
            f.write_str("|-")?;
        } else {
            write!(f, "{} |-", self.antecedent)?;
        }
        if !self.succedent.is_empty() {
            write!(f, " {}", self.succedent)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
