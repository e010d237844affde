use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// Propositional formula over feature names.
///
/// `And`/`Or` are n-ary with at least two operands; `Implies` and `Iff` are
/// binary. An atom is true iff its feature is selected.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, selected: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Formula::Atom(name) => selected(name),
            Formula::Not(f) => !f.eval(selected),
            Formula::And(fs) => fs.iter().all(|f| f.eval(selected)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(selected)),
            Formula::Implies(a, b) => !a.eval(selected) || b.eval(selected),
            Formula::Iff(a, b) => a.eval(selected) == b.eval(selected),
        }
    }

    /// Distinct atom names, sorted.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name);
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Atoms and negations print without parentheses in any position.
    pub(crate) fn is_primary(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::Not(_))
    }
}
