//! Feature models: a feature tree with group semantics plus cross-tree
//! propositional constraints.
//!
//! Models are written in a small text format (see [`parse_feature_model`]):
//!
//! ```text
//! features Root {
//!   mandatory A
//!   optional B
//!   xor { C D }
//! }
//! constraint c1: A => !B
//! ```
//!
//! Everything in this module is purely propositional. Numeric facts about a
//! dataset are lowered to boolean atoms by the caller before they reach a
//! [`Formula`].

mod enumerate;
mod formula;
mod parse;
mod print;
mod validate;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use enumerate::{count_configurations, enumerate_configurations, ENUMERATION_LIMIT};
pub use formula::Formula;
pub use parse::parse_feature_model;
pub use validate::{validate_configuration, ValidationReport, Violation, ViolationKind};

/// Words the grammar reserves; they can't name features or constraints.
pub const KEYWORDS: [&str; 6] = [
    "features",
    "mandatory",
    "optional",
    "xor",
    "or",
    "constraint",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Mandatory,
    Optional,
    Xor,
    Or,
}

impl GroupKind {
    pub fn keyword(self) -> &'static str {
        match self {
            GroupKind::Mandatory => "mandatory",
            GroupKind::Optional => "optional",
            GroupKind::Xor => "xor",
            GroupKind::Or => "or",
        }
    }

    /// Mandatory and optional groups wrap exactly one feature.
    pub fn is_single(self) -> bool {
        matches!(self, GroupKind::Mandatory | GroupKind::Optional)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feature {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<ChildGroup>,
}

impl Feature {
    pub fn leaf(name: impl Into<String>) -> Self {
        Feature {
            name: name.into(),
            children: Vec::new(),
        }
    }

    pub fn with_group(mut self, kind: GroupKind, members: Vec<Feature>) -> Self {
        self.children.push(ChildGroup { kind, members });
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChildGroup {
    pub kind: GroupKind,
    pub members: Vec<Feature>,
}

/// A named cross-tree constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("syntax error at {line}:{column}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("{kind} group at {line}:{column} requires at least 2 members, found {found}")]
    GroupTooSmall {
        kind: GroupKind,
        line: usize,
        column: usize,
        found: usize,
    },
    #[error("{kind} group under `{parent}` must hold exactly one feature, found {found}")]
    GroupArity {
        kind: GroupKind,
        parent: String,
        found: usize,
    },
    #[error("invalid name `{0}`: names match [A-Za-z][A-Za-z0-9_]* and may not be keywords")]
    InvalidName(String),
    #[error("duplicate feature name `{0}`")]
    DuplicateFeature(String),
    #[error("duplicate constraint name `{0}`")]
    DuplicateConstraint(String),
    #[error("constraint `{constraint}` references unknown feature `{atom}`")]
    UnknownAtom { constraint: String, atom: String },
    #[error("model too large: {features} features, enumeration is limited to {limit}")]
    TooLarge { features: usize, limit: usize },
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !KEYWORDS.contains(&name)
}

/// A checked feature model. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureModel {
    root: Feature,
    constraints: Vec<Constraint>,
    /// Feature names in pre-order; index 0 is the root.
    order: Vec<String>,
    index: HashMap<String, usize>,
}

impl FeatureModel {
    /// Builds a model, checking names, group arity and constraint atoms.
    pub fn new(root: Feature, constraints: Vec<Constraint>) -> Result<Self, ModelError> {
        let mut order = Vec::new();
        let mut index = HashMap::new();
        collect(&root, &mut order, &mut index)?;

        let mut seen = BTreeSet::new();
        for c in &constraints {
            if !is_identifier(&c.name) {
                return Err(ModelError::InvalidName(c.name.clone()));
            }
            if !seen.insert(c.name.as_str()) {
                return Err(ModelError::DuplicateConstraint(c.name.clone()));
            }
            if let Some(atom) = c
                .formula
                .atoms()
                .into_iter()
                .find(|a| !index.contains_key(*a))
            {
                return Err(ModelError::UnknownAtom {
                    constraint: c.name.clone(),
                    atom: atom.to_string(),
                });
            }
        }

        Ok(FeatureModel {
            root,
            constraints,
            order,
            index,
        })
    }

    pub fn root(&self) -> &Feature {
        &self.root
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Feature names in pre-order.
    pub fn feature_names(&self) -> &[String] {
        &self.order
    }

    pub fn feature_count(&self) -> usize {
        self.order.len()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Pre-order position of a feature.
    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Evaluates a formula against a configuration, rejecting atoms the
    /// model does not declare.
    pub fn eval_formula(&self, formula: &Formula, cfg: &Configuration) -> Result<bool, ModelError> {
        if let Some(atom) = formula.atoms().into_iter().find(|a| !self.contains(a)) {
            return Err(ModelError::UnknownAtom {
                constraint: "<formula>".to_string(),
                atom: atom.to_string(),
            });
        }
        Ok(formula.eval(&|name| cfg.contains(name)))
    }
}

fn collect(
    feature: &Feature,
    order: &mut Vec<String>,
    index: &mut HashMap<String, usize>,
) -> Result<(), ModelError> {
    if !is_identifier(&feature.name) {
        return Err(ModelError::InvalidName(feature.name.clone()));
    }
    if index.insert(feature.name.clone(), order.len()).is_some() {
        return Err(ModelError::DuplicateFeature(feature.name.clone()));
    }
    order.push(feature.name.clone());
    for group in &feature.children {
        let n = group.members.len();
        if group.kind.is_single() && n != 1 {
            return Err(ModelError::GroupArity {
                kind: group.kind,
                parent: feature.name.clone(),
                found: n,
            });
        }
        if !group.kind.is_single() && n < 2 {
            return Err(ModelError::GroupTooSmall {
                kind: group.kind,
                line: 0,
                column: 0,
                found: n,
            });
        }
        for member in &group.members {
            collect(member, order, index)?;
        }
    }
    Ok(())
}

/// A set of selected feature names.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Configuration {
    pub selected: BTreeSet<String>,
}

impl Configuration {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Configuration {
            selected: names.into_iter().map(Into::into).collect(),
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.selected.contains(name)
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, name) in self.selected.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}")?;
        }
        write!(f, "}}")
    }
}
