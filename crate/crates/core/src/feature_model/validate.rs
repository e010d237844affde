use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Configuration, Feature, FeatureModel, GroupKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ViolationKind {
    UnknownFeature,
    RootMissing,
    MandatoryMissing,
    XorViolation,
    OrViolation,
    DanglingChild,
    ConstraintFailed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Feature or constraint name.
    pub subject: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} `{}`: {}", self.kind, self.subject, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

/// Checks a configuration against the tree rules and every cross-tree
/// constraint, collecting all violations.
///
/// Order: undeclared names (sorted), then tree rules in pre-order of the
/// parent feature, then constraints in declaration order.
pub fn validate_configuration(fm: &FeatureModel, cfg: &Configuration) -> ValidationReport {
    let mut violations = Vec::new();

    for name in cfg.selected.iter().filter(|n| !fm.contains(n)) {
        violations.push(Violation {
            kind: ViolationKind::UnknownFeature,
            subject: name.clone(),
            detail: "not declared in the model".into(),
        });
    }

    let root = fm.root();
    if !cfg.contains(&root.name) {
        violations.push(Violation {
            kind: ViolationKind::RootMissing,
            subject: root.name.clone(),
            detail: "the root feature must be selected".into(),
        });
    }
    check_feature(root, cfg, &mut violations);

    for c in fm.constraints() {
        if !c.formula.eval(&|name| cfg.contains(name)) {
            violations.push(Violation {
                kind: ViolationKind::ConstraintFailed,
                subject: c.name.clone(),
                detail: format!("{} is false", c.formula),
            });
        }
    }

    ValidationReport::from_violations(violations)
}

fn check_feature(feature: &Feature, cfg: &Configuration, out: &mut Vec<Violation>) {
    let parent_on = cfg.contains(&feature.name);
    for group in &feature.children {
        for member in &group.members {
            if cfg.contains(&member.name) && !parent_on {
                out.push(Violation {
                    kind: ViolationKind::DanglingChild,
                    subject: member.name.clone(),
                    detail: format!("selected without its parent `{}`", feature.name),
                });
            }
        }
        if !parent_on {
            continue;
        }
        let chosen: Vec<&str> = group
            .members
            .iter()
            .map(|m| m.name.as_str())
            .filter(|n| cfg.contains(n))
            .collect();
        match group.kind {
            GroupKind::Mandatory if chosen.is_empty() => out.push(Violation {
                kind: ViolationKind::MandatoryMissing,
                subject: group.members[0].name.clone(),
                detail: format!("mandatory under selected `{}`", feature.name),
            }),
            GroupKind::Xor if chosen.len() != 1 => out.push(Violation {
                kind: ViolationKind::XorViolation,
                subject: feature.name.clone(),
                detail: format!(
                    "exactly one of [{}] must be selected, got {}",
                    member_list(&group.members),
                    chosen.len()
                ),
            }),
            GroupKind::Or if chosen.is_empty() => out.push(Violation {
                kind: ViolationKind::OrViolation,
                subject: feature.name.clone(),
                detail: format!(
                    "at least one of [{}] must be selected",
                    member_list(&group.members)
                ),
            }),
            _ => {}
        }
    }
    for group in &feature.children {
        for member in &group.members {
            check_feature(member, cfg, out);
        }
    }
}

fn member_list(members: &[Feature]) -> String {
    members
        .iter()
        .map(|m| m.name.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}
