use std::fmt::{self, Write};

use super::{Feature, FeatureModel, Formula};

/// Compound operands are always parenthesized, so printing and re-parsing
/// reproduces the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(f: &mut fmt::Formatter<'_>, x: &Formula) -> fmt::Result {
            if x.is_primary() {
                write!(f, "{x}")
            } else {
                write!(f, "({x})")
            }
        }
        fn joined(f: &mut fmt::Formatter<'_>, xs: &[Formula], op: &str) -> fmt::Result {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                operand(f, x)?;
            }
            Ok(())
        }
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Not(x) => {
                f.write_char('!')?;
                operand(f, x)
            }
            Formula::And(xs) => joined(f, xs, "&"),
            Formula::Or(xs) => joined(f, xs, "|"),
            Formula::Implies(a, b) => {
                operand(f, a)?;
                f.write_str(" => ")?;
                operand(f, b)
            }
            Formula::Iff(a, b) => {
                operand(f, a)?;
                f.write_str(" <=> ")?;
                operand(f, b)
            }
        }
    }
}

fn write_feature(out: &mut String, feature: &Feature, depth: usize) {
    out.push_str(&feature.name);
    if feature.children.is_empty() {
        return;
    }
    out.push_str(" {\n");
    let pad = "  ".repeat(depth + 1);
    for group in &feature.children {
        out.push_str(&pad);
        out.push_str(group.kind.keyword());
        out.push(' ');
        if group.kind.is_single() {
            write_feature(out, &group.members[0], depth + 1);
        } else {
            out.push_str("{\n");
            for member in &group.members {
                out.push_str(&"  ".repeat(depth + 2));
                write_feature(out, member, depth + 2);
                out.push('\n');
            }
            out.push_str(&pad);
            out.push('}');
        }
        out.push('\n');
    }
    out.push_str(&"  ".repeat(depth));
    out.push('}');
}

impl fmt::Display for FeatureModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::from("features ");
        write_feature(&mut out, self.root(), 0);
        out.push('\n');
        for c in self.constraints() {
            writeln!(out, "constraint {}: {}", c.name, c.formula)?;
        }
        f.write_str(&out)
    }
}
