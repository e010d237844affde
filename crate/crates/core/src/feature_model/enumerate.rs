//! Brute-force enumeration of valid configurations.
//!
//! Feature `i` in pre-order maps to bit `i` of a mask, and masks are walked in
//! ascending numeric order. The model is compiled to bit operations here
//! rather than reusing [`validate_configuration`](super::validate_configuration),
//! so the two stay independent checks of each other.

use rayon::prelude::*;

use super::{Configuration, Feature, FeatureModel, Formula, GroupKind, ModelError};

/// Largest model (in features) the enumerator accepts.
pub const ENUMERATION_LIMIT: usize = 24;

const CHUNK: u64 = 1 << 12;
const CHUNKS_PER_WINDOW: u64 = 256;

enum Bits {
    Atom(u32),
    Not(Box<Bits>),
    And(Vec<Bits>),
    Or(Vec<Bits>),
    Implies(Box<Bits>, Box<Bits>),
    Iff(Box<Bits>, Box<Bits>),
}

impl Bits {
    fn compile(f: &Formula, fm: &FeatureModel) -> Bits {
        let sub = |x: &Formula| Box::new(Bits::compile(x, fm));
        match f {
            Formula::Atom(name) => Bits::Atom(fm.position(name).expect("atoms checked") as u32),
            Formula::Not(x) => Bits::Not(sub(x)),
            Formula::And(xs) => Bits::And(xs.iter().map(|x| Bits::compile(x, fm)).collect()),
            Formula::Or(xs) => Bits::Or(xs.iter().map(|x| Bits::compile(x, fm)).collect()),
            Formula::Implies(a, b) => Bits::Implies(sub(a), sub(b)),
            Formula::Iff(a, b) => Bits::Iff(sub(a), sub(b)),
        }
    }

    fn eval(&self, mask: u64) -> bool {
        match self {
            Bits::Atom(i) => mask >> i & 1 == 1,
            Bits::Not(x) => !x.eval(mask),
            Bits::And(xs) => xs.iter().all(|x| x.eval(mask)),
            Bits::Or(xs) => xs.iter().any(|x| x.eval(mask)),
            Bits::Implies(a, b) => !a.eval(mask) || b.eval(mask),
            Bits::Iff(a, b) => a.eval(mask) == b.eval(mask),
        }
    }
}

struct Group {
    kind: GroupKind,
    parent: u64,
    members: u64,
}

struct Compiled {
    /// `(child bit, parent bit)` for every non-root feature.
    edges: Vec<(u64, u64)>,
    groups: Vec<Group>,
    constraints: Vec<Bits>,
}

impl Compiled {
    fn new(fm: &FeatureModel) -> Self {
        let mut edges = Vec::new();
        let mut groups = Vec::new();
        fn walk(
            fm: &FeatureModel,
            f: &Feature,
            edges: &mut Vec<(u64, u64)>,
            groups: &mut Vec<Group>,
        ) {
            let parent = 1u64 << fm.position(&f.name).unwrap();
            for g in &f.children {
                let mut members = 0;
                for m in &g.members {
                    let bit = 1u64 << fm.position(&m.name).unwrap();
                    edges.push((bit, parent));
                    members |= bit;
                    walk(fm, m, edges, groups);
                }
                groups.push(Group {
                    kind: g.kind,
                    parent,
                    members,
                });
            }
        }
        walk(fm, fm.root(), &mut edges, &mut groups);
        let constraints = fm
            .constraints()
            .iter()
            .map(|c| Bits::compile(&c.formula, fm))
            .collect();
        Compiled {
            edges,
            groups,
            constraints,
        }
    }

    fn accepts(&self, mask: u64) -> bool {
        if mask & 1 == 0 {
            return false;
        }
        if self
            .edges
            .iter()
            .any(|&(child, parent)| mask & child != 0 && mask & parent == 0)
        {
            return false;
        }
        for g in &self.groups {
            if mask & g.parent == 0 {
                continue;
            }
            let picked = (mask & g.members).count_ones();
            let ok = match g.kind {
                GroupKind::Mandatory => picked == 1,
                GroupKind::Optional => true,
                GroupKind::Xor => picked == 1,
                GroupKind::Or => picked >= 1,
            };
            if !ok {
                return false;
            }
        }
        self.constraints.iter().all(|c| c.eval(mask))
    }
}

fn check_size(fm: &FeatureModel) -> Result<u64, ModelError> {
    let n = fm.feature_count();
    if n > ENUMERATION_LIMIT {
        return Err(ModelError::TooLarge {
            features: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(1u64 << n)
}

fn to_configuration(fm: &FeatureModel, mask: u64) -> Configuration {
    Configuration::new(
        fm.feature_names()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, name)| name.clone()),
    )
}

/// All valid configurations, ordered by selection bitmask, truncated at `limit`.
pub fn enumerate_configurations(
    fm: &FeatureModel,
    limit: usize,
) -> Result<Vec<Configuration>, ModelError> {
    let total = check_size(fm)?;
    let compiled = Compiled::new(fm);
    let mut out = Vec::new();
    let mut start = 0u64;
    while start < total && out.len() < limit {
        let end = total.min(start + CHUNK * CHUNKS_PER_WINDOW);
        let chunks: Vec<u64> = (start..end).step_by(CHUNK as usize).collect();
        let found: Vec<Vec<u64>> = chunks
            .par_iter()
            .map(|&lo| {
                (lo..end.min(lo + CHUNK))
                    .filter(|&m| compiled.accepts(m))
                    .collect()
            })
            .collect();
        for mask in found.into_iter().flatten() {
            if out.len() == limit {
                break;
            }
            out.push(to_configuration(fm, mask));
        }
        start = end;
    }
    Ok(out)
}

/// Number of valid configurations.
pub fn count_configurations(fm: &FeatureModel) -> Result<u64, ModelError> {
    let total = check_size(fm)?;
    let compiled = Compiled::new(fm);
    Ok((0..total)
        .into_par_iter()
        .filter(|&m| compiled.accepts(m))
        .count() as u64)
}
