//! Helpers shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use indexmap::IndexMap;
use modelsel_core::feature_model::{
    ChildGroup, Configuration, Constraint, Feature, FeatureModel, Formula, GroupKind,
};
use modelsel_core::heuristics::Requirements;
use modelsel_core::profiler::{ColumnType, DatasetProfile, ProblemType, QualityFlags};
use modelsel_core::transition::MetricReport;
use proptest::prelude::*;
use proptest::sample::Index;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(name: &str) -> PathBuf {
    fixtures_dir().join(name)
}

pub fn read_fixture(name: &str) -> String {
    let path = fixture(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// `heart`, `diabetes` or `cars`.
pub fn profile(name: &str) -> DatasetProfile {
    serde_json::from_str(&read_fixture(&format!("{name}.profile.json"))).expect("profile fixture")
}

pub fn reference_reports(name: &str) -> Vec<MetricReport> {
    serde_json::from_str(&read_fixture(&format!("reference_metrics/{name}.json")))
        .expect("reference metrics fixture")
}

pub fn reference_report(name: &str, model: &str) -> MetricReport {
    reference_reports(name)
        .into_iter()
        .find(|r| r.model == model)
        .unwrap_or_else(|| panic!("no {model} in {name} reference metrics"))
}

/// The heart-failure CSV: `$MODELSEL_HEART_CSV` if set, else the bundled
/// stand-in.
pub fn heart_csv() -> PathBuf {
    std::env::var_os("MODELSEL_HEART_CSV")
        .map(PathBuf::from)
        .unwrap_or_else(|| fixture("heart_failure_clinical_records_dataset.csv"))
}

/// Requirements the three bundled scenarios are run with.
pub fn scenario_requirements(name: &str) -> Requirements {
    Requirements {
        nonlinear_suspected: name != "heart",
        ..Requirements::default()
    }
}

pub fn fml_fixtures() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures dir")
        .filter_map(|e| {
            let path = e.ok()?.path();
            (path.extension()? == "fml").then(|| {
                let name = path.file_name().unwrap().to_string_lossy().into_owned();
                (name, std::fs::read_to_string(&path).unwrap())
            })
        })
        .collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Validity oracle, written directly from the group semantics.

fn holds(f: &Formula, sel: &BTreeSet<String>) -> bool {
    match f {
        Formula::Atom(a) => sel.contains(a),
        Formula::Not(g) => !holds(g, sel),
        Formula::And(gs) => gs.iter().all(|g| holds(g, sel)),
        Formula::Or(gs) => gs.iter().any(|g| holds(g, sel)),
        Formula::Implies(a, b) => !holds(a, sel) || holds(b, sel),
        Formula::Iff(a, b) => holds(a, sel) == holds(b, sel),
    }
}

fn subtree_ok(f: &Feature, parent_on: bool, sel: &BTreeSet<String>) -> bool {
    let on = sel.contains(&f.name);
    if on && !parent_on {
        return false;
    }
    f.children.iter().all(|g| {
        let k = g.members.iter().filter(|m| sel.contains(&m.name)).count();
        let group_ok = !on
            || match g.kind {
                GroupKind::Mandatory => k == g.members.len(),
                GroupKind::Optional => true,
                GroupKind::Xor => k == 1,
                GroupKind::Or => k >= 1,
            };
        group_ok && g.members.iter().all(|m| subtree_ok(m, on, sel))
    })
}

pub fn oracle_valid(fm: &FeatureModel, sel: &BTreeSet<String>) -> bool {
    sel.iter().all(|n| fm.contains(n))
        && sel.contains(&fm.root().name)
        && subtree_ok(fm.root(), true, sel)
        && fm.constraints().iter().all(|c| holds(&c.formula, sel))
}

/// Every subset of the model's features, in ascending bitmask order with
/// bit i standing for the i-th feature in pre-order.
pub fn all_subsets(fm: &FeatureModel) -> impl Iterator<Item = Configuration> + '_ {
    let names = fm.feature_names();
    (0u64..1 << names.len()).map(move |mask| {
        Configuration::new(
            names
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, n)| n.clone()),
        )
    })
}

// ---------------------------------------------------------------------------
// Random feature models.

fn name(i: usize) -> String {
    format!("F{i}")
}

pub fn arb_formula(n_features: usize) -> impl Strategy<Value = Formula> {
    let leaf = (0..n_features).prop_map(|i| Formula::atom(name(i)));
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::And),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::Or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

fn build(i: usize, links: &[(usize, u8)], n: usize) -> Feature {
    let kids: Vec<(usize, u8)> = (1..n)
        .filter(|&j| links[j - 1].0 == i)
        .map(|j| (j, links[j - 1].1))
        .collect();
    let mut f = Feature::leaf(name(i));
    let of_kind = |k: u8| -> Vec<usize> { kids.iter().filter(|c| c.1 == k).map(|c| c.0).collect() };
    for j in of_kind(0) {
        f.children.push(ChildGroup {
            kind: GroupKind::Mandatory,
            members: vec![build(j, links, n)],
        });
    }
    let (xor, or) = (of_kind(2), of_kind(3));
    let mut optional = of_kind(1);
    for (kind, members) in [(GroupKind::Xor, xor), (GroupKind::Or, or)] {
        if members.len() >= 2 {
            f.children.push(ChildGroup {
                kind,
                members: members.iter().map(|&j| build(j, links, n)).collect(),
            });
        } else {
            optional.extend(members);
        }
    }
    for j in optional {
        f.children.push(ChildGroup {
            kind: GroupKind::Optional,
            members: vec![build(j, links, n)],
        });
    }
    f
}

/// Feature models with `1..=max_features` features named `F0..`, random
/// group structure and up to three cross-tree constraints.
pub fn arb_model(max_features: usize) -> impl Strategy<Value = FeatureModel> {
    (1..=max_features).prop_flat_map(|n| {
        let links = prop::collection::vec((any::<Index>(), 0u8..4), n - 1);
        let constraints = prop::collection::vec(arb_formula(n), 0..4);
        (links, constraints).prop_map(move |(links, formulas)| {
            // Feature j+1 hangs under an earlier feature, so the tree is
            // connected and acyclic.
            let links: Vec<(usize, u8)> = links
                .iter()
                .enumerate()
                .map(|(j, (idx, kind))| (idx.index(j + 1), *kind))
                .collect();
            let root = build(0, &links, n);
            let constraints = formulas
                .into_iter()
                .enumerate()
                .map(|(k, formula)| Constraint {
                    name: format!("c{k}"),
                    formula,
                })
                .collect();
            FeatureModel::new(root, constraints).expect("generated model is well formed")
        })
    })
}

// ---------------------------------------------------------------------------
// Random profiles and requirements.

pub fn arb_target_type() -> impl Strategy<Value = Option<ColumnType>> {
    prop_oneof![
        Just(None),
        Just(Some(ColumnType::Numerical)),
        Just(Some(ColumnType::BinaryCategorical)),
        Just(Some(ColumnType::Categorical)),
    ]
}

pub fn arb_quality() -> impl Strategy<Value = QualityFlags> {
    (
        any::<bool>(),
        0.0..0.5f64,
        any::<bool>(),
        any::<bool>(),
        0.01..0.5f64,
    )
        .prop_map(
            |(missing, worst, outliers, unbalanced, minority)| QualityFlags {
                missing_data: missing,
                missing_worst_fraction: if missing { worst.max(0.01) } else { 0.0 },
                outliers,
                outlier_columns: if outliers { vec!["x0".into()] } else { vec![] },
                noise: false,
                unbalanced,
                minority_ratio: Some(minority),
            },
        )
}

pub fn make_profile(
    n_rows: usize,
    n_features: usize,
    target_type: Option<ColumnType>,
    quality: QualityFlags,
) -> DatasetProfile {
    let mut column_types = IndexMap::new();
    for i in 0..n_features {
        column_types.insert(format!("x{i}"), ColumnType::Numerical);
    }
    if let Some(t) = target_type {
        column_types.insert("y".to_string(), t);
    }
    let quality = QualityFlags {
        minority_ratio: match target_type {
            Some(t) if t.is_categorical() => quality.minority_ratio,
            _ => None,
        },
        unbalanced: quality.unbalanced && matches!(target_type, Some(t) if t.is_categorical()),
        ..quality
    };
    DatasetProfile {
        dataset: Some("data.csv".into()),
        n_rows,
        n_columns: column_types.len(),
        column_types,
        target: target_type.map(|_| "y".to_string()),
        target_type,
        quality,
    }
}

pub fn arb_profile() -> impl Strategy<Value = DatasetProfile> {
    (
        prop_oneof![50usize..1_000, 1_000usize..200_000],
        1usize..30,
        arb_target_type(),
        arb_quality(),
    )
        .prop_map(|(n, f, t, q)| make_profile(n, f, t, q))
}

pub fn arb_requirements() -> impl Strategy<Value = Requirements> {
    (
        any::<[bool; 5]>(),
        prop_oneof![
            3 => Just(None),
            1 => Just(Some(ProblemType::DimensionalityReduction)),
            1 => Just(Some(ProblemType::Clustering)),
        ],
        prop::collection::btree_set("[a-z]{3,8}", 0..3),
    )
        .prop_map(|(b, requested_problem, ethical_flags)| Requirements {
            nonlinear_suspected: b[0],
            limited_resources: b[1],
            interpretability_required: b[2],
            multicollinearity_suspected: b[3],
            few_important_features: b[4],
            requested_problem,
            ethical_flags,
            objective: String::new(),
        })
}
