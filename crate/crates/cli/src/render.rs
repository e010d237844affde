//! Plain-text output for `--format text`.

use std::fmt::Write;

use modelsel_core::feature_model::{Configuration, ValidationReport};
use modelsel_core::heuristics::{explain, Comparison, Recommendation};
use modelsel_core::profiler::DatasetProfile;
use modelsel_core::transition::{SelectionState, TransitionDecision};

pub fn profile(p: &DatasetProfile) -> String {
    let mut s = String::new();
    if let Some(name) = &p.dataset {
        let _ = writeln!(s, "dataset: {name}");
    }
    let _ = writeln!(s, "rows: {}", p.n_rows);
    let _ = writeln!(s, "columns: {}", p.n_columns);
    let width = p.column_types.keys().map(String::len).max().unwrap_or(0);
    for (name, ty) in &p.column_types {
        let marker = if p.target.as_deref() == Some(name) {
            "  (target)"
        } else {
            ""
        };
        let _ = writeln!(s, "  {name:<width$}  {ty}{marker}");
    }
    let q = &p.quality;
    let _ = writeln!(
        s,
        "missing data: {} (worst column {:.1}%)",
        yes_no(q.missing_data),
        q.missing_worst_fraction * 100.0
    );
    if q.outliers {
        let _ = writeln!(s, "outliers: yes ({})", q.outlier_columns.join(", "));
    } else {
        let _ = writeln!(s, "outliers: no");
    }
    match q.minority_ratio {
        Some(r) => {
            let _ = writeln!(s, "unbalanced: {} (minority {r:.3})", yes_no(q.unbalanced));
        }
        None => {
            let _ = writeln!(s, "unbalanced: {}", yes_no(q.unbalanced));
        }
    }
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn recommendation(rec: &Recommendation, with_trace: bool) -> String {
    let full = explain(rec).text;
    if with_trace {
        return full;
    }
    match full.find("trace:\n") {
        Some(i) => full[..i].to_string(),
        None => full,
    }
}

pub fn comparison(c: &Comparison) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "gpt:        {}", c.gpt.ranked.join(", "));
    let _ = writeln!(s, "cheatsheet: {}", c.cheatsheet.ranked.join(", "));
    let join = |set: &std::collections::BTreeSet<String>| {
        set.iter()
            .map(String::as_str)
            .collect::<Vec<_>>()
            .join(", ")
    };
    let _ = writeln!(s, "overlap:    {{{}}}", join(&c.overlap));
    let _ = writeln!(
        s,
        "with ensemble members: {{{}}}",
        join(&c.overlap_expanded)
    );
    s
}

pub fn validation(r: &ValidationReport) -> String {
    if r.valid {
        return "valid\n".to_string();
    }
    let mut s = format!("invalid: {} violation(s)\n", r.violations.len());
    for v in &r.violations {
        let _ = writeln!(s, "  {:?} {}: {}", v.kind, v.subject, v.detail);
    }
    s
}

pub fn enumeration(total: u64, configs: &[Configuration]) -> String {
    let mut s = String::new();
    for c in configs {
        let _ = writeln!(s, "{c}");
    }
    if (configs.len() as u64) < total {
        let _ = writeln!(s, "... {} of {total} shown", configs.len());
    } else {
        let _ = writeln!(s, "{total} configuration(s)");
    }
    s
}

pub fn session_start(state: &SelectionState) -> String {
    format!(
        "plan: {}\ncurrent: {}\n",
        state.plan().join(" -> "),
        state.current().unwrap_or("-")
    )
}

pub fn decision(d: &TransitionDecision, state: &SelectionState) -> String {
    let mut s = format!("{d}\n{}\n", d.rationale());
    if let TransitionDecision::Stop {
        best_so_far: Some(b),
        ..
    } = d
    {
        let _ = writeln!(
            s,
            "best so far: {} ({} {:.4})",
            b.model,
            state.primary(),
            b.value
        );
    }
    s
}
