use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::Recommendation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Fired,
    FilteredOut,
    OrderedBy,
}

impl Verdict {
    fn label(self) -> &'static str {
        match self {
            Verdict::Fired => "fired",
            Verdict::FilteredOut => "filtered_out",
            Verdict::OrderedBy => "ordered_by",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub rule_id: String,
    pub verdict: Verdict,
    pub subject: String,
    pub rationale: String,
}

/// Ordered record of every rule decision behind a recommendation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExplanationTrace {
    pub entries: Vec<TraceEntry>,
}

impl ExplanationTrace {
    pub fn push(
        &mut self,
        rule_id: &str,
        verdict: Verdict,
        subject: &str,
        rationale: impl Into<String>,
    ) {
        self.entries.push(TraceEntry {
            rule_id: rule_id.to_string(),
            verdict,
            subject: subject.to_string(),
            rationale: rationale.into(),
        });
    }

    pub fn mentions(&self, subject: &str) -> bool {
        self.entries.iter().any(|e| e.subject == subject)
    }

    pub fn find(&self, rule_id: &str, subject: &str) -> Option<&TraceEntry> {
        self.entries
            .iter()
            .find(|e| e.rule_id == rule_id && e.subject == subject)
    }

    pub fn subjects(&self) -> std::collections::BTreeSet<&str> {
        self.entries.iter().map(|e| e.subject.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Rendered forms of a recommendation's trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Explanation {
    pub text: String,
    /// The trace as a JSON array.
    pub json: String,
}

pub fn explain(rec: &Recommendation) -> Explanation {
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} recommendation ({})",
        rec.heuristic, rec.problem_type
    );
    let _ = writeln!(text, "ranked:");
    for (i, name) in rec.ranked.iter().enumerate() {
        let _ = writeln!(text, "  {}. {name}", i + 1);
    }
    let metrics: Vec<&str> = rec.metric_set.metrics.iter().map(|m| m.id()).collect();
    let _ = writeln!(
        text,
        "metrics: {} (primary {})",
        metrics.join(", "),
        rec.metric_set.primary
    );
    let _ = writeln!(text, "transitions:");
    for note in &rec.transition_notes {
        let marker = if note.in_plan { ' ' } else { '?' };
        let _ = writeln!(
            text,
            "  {marker}{}. [{}] {}",
            note.step + 1,
            note.rule_id,
            note.note
        );
    }
    let _ = writeln!(text, "trace:");
    let rule_width = rec
        .trace
        .entries
        .iter()
        .map(|e| e.rule_id.len())
        .max()
        .unwrap_or(0);
    for e in &rec.trace.entries {
        let _ = writeln!(
            text,
            "  {:<12} {:<rule_width$}  {}: {}",
            e.verdict.label(),
            e.rule_id,
            e.subject,
            e.rationale
        );
    }
    Explanation {
        text,
        json: serde_json::to_string_pretty(&rec.trace).expect("trace serializes"),
    }
}
