mod common;

use common::{arb_profile, arb_requirements, profile, reference_report, reference_reports};
use modelsel_core::heuristics::{
    recommend_cheatsheet, recommend_gpt, HeuristicConfig, Metric, Recommendation, Requirements,
};
use modelsel_core::transition::{
    init_session, replay, AdvanceReason, MetricReport, ScoreSource, SelectionState, StopReason,
    TransitionDecision, TransitionError, TransitionPolicy,
};
use proptest::prelude::*;

fn heart_gpt() -> Recommendation {
    recommend_gpt(
        &profile("heart"),
        &Requirements::default(),
        &HeuristicConfig::default(),
    )
    .unwrap()
}

fn heart_reports() -> Vec<MetricReport> {
    [
        "LogisticRegression",
        "RandomForestClassifier",
        "GradientBoostingClassifier",
    ]
    .into_iter()
    .map(|m| reference_report("heart", m))
    .collect()
}

fn shown(ds: &[TransitionDecision]) -> Vec<String> {
    ds.iter().map(ToString::to_string).collect()
}

#[test]
fn reference_replay_under_strict_threshold() {
    let policy = TransitionPolicy::default().with_threshold(Metric::RocAuc, 0.90);
    let (state, ds) = replay(heart_gpt(), policy, heart_reports()).unwrap();
    assert_eq!(
        shown(&ds),
        [
            "Advance(RandomForestClassifier)",
            "Advance(GradientBoostingClassifier)",
            "Stop(Exhausted)"
        ]
    );
    match &ds[2] {
        TransitionDecision::Stop {
            reason: StopReason::Exhausted,
            best_so_far: Some(best),
            ..
        } => {
            assert_eq!(best.model, "RandomForestClassifier");
            assert_eq!(best.value, 0.8896);
        }
        other => panic!("{other:?}"),
    }
    assert!(state.finished);
    assert_eq!(state.history.len(), 3);
}

#[test]
fn reference_replay_under_defaults() {
    let (state, ds) = replay(
        heart_gpt(),
        TransitionPolicy::default(),
        heart_reports().into_iter().take(1),
    )
    .unwrap();
    assert_eq!(shown(&ds), ["Stop(Satisfied)"]);
    assert!(ds[0].rationale().starts_with("[satisfaction]"));
    assert!(matches!(
        state.observe(heart_reports()[1].clone()),
        Err(TransitionError::Finished)
    ));
}

#[test]
fn reports_for_the_wrong_model_are_rejected() {
    let state = init_session(heart_gpt(), TransitionPolicy::default()).unwrap();
    assert!(matches!(
        state.observe(reference_report("heart", "SVC")),
        Err(TransitionError::WrongModel { .. })
    ));
}

#[test]
fn missing_primary_metric() {
    let state = init_session(heart_gpt(), TransitionPolicy::default()).unwrap();
    let mut r = heart_reports().remove(0);
    r.metrics.remove("roc_auc");
    assert!(matches!(
        state.observe(r),
        Err(TransitionError::MissingMetric { .. })
    ));
}

#[test]
fn cv_mean_as_score() {
    let policy = TransitionPolicy {
        score_source: ScoreSource::CvMean,
        ..TransitionPolicy::default()
    };
    // LogisticRegression's cv mean 0.8409 misses roc_auc 0.85.
    let state = init_session(heart_gpt(), policy).unwrap();
    let (_, d) = state.observe(heart_reports().remove(0)).unwrap();
    assert_eq!(d.to_string(), "Advance(RandomForestClassifier)");
}

#[test]
fn cars_replay_uses_r2() {
    let cars = recommend_gpt(
        &profile("cars"),
        &common::scenario_requirements("cars"),
        &HeuristicConfig::default(),
    )
    .unwrap();
    let reports: Vec<_> = cars
        .transition_plan
        .iter()
        .take(3)
        .map(|m| reference_report("cars", m))
        .collect();
    let (state, ds) = replay(cars, TransitionPolicy::default(), reports).unwrap();
    assert_eq!(state.primary(), Metric::R2);
    // LinearRegression is the first planned model with r2 >= 0.60.
    assert_eq!(
        shown(&ds),
        [
            "Advance(GradientBoostingRegressor)",
            "Advance(LinearRegression)",
            "Stop(Satisfied)"
        ]
    );
    assert_eq!(state.best_so_far.unwrap().model, "LinearRegression");
}

#[test]
fn reference_reports_are_valid() {
    for name in ["heart", "diabetes", "cars"] {
        for r in reference_reports(name) {
            r.check()
                .unwrap_or_else(|e| panic!("{name}/{}: {e}", r.model));
        }
    }
}

#[test]
fn overfitting_without_robust_alternative_advances() {
    let state = init_session(heart_gpt(), TransitionPolicy::default()).unwrap();
    let mut lr = heart_reports().remove(0);
    lr.metrics.insert("roc_auc".into(), 0.5);
    let (state, _) = state.observe(lr).unwrap();
    let mut rf = heart_reports().remove(1);
    rf.cv_mean = Some(0.99);
    let (_, d) = state.observe(rf).unwrap();
    assert!(matches!(
        d,
        TransitionDecision::Advance {
            reason: AdvanceReason::OverfittingNoRobustAlternative,
            ..
        }
    ));
}

#[test]
fn state_json_round_trip() {
    let policy = TransitionPolicy::default().with_threshold(Metric::RocAuc, 0.90);
    let (state, _) = replay(heart_gpt(), policy, heart_reports().into_iter().take(2)).unwrap();
    let text = serde_json::to_string(&state).unwrap();
    let back: SelectionState = serde_json::from_str(&text).unwrap();
    back.check().unwrap();
    assert_eq!(state, back);
}

#[test]
fn invalid_policies() {
    for policy in [
        TransitionPolicy {
            max_steps: Some(0),
            ..TransitionPolicy::default()
        },
        TransitionPolicy {
            overfit_gap: -1.0,
            ..TransitionPolicy::default()
        },
        TransitionPolicy::default().with_threshold(Metric::RocAuc, f64::NAN),
    ] {
        assert!(init_session(heart_gpt(), policy).is_err());
    }
}

// ---------------------------------------------------------------------------

/// Scores for successive observations: (primary value, cv gap, cv spread).
type Script = Vec<(f64, f64, f64)>;

fn arb_script() -> impl Strategy<Value = Script> {
    prop::collection::vec((0.0..1.0f64, -0.05..0.2f64, 0.0..0.1f64), 8)
}

fn arb_recommendation() -> impl Strategy<Value = Recommendation> {
    (arb_profile(), arb_requirements(), any::<bool>()).prop_filter_map(
        "no candidates",
        |(p, reqs, cheat)| {
            let cfg = HeuristicConfig::default();
            if cheat {
                recommend_cheatsheet(&p, &reqs, &cfg).ok()
            } else {
                recommend_gpt(&p, &reqs, &cfg).ok()
            }
        },
    )
}

fn report_for(state: &SelectionState, (v, gap, spread): (f64, f64, f64)) -> MetricReport {
    let model = state.current().unwrap().to_string();
    let metrics = state
        .recommendation
        .metric_set
        .metrics
        .iter()
        .map(|m| (m.id().to_string(), v))
        .collect();
    MetricReport {
        model,
        params: Default::default(),
        metrics,
        cv_mean: Some(v + gap),
        cv_scores: Some(vec![v + gap - spread, v + gap + spread]),
        test_score: v,
    }
}

/// Runs a session to its stop, feeding scripted scores.
fn run(
    rec: Recommendation,
    policy: TransitionPolicy,
    script: &Script,
) -> (SelectionState, Vec<TransitionDecision>, Vec<MetricReport>) {
    let mut state = init_session(rec, policy).unwrap();
    let mut decisions = Vec::new();
    let mut reports = Vec::new();
    for &step in script {
        if state.finished {
            break;
        }
        let r = report_for(&state, step);
        reports.push(r.clone());
        let (s, d) = state.observe(r).unwrap();
        state = s;
        decisions.push(d);
    }
    (state, decisions, reports)
}

fn arb_policy() -> impl Strategy<Value = TransitionPolicy> {
    (
        0.0..1.0f64,
        0.01..0.2f64,
        0.01..0.2f64,
        prop::option::of(1usize..6),
    )
        .prop_map(|(t, std, gap, max_steps)| TransitionPolicy {
            overfit_cv_std: std,
            overfit_gap: gap,
            max_steps,
            ..TransitionPolicy::default()
                .with_threshold(Metric::RocAuc, t)
                .with_threshold(Metric::Accuracy, t)
                .with_threshold(Metric::R2, t)
                .with_threshold(Metric::Silhouette, t)
                .with_threshold(Metric::ExplainedVarianceRatio, t)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cursor_only_moves_forward(
        rec in arb_recommendation(),
        policy in arb_policy(),
        script in arb_script(),
    ) {
        let plan_len = rec.transition_plan.len();
        let mut state = init_session(rec, policy).unwrap();
        for &step in &script {
            if state.finished {
                break;
            }
            let before = state.cursor;
            let (next, d) = state.observe(report_for(&state, step)).unwrap();
            prop_assert!(next.cursor >= before);
            prop_assert!(next.cursor < plan_len);
            prop_assert_eq!(next.history.len(), state.history.len() + 1);
            match &d {
                TransitionDecision::Stop { .. } => {
                    prop_assert!(next.finished);
                    prop_assert_eq!(next.cursor, before);
                }
                TransitionDecision::Advance { next: m, .. }
                | TransitionDecision::Escalate { next: m, .. } => {
                    prop_assert!(next.cursor > before);
                    prop_assert_eq!(next.current(), Some(m.as_str()));
                }
            }
            next.check().unwrap();
            state = next;
        }
        // Every session ends within the plan length.
        prop_assert!(state.finished || script.len() < plan_len);
    }

    #[test]
    fn replay_is_deterministic(
        rec in arb_recommendation(),
        policy in arb_policy(),
        script in arb_script(),
    ) {
        let (state, decisions, reports) = run(rec.clone(), policy.clone(), &script);
        let (a, da) = replay(rec.clone(), policy.clone(), reports.clone()).unwrap();
        let (b, db) = replay(rec, policy, reports).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&da, &db);
        prop_assert_eq!(&a, &state);
        prop_assert_eq!(&da, &decisions);
    }

    #[test]
    fn raising_the_threshold_never_stops_sooner(
        rec in arb_recommendation(),
        policy in arb_policy(),
        script in arb_script(),
        bump in 0.0..0.5f64,
    ) {
        let primary = rec.metric_set.primary;
        let Some(&t) = policy.satisfaction.get(primary.id()) else { return Ok(()) };
        prop_assume!(primary.higher_is_better());
        let strict = policy.clone().with_threshold(primary, (t + bump).min(1.0));
        let (_, loose_d, _) = run(rec.clone(), policy, &script);
        let (_, strict_d, _) = run(rec, strict, &script);
        prop_assert!(strict_d.len() >= loose_d.len());
        // Both runs take the same steps until the looser one stops.
        let n = loose_d.len() - 1;
        prop_assert_eq!(shown(&loose_d[..n]), shown(&strict_d[..n]));
    }

    #[test]
    fn best_so_far_is_the_best_observed(
        rec in arb_recommendation(),
        policy in arb_policy(),
        script in arb_script(),
    ) {
        let (state, _, reports) = run(rec, policy, &script);
        let primary = state.primary();
        let values: Vec<(String, f64)> = reports
            .iter()
            .map(|r| (r.model.clone(), r.metrics[primary.id()]))
            .collect();
        let mut best: Option<&(String, f64)> = None;
        for v in &values {
            let better = match best {
                None => true,
                Some(b) if primary.higher_is_better() => v.1 > b.1,
                Some(b) => v.1 < b.1,
            };
            if better {
                best = Some(v);
            }
        }
        let got = state.best_so_far.unwrap();
        let want = best.unwrap();
        prop_assert_eq!(&got.model, &want.0);
        prop_assert_eq!(got.value, want.1);
    }
}
