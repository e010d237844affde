mod args;
mod config;
mod error;
mod render;

use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use modelsel_core::feature_model::{
    count_configurations, enumerate_configurations, parse_feature_model, validate_configuration,
    Configuration, FeatureModel,
};
use modelsel_core::heuristics::{
    compare, generate_prompt, recommend_cheatsheet, recommend_gpt, Heuristic, HeuristicConfig,
    Recommendation, Requirements,
};
use modelsel_core::profiler::{load_table, profile_dataset, DatasetProfile, LoadOptions};
use modelsel_core::transition::{init_session, MetricReport, SelectionState};
use serde::de::DeserializeOwned;
use serde::Serialize;

use args::{Cli, Command, Format, RequirementArgs, SessionCommand, ThresholdArgs};
use config::FileConfig;
use error::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("modelsel: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Output produced by a command, plus its exit code.
struct Outcome {
    json: serde_json::Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(value: &impl Serialize, text: String) -> Outcome {
        Outcome {
            json: serde_json::to_value(value).expect("output serializes"),
            text,
            code: 0,
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let (file_cfg, source) = FileConfig::load(cli.config.as_deref())?;
    if cli.verbose > 0 {
        match &source {
            Some(p) => eprintln!("modelsel: config from {}", p.display()),
            None => eprintln!("modelsel: default config"),
        }
    }
    let out = match &cli.command {
        Command::Profile(a) => {
            let bytes = std::fs::read(&a.csv).map_err(|e| CliError::io(&a.csv, e))?;
            let delimiter = u8::try_from(a.delimiter).map_err(|_| {
                CliError::Domain("delimiter must be a single ASCII character".into())
            })?;
            let table = load_table(
                &bytes,
                LoadOptions {
                    delimiter,
                    header: !a.no_header,
                },
            )
            .map_err(|e| CliError::syntax(&a.csv, e))?;
            let name = a
                .name
                .clone()
                .or_else(|| a.csv.file_name().map(|n| n.to_string_lossy().into_owned()));
            let mut profile = profile_dataset(&table, a.target.as_deref())?;
            profile.dataset = name;
            let text = render::profile(&profile);
            Outcome::ok(&profile, text)
        }
        Command::Recommend(a) => {
            let heuristic = Heuristic::parse(&a.heuristic).ok_or_else(|| {
                CliError::Domain(format!(
                    "unknown heuristic `{}` (expected gpt or cheatsheet)",
                    a.heuristic
                ))
            })?;
            let profile = load_profile(&a.profile)?;
            let reqs = requirements(&a.reqs)?;
            let cfg = heuristic_config(&file_cfg, &a.thresholds)?;
            let rec = match heuristic {
                Heuristic::Gpt => recommend_gpt(&profile, &reqs, &cfg)?,
                Heuristic::CheatSheet => recommend_cheatsheet(&profile, &reqs, &cfg)?,
            };
            let text = render::recommendation(&rec, cli.verbose > 0);
            Outcome::ok(&rec, text)
        }
        Command::Compare(a) => {
            let profile = load_profile(&a.profile)?;
            let reqs = requirements(&a.reqs)?;
            let cfg = heuristic_config(&file_cfg, &a.thresholds)?;
            let cmp = compare(
                recommend_gpt(&profile, &reqs, &cfg)?,
                recommend_cheatsheet(&profile, &reqs, &cfg)?,
            );
            let text = render::comparison(&cmp);
            Outcome::ok(&cmp, text)
        }
        Command::Validate(a) => {
            let fm = load_model(&a.model)?;
            let config =
                Configuration::new(a.config.iter().map(|s| s.trim()).filter(|s| !s.is_empty()));
            let report = validate_configuration(&fm, &config);
            let text = render::validation(&report);
            let code = if report.valid { 0 } else { 1 };
            Outcome {
                code,
                ..Outcome::ok(&report, text)
            }
        }
        Command::Enumerate(a) => {
            let fm = load_model(&a.model)?;
            let total = count_configurations(&fm)?;
            let configs = enumerate_configurations(&fm, a.limit)?;
            let text = render::enumeration(total, &configs);
            let json = serde_json::json!({
                "total": total,
                "truncated": (configs.len() as u64) < total,
                "configurations": configs,
            });
            Outcome::ok(&json, text)
        }
        Command::Session(SessionCommand::Start(a)) => {
            let rec: Recommendation = load_json(&a.recommendation)?;
            let policy = config::apply_policy(file_cfg.transition.clone(), &a.policy)?;
            let state = init_session(rec, policy)?;
            if let Some(out) = &a.out {
                write_json(out, &state)?;
            }
            let text = render::session_start(&state);
            Outcome::ok(&state, text)
        }
        Command::Session(SessionCommand::Observe(a)) => {
            let state: SelectionState = load_json(&a.state)?;
            state.check()?;
            let report: MetricReport = load_json(&a.report)?;
            let (state, decision) = state.observe(report)?;
            if let Some(out) = &a.out {
                write_json(out, &state)?;
            }
            let text = render::decision(&decision, &state);
            let json = serde_json::json!({ "decision": decision, "state": state });
            Outcome::ok(&json, text)
        }
        Command::Prompt(a) => {
            let profile = load_profile(&a.profile)?;
            let prompt = generate_prompt(&profile, &a.objective);
            let json = serde_json::json!({ "prompt": prompt });
            Outcome::ok(&json, format!("{prompt}\n"))
        }
    };
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&out.json).expect("output serializes")
        ),
        Format::Text => print!("{}", out.text),
    }
    Ok(out.code)
}

pub(crate) fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read_text(path)?).map_err(|e| CliError::syntax(path, e))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("output serializes");
    std::fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
}

fn load_profile(path: &Path) -> Result<DatasetProfile, CliError> {
    let profile: DatasetProfile = load_json(path)?;
    profile.check()?;
    Ok(profile)
}

fn load_model(path: &Path) -> Result<FeatureModel, CliError> {
    parse_feature_model(&read_text(path)?).map_err(|e| CliError::syntax(path, e))
}

fn requirements(a: &RequirementArgs) -> Result<Requirements, CliError> {
    let requested_problem = a
        .problem
        .as_deref()
        .map(|p| {
            serde_json::from_value(serde_json::Value::String(p.to_string())).map_err(|_| {
                CliError::Domain(format!(
                    "unknown problem type `{p}` (expected binary_classification, multiclass_classification, regression, clustering or dimensionality_reduction)"
                ))
            })
        })
        .transpose()?;
    Ok(Requirements {
        nonlinear_suspected: a.nonlinear,
        limited_resources: a.limited_resources,
        interpretability_required: a.interpretability,
        multicollinearity_suspected: a.multicollinearity,
        few_important_features: a.few_important_features,
        requested_problem,
        ethical_flags: a.ethical.iter().cloned().collect(),
        objective: a.objective.clone(),
    })
}

fn heuristic_config(file: &FileConfig, t: &ThresholdArgs) -> Result<HeuristicConfig, CliError> {
    let cfg = config::apply_thresholds(file.heuristics.clone(), t);
    cfg.check()?;
    Ok(cfg)
}
