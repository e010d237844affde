use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "modelsel",
    version,
    about = "Rule-based machine-learning model selection"
)]
pub struct Cli {
    /// Heuristic and transition settings (TOML, or JSON when the file ends in
    /// .json). Falls back to $MODELSEL_CONFIG.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Repeat for more diagnostics on stderr.
    #[arg(short, long, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Profile a CSV file.
    Profile(ProfileArgs),
    /// Rank models for a profiled dataset.
    Recommend(RecommendArgs),
    /// Run both heuristics and intersect their rankings.
    Compare(CompareArgs),
    /// Check a configuration against a feature model.
    Validate(ValidateArgs),
    /// List the valid configurations of a feature model.
    Enumerate(EnumerateArgs),
    /// Drive a model-selection session.
    #[command(subcommand)]
    Session(SessionCommand),
    /// Print the model-selection question for a dataset.
    Prompt(PromptArgs),
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    pub csv: PathBuf,
    #[arg(long)]
    pub target: Option<String>,
    /// Dataset name recorded in the profile; defaults to the file name.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,
    /// The first row is data; columns are named col_1, col_2, ...
    #[arg(long)]
    pub no_header: bool,
}

#[derive(Debug, Args)]
pub struct RequirementArgs {
    /// Non-linear relationships are suspected.
    #[arg(long)]
    pub nonlinear: bool,
    #[arg(long)]
    pub limited_resources: bool,
    #[arg(long)]
    pub interpretability: bool,
    #[arg(long)]
    pub multicollinearity: bool,
    /// Only a few features are expected to matter.
    #[arg(long)]
    pub few_important_features: bool,
    /// Override the problem type inferred from the target, e.g.
    /// dimensionality_reduction.
    #[arg(long, value_name = "TYPE")]
    pub problem: Option<String>,
    /// Ethical concern to record in the trace (repeatable).
    #[arg(long = "ethical", value_name = "FLAG")]
    pub ethical: Vec<String>,
    #[arg(long, default_value = "")]
    pub objective: String,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long, value_name = "N")]
    pub min_size_requirement: Option<usize>,
    #[arg(long, value_name = "N")]
    pub max_features_allowed: Option<usize>,
    #[arg(long, value_name = "N")]
    pub large_dataset_threshold: Option<usize>,
    #[arg(long, value_name = "N")]
    pub svm_row_limit: Option<usize>,
    #[arg(long, value_name = "N")]
    pub cheatsheet_100k_boundary: Option<usize>,
    #[arg(long, value_name = "N")]
    pub cheatsheet_10k_boundary: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RecommendArgs {
    #[arg(long, value_name = "FILE")]
    pub profile: PathBuf,
    /// gpt or cheatsheet.
    #[arg(long, default_value = "gpt")]
    pub heuristic: String,
    #[command(flatten)]
    pub reqs: RequirementArgs,
    #[command(flatten)]
    pub thresholds: ThresholdArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, value_name = "FILE")]
    pub profile: PathBuf,
    #[command(flatten)]
    pub reqs: RequirementArgs,
    #[command(flatten)]
    pub thresholds: ThresholdArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, value_name = "FML")]
    pub model: PathBuf,
    /// Selected feature names, comma separated.
    #[arg(long, value_name = "NAMES", value_delimiter = ',')]
    pub config: Vec<String>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, value_name = "FML")]
    pub model: PathBuf,
    /// Maximum number of configurations to list.
    #[arg(long, default_value_t = 1000)]
    pub limit: usize,
}

#[derive(Debug, Subcommand)]
pub enum SessionCommand {
    /// Start a session from a recommendation.
    Start(StartArgs),
    /// Feed a metric report to a session.
    Observe(ObserveArgs),
}

#[derive(Debug, Args)]
pub struct PolicyArgs {
    /// Satisfaction threshold, e.g. roc_auc=0.9 (repeatable).
    #[arg(long = "threshold", value_name = "METRIC=VALUE")]
    pub thresholds: Vec<String>,
    #[arg(long, value_name = "X")]
    pub overfit_cv_std: Option<f64>,
    #[arg(long, value_name = "X")]
    pub overfit_gap: Option<f64>,
    #[arg(long, value_name = "N")]
    pub max_steps: Option<usize>,
    /// Judge models on the CV mean instead of the test-set metric.
    #[arg(long)]
    pub use_cv_mean: bool,
}

#[derive(Debug, Args)]
pub struct StartArgs {
    #[arg(long, value_name = "FILE")]
    pub recommendation: PathBuf,
    #[command(flatten)]
    pub policy: PolicyArgs,
    /// Also write the state to FILE.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ObserveArgs {
    #[arg(long, value_name = "FILE")]
    pub state: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub report: PathBuf,
    /// Also write the updated state to FILE (may equal --state).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PromptArgs {
    #[arg(long, value_name = "FILE")]
    pub profile: PathBuf,
    #[arg(long, default_value = "")]
    pub objective: String,
}
