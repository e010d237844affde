use crate::profiler::DatasetProfile;

/// Instruction text that follows the dataset, target and objective slots.
pub const PROMPT_INSTRUCTIONS: &str = "identify the most suitable machine learning model(s) to solve this issue. Explain your choice(s) and the underlying modeling assumptions and factors that guided your decision. Outline your decision-making process in detail. If multiple models are viable, rank them in order of preference, and describe the criteria for transitioning from one model to another in the evaluation process.";

/// Builds the model-selection question for a dataset.
///
/// A profile without a target yields the unsupervised form of the prompt.
/// An unnamed dataset is called `dataset.csv`.
pub fn generate_prompt(profile: &DatasetProfile, objective: &str) -> String {
    let dataset = profile.dataset.as_deref().unwrap_or("dataset.csv");
    let target = match &profile.target {
        Some(t) => format!("with the target variable in column {{'{t}'}}"),
        None => "with no target variable".to_string(),
    };
    format!(
        "Given the attached dataset {{{dataset}}}, {target}, and the objective of {objective}, {PROMPT_INSTRUCTIONS}"
    )
}
