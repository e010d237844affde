//! Rule-based machine-learning model selection.
//!
//! * [`feature_model`]: feature trees with cross-tree constraints, a text
//!   format, validation and brute-force enumeration.
//! * [`profiler`]: CSV ingestion and dataset profiling.
//! * [`heuristics`]: model catalog, metric selection, the two recommendation
//!   engines, explanation traces and prompt generation.
//! * [`transition`]: the iterative stop / advance / escalate state machine.

pub mod feature_model;
pub mod heuristics;
pub mod profiler;
pub mod transition;
