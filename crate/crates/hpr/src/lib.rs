//! File formats, JSON reports, experiment batches and the `hpr` command line
//! on top of `hpr-core`.

mod cli;
pub mod experiment;
pub mod hg;
pub mod report;

pub use cli::{run, run_with};

/// Short machine tag for a pipeline error: the failing phase when there is one.
pub fn error_tag(e: &hpr_core::Error) -> String {
    use hpr_core::Error;
    match e {
        Error::Phase { phase, .. } => (*phase).to_string(),
        Error::Divisibility { .. } => "divisibility".into(),
        Error::BudgetExhausted(_) => "budget".into(),
        Error::RetriesExhausted { .. } => "template-retries".into(),
        Error::NotLinear => "not-linear".into(),
        _ => "invalid-input".into(),
    }
}
