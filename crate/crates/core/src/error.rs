use std::time::Duration;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cannot construct the {family} coloring for n = {n}: {reason}")]
    Construction { family: String, n: u32, reason: String },

    #[error("graph has {n_vertices} vertices, over the exhaustive-search budget of {budget}")]
    OverBudget { n_vertices: usize, budget: usize },

    #[error("search for an equitable {k}-coloring exceeded its {budget:?} budget")]
    Timeout { k: usize, budget: Duration },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
