use std::io;

use thiserror::Error;

use crate::chains::ChainError;
use crate::chartab::TableError;
use crate::inclusion::InclusionError;
use crate::matdepth::MatrixError;
use crate::permgrp::GroupError;
use crate::groupspec::SpecError;

#[derive(Debug, Error)]
pub enum DepthError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Inclusion(#[from] InclusionError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    /// A proven statement failed to hold; always an implementation bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl DepthError {
    pub fn is_theorem_violation(&self) -> bool {
        matches!(
            self,
            DepthError::TheoremViolation(_) | DepthError::Chain(ChainError::TheoremViolation(_))
        )
    }
}
