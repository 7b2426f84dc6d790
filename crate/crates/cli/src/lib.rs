//! Command-line front end: verification reports, decomposition tables and
//! the on-disk character cache.

pub mod cache;
pub mod expr;
pub mod report;
pub mod tables;

use std::path::PathBuf;
use std::sync::Arc;

use rigidity_core::models::{Model, ModelError};
use rigidity_core::pipeline::{rigidity_verdict, Analysis, PipelineError, RunOptions, Verdict};
use rigidity_core::rep::{RepEngine, RepError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Table(#[from] tables::TableError),
    #[error(transparent)]
    Expr(#[from] expr::ExprError),
}

impl CliError {
    /// Errors caused by the request rather than by the computation.
    pub fn is_usage(&self) -> bool {
        matches!(self, CliError::Model(_) | CliError::Expr(expr::ExprError::Parse { .. }))
    }
}

/// Engine for a model, backed by the disk cache when a directory is set.
pub fn engine_for(model: &Model, cache: Option<&PathBuf>) -> Result<RepEngine, RepError> {
    match cache {
        Some(dir) => RepEngine::with_store(model.rank(), Arc::new(cache::DiskStore::new(dir.clone()))),
        None => RepEngine::new(model.rank()),
    }
}

pub struct Verified {
    pub verdict: Verdict,
    pub report: report::ReportJson,
}

pub fn verify(name: &str, opts: &RunOptions, cache: Option<&PathBuf>) -> Result<Verified, CliError> {
    let model = Model::by_name(name)?;
    let result = rigidity_verdict(&model, engine_for(&model, cache)?, opts)?;
    // a second engine for formatting; cheap, characters are memoized
    let an = Analysis::new(&model, engine_for(&model, cache)?)?;
    Ok(Verified {
        verdict: result.verdict,
        report: report::build(&an, &result),
    })
}

pub fn tables_for(name: &str, cache: Option<&PathBuf>) -> Result<tables::Table, CliError> {
    let model = Model::by_name(name)?;
    let an = Analysis::new(&model, engine_for(&model, cache)?)?;
    Ok(tables::regenerate_tables(&an)?)
}

pub struct Decomposition {
    pub canonical: String,
    pub value: expr::Value,
    pub lines: Vec<String>,
    pub total: u128,
}

pub fn decompose(name: &str, input: &str, cache: Option<&PathBuf>) -> Result<Decomposition, CliError> {
    let model = Model::by_name(name)?;
    let e = expr::parse(input)?;
    let an = Analysis::new(&model, engine_for(&model, cache)?)?;
    let v = expr::evaluate(&an, &e)?;
    let mut comps: Vec<_> = v.sum.iter().collect();
    comps.sort_by(|a, b| rigidity_core::weight::report_order(&an.engine.rd, a.0, b.0));
    let mut lines = Vec::new();
    let mut total = 0u128;
    for (w, m) in comps {
        let d = an.engine.weyl_dimension(w)?;
        total += d * *m as u128;
        lines.push(format!("{} x{} (dim {})", an.fmt(w), m, d));
    }
    Ok(Decomposition {
        canonical: e.to_string(),
        value: v,
        lines,
        total,
    })
}
