//! Command-line front end for `spinsurf-core`: β expressions, JSON run configurations,
//! the generate / verify / compare / convergence pipelines and their file formats.

// Negated comparisons are deliberate: they treat NaN as failing the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod export;
pub mod expr;
pub mod pipeline;

use std::path::PathBuf;

pub use config::{ConfigError, RunConfig};
pub use export::Report;
pub use expr::{parse_bytes, parse_expression, Expr, ParseError};
pub use pipeline::{run_compare, run_convergence, run_generate, run_verify, ConvergenceReport};

use config::SchemeSpec;

/// Command-line settings that take precedence over the config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub tolerance: Option<f64>,
    pub scheme: Option<SchemeSpec>,
}

impl Overrides {
    pub fn apply(&self, mut cfg: RunConfig) -> Result<RunConfig, ConfigError> {
        if let Some(out) = &self.out {
            cfg.output_dir = out.clone();
        }
        if let Some(tol) = self.tolerance {
            cfg.tolerance = Some(tol);
        }
        if let Some(scheme) = self.scheme {
            cfg.scheme = scheme;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
