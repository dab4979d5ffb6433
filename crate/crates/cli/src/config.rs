//! Run configuration (JSON, unknown keys rejected).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use spinsurf_core::{BasePoint, Complex64, Grid64, Scheme};

use crate::expr::{parse_expression, Expr, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid config JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("in `{field}`: {source}")]
    Expression { field: String, source: ParseError },
    #[error("invalid config: {0}")]
    Invalid(String),
}

/// `[re, im]`.
pub type ComplexSpec = [f64; 2];

pub fn complex(c: ComplexSpec) -> Complex64 {
    Complex64::new(c[0], c[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    #[serde(default)]
    pub x0: f64,
    #[serde(default)]
    pub y0: f64,
    /// Side lengths. A periodic axis has period `extent`; an open one spans `[x0, x0 + extent]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extent: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing: Option<[f64; 2]>,
    #[serde(default)]
    pub periodic: [bool; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeSpec {
    #[default]
    Auto,
    Spectral,
    Fd,
}

impl From<SchemeSpec> for Scheme {
    fn from(s: SchemeSpec) -> Self {
        match s {
            SchemeSpec::Auto => Scheme::Auto,
            SchemeSpec::Spectral => Scheme::Spectral,
            SchemeSpec::Fd => Scheme::FiniteDifference,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    /// `p = ½ ∂β/∂z̄`; needs `beta`.
    FromBeta,
    Constant(ComplexSpec),
}

/// A complex field given by expressions; a bare string is the real part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexExpr {
    Real(String),
    Parts {
        re: String,
        #[serde(default = "zero_text")]
        im: String,
    },
}

fn zero_text() -> String {
    "0".into()
}

impl ComplexExpr {
    pub fn parse(&self, field: &str) -> Result<(Expr, Expr), ConfigError> {
        let parse = |text: &str, part: &str| {
            parse_expression(text)
                .map_err(|source| ConfigError::Expression { field: format!("{field}.{part}"), source })
        };
        match self {
            ComplexExpr::Real(re) => Ok((parse(re, "re")?, Expr::Num(0.0))),
            ComplexExpr::Parts { re, im } => Ok((parse(re, "re")?, parse(im, "im")?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyticFamily {
    pub p0: ComplexSpec,
    pub a: f64,
    pub b: f64,
    pub alpha: ComplexSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSpec {
    pub s1: ComplexExpr,
    pub s2: ComplexExpr,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PicardSpec {
    pub seed: SeedSpec,
    /// Defaults to 1e-10 on spectral grids and 1e-6 with finite differences.
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
}

fn default_max_iter() -> usize {
    500
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum LeftSource {
    AnalyticFamily(AnalyticFamily),
    Picard(PicardSpec),
    /// JSON field file with keys `s1`, `s2`.
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RightSource {
    /// `(cos β/2, sin β/2)`; needs `beta`.
    Canonical,
    /// JSON field file with keys `t1`, `t2`.
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjSpec {
    /// Coordinate left out of the 3D projection, 1 to 4.
    pub drop_axis: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExportSpec {
    #[serde(default = "yes")]
    pub csv: bool,
    #[serde(default = "default_obj")]
    pub obj: Option<ObjSpec>,
}

fn yes() -> bool {
    true
}

fn default_obj() -> Option<ObjSpec> {
    Some(ObjSpec { drop_axis: 4 })
}

impl Default for ExportSpec {
    fn default() -> Self {
        Self { csv: true, obj: default_obj() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridSpec,
    #[serde(default)]
    pub scheme: SchemeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    pub potential: PotentialSpec,
    pub left: LeftSource,
    pub right: RightSource,
    #[serde(default = "default_out")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub export: ExportSpec,
    #[serde(default)]
    pub base: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

impl RunConfig {
    /// Reads and validates; relative field-file paths are resolved against the config's directory.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        let mut cfg = Self::from_json(&text)?;
        if let Some(dir) = path.parent() {
            let rebase = |p: &mut PathBuf| {
                if p.is_relative() {
                    *p = dir.join(&*p);
                }
            };
            if let LeftSource::File(p) = &mut cfg.left {
                rebase(p);
            }
            if let RightSource::File(p) = &mut cfg.right {
                rebase(p);
            }
        }
        Ok(cfg)
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.grid()?;
        self.base_point()?;
        let beta = self.beta_expr()?;
        let needs_beta = matches!(self.potential, PotentialSpec::FromBeta) || self.right == RightSource::Canonical;
        if needs_beta && beta.is_none() {
            return Err(ConfigError::Invalid(
                "`beta` is required by potential `from_beta` and right `canonical`".into(),
            ));
        }
        match &self.left {
            LeftSource::Picard(p) => {
                p.seed.s1.parse("left.picard.seed.s1")?;
                p.seed.s2.parse("left.picard.seed.s2")?;
                if p.max_iter == 0 {
                    return Err(ConfigError::Invalid("picard max_iter must be positive".into()));
                }
                if let Some(tol) = p.tol {
                    if !(tol > 0.0) {
                        return Err(ConfigError::Invalid(format!("picard tol must be positive, got {tol}")));
                    }
                }
            }
            LeftSource::AnalyticFamily(f) => {
                let finite = f.p0.iter().chain(&f.alpha).chain([&f.a, &f.b]).all(|v| v.is_finite());
                if !finite {
                    return Err(ConfigError::Invalid("analytic family parameters must be finite".into()));
                }
            }
            LeftSource::File(_) => {}
        }
        if let Some(obj) = self.export.obj {
            if !(1..=4).contains(&obj.drop_axis) {
                return Err(ConfigError::Invalid(format!("obj drop_axis must be 1..4, got {}", obj.drop_axis)));
            }
        }
        if let Some(tol) = self.tolerance {
            if !(tol >= 0.0) {
                return Err(ConfigError::Invalid(format!("tolerance must be non-negative, got {tol}")));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid64, ConfigError> {
        let g = &self.grid;
        let [px, py] = g.periodic;
        let (hx, hy) = match (g.extent, g.spacing) {
            (Some(_), Some(_)) => {
                return Err(ConfigError::Invalid("give either grid.extent or grid.spacing, not both".into()))
            }
            (None, None) => return Err(ConfigError::Invalid("grid needs `extent` or `spacing`".into())),
            (None, Some([hx, hy])) => (hx, hy),
            (Some([lx, ly]), None) => {
                let cells =
                    |n: usize, periodic: bool| if periodic { n as f64 } else { n.saturating_sub(1).max(1) as f64 };
                (lx / cells(g.nx, px), ly / cells(g.ny, py))
            }
        };
        let grid =
            Grid64::new(g.nx, g.ny, g.x0, g.y0, hx, hy, px, py).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        grid.with_scheme(self.scheme.into()).map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    pub fn base_point(&self) -> Result<BasePoint, ConfigError> {
        let [ix, iy] = self.base;
        if ix >= self.grid.nx || iy >= self.grid.ny {
            return Err(ConfigError::Invalid(format!(
                "base point ({ix}, {iy}) outside the {}x{} grid",
                self.grid.nx, self.grid.ny
            )));
        }
        Ok(BasePoint::new(ix, iy))
    }

    pub fn beta_expr(&self) -> Result<Option<Expr>, ConfigError> {
        self.beta
            .as_deref()
            .map(|text| {
                parse_expression(text).map_err(|source| ConfigError::Expression { field: "beta".into(), source })
            })
            .transpose()
    }
}
