//! The four commands, as library functions returning a [`Report`].

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use spinsurf_core::dirac::residual_sup;
use spinsurf_core::quaternion::equivalence_check;
use spinsurf_core::{
    canonical_right_spinor, constant_p_left_family, geometry_report, integrate_immersion, konopelchenko_oneforms,
    left_dirac_residual, potential_from_beta, right_dirac_residual, solve_left_dirac, to_lagrangian_coordinates,
    Backend, BasePoint, Complex64, ComplexField, ComplexField64, Error as CoreError, Grid64, Immersion64, LeftSpinor,
    Potential, Potential64, RightSpinor,
};

use crate::config::{complex, ConfigError, LeftSource, PotentialSpec, RightSource, RunConfig};
use crate::export::{self, LeftFile, Report, RightFile};
use crate::expr::Expr;

/// Default comparison gate for `compare`.
pub const COMPARE_TOLERANCE: f64 = 1e-9;
/// Residual gates used by `verify` and the Picard solver when none is configured.
pub const SPECTRAL_TOLERANCE: f64 = 1e-10;
pub const FD_TOLERANCE: f64 = 1e-6;
/// Minimum empirical order accepted by `convergence` in finite-difference mode.
pub const MIN_ORDER: f64 = 1.8;
/// Two successive defects both below this are at rounding level; no order is computed.
pub const FLOOR: f64 = 1e-12;

pub const HISTORY_FILE: &str = "residual_history.csv";

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("Picard solver diverged after {iterations} iterations (last residual {last:e}); residual history written to {}", file.display())]
    Divergence { iterations: usize, last: f64, file: PathBuf },
    #[error("{path}: {message}")]
    File { path: PathBuf, message: String },
    #[error("{0}")]
    NotFinite(String),
}

/// Everything up to (and excluding) the forms.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub grid: Grid64,
    pub base: BasePoint,
    pub beta: Option<ComplexField64>,
    pub potential: Potential64,
    pub left: LeftSpinor<f64>,
    pub right: RightSpinor<f64>,
    pub solver_iterations: Option<usize>,
}

fn default_tolerance(grid: &Grid64) -> f64 {
    match grid.backend() {
        Backend::Spectral => SPECTRAL_TOLERANCE,
        Backend::FiniteDifference => FD_TOLERANCE,
    }
}

fn sample(grid: Grid64, re: &Expr, im: &Expr) -> ComplexField64 {
    ComplexField::from_fn(grid, |x, y| Complex64::new(re.eval(x, y), im.eval(x, y)))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, RunError> {
    let err = |message: String| RunError::File { path: path.into(), message };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| err(e.to_string()))
}

/// Builds grid, β, potential and both spinors on `grid` (which may be a refinement of the
/// configured one). Divergence histories go to `out`.
pub fn prepare(cfg: &RunConfig, grid: Grid64, out: &Path) -> Result<Prepared, RunError> {
    let base = cfg.base_point()?;
    base.validate(&grid)?;
    let beta = match cfg.beta_expr()? {
        Some(e) => {
            let f = sample(grid, &e, &Expr::Num(0.0));
            if !f.is_finite() {
                return Err(RunError::NotFinite("beta is not finite on the grid".into()));
            }
            Some(f)
        }
        None => None,
    };
    let need_beta = || beta.as_ref().ok_or_else(|| ConfigError::Invalid("`beta` is required".into()));

    let potential = match &cfg.potential {
        PotentialSpec::FromBeta => potential_from_beta(need_beta()?)?,
        PotentialSpec::Constant(p0) => Potential::constant(grid, complex(*p0)),
    };
    if !potential.p.is_finite() {
        return Err(RunError::NotFinite("potential is not finite".into()));
    }

    let mut solver_iterations = None;
    let left = match &cfg.left {
        LeftSource::AnalyticFamily(f) => constant_p_left_family(complex(f.p0), f.a, f.b, complex(f.alpha), grid)?,
        LeftSource::Picard(spec) => {
            let (r1, i1) = spec.seed.s1.parse("left.picard.seed.s1")?;
            let (r2, i2) = spec.seed.s2.parse("left.picard.seed.s2")?;
            let seed = LeftSpinor::new(sample(grid, &r1, &i1), sample(grid, &r2, &i2))?;
            let tol = spec.tol.unwrap_or_else(|| default_tolerance(&grid));
            match solve_left_dirac(&potential, &seed, tol, spec.max_iter) {
                Ok(outcome) => {
                    solver_iterations = Some(outcome.iterations());
                    outcome.spinor
                }
                Err(CoreError::Divergence { iterations, history }) => {
                    std::fs::create_dir_all(out)
                        .map_err(|e| RunError::File { path: out.into(), message: e.to_string() })?;
                    let file = out.join(HISTORY_FILE);
                    export::write_file(&file, &export::residual_history_csv(&history))
                        .map_err(|e| RunError::File { path: file.clone(), message: e.to_string() })?;
                    let last = history.last().copied().unwrap_or(f64::NAN);
                    return Err(RunError::Divergence { iterations, last, file });
                }
                Err(e) => return Err(e.into()),
            }
        }
        LeftSource::File(path) => {
            let f: LeftFile = read_json(path)?;
            LeftSpinor::new(export::pairs_to_field(grid, &f.s1)?, export::pairs_to_field(grid, &f.s2)?)?
        }
    };
    let right = match &cfg.right {
        RightSource::Canonical => canonical_right_spinor(need_beta()?)?,
        RightSource::File(path) => {
            let f: RightFile = read_json(path)?;
            RightSpinor::new(export::pairs_to_field(grid, &f.t1)?, export::pairs_to_field(grid, &f.t2)?)?
        }
    };
    if !left.is_finite() || !right.is_finite() {
        return Err(RunError::NotFinite("spinor fields are not finite".into()));
    }
    Ok(Prepared { grid, base, beta, potential, left, right, solver_iterations })
}

/// Integrated surface plus its report fields.
#[derive(Debug, Clone)]
pub struct Surface {
    pub x: Immersion64,
    pub report: Report,
}

fn fill_residuals(prep: &Prepared, report: &mut Report) -> Result<(), RunError> {
    report.left_residual = Some(residual_sup(&left_dirac_residual(&prep.left, &prep.potential)?));
    report.right_residual = Some(residual_sup(&right_dirac_residual(&prep.right, &prep.potential)?));
    report.solver_iterations = prep.solver_iterations;
    Ok(())
}

/// Forms, integration and defects, without writing anything.
pub fn build_surface(prep: &Prepared, command: &str) -> Result<Surface, RunError> {
    let mut report = Report::new(command);
    fill_residuals(prep, &mut report)?;
    let (w1, w2) = konopelchenko_oneforms(&prep.left, &prep.right)?;
    let x = integrate_immersion(&w1, &w2, prep.base)?;
    if !x.is_finite() {
        return Err(RunError::NotFinite("immersion is not finite".into()));
    }
    let y = to_lagrangian_coordinates(&x);
    let geo = geometry_report(&prep.left, &prep.right, &x, &y)?;
    report.closedness_sup = Some(geo.closedness_residual_sup);
    report.conformality_sup = Some(geo.conformality_defect_sup);
    report.lagrangian_sup = Some(geo.lagrangian_defect_sup);
    report.conformal_factor_mismatch_sup = Some(geo.conformal_factor_mismatch_sup);
    report.path_discrepancy = Some(geo.path_discrepancy);
    report.periods = Some(x.periods);
    report.conformal_factor_min = Some(geo.conformal_factor_min);
    report.conformal_factor_max = Some(geo.conformal_factor_max);
    report.degenerate = Some(geo.degenerate);
    Ok(Surface { x, report })
}

fn finish(mut report: Report, out: &Path) -> Report {
    let path = out.join("report.json");
    report.outputs.push(path.display().to_string());
    let written = std::fs::create_dir_all(out).and_then(|_| export::write_file(&path, &report.to_json()));
    if let Err(e) = written {
        report.outputs.pop();
        report.errors.push(format!("cannot write {}: {e}", path.display()));
    }
    report
}

fn failed(command: &str, err: RunError, out: &Path) -> Report {
    let mut report = Report::new(command);
    report.errors.push(err.to_string());
    finish(report, out)
}

/// Full pipeline with exports. Defect sizes are reported, not gated.
pub fn run_generate(cfg: &RunConfig) -> Report {
    let out = cfg.output_dir.as_path();
    let run = || -> Result<Report, RunError> {
        let prep = prepare(cfg, cfg.grid()?, out)?;
        let Surface { x, mut report } = build_surface(&prep, "generate")?;
        std::fs::create_dir_all(out).map_err(|e| RunError::File { path: out.into(), message: e.to_string() })?;
        let mut write = |name: &str, contents: String| -> Result<(), RunError> {
            let path = out.join(name);
            export::write_file(&path, &contents)
                .map_err(|e| RunError::File { path: path.clone(), message: e.to_string() })?;
            report.outputs.push(path.display().to_string());
            Ok(())
        };
        if cfg.export.csv {
            write("surface.csv", export::surface_csv(&x))?;
        }
        if let Some(obj) = cfg.export.obj {
            write("surface.obj", export::surface_obj(&x, obj.drop_axis))?;
        }
        Ok(report)
    };
    match run() {
        Ok(report) => finish(report, out),
        Err(e) => failed("generate", e, out),
    }
}

/// Residuals of both Dirac systems only; gated by the tolerance (scheme default if unset).
pub fn run_verify(cfg: &RunConfig) -> Report {
    let out = cfg.output_dir.as_path();
    let run = || -> Result<Report, RunError> {
        let prep = prepare(cfg, cfg.grid()?, out)?;
        let mut report = Report::new("verify");
        fill_residuals(&prep, &mut report)?;
        let tol = cfg.tolerance.unwrap_or_else(|| default_tolerance(&prep.grid));
        report.tolerance = Some(tol);
        for (name, r) in [("left", report.left_residual), ("right", report.right_residual)] {
            let r = r.unwrap_or(f64::NAN);
            if !(r <= tol) {
                report.errors.push(format!("{name} Dirac residual {r:e} exceeds tolerance {tol:e}"));
            }
        }
        Ok(report)
    };
    match run() {
        Ok(report) => finish(report, out),
        Err(e) => failed("verify", e, out),
    }
}

/// Complex pipeline against `∫ a dz b`; gated by the tolerance (default [`COMPARE_TOLERANCE`]).
pub fn run_compare(cfg: &RunConfig) -> Report {
    let out = cfg.output_dir.as_path();
    let run = || -> Result<Report, RunError> {
        let prep = prepare(cfg, cfg.grid()?, out)?;
        let mut report = Report::new("compare");
        fill_residuals(&prep, &mut report)?;
        let tol = cfg.tolerance.unwrap_or(COMPARE_TOLERANCE);
        let dist = equivalence_check(&prep.left, &prep.right, prep.base)?;
        report.tolerance = Some(tol);
        report.equivalence_distance = Some(dist);
        if !(dist <= tol) {
            report.errors.push(format!("equivalence distance {dist:e} exceeds tolerance {tol:e}"));
        }
        Ok(report)
    };
    match run() {
        Ok(report) => finish(report, out),
        Err(e) => failed("compare", e, out),
    }
}

pub const CONVERGENCE_METRICS: [&str; 4] = ["closedness", "conformality", "lagrangian", "path_discrepancy"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Level {
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    /// In [`CONVERGENCE_METRICS`] order.
    pub defects: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Order {
    Measured { order: f64 },
    Floor,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub backend: &'static str,
    pub levels: Vec<Level>,
    /// `orders[k][m]`: metric `m` between levels `k` and `k + 1`.
    pub orders: Vec<[Order; 4]>,
    pub order_check: &'static str,
    pub errors: Vec<String>,
}

impl ConvergenceReport {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn table(&self) -> String {
        let mut s = format!("{:>6} {:>6} {:>12}", "nx", "ny", "h");
        for m in CONVERGENCE_METRICS {
            let _ = write!(s, " {m:>17}");
        }
        s.push('\n');
        for (k, lvl) in self.levels.iter().enumerate() {
            let _ = write!(s, "{:>6} {:>6} {:>12.5e}", lvl.nx, lvl.ny, lvl.h);
            for d in lvl.defects {
                let _ = write!(s, " {d:>17.5e}");
            }
            s.push('\n');
            if let Some(orders) = self.orders.get(k) {
                let _ = write!(s, "{:>33}", "order");
                for o in orders {
                    match o {
                        Order::Measured { order } => {
                            let _ = write!(s, " {order:>17.3}");
                        }
                        Order::Floor => {
                            let _ = write!(s, " {:>17}", "floor");
                        }
                    }
                }
                s.push('\n');
            }
        }
        s
    }
}

/// Defect table over `levels` grids, each doubling the resolution of the previous one.
pub fn run_convergence(cfg: &RunConfig, levels: usize) -> Result<ConvergenceReport, RunError> {
    if levels < 3 {
        return Err(ConfigError::Invalid(format!("convergence needs at least 3 levels, got {levels}")).into());
    }
    let out = cfg.output_dir.as_path();
    let base_grid = cfg.grid()?;
    let backend = base_grid.backend();
    let mut report = ConvergenceReport {
        backend: match backend {
            Backend::Spectral => "spectral",
            Backend::FiniteDifference => "fd",
        },
        levels: Vec::new(),
        orders: Vec::new(),
        order_check: match backend {
            Backend::Spectral => "skipped",
            Backend::FiniteDifference => "enforced",
        },
        errors: Vec::new(),
    };
    for k in 0..levels {
        let grid = base_grid.refined(1 << k)?;
        let prep = prepare(cfg, grid, out)?;
        let r = build_surface(&prep, "convergence")?.report;
        let get = |v: Option<f64>| v.unwrap_or(f64::NAN);
        report.levels.push(Level {
            nx: grid.nx(),
            ny: grid.ny(),
            h: grid.h(),
            defects: [get(r.closedness_sup), get(r.conformality_sup), get(r.lagrangian_sup), get(r.path_discrepancy)],
        });
    }
    for pair in report.levels.windows(2) {
        let orders: [Order; 4] = std::array::from_fn(|m| {
            let (coarse, fine) = (pair[0].defects[m], pair[1].defects[m]);
            if coarse < FLOOR && fine < FLOOR {
                Order::Floor
            } else {
                Order::Measured { order: (coarse / fine).log2() / (pair[0].h / pair[1].h).log2() }
            }
        });
        report.orders.push(orders);
    }
    if backend == Backend::FiniteDifference {
        for (k, orders) in report.orders.iter().enumerate() {
            for (m, o) in orders.iter().enumerate() {
                if let Order::Measured { order } = o {
                    if !(*order >= MIN_ORDER) {
                        report.errors.push(format!(
                            "{} order {order:.3} between levels {k} and {} is below {MIN_ORDER}",
                            CONVERGENCE_METRICS[m],
                            k + 1
                        ));
                    }
                }
            }
        }
    }
    std::fs::create_dir_all(out).map_err(|e| RunError::File { path: out.into(), message: e.to_string() })?;
    let path = out.join("convergence.json");
    let mut json = serde_json::to_string_pretty(&report).expect("serializes");
    json.push('\n');
    export::write_file(&path, &json).map_err(|e| RunError::File { path, message: e.to_string() })?;
    Ok(report)
}
