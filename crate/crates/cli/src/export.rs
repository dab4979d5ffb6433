//! File formats: surface CSV, OBJ projection, JSON report, spinor field files.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use spinsurf_core::{Complex64, ComplexField, ComplexField64, Grid64, Immersion64};

/// Machine-readable run summary. Every key is always present; quantities a command does not
/// compute are `null`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub closedness_sup: Option<f64>,
    pub conformality_sup: Option<f64>,
    pub lagrangian_sup: Option<f64>,
    pub conformal_factor_mismatch_sup: Option<f64>,
    pub path_discrepancy: Option<f64>,
    /// Periods of `(X1..X4)` around the x and y cycles (zero on open axes).
    pub periods: Option<[[f64; 4]; 2]>,
    pub conformal_factor_min: Option<f64>,
    pub conformal_factor_max: Option<f64>,
    pub degenerate: Option<bool>,
    pub left_residual: Option<f64>,
    pub right_residual: Option<f64>,
    pub solver_iterations: Option<usize>,
    pub equivalence_distance: Option<f64>,
    pub tolerance: Option<f64>,
    pub outputs: Vec<String>,
    pub errors: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), ..Self::default() }
    }

    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// `x,y,X1,X2,X3,X4`, one row per grid point, x fastest.
pub fn surface_csv(x: &Immersion64) -> String {
    let g = x.grid();
    let mut out = String::with_capacity(g.len() * 150);
    out.push_str("x,y,X1,X2,X3,X4\n");
    let coords = x.coordinates();
    for (ix, iy, px, py) in g.points() {
        let i = g.index(ix, iy);
        let _ = write!(out, "{px:.16e},{py:.16e}");
        for c in coords {
            let _ = write!(out, ",{:.16e}", c.values()[i]);
        }
        out.push('\n');
    }
    out
}

/// Triangulated 3-axis projection; `drop_axis` (1-based) is left out. Vertices are row-major
/// and each grid cell becomes two triangles.
pub fn surface_obj(x: &Immersion64, drop_axis: usize) -> String {
    assert!((1..=4).contains(&drop_axis), "drop_axis must be 1..4");
    let g = x.grid();
    let kept: Vec<usize> = (0..4).filter(|&k| k + 1 != drop_axis).collect();
    let mut out = String::new();
    let _ = writeln!(out, "# spinsurf surface, {}x{} grid", g.nx(), g.ny());
    let _ = writeln!(out, "# dropped axis: X{drop_axis}");
    let _ = writeln!(out, "# vertex axes: X{} X{} X{}", kept[0] + 1, kept[1] + 1, kept[2] + 1);
    let coords = x.coordinates();
    for i in 0..g.len() {
        let _ = writeln!(
            out,
            "v {:.16e} {:.16e} {:.16e}",
            coords[kept[0]].values()[i],
            coords[kept[1]].values()[i],
            coords[kept[2]].values()[i]
        );
    }
    for (a, b, c) in triangles(g) {
        let _ = writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1);
    }
    out
}

/// Zero-based vertex triples, two per cell.
pub fn triangles(g: &Grid64) -> Vec<(usize, usize, usize)> {
    let mut tris = Vec::with_capacity(2 * (g.nx() - 1) * (g.ny() - 1));
    for iy in 0..g.ny() - 1 {
        for ix in 0..g.nx() - 1 {
            let a = g.index(ix, iy);
            let b = g.index(ix + 1, iy);
            let c = g.index(ix + 1, iy + 1);
            let d = g.index(ix, iy + 1);
            tris.push((a, b, c));
            tris.push((a, c, d));
        }
    }
    tris
}

pub fn residual_history_csv(history: &[f64]) -> String {
    let mut out = String::from("iteration,residual\n");
    for (k, r) in history.iter().enumerate() {
        let _ = writeln!(out, "{},{r:.16e}", k + 1);
    }
    out
}

/// Spinor field file: two named components, each a row-major list of `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeftFile {
    pub s1: Vec<[f64; 2]>,
    pub s2: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RightFile {
    pub t1: Vec<[f64; 2]>,
    pub t2: Vec<[f64; 2]>,
}

pub fn field_to_pairs(f: &ComplexField64) -> Vec<[f64; 2]> {
    f.values().iter().map(|v| [v.re, v.im]).collect()
}

pub fn pairs_to_field(grid: Grid64, pairs: &[[f64; 2]]) -> spinsurf_core::Result<ComplexField64> {
    ComplexField::new(grid, pairs.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
}

pub fn write_file(path: &Path, contents: &str) -> std::io::Result<()> {
    std::fs::write(path, contents)
}
