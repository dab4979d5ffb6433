//! Path integration of 1-forms along axis-aligned grid paths.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::calculus::{fd, spectral};
use crate::error::Result;
use crate::field::{ComplexField, OneForm};
use crate::grid::{Backend, BasePoint, Grid};
use crate::scalar::Real;

/// Antiderivative of a 1-form together with its path-independence diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Integrated<T> {
    /// `F` with `F(base) = 0` and `dF ≈ ω`, integrated row-first.
    pub field: ComplexField<T>,
    /// Max over the grid of |row-first − column-first|.
    pub path_discrepancy: T,
    /// Integrals over the x-cycle through the base row and the y-cycle through the
    /// base column; zero on open axes.
    pub periods: [Complex<T>; 2],
}

struct LineIntegrator<T: Real> {
    backend: Backend,
    planner: FftPlanner<T>,
}

impl<T: Real> LineIntegrator<T> {
    /// Cumulative integral along a line, pinned to zero at index `base`.
    fn run(&mut self, line: &[Complex<T>], h: T, base: usize) -> Vec<Complex<T>> {
        let mut out = match self.backend {
            Backend::Spectral => spectral::cumulative_line(line, h, &mut self.planner),
            Backend::FiniteDifference => fd::cumulative_trapezoid(line, h),
        };
        let at_base = out[base];
        for v in out.iter_mut() {
            *v = *v - at_base;
        }
        out
    }
}

fn row<T: Real>(f: &ComplexField<T>, iy: usize) -> Vec<Complex<T>> {
    let nx = f.grid().nx();
    f.values()[iy * nx..(iy + 1) * nx].to_vec()
}

fn column<T: Real>(f: &ComplexField<T>, ix: usize) -> Vec<Complex<T>> {
    let g = f.grid();
    (0..g.ny()).map(|iy| f.at(ix, iy)).collect()
}

/// Integrates `ω` from `base` along x first (base row), then along y.
///
/// Periodic axes are integrated on the universal cover: no wraparound, so a non-zero
/// period shows up as a linear drift and is reported in [`Integrated::periods`].
/// Spectral grids use the exact Fourier antiderivative along each line; all other
/// grids use the cumulative trapezoid rule.
pub fn integrate_form<T: Real>(form: &OneForm<T>, base: BasePoint) -> Result<Integrated<T>> {
    let g: Grid<T> = *form.grid();
    base.validate(&g)?;
    let fx = form.dx_coefficient();
    let fy = form.dy_coefficient();
    let mut lines = LineIntegrator { backend: g.backend(), planner: FftPlanner::new() };
    let (nx, ny) = (g.nx(), g.ny());
    let zero = Complex::new(T::zero(), T::zero());

    // Row-first: along the base row, then up every column.
    let mut row_first = vec![zero; g.len()];
    let along_base_row = lines.run(&row(&fx, base.iy), g.hx(), base.ix);
    for ix in 0..nx {
        let up = lines.run(&column(&fy, ix), g.hy(), base.iy);
        for iy in 0..ny {
            row_first[g.index(ix, iy)] = along_base_row[ix] + up[iy];
        }
    }

    // Column-first, only for the discrepancy diagnostic.
    let along_base_col = lines.run(&column(&fy, base.ix), g.hy(), base.iy);
    let mut discrepancy = T::zero();
    for iy in 0..ny {
        let across = lines.run(&row(&fx, iy), g.hx(), base.ix);
        for ix in 0..nx {
            let d = (along_base_col[iy] + across[ix] - row_first[g.index(ix, iy)]).norm();
            discrepancy = discrepancy.max(d);
        }
    }

    let cycle = |line: Vec<Complex<T>>, h: T| line.into_iter().fold(zero, |s, v| s + v) * h;
    let periods = [
        if g.periodic_x() { cycle(row(&fx, base.iy), g.hx()) } else { zero },
        if g.periodic_y() { cycle(column(&fy, base.ix), g.hy()) } else { zero },
    ];

    Ok(Integrated { field: ComplexField::new(g, row_first)?, path_discrepancy: discrepancy, periods })
}
