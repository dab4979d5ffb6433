//! Fourier collocation on doubly periodic grids.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::grid::Grid;
use crate::scalar::Real;

/// Angular wavenumbers in FFT order; the Nyquist mode of an even-length axis maps to 0.
pub(crate) fn wavenumbers<T: Real>(n: usize, h: T) -> Vec<T> {
    let scale = T::lit(2.0) * T::PI() / (T::from_index(n) * h);
    (0..n)
        .map(|k| {
            if 2 * k == n {
                T::zero()
            } else if 2 * k < n {
                T::from_index(k) * scale
            } else {
                -(T::from_index(n - k) * scale)
            }
        })
        .collect()
}

/// Planned transforms for one grid shape.
pub(crate) struct Spectral<T: Real> {
    nx: usize,
    ny: usize,
    fwd_x: Arc<dyn Fft<T>>,
    inv_x: Arc<dyn Fft<T>>,
    fwd_y: Arc<dyn Fft<T>>,
    inv_y: Arc<dyn Fft<T>>,
    pub(crate) kx: Vec<T>,
    pub(crate) ky: Vec<T>,
}

impl<T: Real> Spectral<T> {
    pub(crate) fn new(grid: &Grid<T>) -> Self {
        let mut planner = FftPlanner::new();
        let (nx, ny) = (grid.nx(), grid.ny());
        Self {
            nx,
            ny,
            fwd_x: planner.plan_fft_forward(nx),
            inv_x: planner.plan_fft_inverse(nx),
            fwd_y: planner.plan_fft_forward(ny),
            inv_y: planner.plan_fft_inverse(ny),
            kx: wavenumbers(nx, grid.hx()),
            ky: wavenumbers(ny, grid.hy()),
        }
    }

    fn columns(&self, data: &mut [Complex<T>], fft: &Arc<dyn Fft<T>>) {
        let mut col = vec![Complex::new(T::zero(), T::zero()); self.ny];
        for ix in 0..self.nx {
            for (iy, c) in col.iter_mut().enumerate() {
                *c = data[iy * self.nx + ix];
            }
            fft.process(&mut col);
            for (iy, c) in col.iter().enumerate() {
                data[iy * self.nx + ix] = *c;
            }
        }
    }

    /// Unnormalized forward 2-D transform in place.
    pub(crate) fn forward(&self, data: &mut [Complex<T>]) {
        self.fwd_x.process(data);
        self.columns(data, &self.fwd_y);
    }

    /// Normalized inverse 2-D transform in place.
    pub(crate) fn inverse(&self, data: &mut [Complex<T>]) {
        self.inv_x.process(data);
        self.columns(data, &self.inv_y);
        let norm = T::from_index(self.nx * self.ny).recip();
        for v in data.iter_mut() {
            *v = *v * norm;
        }
    }

    /// Applies the Fourier multiplier `symbol(kx, ky)` to a sampled field.
    pub(crate) fn apply(&self, values: &[Complex<T>], symbol: impl Fn(T, T) -> Complex<T>) -> Vec<Complex<T>> {
        let mut data = values.to_vec();
        self.forward(&mut data);
        for (iy, &ky) in self.ky.iter().enumerate() {
            for (ix, &kx) in self.kx.iter().enumerate() {
                let v = &mut data[iy * self.nx + ix];
                *v = *v * symbol(kx, ky);
            }
        }
        self.inverse(&mut data);
        data
    }
}

/// Antiderivative from index 0 of one periodic line, exact for band-limited data:
/// the mean contributes a linear drift, every other resolved mode `c_k e^{ikx}`
/// contributes `c_k (e^{ikx} - 1)/(ik)`.
pub(crate) fn cumulative_line<T: Real>(line: &[Complex<T>], h: T, planner: &mut FftPlanner<T>) -> Vec<Complex<T>> {
    let n = line.len();
    let k = wavenumbers(n, h);
    let mut data = line.to_vec();
    planner.plan_fft_forward(n).process(&mut data);
    let norm = T::from_index(n).recip();
    let mean = data[0] * norm;
    data[0] = Complex::new(T::zero(), T::zero());
    for (v, &kk) in data.iter_mut().zip(&k).skip(1) {
        *v = if kk == T::zero() { Complex::new(T::zero(), T::zero()) } else { *v / Complex::new(T::zero(), kk) * norm };
    }
    planner.plan_fft_inverse(n).process(&mut data);
    let origin = data[0];
    data.iter().enumerate().map(|(m, &v)| mean * (T::from_index(m) * h) + v - origin).collect()
}
