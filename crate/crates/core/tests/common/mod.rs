#![allow(dead_code)]

use std::f64::consts::PI;

use proptest::prelude::*;
use spinsurf_core::{Complex64, ComplexField, Grid64, LeftSpinor, RightSpinor};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn torus(n: usize) -> Grid64 {
    Grid64::periodic_square(n, 2.0 * PI).unwrap()
}

pub fn unit_square(n: usize) -> Grid64 {
    Grid64::closed_square(n, 0.0, 1.0).unwrap()
}

/// Trigonometric polynomial `Σ c_k e^{i(kx x + ky y)}` with integer wavenumbers.
#[derive(Debug, Clone)]
pub struct Trig {
    pub modes: Vec<(i32, i32, Complex64)>,
}

impl Trig {
    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        self.modes.iter().map(|&(kx, ky, a)| a * c(0.0, kx as f64 * x + ky as f64 * y).exp()).sum()
    }

    /// Exact `(∂x, ∂y)`.
    pub fn grad(&self, x: f64, y: f64) -> (Complex64, Complex64) {
        self.modes.iter().fold((c(0.0, 0.0), c(0.0, 0.0)), |(gx, gy), &(kx, ky, a)| {
            let e = a * c(0.0, kx as f64 * x + ky as f64 * y).exp();
            (gx + e * c(0.0, kx as f64), gy + e * c(0.0, ky as f64))
        })
    }

    pub fn sample(&self, g: Grid64) -> ComplexField<f64> {
        ComplexField::from_fn(g, |x, y| self.eval(x, y))
    }

    /// Real part only, for real-valued data like β.
    pub fn sample_re(&self, g: Grid64) -> ComplexField<f64> {
        ComplexField::from_fn(g, |x, y| c(self.eval(x, y).re, 0.0))
    }
}

pub fn coeff(scale: f64) -> impl Strategy<Value = Complex64> {
    (-scale..scale, -scale..scale).prop_map(|(a, b)| c(a, b))
}

/// Up to `count` modes with `|kx|, |ky| <= kmax` and coefficients in the `scale` box.
pub fn trig(kmax: i32, count: usize, scale: f64) -> impl Strategy<Value = Trig> {
    prop::collection::vec((-kmax..=kmax, -kmax..=kmax, coeff(scale)), 1..=count).prop_map(|modes| Trig { modes })
}

/// `s = (e^{iy}, e^{−iy})`, `t = (cos x, sin x)`: solves both systems for `p = ½`, β = 2x.
pub fn flat_torus_spinors(g: Grid64) -> (LeftSpinor<f64>, RightSpinor<f64>) {
    let s = LeftSpinor::new(
        ComplexField::from_fn(g, |_, y| c(0.0, y).exp()),
        ComplexField::from_fn(g, |_, y| c(0.0, -y).exp()),
    )
    .unwrap();
    let t = RightSpinor::new(
        ComplexField::from_fn(g, |x, _| c(x.cos(), 0.0)),
        ComplexField::from_fn(g, |x, _| c(x.sin(), 0.0)),
    )
    .unwrap();
    (s, t)
}

pub fn beta_2x(g: Grid64) -> ComplexField<f64> {
    ComplexField::from_fn(g, |x, _| c(2.0 * x, 0.0))
}
