//! Sampled scalar fields and complex 1-forms over a [`Grid`].

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::scalar::Real;

/// Complex value per grid point, row-major (x fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField<T> {
    grid: Grid<T>,
    values: Vec<Complex<T>>,
}

/// Real value per grid point, row-major (x fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct RealField<T> {
    grid: Grid<T>,
    values: Vec<T>,
}

pub(crate) fn same_grid<T: Real>(a: &Grid<T>, b: &Grid<T>) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GridMismatch)
    }
}

impl<T: Real> ComplexField<T> {
    pub fn new(grid: Grid<T>, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Shape { expected: grid.len(), got: values.len() });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid<T>, mut f: impl FnMut(T, T) -> Complex<T>) -> Self {
        let values = grid.points().map(|(_, _, x, y)| f(x, y)).collect();
        Self { grid, values }
    }

    pub fn constant(grid: Grid<T>, c: Complex<T>) -> Self {
        Self { grid, values: vec![c; grid.len()] }
    }

    pub fn zeros(grid: Grid<T>) -> Self {
        Self::constant(grid, Complex::new(T::zero(), T::zero()))
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    #[inline]
    pub fn at(&self, ix: usize, iy: usize) -> Complex<T> {
        self.values[self.grid.index(ix, iy)]
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    /// Pointwise combination; fails when the grids differ.
    pub fn zip_map(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        same_grid(&self.grid, &other.grid)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { grid: self.grid, values })
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        self.map(|v| v * c)
    }

    pub fn re(&self) -> RealField<T> {
        RealField { grid: self.grid, values: self.values.iter().map(|v| v.re).collect() }
    }

    pub fn im(&self) -> RealField<T> {
        RealField { grid: self.grid, values: self.values.iter().map(|v| v.im).collect() }
    }

    pub fn norm_sqr(&self) -> RealField<T> {
        RealField { grid: self.grid, values: self.values.iter().map(|v| v.norm_sqr()).collect() }
    }

    /// Max-norm over the grid.
    pub fn sup_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// Max-norm of the pointwise difference.
    pub fn max_distance(&self, other: &Self) -> Result<T> {
        same_grid(&self.grid, &other.grid)?;
        Ok(self.values.iter().zip(&other.values).fold(T::zero(), |m, (a, b)| m.max((a - b).norm())))
    }

    pub fn max_abs_imag(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.im.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Mean value over the grid points.
    pub fn mean(&self) -> Complex<T> {
        let n = T::from_index(self.values.len());
        self.values.iter().fold(Complex::new(T::zero(), T::zero()), |s, &v| s + v) / n
    }

    /// Same values on a grid with identical geometry but another scheme.
    pub fn with_grid(&self, grid: Grid<T>) -> Result<Self> {
        if grid.nx() != self.grid.nx() || grid.ny() != self.grid.ny() {
            return Err(Error::Shape { expected: grid.len(), got: self.values.len() });
        }
        Ok(Self { grid, values: self.values.clone() })
    }
}

macro_rules! complex_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        /// Pointwise; panics if the operands live on different grids.
        impl<'a, T: Real> $trait<&'a ComplexField<T>> for &'a ComplexField<T> {
            type Output = ComplexField<T>;
            fn $method(self, rhs: &'a ComplexField<T>) -> ComplexField<T> {
                self.zip_map(rhs, |a, b| a $op b).expect("pointwise operands on one grid")
            }
        }
    };
}

complex_binop!(Add, add, +);
complex_binop!(Sub, sub, -);
complex_binop!(Mul, mul, *);

impl<T: Real> Neg for &ComplexField<T> {
    type Output = ComplexField<T>;
    fn neg(self) -> ComplexField<T> {
        self.map(|v| -v)
    }
}

impl<T: Real> RealField<T> {
    pub fn new(grid: Grid<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Shape { expected: grid.len(), got: values.len() });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid<T>, mut f: impl FnMut(T, T) -> T) -> Self {
        let values = grid.points().map(|(_, _, x, y)| f(x, y)).collect();
        Self { grid, values }
    }

    pub fn constant(grid: Grid<T>, c: T) -> Self {
        Self { grid, values: vec![c; grid.len()] }
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    #[inline]
    pub fn at(&self, ix: usize, iy: usize) -> T {
        self.values[self.grid.index(ix, iy)]
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        same_grid(&self.grid, &other.grid)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { grid: self.grid, values })
    }

    pub fn to_complex(&self) -> ComplexField<T> {
        ComplexField { grid: self.grid, values: self.values.iter().map(|&v| Complex::new(v, T::zero())).collect() }
    }

    /// `self + i*imag` as one complex field.
    pub fn with_imag(&self, imag: &Self) -> Result<ComplexField<T>> {
        same_grid(&self.grid, &imag.grid)?;
        let values = self.values.iter().zip(&imag.values).map(|(&re, &im)| Complex::new(re, im)).collect();
        Ok(ComplexField { grid: self.grid, values })
    }

    pub fn sup_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> T {
        self.values.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn max(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }

    pub fn max_distance(&self, other: &Self) -> Result<T> {
        same_grid(&self.grid, &other.grid)?;
        Ok(self.values.iter().zip(&other.values).fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs())))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

/// Complex 1-form `A dz + B dz̄` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm<T> {
    dz: ComplexField<T>,
    dzbar: ComplexField<T>,
}

impl<T: Real> OneForm<T> {
    pub fn new(dz: ComplexField<T>, dzbar: ComplexField<T>) -> Result<Self> {
        same_grid(dz.grid(), dzbar.grid())?;
        Ok(Self { dz, dzbar })
    }

    /// Builds the form from its real-coordinate coefficients `f_x dx + f_y dy`.
    pub fn from_dx_dy(fx: &ComplexField<T>, fy: &ComplexField<T>) -> Result<Self> {
        let half = T::lit(0.5);
        let i = Complex::new(T::zero(), T::one());
        let dz = fx.zip_map(fy, |a, b| (a - i * b) * half)?;
        let dzbar = fx.zip_map(fy, |a, b| (a + i * b) * half)?;
        Ok(Self { dz, dzbar })
    }

    pub fn zero(grid: Grid<T>) -> Self {
        Self { dz: ComplexField::zeros(grid), dzbar: ComplexField::zeros(grid) }
    }

    pub fn grid(&self) -> &Grid<T> {
        self.dz.grid()
    }

    /// Coefficient of `dz`.
    pub fn dz(&self) -> &ComplexField<T> {
        &self.dz
    }

    /// Coefficient of `dz̄`.
    pub fn dzbar(&self) -> &ComplexField<T> {
        &self.dzbar
    }

    /// Coefficient of `dx`, `A + B`.
    pub fn dx_coefficient(&self) -> ComplexField<T> {
        &self.dz + &self.dzbar
    }

    /// Coefficient of `dy`, `i(A - B)`.
    pub fn dy_coefficient(&self) -> ComplexField<T> {
        (&self.dz - &self.dzbar).scale(Complex::new(T::zero(), T::one()))
    }

    pub fn is_finite(&self) -> bool {
        self.dz.is_finite() && self.dzbar.is_finite()
    }
}
