//! Rectangular sample grids, differentiation schemes, and integration base points.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Minimum number of points per axis; the one-sided second-order stencil needs three
/// and the periodic spectral transforms want at least one interior mode.
pub const MIN_POINTS: usize = 4;

/// Differentiation scheme requested for a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    /// Spectral when both axes are periodic, finite differences otherwise.
    #[default]
    Auto,
    /// Fourier collocation; requires a doubly periodic grid.
    Spectral,
    /// Second-order central differences, wrapping on periodic axes and
    /// one-sided second-order at the edges of open axes.
    FiniteDifference,
}

/// Scheme after [`Scheme::Auto`] has been resolved against the grid topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Spectral,
    FiniteDifference,
}

/// Uniform rectangular grid. Point `(ix, iy)` sits at `(x0 + ix*hx, y0 + iy*hy)`.
///
/// On a periodic axis index `n` is identified with index `0`, so the period is `n*h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    nx: usize,
    ny: usize,
    x0: T,
    y0: T,
    hx: T,
    hy: T,
    periodic_x: bool,
    periodic_y: bool,
    scheme: Scheme,
}

impl<T: Real> Grid<T> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(nx: usize, ny: usize, x0: T, y0: T, hx: T, hy: T, periodic_x: bool, periodic_y: bool) -> Result<Self> {
        if nx < MIN_POINTS {
            return Err(Error::Stencil { axis: 'x', len: nx, min: MIN_POINTS });
        }
        if ny < MIN_POINTS {
            return Err(Error::Stencil { axis: 'y', len: ny, min: MIN_POINTS });
        }
        if !(hx > T::zero() && hx.is_finite()) || !(hy > T::zero() && hy.is_finite()) {
            return Err(Error::InvalidGrid(format!("spacings must be positive and finite (hx={hx}, hy={hy})")));
        }
        if !x0.is_finite() || !y0.is_finite() {
            return Err(Error::InvalidGrid("origin must be finite".into()));
        }
        Ok(Self { nx, ny, x0, y0, hx, hy, periodic_x, periodic_y, scheme: Scheme::Auto })
    }

    /// Doubly periodic `n x n` grid on `[0, period)^2`.
    pub fn periodic_square(n: usize, period: T) -> Result<Self> {
        let h = period / T::from_index(n);
        Self::new(n, n, T::zero(), T::zero(), h, h, true, true)
    }

    /// Non-periodic `n x n` grid covering the closed square `[lo, hi]^2`.
    pub fn closed_square(n: usize, lo: T, hi: T) -> Result<Self> {
        if n < MIN_POINTS {
            return Err(Error::Stencil { axis: 'x', len: n, min: MIN_POINTS });
        }
        let h = (hi - lo) / T::from_index(n - 1);
        Self::new(n, n, lo, lo, h, h, false, false)
    }

    /// Same grid with a different differentiation scheme.
    pub fn with_scheme(mut self, scheme: Scheme) -> Result<Self> {
        if scheme == Scheme::Spectral && !self.is_doubly_periodic() {
            return Err(Error::UnsupportedDomain("spectral differentiation needs both axes periodic".into()));
        }
        self.scheme = scheme;
        Ok(self)
    }

    /// Same geometry with `factor` times as many points per axis (spacing shrinks accordingly).
    pub fn refined(&self, factor: usize) -> Result<Self> {
        let f = T::from_index(factor);
        let (nx, hx) =
            if self.periodic_x { (self.nx * factor, self.hx / f) } else { ((self.nx - 1) * factor + 1, self.hx / f) };
        let (ny, hy) =
            if self.periodic_y { (self.ny * factor, self.hy / f) } else { ((self.ny - 1) * factor + 1, self.hy / f) };
        Self::new(nx, ny, self.x0, self.y0, hx, hy, self.periodic_x, self.periodic_y)?.with_scheme(self.scheme)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }
    pub fn ny(&self) -> usize {
        self.ny
    }
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn x0(&self) -> T {
        self.x0
    }
    pub fn y0(&self) -> T {
        self.y0
    }
    pub fn hx(&self) -> T {
        self.hx
    }
    pub fn hy(&self) -> T {
        self.hy
    }
    pub fn periodic_x(&self) -> bool {
        self.periodic_x
    }
    pub fn periodic_y(&self) -> bool {
        self.periodic_y
    }
    pub fn is_doubly_periodic(&self) -> bool {
        self.periodic_x && self.periodic_y
    }
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn backend(&self) -> Backend {
        match self.scheme {
            Scheme::Spectral => Backend::Spectral,
            Scheme::FiniteDifference => Backend::FiniteDifference,
            Scheme::Auto if self.is_doubly_periodic() => Backend::Spectral,
            Scheme::Auto => Backend::FiniteDifference,
        }
    }

    /// Largest spacing; the `h` in `C*h^2` error bounds.
    pub fn h(&self) -> T {
        self.hx.max(self.hy)
    }

    /// Period along x (`nx*hx`); only meaningful on a periodic axis.
    pub fn period_x(&self) -> T {
        T::from_index(self.nx) * self.hx
    }
    pub fn period_y(&self) -> T {
        T::from_index(self.ny) * self.hy
    }

    #[inline]
    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    #[inline]
    pub fn x(&self, ix: usize) -> T {
        self.x0 + T::from_index(ix) * self.hx
    }

    #[inline]
    pub fn y(&self, iy: usize) -> T {
        self.y0 + T::from_index(iy) * self.hy
    }

    /// Iterates `(ix, iy, x, y)` in row-major order (x fastest).
    pub fn points(&self) -> impl Iterator<Item = (usize, usize, T, T)> + '_ {
        (0..self.ny).flat_map(move |iy| (0..self.nx).map(move |ix| (ix, iy, self.x(ix), self.y(iy))))
    }
}

/// Grid point where integrated fields are pinned to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BasePoint {
    pub ix: usize,
    pub iy: usize,
}

impl BasePoint {
    pub fn new(ix: usize, iy: usize) -> Self {
        Self { ix, iy }
    }

    pub fn validate<T: Real>(&self, grid: &Grid<T>) -> Result<()> {
        if self.ix >= grid.nx() || self.iy >= grid.ny() {
            return Err(Error::Parameter(format!(
                "base point ({}, {}) outside {}x{} grid",
                self.ix,
                self.iy,
                grid.nx(),
                grid.ny()
            )));
        }
        Ok(())
    }
}
