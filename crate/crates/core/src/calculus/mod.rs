//! Discrete Wirtinger calculus on rectangular grids.
//!
//! Conventions: `dz = dx + i dy`, `d/dz = (d/dx - i d/dy)/2`, `d/dz̄ = (d/dx + i d/dy)/2`,
//! and `dz̄ ∧ dz = 2i dx ∧ dy`. The backend is chosen by [`Grid::backend`].
//!
//! Grid construction already enforces the minimum stencil support, so the
//! operators here cannot fail on a well-formed field.

pub(crate) mod fd;
pub(crate) mod spectral;

use num_complex::Complex;

use crate::field::{ComplexField, OneForm};
use crate::grid::Backend;
use crate::scalar::Real;

use spectral::Spectral;

#[derive(Clone, Copy)]
enum Axis {
    X,
    Y,
}

fn partial<T: Real>(f: &ComplexField<T>, axis: Axis) -> ComplexField<T> {
    let g = *f.grid();
    let values = match g.backend() {
        Backend::Spectral => {
            let sp = Spectral::new(&g);
            match axis {
                Axis::X => sp.apply(f.values(), |kx, _| Complex::new(T::zero(), kx)),
                Axis::Y => sp.apply(f.values(), |_, ky| Complex::new(T::zero(), ky)),
            }
        }
        Backend::FiniteDifference => {
            let mut out = vec![Complex::new(T::zero(), T::zero()); g.len()];
            match axis {
                Axis::X => {
                    for iy in 0..g.ny() {
                        fd::diff_line(f.values(), &mut out, iy * g.nx(), 1, g.nx(), g.hx(), g.periodic_x());
                    }
                }
                Axis::Y => {
                    for ix in 0..g.nx() {
                        fd::diff_line(f.values(), &mut out, ix, g.nx(), g.ny(), g.hy(), g.periodic_y());
                    }
                }
            }
            out
        }
    };
    ComplexField::new(g, values).expect("derivative keeps the grid shape")
}

/// Partial derivative along x.
pub fn d_dx<T: Real>(f: &ComplexField<T>) -> ComplexField<T> {
    partial(f, Axis::X)
}

/// Partial derivative along y.
pub fn d_dy<T: Real>(f: &ComplexField<T>) -> ComplexField<T> {
    partial(f, Axis::Y)
}

/// Wirtinger derivative `∂f/∂z = (f_x - i f_y)/2`.
pub fn d_dz<T: Real>(f: &ComplexField<T>) -> ComplexField<T> {
    wirtinger(f, -T::one())
}

/// Wirtinger derivative `∂f/∂z̄ = (f_x + i f_y)/2`.
pub fn d_dzbar<T: Real>(f: &ComplexField<T>) -> ComplexField<T> {
    wirtinger(f, T::one())
}

fn wirtinger<T: Real>(f: &ComplexField<T>, sign: T) -> ComplexField<T> {
    let g = *f.grid();
    let half = T::lit(0.5);
    let i_sign = Complex::new(T::zero(), sign);
    if g.backend() == Backend::Spectral {
        // One transform instead of two.
        let sp = Spectral::new(&g);
        let values =
            sp.apply(f.values(), |kx, ky| (Complex::new(T::zero(), kx) + i_sign * Complex::new(T::zero(), ky)) * half);
        return ComplexField::new(g, values).expect("derivative keeps the grid shape");
    }
    let fx = d_dx(f);
    let fy = d_dy(f);
    fx.zip_map(&fy, |a, b| (a + i_sign * b) * half).expect("same grid")
}

/// The `dx ∧ dy` coefficient of `dω` for `ω = A dz + B dz̄`, i.e. `2i(∂A/∂z̄ - ∂B/∂z)`.
///
/// Computed as `∂_x ω_y - ∂_y ω_x` from the real-coordinate coefficients, which agrees
/// with the Wirtinger form for every linear stencil.
pub fn exterior_derivative<T: Real>(form: &OneForm<T>) -> ComplexField<T> {
    let fx = form.dx_coefficient();
    let fy = form.dy_coefficient();
    &d_dx(&fy) - &d_dy(&fx)
}
