//! Numerical spinor representation of conformal surfaces in R⁴.
//!
//! A complex potential `p` drives two Dirac-type systems for spinor pairs `(s1, s2)` and
//! `(t1, t2)`; the products of their solutions give two closed 1-forms whose integrals are
//! the coordinates of a conformal immersion. Choosing `p = ½ ∂β/∂z̄` and
//! `t = (cos β/2, sin β/2)` specializes to conformal Lagrangian immersions.
//!
//! The crate is generic over the scalar type ([`Real`], implemented for `f32` and `f64`);
//! the `*64` aliases below fix it to `f64`, which is what the tolerances in the test
//! suites assume.
//!
//! * [`calculus`], [`integrate`]: Wirtinger derivatives, exterior derivative, path integration.
//! * [`dirac`]: potentials, spinor residuals, analytic solutions, Picard solver.
//! * [`immersion`]: representation forms, integrated immersions, geometric defects.
//! * [`quaternion`]: the same construction written as `∫ a dz b` over the quaternions.

// Negated comparisons are deliberate: they treat NaN as failing the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calculus;
pub mod dirac;
pub mod error;
pub mod field;
pub mod grid;
pub mod immersion;
pub mod integrate;
pub mod quaternion;
pub mod scalar;

pub use calculus::{d_dx, d_dy, d_dz, d_dzbar, exterior_derivative};
pub use dirac::{
    canonical_right_spinor, constant_p_left_family, left_dirac_residual, potential_from_beta, right_dirac_residual,
    solve_left_dirac, LeftSpinor, Potential, PotentialSource, RightSpinor, SolveOutcome,
};
pub use error::{Error, Result};
pub use field::{ComplexField, OneForm, RealField};
pub use grid::{Backend, BasePoint, Grid, Scheme};
pub use immersion::{
    conformal_factor, conformality_defect, geometry_report, integrate_immersion, konopelchenko_oneforms,
    lagrangian_defect, lagrangian_oneforms, to_lagrangian_coordinates, GeometryReport, Immersion4,
};
pub use integrate::{integrate_form, Integrated};
pub use quaternion::{Quaternion, QuaternionField, QuaternionOneForm};
pub use scalar::Real;

pub use num_complex::Complex;

pub type Grid64 = Grid<f64>;
pub type ComplexField64 = ComplexField<f64>;
pub type RealField64 = RealField<f64>;
pub type OneForm64 = OneForm<f64>;
pub type Potential64 = Potential<f64>;
pub type LeftSpinor64 = LeftSpinor<f64>;
pub type RightSpinor64 = RightSpinor<f64>;
pub type Immersion64 = Immersion4<f64>;
pub type GeometryReport64 = GeometryReport<f64>;
pub type Quaternion64 = Quaternion<f64>;
pub type QuaternionField64 = QuaternionField<f64>;
pub type QuaternionOneForm64 = QuaternionOneForm<f64>;
pub type Complex64 = Complex<f64>;
