//! Representation forms, integrated immersions in R⁴ and their geometric defects.

use num_complex::Complex;

use crate::calculus::{d_dx, d_dy, exterior_derivative};
use crate::dirac::{canonical_right_spinor, LeftSpinor, RightSpinor};
use crate::error::{Error, Result};
use crate::field::{same_grid, ComplexField, OneForm, RealField};
use crate::grid::{BasePoint, Grid};
use crate::integrate::integrate_form;
use crate::scalar::Real;

/// Relative threshold below which the conformal factor counts as degenerate.
pub const DEGENERACY_RATIO: f64 = 1e-8;

/// Four real coordinate fields `(X1, X2, X3, X4)` on one grid, pinned to zero at `base`.
///
/// `periods[axis][k]` is the jump of coordinate `k` across one period along `axis`
/// (0 = x, 1 = y); it is zero on open axes and for closed tori.
#[derive(Debug, Clone, PartialEq)]
pub struct Immersion4<T> {
    coords: [RealField<T>; 4],
    pub base: BasePoint,
    pub path_discrepancy: T,
    pub periods: [[T; 4]; 2],
}

impl<T: Real> Immersion4<T> {
    /// Immersion from explicit coordinates with no periods and no integration history.
    pub fn new(coords: [RealField<T>; 4], base: BasePoint) -> Result<Self> {
        let g = *coords[0].grid();
        for c in &coords[1..] {
            same_grid(&g, c.grid())?;
        }
        base.validate(&g)?;
        Ok(Self { coords, base, path_discrepancy: T::zero(), periods: [[T::zero(); 4]; 2] })
    }

    /// Immersion from the complex views `W1 = X1 + iX2`, `W2 = X3 + iX4`.
    pub fn from_complex(w1: &ComplexField<T>, w2: &ComplexField<T>, base: BasePoint) -> Result<Self> {
        same_grid(w1.grid(), w2.grid())?;
        Self::new([w1.re(), w1.im(), w2.re(), w2.im()], base)
    }

    pub fn grid(&self) -> &Grid<T> {
        self.coords[0].grid()
    }

    /// Coordinate `k` in `0..4` (that is, `X^{k+1}`).
    pub fn coordinate(&self, k: usize) -> &RealField<T> {
        &self.coords[k]
    }

    pub fn coordinates(&self) -> &[RealField<T>; 4] {
        &self.coords
    }

    pub fn w1(&self) -> ComplexField<T> {
        self.coords[0].with_imag(&self.coords[1]).expect("shared grid")
    }

    pub fn w2(&self) -> ComplexField<T> {
        self.coords[2].with_imag(&self.coords[3]).expect("shared grid")
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(RealField::is_finite)
    }

    /// x- and y-derivatives of every coordinate. On periodic axes the linear drift
    /// `period * (x - x0) / L` is removed before differentiating and added back after.
    pub fn tangents(&self) -> ([RealField<T>; 4], [RealField<T>; 4]) {
        let g = *self.grid();
        let derive = |k: usize| {
            let sx = if g.periodic_x() { self.periods[0][k] / g.period_x() } else { T::zero() };
            let sy = if g.periodic_y() { self.periods[1][k] / g.period_y() } else { T::zero() };
            let c = &self.coords[k];
            let detrended = ComplexField::new(
                g,
                g.points()
                    .map(|(ix, iy, x, y)| Complex::new(c.at(ix, iy) - sx * (x - g.x0()) - sy * (y - g.y0()), T::zero()))
                    .collect(),
            )
            .expect("shape preserved");
            (d_dx(&detrended).re().map(|v| v + sx), d_dy(&detrended).re().map(|v| v + sy))
        };
        let parts: Vec<_> = (0..4).map(derive).collect();
        let xs = std::array::from_fn(|k| parts[k].0.clone());
        let ys = std::array::from_fn(|k| parts[k].1.clone());
        (xs, ys)
    }
}

/// The two forms `s1 t1 dz − s̄2 t̄2 dz̄` and `s1 t2 dz + s̄2 t̄1 dz̄` (pointwise products).
pub fn konopelchenko_oneforms<T: Real>(s: &LeftSpinor<T>, t: &RightSpinor<T>) -> Result<(OneForm<T>, OneForm<T>)> {
    same_grid(s.grid(), t.grid())?;
    let s2bar = s.s2.conj();
    let w1 = OneForm::new(&s.s1 * &t.t1, -&(&s2bar * &t.t2.conj()))?;
    let w2 = OneForm::new(&s.s1 * &t.t2, &s2bar * &t.t1.conj())?;
    Ok((w1, w2))
}

/// The Lagrangian forms `s1 cos(β/2) dz − s̄2 sin(β/2) dz̄` and
/// `s1 sin(β/2) dz + s̄2 cos(β/2) dz̄`, written out directly in terms of β.
pub fn lagrangian_oneforms<T: Real>(s: &LeftSpinor<T>, beta: &ComplexField<T>) -> Result<(OneForm<T>, OneForm<T>)> {
    same_grid(s.grid(), beta.grid())?;
    if beta.max_abs_imag() > T::lit(crate::dirac::REAL_TOLERANCE) {
        return Err(Error::NotReal { max_imag: beta.max_abs_imag().as_f64() });
    }
    let half = T::lit(0.5);
    let cos = beta.map(|b| Complex::new((b.re * half).cos(), T::zero()));
    let sin = beta.map(|b| Complex::new((b.re * half).sin(), T::zero()));
    let s2bar = s.s2.conj();
    let w1 = OneForm::new(&s.s1 * &cos, -&(&s2bar * &sin))?;
    let w2 = OneForm::new(&s.s1 * &sin, &s2bar * &cos)?;
    Ok((w1, w2))
}

/// Integrates `W1 = ∫ w1`, `W2 = ∫ w2` from `base` and unpacks `(X1, X2, X3, X4)`.
pub fn integrate_immersion<T: Real>(w1: &OneForm<T>, w2: &OneForm<T>, base: BasePoint) -> Result<Immersion4<T>> {
    same_grid(w1.grid(), w2.grid())?;
    let i1 = integrate_form(w1, base)?;
    let i2 = integrate_form(w2, base)?;
    let mut x = Immersion4::from_complex(&i1.field, &i2.field, base)?;
    x.path_discrepancy = i1.path_discrepancy.max(i2.path_discrepancy);
    for axis in 0..2 {
        let (a, b) = (i1.periods[axis], i2.periods[axis]);
        x.periods[axis] = [a.re, a.im, b.re, b.im];
    }
    Ok(x)
}

/// `(Y1, Y2, Y3, Y4) = (X1, X3, X2, X4)`; an involution.
pub fn to_lagrangian_coordinates<T: Real>(x: &Immersion4<T>) -> Immersion4<T> {
    let swap = |v: &[T; 4]| [v[0], v[2], v[1], v[3]];
    let c = &x.coords;
    Immersion4 {
        coords: [c[0].clone(), c[2].clone(), c[1].clone(), c[3].clone()],
        base: x.base,
        path_discrepancy: x.path_discrepancy,
        periods: [swap(&x.periods[0]), swap(&x.periods[1])],
    }
}

fn dot<T: Real>(a: &[RealField<T>; 4], b: &[RealField<T>; 4]) -> RealField<T> {
    let g = *a[0].grid();
    let values = (0..g.len()).map(|i| (0..4).fold(T::zero(), |s, k| s + a[k].values()[i] * b[k].values()[i])).collect();
    RealField::new(g, values).expect("shape preserved")
}

/// `(|X_x|² − |X_y|², ⟨X_x, X_y⟩)` in the Euclidean metric of R⁴.
pub fn conformality_defect<T: Real>(x: &Immersion4<T>) -> (RealField<T>, RealField<T>) {
    let (xs, ys) = x.tangents();
    let d1 = dot(&xs, &xs).zip_map(&dot(&ys, &ys), |a, b| a - b).expect("shared grid");
    (d1, dot(&xs, &ys))
}

/// `(|s1|² + |s2|²)(|t1|² + |t2|²)`, the common value of `|X_x|²` and `|X_y|²`.
///
/// Expanding `W1_x = s1 t1 − s̄2 t̄2`, `W2_x = s1 t2 + s̄2 t̄1` the cross terms
/// `∓2 Re(s1 s2 t1 t2)` cancel between `|W1_x|²` and `|W2_x|²`; the same happens for
/// `W_y = i(A − B)`.
pub fn conformal_factor<T: Real>(s: &LeftSpinor<T>, t: &RightSpinor<T>) -> Result<RealField<T>> {
    same_grid(s.grid(), t.grid())?;
    let left = s.s1.norm_sqr().zip_map(&s.s2.norm_sqr(), |a, b| a + b)?;
    let right = t.t1.norm_sqr().zip_map(&t.t2.norm_sqr(), |a, b| a + b)?;
    left.zip_map(&right, |a, b| a * b)
}

/// `ω(Y_x, Y_y)` with `ω = −Im⟨·,·⟩_H` on C² = (Y1 + iY2, Y3 + iY4).
///
/// Vanishes on Lagrangian surfaces; equals +1 on the complex line `Y = (x, y, 0, 0)`.
pub fn lagrangian_defect<T: Real>(y: &Immersion4<T>) -> RealField<T> {
    let (xs, ys) = y.tangents();
    let g = *y.grid();
    let values = (0..g.len())
        .map(|i| {
            let v1 = Complex::new(xs[0].values()[i], xs[1].values()[i]);
            let v2 = Complex::new(xs[2].values()[i], xs[3].values()[i]);
            let w1 = Complex::new(ys[0].values()[i], ys[1].values()[i]);
            let w2 = Complex::new(ys[2].values()[i], ys[3].values()[i]);
            -(v1 * w1.conj() + v2 * w2.conj()).im
        })
        .collect();
    RealField::new(g, values).expect("shape preserved")
}

/// Sup-norm summary of every defect of one representation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryReport<T> {
    /// `max(sup| |X_x|² − |X_y|² |, sup|⟨X_x, X_y⟩|)`.
    pub conformality_defect_sup: T,
    pub lagrangian_defect_sup: T,
    /// `sup| |X_x|² − u |` and `sup| |X_y|² − u |` with `u` the spinor conformal factor.
    pub conformal_factor_mismatch_sup: T,
    pub conformal_factor_min: T,
    pub conformal_factor_max: T,
    /// Sup of the exterior derivative over both representation forms.
    pub closedness_residual_sup: T,
    pub path_discrepancy: T,
    /// `conformal_factor_min < 1e-8 * conformal_factor_max` (or the factor vanishes identically).
    pub degenerate: bool,
}

/// Aggregates the defects of `X` (representation coordinates) and `Y` (Lagrangian coordinates).
pub fn geometry_report<T: Real>(
    s: &LeftSpinor<T>,
    t: &RightSpinor<T>,
    x: &Immersion4<T>,
    y: &Immersion4<T>,
) -> Result<GeometryReport<T>> {
    same_grid(s.grid(), x.grid())?;
    same_grid(x.grid(), y.grid())?;
    let (w1, w2) = konopelchenko_oneforms(s, t)?;
    let closedness = exterior_derivative(&w1).sup_norm().max(exterior_derivative(&w2).sup_norm());
    let (d1, d2) = conformality_defect(x);
    let u = conformal_factor(s, t)?;
    let (xs, ys) = x.tangents();
    let mismatch = dot(&xs, &xs).max_distance(&u)?.max(dot(&ys, &ys).max_distance(&u)?);
    let (umin, umax) = (u.min(), u.max());
    let degenerate = !(umax > T::zero()) || umin < T::lit(DEGENERACY_RATIO) * umax;
    Ok(GeometryReport {
        conformality_defect_sup: d1.sup_norm().max(d2.sup_norm()),
        lagrangian_defect_sup: lagrangian_defect(y).sup_norm(),
        conformal_factor_mismatch_sup: mismatch,
        conformal_factor_min: umin,
        conformal_factor_max: umax,
        closedness_residual_sup: closedness,
        path_discrepancy: x.path_discrepancy,
        degenerate,
    })
}

/// Convenience: canonical right spinor for β, forms, immersion and its Lagrangian coordinates.
pub fn lagrangian_immersion<T: Real>(
    s: &LeftSpinor<T>,
    beta: &ComplexField<T>,
    base: BasePoint,
) -> Result<(RightSpinor<T>, Immersion4<T>, Immersion4<T>)> {
    let t = canonical_right_spinor(beta)?;
    let (w1, w2) = konopelchenko_oneforms(s, &t)?;
    let x = integrate_immersion(&w1, &w2, base)?;
    let y = to_lagrangian_coordinates(&x);
    Ok((t, x, y))
}
