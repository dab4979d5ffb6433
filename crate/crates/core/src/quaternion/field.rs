use num_complex::Complex;

use super::Quaternion;
use crate::calculus::{d_dx, d_dy};
use crate::dirac::{LeftSpinor, Potential, RightSpinor};
use crate::error::Result;
use crate::field::{same_grid, ComplexField, OneForm};
use crate::grid::{BasePoint, Grid};
use crate::immersion::{integrate_immersion, konopelchenko_oneforms};
use crate::integrate::integrate_form;
use crate::scalar::Real;

/// Quaternion value per grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionField<T> {
    grid: Grid<T>,
    values: Vec<Quaternion<T>>,
}

impl<T: Real> QuaternionField<T> {
    pub fn from_pair(w1: &ComplexField<T>, w2: &ComplexField<T>) -> Result<Self> {
        same_grid(w1.grid(), w2.grid())?;
        let values = w1.values().iter().zip(w2.values()).map(|(&a, &b)| Quaternion::new(a, b)).collect();
        Ok(Self { grid: *w1.grid(), values })
    }

    pub fn from_fn(grid: Grid<T>, mut f: impl FnMut(T, T) -> Quaternion<T>) -> Self {
        Self { grid, values: grid.points().map(|(_, _, x, y)| f(x, y)).collect() }
    }

    pub fn constant(grid: Grid<T>, q: Quaternion<T>) -> Self {
        Self { grid, values: vec![q; grid.len()] }
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[Quaternion<T>] {
        &self.values
    }

    pub fn at(&self, ix: usize, iy: usize) -> Quaternion<T> {
        self.values[self.grid.index(ix, iy)]
    }

    /// Complex-pair view `(w1, w2)` with `q = w1 + w2 j`.
    pub fn to_pair(&self) -> (ComplexField<T>, ComplexField<T>) {
        let w1 = self.values.iter().map(|q| q.w1).collect();
        let w2 = self.values.iter().map(|q| q.w2).collect();
        (
            ComplexField::new(self.grid, w1).expect("shape preserved"),
            ComplexField::new(self.grid, w2).expect("shape preserved"),
        )
    }

    /// Real component `k` in `0..4` as a complex field with zero imaginary part.
    pub fn component(&self, k: usize) -> ComplexField<T> {
        let values = self.values.iter().map(|q| Complex::new(q.components()[k], T::zero())).collect();
        ComplexField::new(self.grid, values).expect("shape preserved")
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(Quaternion<T>, Quaternion<T>) -> Quaternion<T>) -> Result<Self> {
        same_grid(&self.grid, &other.grid)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { grid: self.grid, values })
    }

    pub fn map(&self, f: impl Fn(Quaternion<T>) -> Quaternion<T>) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|&q| f(q)).collect() }
    }

    pub fn sup_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |m, q| m.max(q.norm()))
    }

    pub fn max_distance(&self, other: &Self) -> Result<T> {
        same_grid(&self.grid, &other.grid)?;
        Ok(self.values.iter().zip(&other.values).fold(T::zero(), |m, (&a, &b)| m.max((a - b).norm())))
    }

    fn partials(&self) -> (Self, Self) {
        let (w1, w2) = self.to_pair();
        let fx = Self::from_pair(&d_dx(&w1), &d_dx(&w2)).expect("shared grid");
        let fy = Self::from_pair(&d_dy(&w1), &d_dy(&w2)).expect("shared grid");
        (fx, fy)
    }
}

/// The quaternion-valued form `P dx + Q dy`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionOneForm<T> {
    pub dx: QuaternionField<T>,
    pub dy: QuaternionField<T>,
}

impl<T: Real> QuaternionOneForm<T> {
    pub fn new(dx: QuaternionField<T>, dy: QuaternionField<T>) -> Result<Self> {
        same_grid(dx.grid(), dy.grid())?;
        Ok(Self { dx, dy })
    }

    pub fn grid(&self) -> &Grid<T> {
        self.dx.grid()
    }
}

/// `a = s1 + j s2`, i.e. the pair `(s1, s̄2)`.
pub fn embed_left<T: Real>(s: &LeftSpinor<T>) -> QuaternionField<T> {
    QuaternionField::from_pair(&s.s1, &s.s2.conj()).expect("spinor components share a grid")
}

/// `b = t1 + t2 j`, i.e. the pair `(t1, t2)`.
pub fn embed_right<T: Real>(t: &RightSpinor<T>) -> QuaternionField<T> {
    QuaternionField::from_pair(&t.t1, &t.t2).expect("spinor components share a grid")
}

pub fn unpack_left<T: Real>(a: &QuaternionField<T>) -> LeftSpinor<T> {
    let (w1, w2) = a.to_pair();
    LeftSpinor::new(w1, w2.conj()).expect("shared grid")
}

pub fn unpack_right<T: Real>(b: &QuaternionField<T>) -> RightSpinor<T> {
    let (w1, w2) = b.to_pair();
    RightSpinor::new(w1, w2).expect("shared grid")
}

/// Left derivative `∂f/∂z̄ = ½(f_x + f_y i)`, the coefficient of `dz̄` written to the left of it.
///
/// In pair form `(w1, w2) ↦ (∂w1/∂z̄, ∂w2/∂z)`: moving `j` past `i` conjugates.
pub fn left_dzbar<T: Real>(f: &QuaternionField<T>) -> QuaternionField<T> {
    let (fx, fy) = f.partials();
    let half = T::lit(0.5);
    fx.zip_map(&fy, |a, b| (a + b * Quaternion::i()).scale(half)).expect("shared grid")
}

/// Right derivative `∂z̄∖∂f = ½(f_x + i f_y)`, the coefficient of `dz̄` written to the right of it.
///
/// In pair form `(w1, w2) ↦ (∂w1/∂z̄, ∂w2/∂z̄)`.
pub fn right_dzbar<T: Real>(f: &QuaternionField<T>) -> QuaternionField<T> {
    let (fx, fy) = f.partials();
    let half = T::lit(0.5);
    fx.zip_map(&fy, |a, b| (a + Quaternion::i() * b).scale(half)).expect("shared grid")
}

/// Residuals of `∂a/∂z̄ = a p j` and `∂z̄∖∂b = p j b`, with `p` embedded in `span{1, i}`.
pub fn quaternionic_dirac_residual<T: Real>(
    a: &QuaternionField<T>,
    b: &QuaternionField<T>,
    p: &Potential<T>,
) -> Result<(QuaternionField<T>, QuaternionField<T>)> {
    same_grid(a.grid(), b.grid())?;
    same_grid(a.grid(), p.grid())?;
    let pq = QuaternionField::from_pair(&p.p, &ComplexField::zeros(*p.grid()))?;
    let j = Quaternion::j();
    let ra = left_dzbar(a).zip_map(&a.zip_map(&pq, |a, p| a * p * j)?, |d, rhs| d - rhs)?;
    let rb = right_dzbar(b).zip_map(&pq.zip_map(b, |p, b| p * j * b)?, |d, rhs| d - rhs)?;
    Ok((ra, rb))
}

/// `a dz b = (a b) dx + (a i b) dy`; `i` stays sandwiched between the factors.
pub fn product_form<T: Real>(a: &QuaternionField<T>, b: &QuaternionField<T>) -> Result<QuaternionOneForm<T>> {
    let dx = a.zip_map(b, |a, b| a * b)?;
    let dy = a.zip_map(b, |a, b| a * Quaternion::i() * b)?;
    QuaternionOneForm::new(dx, dy)
}

/// `dx ∧ dy` coefficient of `dω`: `∂Q/∂x − ∂P/∂y`, componentwise.
pub fn exterior_derivative_q<T: Real>(form: &QuaternionOneForm<T>) -> QuaternionField<T> {
    let (qx, _) = form.dy.partials();
    let (_, py) = form.dx.partials();
    qx.zip_map(&py, |a, b| a - b).expect("shared grid")
}

/// `X1 + i X2 + j X3 + k X4 = ∫ a dz b`, integrating each real component separately.
pub fn integrate_q<T: Real>(
    a: &QuaternionField<T>,
    b: &QuaternionField<T>,
    base: BasePoint,
) -> Result<QuaternionField<T>> {
    let form = product_form(a, b)?;
    let mut comps = Vec::with_capacity(4);
    for k in 0..4 {
        let real_form = OneForm::from_dx_dy(&form.dx.component(k), &form.dy.component(k))?;
        comps.push(integrate_form(&real_form, base)?.field.re());
    }
    let values = (0..a.grid().len())
        .map(|i| {
            Quaternion::from_components(
                comps[0].values()[i],
                comps[1].values()[i],
                comps[2].values()[i],
                comps[3].values()[i],
            )
        })
        .collect();
    Ok(QuaternionField { grid: *a.grid(), values })
}

/// Sup distance between the complex pipeline (forms → immersion) and `∫ a dz b`,
/// comparing `(X1, X2, X3, X4)` with `(q0, q1, q2, q3)`.
pub fn equivalence_check<T: Real>(s: &LeftSpinor<T>, t: &RightSpinor<T>, base: BasePoint) -> Result<T> {
    let (w1, w2) = konopelchenko_oneforms(s, t)?;
    let x = integrate_immersion(&w1, &w2, base)?;
    let q = integrate_q(&embed_left(s), &embed_right(t), base)?;
    let mut dist = T::zero();
    for k in 0..4 {
        dist = dist.max(x.coordinate(k).to_complex().max_distance(&q.component(k))?);
    }
    Ok(dist)
}
