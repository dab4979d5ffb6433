//! Potentials and the two Dirac-type systems
//!
//! ```text
//! left:   ∂s1/∂z̄ = −p̄ s̄2,   ∂s̄2/∂z = p s1
//! right:  ∂t1/∂z̄ = −p t̄2,   ∂t̄2/∂z = p̄ t1
//! ```
//!
//! together with their canonical/analytic solutions and a Picard solver for the left system.

use num_complex::Complex;

use crate::calculus::spectral::Spectral;
use crate::calculus::{d_dz, d_dzbar};
use crate::error::{Error, Result};
use crate::field::{same_grid, ComplexField};
use crate::grid::Grid;
use crate::scalar::Real;

/// Largest imaginary part tolerated in a "real" β.
pub const REAL_TOLERANCE: f64 = 1e-12;

/// Largest violation of `|p0|² = (a² + b²)/4` accepted by [`constant_p_left_family`].
pub const DISPERSION_TOLERANCE: f64 = 1e-10;

/// Where a potential came from.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSource<T> {
    /// `p = ½ ∂β/∂z̄` for the recorded real β.
    FromBeta(ComplexField<T>),
    Direct,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Potential<T> {
    pub p: ComplexField<T>,
    pub source: PotentialSource<T>,
}

impl<T: Real> Potential<T> {
    pub fn direct(p: ComplexField<T>) -> Self {
        Self { p, source: PotentialSource::Direct }
    }

    pub fn constant(grid: Grid<T>, p0: Complex<T>) -> Self {
        Self::direct(ComplexField::constant(grid, p0))
    }

    pub fn grid(&self) -> &Grid<T> {
        self.p.grid()
    }
}

/// Solution candidate `(s1, s2)` of the left system.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftSpinor<T> {
    pub s1: ComplexField<T>,
    pub s2: ComplexField<T>,
}

impl<T: Real> LeftSpinor<T> {
    pub fn new(s1: ComplexField<T>, s2: ComplexField<T>) -> Result<Self> {
        same_grid(s1.grid(), s2.grid())?;
        Ok(Self { s1, s2 })
    }

    pub fn constant(grid: Grid<T>, s1: Complex<T>, s2: Complex<T>) -> Self {
        Self { s1: ComplexField::constant(grid, s1), s2: ComplexField::constant(grid, s2) }
    }

    pub fn grid(&self) -> &Grid<T> {
        self.s1.grid()
    }

    pub fn scale(&self, c: T) -> Self {
        let c = Complex::new(c, T::zero());
        Self { s1: self.s1.scale(c), s2: self.s2.scale(c) }
    }

    pub fn is_finite(&self) -> bool {
        self.s1.is_finite() && self.s2.is_finite()
    }
}

/// Solution candidate `(t1, t2)` of the right system.
#[derive(Debug, Clone, PartialEq)]
pub struct RightSpinor<T> {
    pub t1: ComplexField<T>,
    pub t2: ComplexField<T>,
}

impl<T: Real> RightSpinor<T> {
    pub fn new(t1: ComplexField<T>, t2: ComplexField<T>) -> Result<Self> {
        same_grid(t1.grid(), t2.grid())?;
        Ok(Self { t1, t2 })
    }

    pub fn constant(grid: Grid<T>, t1: Complex<T>, t2: Complex<T>) -> Self {
        Self { t1: ComplexField::constant(grid, t1), t2: ComplexField::constant(grid, t2) }
    }

    pub fn grid(&self) -> &Grid<T> {
        self.t1.grid()
    }

    pub fn is_finite(&self) -> bool {
        self.t1.is_finite() && self.t2.is_finite()
    }
}

fn require_real<T: Real>(beta: &ComplexField<T>) -> Result<()> {
    let max_imag = beta.max_abs_imag();
    if max_imag > T::lit(REAL_TOLERANCE) || !beta.is_finite() {
        return Err(Error::NotReal { max_imag: max_imag.as_f64() });
    }
    Ok(())
}

/// Net jump of an angle sampled around a closed cycle, as a multiple of 2π.
///
/// Assumes consecutive samples differ by less than π.
fn cycle_jump<T: Real>(samples: impl Iterator<Item = T> + Clone) -> T {
    let two_pi = T::lit(2.0) * T::PI();
    let wrap = |d: T| d - two_pi * (d / two_pi).round();
    let first = samples.clone().next().unwrap_or_else(T::zero);
    let mut prev = first;
    let mut total = T::zero();
    for v in samples.skip(1).chain(std::iter::once(first)) {
        total = total + wrap(v - prev);
        prev = v;
    }
    two_pi * (total / two_pi).round()
}

/// `p = ½ ∂β/∂z̄` for a real β.
///
/// On a periodic axis β is treated as an angle: a net jump of `2πw` across the period
/// is split off as the linear part `2πw (x − x0)/L` and differentiated exactly, so
/// β = 2x on `[0, 2π)` is a valid input even though β itself is not periodic.
pub fn potential_from_beta<T: Real>(beta: &ComplexField<T>) -> Result<Potential<T>> {
    require_real(beta)?;
    let g = *beta.grid();
    let (nx, ny) = (g.nx(), g.ny());
    let slope_x =
        if g.periodic_x() { cycle_jump((0..nx).map(|ix| beta.at(ix, 0).re)) / g.period_x() } else { T::zero() };
    let slope_y =
        if g.periodic_y() { cycle_jump((0..ny).map(|iy| beta.at(0, iy).re)) / g.period_y() } else { T::zero() };
    let detrended = ComplexField::new(
        g,
        g.points()
            .map(|(ix, iy, x, y)| {
                Complex::new(beta.at(ix, iy).re - slope_x * (x - g.x0()) - slope_y * (y - g.y0()), T::zero())
            })
            .collect(),
    )?;
    let half = T::lit(0.5);
    let linear_part = Complex::new(slope_x, slope_y) * half;
    let p = d_dzbar(&detrended).map(|v| (v + linear_part) * half);
    Ok(Potential { p, source: PotentialSource::FromBeta(beta.clone()) })
}

/// Residuals `(∂s1/∂z̄ + p̄ s̄2, ∂s̄2/∂z − p s1)` of the left system.
pub fn left_dirac_residual<T: Real>(s: &LeftSpinor<T>, p: &Potential<T>) -> Result<(ComplexField<T>, ComplexField<T>)> {
    same_grid(s.grid(), p.grid())?;
    let s2bar = s.s2.conj();
    let r1 = &d_dzbar(&s.s1) + &(&p.p.conj() * &s2bar);
    let r2 = &d_dz(&s2bar) - &(&p.p * &s.s1);
    Ok((r1, r2))
}

/// Residuals `(∂t1/∂z̄ + p t̄2, ∂t̄2/∂z − p̄ t1)` of the right system.
pub fn right_dirac_residual<T: Real>(
    t: &RightSpinor<T>,
    p: &Potential<T>,
) -> Result<(ComplexField<T>, ComplexField<T>)> {
    same_grid(t.grid(), p.grid())?;
    let t2bar = t.t2.conj();
    let r1 = &d_dzbar(&t.t1) + &(&p.p * &t2bar);
    let r2 = &d_dz(&t2bar) - &(&p.p.conj() * &t.t1);
    Ok((r1, r2))
}

/// Larger of the two residual sup-norms.
pub fn residual_sup<T: Real>(r: &(ComplexField<T>, ComplexField<T>)) -> T {
    r.0.sup_norm().max(r.1.sup_norm())
}

/// `(cos β/2, sin β/2)`, which solves the right system for `p = ½ ∂β/∂z̄`.
pub fn canonical_right_spinor<T: Real>(beta: &ComplexField<T>) -> Result<RightSpinor<T>> {
    require_real(beta)?;
    let half = T::lit(0.5);
    let t1 = beta.map(|b| Complex::new((b.re * half).cos(), T::zero()));
    let t2 = beta.map(|b| Complex::new((b.re * half).sin(), T::zero()));
    RightSpinor::new(t1, t2)
}

/// Plane-wave solution of the left system for a constant potential `p0`:
/// `s1 = α e^{i(ax+by)}`, `s̄2 = γ e^{i(ax+by)}` with `γ = (b − ia) α / (2 p̄0)`.
///
/// Substitution gives `½(ia − b) α = −p̄0 γ` and `½(ia + b) γ = p0 α`, which are
/// compatible iff `|p0|² = (a² + b²)/4`. For `p0 = 0` the only admissible wave is
/// `a = b = 0` and γ is taken as zero.
pub fn constant_p_left_family<T: Real>(
    p0: Complex<T>,
    a: T,
    b: T,
    alpha: Complex<T>,
    grid: Grid<T>,
) -> Result<LeftSpinor<T>> {
    let quarter = T::lit(0.25);
    let mismatch = (p0.norm_sqr() - (a * a + b * b) * quarter).abs();
    if !(mismatch <= T::lit(DISPERSION_TOLERANCE)) {
        return Err(Error::Parameter(format!("dispersion relation |p0|^2 = (a^2+b^2)/4 violated by {mismatch:e}")));
    }
    let gamma = if p0.norm_sqr() == T::zero() {
        Complex::new(T::zero(), T::zero())
    } else {
        Complex::new(b, -a) * alpha / (p0.conj() * T::lit(2.0))
    };
    let wave = |x: T, y: T| Complex::new(T::zero(), a * x + b * y).exp();
    let s1 = ComplexField::from_fn(grid, |x, y| alpha * wave(x, y));
    let s2 = ComplexField::from_fn(grid, |x, y| (gamma * wave(x, y)).conj());
    LeftSpinor::new(s1, s2)
}

/// Successful Picard run.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome<T> {
    pub spinor: LeftSpinor<T>,
    /// Max residual of every iterate, first iterate first.
    pub residual_history: Vec<T>,
}

impl<T> SolveOutcome<T> {
    pub fn iterations(&self) -> usize {
        self.residual_history.len()
    }
}

/// Residual growth (relative to the first iterate) treated as divergence before `max_iter`.
const BLOWUP_FACTOR: f64 = 1e8;

/// Picard iteration for the left system on a doubly periodic grid.
///
/// Each sweep updates `s1 ← m1 + T_z̄[−p̄ s̄2]` and then `s̄2 ← m2 + T_z[p s1]`, where
/// `T_z̄`, `T_z` invert `∂/∂z̄`, `∂/∂z` on the non-constant Fourier modes and `m1`, `m2`
/// are the means of the seed's `s1` and `s̄2`. The seed's `s2` is also the starting iterate.
///
/// Convergence is judged with [`left_dirac_residual`] on the grid's own scheme.
/// For a constant potential the sweep multiplies a plane wave of wavenumber `k` by
/// `4|p|²/|k|²`, so on `[0, L)²` it expands once `|p| > π/L` (½ on `[0, 2π)²`);
/// `|p| = π/L` is marginal and leaves the lowest modes untouched.
pub fn solve_left_dirac<T: Real>(
    p: &Potential<T>,
    seed: &LeftSpinor<T>,
    tol: T,
    max_iter: usize,
) -> Result<SolveOutcome<T>> {
    let g = *p.grid();
    same_grid(&g, seed.grid())?;
    if !g.is_doubly_periodic() {
        return Err(Error::UnsupportedDomain("Picard d-bar inversion needs a doubly periodic grid".into()));
    }
    if !(tol > T::zero()) {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    let sp = Spectral::new(&g);
    let half = T::lit(0.5);
    let zero = Complex::new(T::zero(), T::zero());
    let invert = |f: &ComplexField<T>, sign: T| -> ComplexField<T> {
        let values = sp.apply(f.values(), |kx, ky| {
            let symbol = Complex::new(-sign * ky, kx) * half;
            if symbol == zero {
                zero
            } else {
                symbol.inv()
            }
        });
        ComplexField::new(g, values).expect("shape preserved")
    };
    // ∂/∂z̄ has symbol ½(i kx − ky), ∂/∂z has ½(i kx + ky).
    let inv_dzbar = |f: &ComplexField<T>| invert(f, T::one());
    let inv_dz = |f: &ComplexField<T>| invert(f, -T::one());

    let mean1 = seed.s1.mean();
    let mean2 = seed.s2.conj().mean();
    let pbar = p.p.conj();
    let mut s2bar = seed.s2.conj();
    let mut history: Vec<T> = Vec::new();
    let to_f64 = |h: &[T]| h.iter().map(|v| v.as_f64()).collect::<Vec<_>>();

    for _ in 0..max_iter {
        let s1 = inv_dzbar(&-&(&pbar * &s2bar)).map(|v| v + mean1);
        s2bar = inv_dz(&(&p.p * &s1)).map(|v| v + mean2);
        let candidate = LeftSpinor::new(s1.clone(), s2bar.conj())?;
        let r = residual_sup(&left_dirac_residual(&candidate, p)?);
        history.push(r);
        if r < tol {
            return Ok(SolveOutcome { spinor: candidate, residual_history: history });
        }
        let blown = !r.is_finite() || r.as_f64() > BLOWUP_FACTOR * history[0].as_f64().max(1.0);
        if blown {
            break;
        }
    }
    Err(Error::Divergence { iterations: history.len(), history: to_f64(&history) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Scheme;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn torus(n: usize) -> Grid<f64> {
        Grid::periodic_square(n, 2.0 * PI).unwrap()
    }

    fn real_field(g: Grid<f64>, f: impl Fn(f64, f64) -> f64) -> ComplexField<f64> {
        ComplexField::from_fn(g, |x, y| c(f(x, y), 0.0))
    }

    fn flat_left(g: Grid<f64>) -> LeftSpinor<f64> {
        LeftSpinor::new(
            ComplexField::from_fn(g, |_, y| c(0.0, y).exp()),
            ComplexField::from_fn(g, |_, y| c(0.0, -y).exp()),
        )
        .unwrap()
    }

    #[test]
    fn potential_examples() {
        for g in [torus(16), Grid::closed_square(9, 0.0, 1.0).unwrap()] {
            let zero = potential_from_beta(&real_field(g, |_, _| 0.0)).unwrap();
            assert!(zero.p.sup_norm() < 1e-14);
            let px = potential_from_beta(&real_field(g, |x, _| 2.0 * x)).unwrap();
            assert!(px.p.max_distance(&ComplexField::constant(g, c(0.5, 0.0))).unwrap() < 1e-12);
            let py = potential_from_beta(&real_field(g, |_, y| 2.0 * y)).unwrap();
            assert!(py.p.max_distance(&ComplexField::constant(g, c(0.0, 0.5))).unwrap() < 1e-12);
            assert!(matches!(py.source, PotentialSource::FromBeta(_)));
        }
    }

    #[test]
    fn potential_of_winding_angle_with_periodic_part() {
        let g = torus(32);
        let beta = real_field(g, |x, y| 2.0 * x - 4.0 * y + 0.3 * y.sin());
        let p = potential_from_beta(&beta).unwrap();
        let exact = ComplexField::from_fn(g, |_, y| c(0.5, -1.0 + 0.075 * y.cos()));
        assert!(p.p.max_distance(&exact).unwrap() < 1e-12);
    }

    #[test]
    fn non_real_beta_rejected() {
        let g = torus(8);
        let beta = ComplexField::from_fn(g, |x, _| c(x, 1e-6));
        assert!(matches!(potential_from_beta(&beta), Err(Error::NotReal { .. })));
        assert!(matches!(canonical_right_spinor(&beta), Err(Error::NotReal { .. })));
    }

    #[test]
    fn left_residual_examples() {
        let g = torus(32);
        let free = Potential::constant(g, c(0.0, 0.0));
        let r = left_dirac_residual(&LeftSpinor::constant(g, c(1.0, 0.0), c(0.0, 0.0)), &free).unwrap();
        assert_eq!(residual_sup(&r), 0.0);

        let half = Potential::constant(g, c(0.5, 0.0));
        let r = left_dirac_residual(&flat_left(g), &half).unwrap();
        assert!(residual_sup(&r) < 1e-13);

        let s = flat_left(g);
        let doubled = LeftSpinor::new(s.s1.clone(), s.s2.scale(c(2.0, 0.0))).unwrap();
        let (r1, _) = left_dirac_residual(&doubled, &half).unwrap();
        // ∂z̄ e^{iy} + ½·2e^{iy} = −½e^{iy} + e^{iy}.
        assert!((r1.sup_norm() - 0.5).abs() < 1e-13);
    }

    #[test]
    fn right_residual_examples() {
        let g = torus(32);
        let r = right_dirac_residual(
            &RightSpinor::constant(g, c(1.0, 0.0), c(0.0, 0.0)),
            &Potential::constant(g, c(0.0, 0.0)),
        )
        .unwrap();
        assert_eq!(residual_sup(&r), 0.0);

        let beta = real_field(g, |x, _| 2.0 * x);
        let p = potential_from_beta(&beta).unwrap();
        let t = RightSpinor::new(real_field(g, |x, _| x.cos()), real_field(g, |x, _| x.sin())).unwrap();
        assert!(residual_sup(&right_dirac_residual(&t, &p).unwrap()) < 1e-13);

        let swapped = RightSpinor::new(t.t2.clone(), t.t1.clone()).unwrap();
        assert!(residual_sup(&right_dirac_residual(&swapped, &p).unwrap()) > 0.5);
    }

    #[test]
    fn residual_grid_mismatch() {
        let s = LeftSpinor::constant(torus(8), c(1.0, 0.0), c(0.0, 0.0));
        let p = Potential::constant(torus(16), c(0.0, 0.0));
        assert_eq!(left_dirac_residual(&s, &p), Err(Error::GridMismatch));
    }

    #[test]
    fn canonical_spinor_examples() {
        let g = torus(8);
        let t = canonical_right_spinor(&real_field(g, |_, _| 0.0)).unwrap();
        assert!(t.t1.values().iter().all(|v| *v == c(1.0, 0.0)));
        assert!(t.t2.values().iter().all(|v| *v == c(0.0, 0.0)));
        let t = canonical_right_spinor(&real_field(g, |_, _| PI)).unwrap();
        assert!(t.t1.sup_norm() < 1e-15);
        assert!(t.t2.max_distance(&ComplexField::constant(g, c(1.0, 0.0))).unwrap() < 1e-15);
        let t = canonical_right_spinor(&real_field(g, |x, _| 2.0 * x)).unwrap();
        assert!(t.t1.max_distance(&real_field(g, |x, _| x.cos())).unwrap() < 1e-15);
        assert!(t.t2.max_distance(&real_field(g, |x, _| x.sin())).unwrap() < 1e-15);
    }

    #[test]
    fn family_examples() {
        let g = torus(16);
        let s = constant_p_left_family(c(0.5, 0.0), 0.0, 1.0, c(1.0, 0.0), g).unwrap();
        assert!(s.s1.max_distance(&flat_left(g).s1).unwrap() < 1e-15);
        assert!(s.s2.max_distance(&flat_left(g).s2).unwrap() < 1e-15);

        let s2x = constant_p_left_family(c(0.5, 0.0), 0.0, 1.0, c(2.0, 0.0), g).unwrap();
        assert!(s2x.s1.max_distance(&s.s1.scale(c(2.0, 0.0))).unwrap() < 1e-15);
        assert!(s2x.s2.max_distance(&s.s2.scale(c(2.0, 0.0))).unwrap() < 1e-15);

        let sx = constant_p_left_family(c(0.5, 0.0), 1.0, 0.0, c(1.0, 0.0), g).unwrap();
        let s2bar = ComplexField::from_fn(g, |x, _| c(0.0, -1.0) * c(0.0, x).exp());
        assert!(sx.s2.conj().max_distance(&s2bar).unwrap() < 1e-15);

        assert!(matches!(constant_p_left_family(c(0.5, 0.0), 1.0, 1.0, c(1.0, 0.0), g), Err(Error::Parameter(_))));
    }

    #[test]
    fn picard_free_system_is_fixed_point() {
        let g = torus(16);
        let p = Potential::constant(g, c(0.0, 0.0));
        let seed = LeftSpinor::constant(g, c(1.0, 0.0), c(0.0, 0.0));
        let out = solve_left_dirac(&p, &seed, 1e-10, 10).unwrap();
        assert_eq!(out.iterations(), 1);
        assert_eq!(out.residual_history[0], 0.0);
        assert!(out.spinor.s1.max_distance(&seed.s1).unwrap() < 1e-15);
        assert!(out.spinor.s2.max_distance(&seed.s2).unwrap() < 1e-15);
    }

    #[test]
    fn picard_keeps_analytic_solution() {
        let g = torus(32);
        let out = solve_left_dirac(&Potential::constant(g, c(0.5, 0.0)), &flat_left(g), 1e-10, 5).unwrap();
        assert_eq!(out.iterations(), 1);
        assert!(out.spinor.s1.max_distance(&flat_left(g).s1).unwrap() < 1e-12);
    }

    #[test]
    fn picard_diverges_for_large_potential() {
        let g = torus(32);
        let seed = LeftSpinor::new(
            ComplexField::from_fn(g, |x, y| c(1.0 + 0.1 * x.cos(), 0.1 * y.sin())),
            ComplexField::from_fn(g, |x, y| c(0.1 * (x + y).sin(), 0.0)),
        )
        .unwrap();
        match solve_left_dirac(&Potential::constant(g, c(10.0, 0.0)), &seed, 1e-10, 200) {
            Err(Error::Divergence { history, .. }) => {
                assert!(history.last().unwrap() > &history[0]);
            }
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn picard_rejects_open_domains() {
        let g = Grid::closed_square(8, 0.0, 1.0).unwrap();
        let seed = LeftSpinor::constant(g, c(1.0, 0.0), c(0.0, 0.0));
        let p = Potential::constant(g, c(0.0, 0.0));
        assert!(matches!(solve_left_dirac(&p, &seed, 1e-10, 5), Err(Error::UnsupportedDomain(_))));
        let t = torus(8).with_scheme(Scheme::FiniteDifference).unwrap();
        let seed = LeftSpinor::constant(t, c(1.0, 0.0), c(0.0, 0.0));
        assert!(matches!(
            solve_left_dirac(&Potential::constant(t, c(0.0, 0.0)), &seed, 0.0, 5),
            Err(Error::Parameter(_))
        ));
    }
}
