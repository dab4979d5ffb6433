//! Second-order finite differences along one axis of a strided line.

use num_complex::Complex;

use crate::scalar::Real;

/// Derivative of the line `f[offset + k*stride]`, `k < n`, written into `out` with the same layout.
pub(crate) fn diff_line<T: Real>(
    f: &[Complex<T>],
    out: &mut [Complex<T>],
    offset: usize,
    stride: usize,
    n: usize,
    h: T,
    periodic: bool,
) {
    let at = |k: usize| f[offset + k * stride];
    let inv2h = (T::lit(2.0) * h).recip();
    for k in 1..n - 1 {
        out[offset + k * stride] = (at(k + 1) - at(k - 1)) * inv2h;
    }
    if periodic {
        out[offset] = (at(1) - at(n - 1)) * inv2h;
        out[offset + (n - 1) * stride] = (at(0) - at(n - 2)) * inv2h;
    } else {
        let (three, four) = (T::lit(3.0), T::lit(4.0));
        out[offset] = (at(0) * (-three) + at(1) * four - at(2)) * inv2h;
        out[offset + (n - 1) * stride] = (at(n - 1) * three - at(n - 2) * four + at(n - 3)) * inv2h;
    }
}

/// Cumulative trapezoid integral from index 0 along the line.
pub(crate) fn cumulative_trapezoid<T: Real>(line: &[Complex<T>], h: T) -> Vec<Complex<T>> {
    let half_h = T::lit(0.5) * h;
    let mut out = Vec::with_capacity(line.len());
    let mut acc = Complex::new(T::zero(), T::zero());
    out.push(acc);
    for w in line.windows(2) {
        acc = acc + (w[0] + w[1]) * half_h;
        out.push(acc);
    }
    out
}
