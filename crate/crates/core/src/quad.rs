//! Quadrature: adaptive Gauss–Kronrod on finite intervals and
//! derivative-corrected trapezoid rules for data sampled on ODE grids.

use alloc::collections::BinaryHeap;
use alloc::format;
use core::cmp::Ordering;

use crate::{Error, Result};

/// 15-point Kronrod abscissae (positive half, QUADPACK `qk15`).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

/// 15-point Kronrod weights.
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// 7-point Gauss weights (nodes are XGK[1], XGK[3], XGK[5], XGK[7]).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// Outcome of an adaptive quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;

    for j in 0..7 {
        let dx = half * XGK[j];
        let fsum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }

    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

#[derive(Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// The worst segment (largest local error estimate) is bisected until the
/// summed error estimate satisfies `max(abs_tol, rel_tol * |integral|)`.
pub fn adaptive_quad<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<QuadResult> {
    const MAX_SEGMENTS: usize = 4000;

    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!(
            "adaptive_quad requires finite limits, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
        });
    }

    let (value, error) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    let mut evaluations = 15usize;

    loop {
        let total: f64 = heap.iter().map(|s| s.value).sum();
        let total_err: f64 = heap.iter().map(|s| s.error).sum();
        if total_err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(QuadResult {
                value: total,
                abs_error: total_err,
                evaluations,
            });
        }
        if heap.len() >= MAX_SEGMENTS {
            return Err(Error::Numeric(format!(
                "quadrature did not converge: estimate {total:.12e}, error bound {total_err:.3e}"
            )));
        }

        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = gk15(&f, worst.a, mid);
        let (rv, re) = gk15(&f, mid, worst.b);
        evaluations += 30;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
    }
}

/// Integral of one segment from endpoint values and first derivatives.
///
/// This is the Euler–Maclaurin corrected trapezoid (equivalently, the exact
/// integral of the cubic Hermite interpolant), with error `O(h^5 f'''')`.
#[inline]
pub fn hermite_segment(x0: f64, x1: f64, f0: f64, f1: f64, d0: f64, d1: f64) -> f64 {
    let h = x1 - x0;
    0.5 * h * (f0 + f1) + h * h * (d0 - d1) / 12.0
}

/// Composite integral over a sampled grid with derivatives at every node.
pub fn hermite_integral(xs: &[f64], fs: &[f64], ds: &[f64]) -> f64 {
    debug_assert_eq!(xs.len(), fs.len());
    debug_assert_eq!(xs.len(), ds.len());
    let mut total = 0.0;
    for i in 1..xs.len() {
        total += hermite_segment(xs[i - 1], xs[i], fs[i - 1], fs[i], ds[i - 1], ds[i]);
    }
    total
}

/// Running integral over a sampled grid; `out[i]` integrates `[xs[0], xs[i]]`.
pub fn hermite_cumulative(xs: &[f64], fs: &[f64], ds: &[f64]) -> alloc::vec::Vec<f64> {
    let mut out = alloc::vec::Vec::with_capacity(xs.len());
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..xs.len() {
        acc += hermite_segment(xs[i - 1], xs[i], fs[i - 1], fs[i], ds[i - 1], ds[i]);
        out.push(acc);
    }
    out
}

/// Cubic Hermite evaluation of a sampled function at `x`, returning
/// `(value, derivative)`; nodes must be ascending.
pub fn hermite_eval(xs: &[f64], fs: &[f64], ds: &[f64], x: f64) -> (f64, f64) {
    debug_assert!(xs.len() >= 2);
    let n = xs.len();
    // binary search for the bracketing segment, clamping to the grid
    let mut lo = 0usize;
    if x < xs[n - 1] && x > xs[0] {
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if xs[mid] <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    } else if x >= xs[n - 1] {
        lo = n - 2;
    }
    let (x0, x1) = (xs[lo], xs[lo + 1]);
    let h = x1 - x0;
    let t = (x - x0) / h;
    let (f0, f1, d0, d1) = (fs[lo], fs[lo + 1], ds[lo], ds[lo + 1]);

    let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    let h10 = t * (1.0 - t) * (1.0 - t);
    let h01 = t * t * (3.0 - 2.0 * t);
    let h11 = t * t * (t - 1.0);
    let value = h00 * f0 + h10 * h * d0 + h01 * f1 + h11 * h * d1;

    let g00 = 6.0 * t * (t - 1.0);
    let g10 = (1.0 - t) * (1.0 - 3.0 * t);
    let g01 = -g00;
    let g11 = t * (3.0 * t - 2.0);
    let deriv = (g00 * f0 + g01 * f1) / h + g10 * d0 + g11 * d1;

    (value, deriv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        let r = adaptive_quad(|x| x * x, 0.0, 3.0, 1e-12, 1e-12).unwrap();
        assert_relative_eq!(r.value, 9.0, max_relative = 1e-14);
    }

    #[test]
    fn gaussian_half_line() {
        // truncated at 8: the remainder is ~1e-29
        let r = adaptive_quad(|x| (-x * x).exp(), 0.0, 8.0, 1e-13, 1e-13).unwrap();
        assert_relative_eq!(
            r.value,
            core::f64::consts::PI.sqrt() / 2.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn integrable_endpoint_singularity() {
        // int_0^1 x^{-1/2} dx = 2
        let r = adaptive_quad(|x| 1.0 / x.sqrt(), 1e-14, 1.0, 1e-10, 1e-10).unwrap();
        assert!((r.value - 2.0).abs() < 1e-6, "got {}", r.value);
    }

    #[test]
    fn hermite_matches_cubic_exactly() {
        // f(x) = x^3 - 2x: integral over [0, 2] is 4 - 4 = 0
        let xs: alloc::vec::Vec<f64> = (0..=10).map(|i| 0.2 * i as f64).collect();
        let fs: alloc::vec::Vec<f64> = xs.iter().map(|&x| x * x * x - 2.0 * x).collect();
        let ds: alloc::vec::Vec<f64> = xs.iter().map(|&x| 3.0 * x * x - 2.0).collect();
        let total = hermite_integral(&xs, &fs, &ds);
        assert!(total.abs() < 1e-14);
        let cum = hermite_cumulative(&xs, &fs, &ds);
        assert!((cum.last().unwrap() - total).abs() < 1e-15);
    }

    #[test]
    fn hermite_eval_reproduces_nodes_and_slope() {
        let xs: alloc::vec::Vec<f64> = (0..=17).map(|i| 0.1 * i as f64).collect();
        let fs: alloc::vec::Vec<f64> = xs.iter().map(|&x: &f64| x.sin()).collect();
        let ds: alloc::vec::Vec<f64> = xs.iter().map(|&x: &f64| x.cos()).collect();
        let (v, d) = hermite_eval(&xs, &fs, &ds, 0.83);
        assert_relative_eq!(v, 0.83f64.sin(), max_relative = 1e-6);
        assert_relative_eq!(d, 0.83f64.cos(), max_relative = 1e-4);
        let (v0, d0) = hermite_eval(&xs, &fs, &ds, 0.5);
        assert_relative_eq!(v0, 0.5f64.sin(), max_relative = 1e-15);
        assert_relative_eq!(d0, 0.5f64.cos(), max_relative = 1e-12);
    }
}
