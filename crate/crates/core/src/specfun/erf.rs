//! Error function and the scaled complement `erfcx(x) = exp(x^2) erfc(x)`.
//!
//! Maclaurin series below |x| = 2 (where the alternating terms stay small
//! enough that no accuracy is lost), Stieltjes continued fraction for the
//! scaled complement beyond. The continued fraction evaluates erfcx directly,
//! which is the form the Green's-function integrands need at large x.

use crate::math;

use core::f64::consts::FRAC_2_SQRT_PI;

const SQRT_PI: f64 = 1.772453850905516;

const SERIES_CUTOFF: f64 = 2.0;

fn erf_series(x: f64) -> f64 {
    // erf(x) = 2/sqrt(pi) * sum_k (-1)^k x^(2k+1) / (k! (2k+1))
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 1.0;
    loop {
        term *= -x2 / k;
        let contrib = term / (2.0 * k + 1.0);
        sum += contrib;
        if contrib.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
        k += 1.0;
    }
    FRAC_2_SQRT_PI * sum
}

/// Continued fraction for `sqrt(pi) * erfcx(x)`, evaluated by the modified
/// Lentz method: 1 / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
fn erfcx_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x.max(TINY);
    let mut c = f;
    let mut d = 0.0;
    let mut n = 1.0;
    for _ in 0..200 {
        let a = 0.5 * n;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
        n += 1.0;
    }
    1.0 / (SQRT_PI * f)
}

/// Error function, absolute accuracy around 1e-15.
pub fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x < SERIES_CUTOFF {
        erf_series(x)
    } else if x > 27.0 {
        1.0
    } else {
        1.0 - erfcx_cf(x) * math::exp(-x * x)
    }
}

/// Scaled complementary error function `exp(x^2)(1 - erf(x))` for `x >= 0`,
/// stable far into the tail where erfc itself underflows.
pub fn erfcx(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x < SERIES_CUTOFF {
        math::exp(x * x) * (1.0 - erf_series(x))
    } else {
        erfcx_cf(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn anchor_values() {
        assert_eq!(erf(0.0), 0.0);
        // frozen from the alternating Maclaurin series at extended precision
        assert_abs_diff_eq!(erf(1.0), 0.8427007929497149, epsilon = 1e-13);
        assert_abs_diff_eq!(erf(6.0), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(erf(-1.0), -0.8427007929497149, epsilon = 1e-13);
    }

    #[test]
    fn seam_is_continuous() {
        // the step across the seam includes the function's own slope,
        // erf'(2) * 2e-9 ~ 4e-11
        let below = erf(SERIES_CUTOFF - 1e-9);
        let above = erf(SERIES_CUTOFF + 1e-9);
        assert_abs_diff_eq!(below, above, epsilon = 1e-10);
        let sb = erfcx(SERIES_CUTOFF - 1e-9);
        let sa = erfcx(SERIES_CUTOFF + 1e-9);
        assert_relative_eq!(sb, sa, max_relative = 1e-8);
    }

    #[test]
    fn scaled_form_matches_asymptotic_tail() {
        // erfcx(x) ~ (1 - 1/(2x^2) + 3/(4x^4)) / (x sqrt(pi)); the next
        // term bounds the truncation error at 15/(8 x^6)
        for &x in &[5.0, 10.0, 20.0] {
            let x2 = x * x;
            let lead =
                (1.0 - 0.5 / x2 + 0.75 / (x2 * x2)) / (x * core::f64::consts::PI.sqrt());
            let tol = 2.0 * 15.0 / (8.0 * x2 * x2 * x2);
            assert_relative_eq!(erfcx(x), lead, max_relative = tol);
        }
    }

    #[test]
    fn erfcx_consistent_with_erf_midrange() {
        for i in 1..=30 {
            let x = 0.1 * i as f64;
            let direct = (x * x).exp() * (1.0 - erf(x));
            assert_relative_eq!(erfcx(x), direct, max_relative = 1e-11);
        }
    }
}
