//! Closed-form eigenvalue sums and WKB ladders for `V(x) = gamma |x|^N`.
//!
//! With beta = 1/(N+2) the alternating sum over inverse eigenvalues has the
//! gamma-ratio closed form valid for every N > 0, while the separate even
//! and odd sums only converge for N > 2 (the WKB exponent 2N/(N+2) must
//! exceed one). Both the compact trigonometric forms and the direct
//! gamma-product forms are provided so they can cross-check each other.

use alloc::format;

use crate::math;
use crate::specfun::{airy_zero, ln_gamma, AiryZeroKind};
use crate::{Error, Result};

use core::f64::consts::PI;

/// Parity channel of a symmetric potential's eigenstates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Slope vanishes at the origin.
    Even,
    /// Value vanishes at the origin.
    Odd,
}

/// Exponent, strength, and the derived transform parameters of a power-law
/// well: nu = 2/(N+2) and beta = 1/(N+2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawParams {
    pub exponent: f64,
    pub strength: f64,
    pub nu: f64,
    pub beta: f64,
}

impl PowerLawParams {
    /// Derive the transform parameters for `V(x) = strength * |x|^exponent`.
    pub fn new(exponent: f64, strength: f64) -> Result<Self> {
        if !(exponent > 0.0) {
            return Err(Error::Domain(format!(
                "power-law exponent must be positive (confining), got {exponent}"
            )));
        }
        if !(strength > 0.0) {
            return Err(Error::Domain(format!(
                "power-law strength must be positive, got {strength}"
            )));
        }
        Ok(PowerLawParams {
            exponent,
            strength,
            nu: 2.0 / (exponent + 2.0),
            beta: 1.0 / (exponent + 2.0),
        })
    }

    /// Eigenvalues scale as `strength^{2/(N+2)}`; sums of inverse
    /// eigenvalues pick up the reciprocal factor.
    pub fn sum_scale(&self) -> f64 {
        math::powf(self.strength, -self.nu)
    }

    /// True when the single-parity sums converge (N > 2, beta < 1/4).
    pub fn parity_sums_converge(&self) -> bool {
        self.exponent > 2.0
    }
}

/// The three closed-form sums; `s1`/`s2` are `None` when divergent (N <= 2).
#[derive(Debug, Clone, Copy)]
pub struct ClosedFormSums {
    /// Alternating sum over all eigenvalues.
    pub s: f64,
    /// Sum over odd-parity eigenvalues.
    pub s1: Option<f64>,
    /// Sum over even-parity eigenvalues.
    pub s2: Option<f64>,
}

impl ClosedFormSums {
    pub fn s1_divergent(&self) -> bool {
        self.s1.is_none()
    }
    pub fn s2_divergent(&self) -> bool {
        self.s2.is_none()
    }
}

fn ln_beta_power(beta: f64) -> f64 {
    (2.0 - 4.0 * beta) * math::ln(beta)
}

/// Alternating sum `sum_n (-1)^n / lambda_n` in closed form,
/// `beta^{2-4beta} Gamma(3b) Gamma^2(2b) / (Gamma(4b) Gamma(1-b))`.
pub fn closed_form_s(params: &PowerLawParams) -> f64 {
    let b = params.beta;
    let log = ln_beta_power(b) + ln_gamma(3.0 * b).unwrap() + 2.0 * ln_gamma(2.0 * b).unwrap()
        - ln_gamma(4.0 * b).unwrap()
        - ln_gamma(1.0 - b).unwrap();
    params.sum_scale() * math::exp(log)
}

/// Same sum through the sine form
/// `beta^{2-4b} Gamma(3b) Gamma^2(2b) Gamma(b) sin(pi b) / (Gamma(4b) pi)`;
/// equal to [`closed_form_s`] by the reflection identity.
pub fn closed_form_s_sine_form(params: &PowerLawParams) -> f64 {
    let b = params.beta;
    let log = ln_beta_power(b)
        + ln_gamma(3.0 * b).unwrap()
        + 2.0 * ln_gamma(2.0 * b).unwrap()
        + ln_gamma(b).unwrap()
        - ln_gamma(4.0 * b).unwrap();
    params.sum_scale() * math::exp(log) * math::sin(PI * b) / PI
}

fn require_parity_convergence(params: &PowerLawParams) -> Result<()> {
    if !params.parity_sums_converge() {
        let exponent = 2.0 * params.exponent / (params.exponent + 2.0);
        return Err(Error::DivergentSum(format!(
            "single-parity sums diverge for N = {}: WKB eigenvalues grow like n^{exponent:.4}, \
             so the inverse sums need that exponent above 1, i.e. N > 2",
            params.exponent
        )));
    }
    Ok(())
}

/// Odd-state sum `sum 1/lambda_{2n+1} = S / (2 cos 2 pi beta)`, N > 2.
pub fn closed_form_s1(params: &PowerLawParams) -> Result<f64> {
    require_parity_convergence(params)?;
    Ok(closed_form_s(params) / (2.0 * math::cos(2.0 * PI * params.beta)))
}

/// Even-state sum
/// `sum 1/lambda_{2n} = S sin(3 pi b) / (sin(pi b) 2 cos(2 pi b))`, N > 2.
pub fn closed_form_s2(params: &PowerLawParams) -> Result<f64> {
    require_parity_convergence(params)?;
    let b = params.beta;
    Ok(closed_form_s(params) * math::sin(3.0 * PI * b)
        / (math::sin(PI * b) * 2.0 * math::cos(2.0 * PI * b)))
}

/// Direct gamma-product form of the odd-state sum,
/// `b^{2-4b} Gamma(3b) Gamma(2b) Gamma(1-4b) / (Gamma(1-2b) Gamma(1-b))`.
pub fn s1_gamma_form(params: &PowerLawParams) -> Result<f64> {
    require_parity_convergence(params)?;
    let b = params.beta;
    let log = ln_beta_power(b) + ln_gamma(3.0 * b).unwrap() + ln_gamma(2.0 * b).unwrap()
        + ln_gamma(1.0 - 4.0 * b).unwrap()
        - ln_gamma(1.0 - 2.0 * b).unwrap()
        - ln_gamma(1.0 - b).unwrap();
    Ok(params.sum_scale() * math::exp(log))
}

/// Direct gamma-product form of the even-state sum,
/// `b^{2-4b} Gamma(2b) Gamma(b) Gamma(1-4b) / (Gamma(1-3b) Gamma(1-2b))`.
pub fn s2_gamma_form(params: &PowerLawParams) -> Result<f64> {
    require_parity_convergence(params)?;
    let b = params.beta;
    let log = ln_beta_power(b) + ln_gamma(2.0 * b).unwrap() + ln_gamma(b).unwrap()
        + ln_gamma(1.0 - 4.0 * b).unwrap()
        - ln_gamma(1.0 - 3.0 * b).unwrap()
        - ln_gamma(1.0 - 2.0 * b).unwrap();
    Ok(params.sum_scale() * math::exp(log))
}

/// All three sums, with the divergent ones flagged as `None`.
pub fn closed_form_sums(params: &PowerLawParams) -> ClosedFormSums {
    ClosedFormSums {
        s: closed_form_s(params),
        s1: closed_form_s1(params).ok(),
        s2: closed_form_s2(params).ok(),
    }
}

/// Bohr–Sommerfeld eigenvalue for merged index `n`:
/// `lambda_n = ((n + 1/2) sqrt(pi) (N+2) Gamma((N+2)/(2N)) / (2 Gamma(1/N)))^{2N/(N+2)}`,
/// scaled by `strength^{2/(N+2)}`.
pub fn wkb_eigenvalue(params: &PowerLawParams, n: usize) -> f64 {
    wkb_at(params, n as f64)
}

/// WKB value at a continuous quantum number; used by the tail integrals.
pub fn wkb_at(params: &PowerLawParams, n: f64) -> f64 {
    let big_n = params.exponent;
    let c = math::sqrt(PI)
        * (big_n + 2.0)
        * math::exp(
            ln_gamma((big_n + 2.0) / (2.0 * big_n)).unwrap() - ln_gamma(1.0 / big_n).unwrap(),
        )
        / 2.0;
    let s = 2.0 * big_n / (big_n + 2.0);
    math::powf(params.strength, params.nu) * math::powf((n + 0.5) * c, s)
}

/// WKB ladder resolved by parity: the even ladder is the merged index 2m,
/// the odd ladder 2m+1.
pub fn wkb_ladder(params: &PowerLawParams, parity: Parity, m: f64) -> f64 {
    match parity {
        Parity::Even => wkb_at(params, 2.0 * m),
        Parity::Odd => wkb_at(params, 2.0 * m + 1.0),
    }
}

/// Growth exponent `s` with `lambda_n ~ n^s`, i.e. `2N/(N+2)`.
pub fn wkb_growth_exponent(params: &PowerLawParams) -> f64 {
    2.0 * params.exponent / (params.exponent + 2.0)
}

/// Exact sums for the infinite square well of half-width pi/2 (the
/// N -> infinity limit of `(2|x|/pi)^N`): eigenvalues are squares of
/// integers, so the sums are pi^2/24, pi^2/8 and pi^2/12.
pub fn box_limit_sums() -> ClosedFormSums {
    ClosedFormSums {
        s: PI * PI / 12.0,
        s1: Some(PI * PI / 24.0),
        s2: Some(PI * PI / 8.0),
    }
}

/// The alternating-sum closed form with the box scaling factor restored:
/// `(pi b / 2)^{2-4b} Gamma(3b) Gamma^2(2b) / (Gamma(4b) Gamma(1-b))`.
/// Its beta -> 0 limit reproduces the box value pi^2/12.
pub fn scaled_s_box_limit(beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < 0.5) {
        return Err(Error::Domain(format!(
            "scaled box-limit form needs beta in (0, 1/2), got {beta}"
        )));
    }
    let log = (2.0 - 4.0 * beta) * math::ln(PI * beta / 2.0)
        + ln_gamma(3.0 * beta)?
        + 2.0 * ln_gamma(2.0 * beta)?
        - ln_gamma(4.0 * beta)?
        - ln_gamma(1.0 - beta)?;
    Ok(math::exp(log))
}

/// Eigenvalues of the linear well (N = 1, unit strength) are Airy zeros:
/// derivative zeros on the even ladder, function zeros on the odd one.
pub fn linear_well_eigenvalue(n: usize) -> Result<f64> {
    if n.is_multiple_of(2) {
        airy_zero(n / 2, AiryZeroKind::Derivative)
    } else {
        airy_zero(n / 2, AiryZeroKind::Function)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn derived_parameters() {
        let p = PowerLawParams::new(1.0, 1.0).unwrap();
        assert_relative_eq!(p.nu, 2.0 / 3.0);
        assert_relative_eq!(p.beta, 1.0 / 3.0);
        assert_relative_eq!(PowerLawParams::new(2.0, 1.0).unwrap().beta, 0.25);
        assert_relative_eq!(PowerLawParams::new(4.0, 1.0).unwrap().beta, 1.0 / 6.0);
        assert!(PowerLawParams::new(0.0, 1.0).is_err());
        assert!(PowerLawParams::new(-1.0, 1.0).is_err());
        assert!(PowerLawParams::new(2.0, 0.0).is_err());
    }

    #[test]
    fn alternating_sum_anchor_values() {
        // N = 1: (1/3)^{2/3} Gamma(2/3)/Gamma(4/3), quoted as 0.729
        let linear = PowerLawParams::new(1.0, 1.0).unwrap();
        assert_abs_diff_eq!(closed_form_s(&linear), 0.729, epsilon = 5e-4);
        // N = 2 collapses to pi/4 exactly
        let quadratic = PowerLawParams::new(2.0, 1.0).unwrap();
        assert_relative_eq!(closed_form_s(&quadratic), PI / 4.0, max_relative = 1e-13);
        // N = 4, quoted as 0.76330 to five decimals
        let quartic = PowerLawParams::new(4.0, 1.0).unwrap();
        assert_abs_diff_eq!(closed_form_s(&quartic), 0.76330, epsilon = 5e-5);
    }

    #[test]
    fn sine_form_equals_reflection_form() {
        for &beta in &[1.0 / 6.0, 1.0 / 5.0, 1.0 / 7.0] {
            let n = 1.0 / beta - 2.0;
            let p = PowerLawParams::new(n, 1.0).unwrap();
            assert_abs_diff_eq!(
                closed_form_s(&p),
                closed_form_s_sine_form(&p),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn quartic_parity_sums() {
        let p = PowerLawParams::new(4.0, 1.0).unwrap();
        let s = closed_form_s(&p);
        let s1 = closed_form_s1(&p).unwrap();
        let s2 = closed_form_s2(&p).unwrap();
        // 2 cos(2 pi / 6) = 1, so S1 = S and S2 = 2S here
        assert_abs_diff_eq!(s1, s, epsilon = 1e-14);
        assert_abs_diff_eq!(s2, 2.0 * s, epsilon = 1e-13);
        assert_abs_diff_eq!(s1, 0.76330, epsilon = 5e-5);
        assert_abs_diff_eq!(s2, 1.52660, epsilon = 1e-4);
    }

    #[test]
    fn compact_and_gamma_forms_agree() {
        for &n in &[3.0, 4.0, 5.0, 6.0, 8.0] {
            let p = PowerLawParams::new(n, 1.0).unwrap();
            assert_abs_diff_eq!(
                closed_form_s1(&p).unwrap(),
                s1_gamma_form(&p).unwrap(),
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                closed_form_s2(&p).unwrap(),
                s2_gamma_form(&p).unwrap(),
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                closed_form_s2(&p).unwrap() - closed_form_s1(&p).unwrap(),
                closed_form_s(&p),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn parity_sums_diverge_at_and_below_two() {
        for &n in &[0.5, 1.0, 2.0] {
            let p = PowerLawParams::new(n, 1.0).unwrap();
            assert!(matches!(closed_form_s1(&p), Err(Error::DivergentSum(_))));
            assert!(matches!(closed_form_s2(&p), Err(Error::DivergentSum(_))));
            let sums = closed_form_sums(&p);
            assert!(sums.s1_divergent() && sums.s2_divergent());
            assert!(sums.s.is_finite());
        }
    }

    #[test]
    fn strength_scaling() {
        let base = PowerLawParams::new(3.0, 1.0).unwrap();
        let scaled = PowerLawParams::new(3.0, 2.7).unwrap();
        let factor = math::powf(2.7, -2.0 / 5.0);
        assert_relative_eq!(
            closed_form_s(&scaled),
            factor * closed_form_s(&base),
            max_relative = 1e-14
        );
    }

    #[test]
    fn wkb_is_exact_for_the_oscillator() {
        // V = x^2 has eigenvalues 2n + 1, and the formula is exact in form
        let p = PowerLawParams::new(2.0, 1.0).unwrap();
        let n = 100usize;
        assert_relative_eq!(
            wkb_eigenvalue(&p, n) / (2.0 * n as f64 + 1.0),
            1.0,
            epsilon = 1e-6
        );
        assert_relative_eq!(wkb_eigenvalue(&p, 3), 7.0, max_relative = 1e-12);
    }

    #[test]
    fn wkb_quartic_ladder_form() {
        // even ladder: alpha (m + 1/4)^{4/3} with
        // alpha = (6 sqrt(pi) Gamma(3/4)/Gamma(1/4))^{4/3}
        let p = PowerLawParams::new(4.0, 1.0).unwrap();
        let alpha = math::powf(
            6.0 * math::sqrt(PI) * math::exp(ln_gamma(0.75).unwrap() - ln_gamma(0.25).unwrap()),
            4.0 / 3.0,
        );
        for m in 0..6 {
            let expect = alpha * math::powf(m as f64 + 0.25, 4.0 / 3.0);
            assert_relative_eq!(
                wkb_ladder(&p, Parity::Even, m as f64),
                expect,
                max_relative = 1e-12
            );
            let expect_odd = alpha * math::powf(m as f64 + 0.75, 4.0 / 3.0);
            assert_relative_eq!(
                wkb_ladder(&p, Parity::Odd, m as f64),
                expect_odd,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn wkb_linear_well_approaches_airy_zeros() {
        let p = PowerLawParams::new(1.0, 1.0).unwrap();
        for &n in &[20usize, 21] {
            let exact = linear_well_eigenvalue(n).unwrap();
            assert_relative_eq!(wkb_eigenvalue(&p, n) / exact, 1.0, epsilon = 5e-3);
        }
    }

    #[test]
    fn box_values() {
        let sums = box_limit_sums();
        assert_relative_eq!(sums.s1.unwrap(), PI * PI / 24.0);
        assert_relative_eq!(sums.s2.unwrap(), PI * PI / 8.0);
        assert_relative_eq!(sums.s, PI * PI / 12.0);
        // scaled closed form approaches the box value as beta -> 0
        let limit = scaled_s_box_limit(1e-6).unwrap();
        assert_abs_diff_eq!(limit, PI * PI / 12.0, epsilon = 1e-4);
    }
}
