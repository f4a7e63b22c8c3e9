//! Airy function Ai, its derivative, and their negative-axis zeros.
//!
//! The Maclaurin series covers [-10.5, 5]; its alternating terms grow to
//! ~1e9 before converging near the negative end, so the accumulation runs in
//! double-double arithmetic to keep the absolute error at the 1e-15 level
//! the finite-difference consistency checks need. Outside the window the
//! standard large-argument expansions (DLMF 9.7) are already at their
//! optimal-truncation floor of 1e-15 or better.
//!
//! Zeros come from Newton iteration seeded with the McMahon-style expansions
//! of A&S 10.4.94/10.4.105.

use alloc::format;
use alloc::vec::Vec;

use super::dd::Dd;
use crate::math;
use crate::{Error, Result};

use core::f64::consts::PI;

const AI_0: f64 = 0.3550280538878172; // Ai(0) = 3^(-2/3)/Gamma(2/3)
const AIP_0: f64 = -0.2588194037928068; // Ai'(0) = -3^(-1/3)/Gamma(1/3)

const SERIES_NEG_LIMIT: f64 = -10.5;
const SERIES_POS_LIMIT: f64 = 5.0;

/// Maclaurin branch: Ai = Ai(0) f(x) + Ai'(0) g(x) with
/// f = sum_k x^{3k} prod 1/((3j)(3j-1)), g = sum_k x^{3k+1} prod 1/((3j+1)(3j)).
fn airy_series(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (AI_0, AIP_0);
    }
    let x3 = Dd::from_f64(x).mul(Dd::from_f64(x)).mul_f64(x);

    let mut tf = Dd::from_f64(1.0);
    let mut f = Dd::from_f64(1.0);
    let mut fp = Dd::zero();
    let mut tg = Dd::from_f64(x);
    let mut g = Dd::from_f64(x);
    let mut gp = Dd::from_f64(1.0);

    let mut k = 1.0;
    loop {
        tf = tf.mul(x3).div_f64((3.0 * k) * (3.0 * k - 1.0));
        f = f.add(tf);
        fp = fp.add(tf.mul_f64(3.0 * k).div_f64(x));
        tg = tg.mul(x3).div_f64((3.0 * k + 1.0) * (3.0 * k));
        g = g.add(tg);
        gp = gp.add(tg.mul_f64(3.0 * k + 1.0).div_f64(x));
        if tf.abs_hi() < 1e-34 * f.abs_hi().max(1e-3) && tg.abs_hi() < 1e-34 * g.abs_hi().max(1e-3)
        {
            break;
        }
        k += 1.0;
        if k > 200.0 {
            break;
        }
    }
    let ai = f.mul_f64(AI_0).add(g.mul_f64(AIP_0)).to_f64();
    let aip = fp.mul_f64(AI_0).add(gp.mul_f64(AIP_0)).to_f64();
    (ai, aip)
}

/// u_k / v_k coefficient pair of the large-argument expansions, generated by
/// u_k = u_{k-1} (6k-5)(6k-1) / (72 k), v_k = u_k (6k+1)/(1-6k).
fn uv_coefficients(max: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = Vec::with_capacity(max);
    let mut v = Vec::with_capacity(max);
    u.push(1.0);
    v.push(1.0);
    for k in 1..max {
        let kf = k as f64;
        let uk = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 1.0) / (72.0 * kf);
        u.push(uk);
        v.push(uk * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf));
    }
    (u, v)
}

fn airy_asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * math::sqrt(x);
    let (u, v) = uv_coefficients(40);
    let mut su = 0.0;
    let mut sv = 0.0;
    let mut pw = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..u.len() {
        let tu = u[k] * pw;
        if tu.abs() > prev {
            break;
        }
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        su += sign * tu;
        sv += sign * v[k] * pw;
        prev = tu.abs();
        pw /= zeta;
    }
    let root4 = math::powf(x, 0.25);
    let amp = math::exp(-zeta) / (2.0 * math::sqrt(PI));
    (amp / root4 * su, -amp * root4 * sv)
}

fn airy_asymptotic_negative(x: f64) -> (f64, f64) {
    let t = -x;
    let zeta = 2.0 / 3.0 * t * math::sqrt(t);
    let (u, v) = uv_coefficients(40);

    // DLMF 9.7.9-9.7.10: cos/sin(zeta - pi/4) carry the even/odd sub-series
    let z2 = zeta * zeta;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut r = 0.0;
    let mut s = 0.0;
    let mut pw = 1.0; // zeta^{-2k}
    let mut prev = f64::INFINITY;
    let mut k = 0usize;
    while 2 * k + 1 < u.len() {
        let te = u[2 * k] * pw;
        if te.abs() > prev {
            break;
        }
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        p += sign * te;
        q += sign * u[2 * k + 1] * pw / zeta;
        r += sign * v[2 * k] * pw;
        s += sign * v[2 * k + 1] * pw / zeta;
        prev = te.abs();
        pw /= z2;
        k += 1;
    }

    let phase = zeta - 0.25 * PI;
    let (sin_p, cos_p) = (math::sin(phase), math::cos(phase));
    let root4 = math::powf(t, 0.25);
    let ai = (cos_p * p + sin_p * q) / (math::sqrt(PI) * root4);
    let aip = root4 / math::sqrt(PI) * (sin_p * r - cos_p * s);
    (ai, aip)
}

fn airy_both(x: f64) -> (f64, f64) {
    if x > SERIES_POS_LIMIT {
        airy_asymptotic_positive(x)
    } else if x < SERIES_NEG_LIMIT {
        airy_asymptotic_negative(x)
    } else {
        airy_series(x)
    }
}

/// Airy function Ai(x).
pub fn airy_ai(x: f64) -> f64 {
    airy_both(x).0
}

/// Derivative Ai'(x).
pub fn airy_ai_prime(x: f64) -> f64 {
    airy_both(x).1
}

/// Which ladder of zeros to address.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AiryZeroKind {
    /// Zeros of Ai itself (odd-parity eigenvalues of the linear well).
    Function,
    /// Zeros of Ai' (even-parity eigenvalues of the linear well).
    Derivative,
}

/// Magnitude of the n-th zero (0-based) of Ai or Ai' on the negative axis.
///
/// Newton iteration from the McMahon asymptotic seed, accepted once the
/// function value at the root is below 1e-12.
pub fn airy_zero(n: usize, which: AiryZeroKind) -> Result<f64> {
    let s = (n + 1) as f64;
    let seed_arg = match which {
        AiryZeroKind::Function => 3.0 * PI * (4.0 * s - 1.0) / 8.0,
        AiryZeroKind::Derivative => 3.0 * PI * (4.0 * s - 3.0) / 8.0,
    };
    let t2 = seed_arg * seed_arg;
    let correction = match which {
        AiryZeroKind::Function => 1.0 + 5.0 / 48.0 / t2 - 5.0 / 36.0 / (t2 * t2),
        AiryZeroKind::Derivative => 1.0 - 7.0 / 48.0 / t2 + 35.0 / 288.0 / (t2 * t2),
    };
    let mut t = math::powf(seed_arg, 2.0 / 3.0) * correction;

    for _ in 0..60 {
        let (ai, aip) = airy_both(-t);
        let (value, slope) = match which {
            AiryZeroKind::Function => (ai, -aip),
            // (Ai')' = x Ai, so d/dt Ai'(-t) = t Ai(-t)
            AiryZeroKind::Derivative => (aip, t * ai),
        };
        let step = value / slope;
        t -= step;
        if step.abs() < 1e-13 * t {
            let residual = match which {
                AiryZeroKind::Function => airy_ai(-t),
                AiryZeroKind::Derivative => airy_ai_prime(-t),
            };
            if residual.abs() < 1e-12 {
                return Ok(t);
            }
        }
    }
    Err(Error::Solver(format!(
        "airy zero iteration did not converge for n = {n} ({which:?})"
    )))
}

/// The first `count` zeros of Ai and of Ai', as positive magnitudes.
#[derive(Debug, Clone)]
pub struct AiryZeroTable {
    /// Zeros of Ai, ascending.
    pub ai_zeros: Vec<f64>,
    /// Zeros of Ai', ascending.
    pub ai_prime_zeros: Vec<f64>,
}

impl AiryZeroTable {
    pub fn compute(count: usize) -> Result<Self> {
        let mut ai_zeros = Vec::with_capacity(count);
        let mut ai_prime_zeros = Vec::with_capacity(count);
        for n in 0..count {
            ai_zeros.push(airy_zero(n, AiryZeroKind::Function)?);
            ai_prime_zeros.push(airy_zero(n, AiryZeroKind::Derivative)?);
        }
        let table = AiryZeroTable {
            ai_zeros,
            ai_prime_zeros,
        };
        table.check_interlacing()?;
        Ok(table)
    }

    /// Ascending order within each ladder and strict interlacing
    /// `a'_n < a_n < a'_{n+1}`.
    pub fn check_interlacing(&self) -> Result<()> {
        let n = self.ai_zeros.len().min(self.ai_prime_zeros.len());
        for i in 0..n {
            if self.ai_prime_zeros[i] >= self.ai_zeros[i] {
                return Err(Error::Numeric(format!(
                    "zero ladders fail to interlace at index {i}"
                )));
            }
            if i + 1 < self.ai_prime_zeros.len() && self.ai_zeros[i] >= self.ai_prime_zeros[i + 1] {
                return Err(Error::Numeric(format!(
                    "zero ladders fail to interlace at index {i}"
                )));
            }
            if i > 0
                && (self.ai_zeros[i] <= self.ai_zeros[i - 1]
                    || self.ai_prime_zeros[i] <= self.ai_prime_zeros[i - 1])
            {
                return Err(Error::Numeric(format!("zero ladder not ascending at {i}")));
            }
        }
        Ok(())
    }

    /// Rows `(n, parity, zero)` in merged spectral order: the derivative zero
    /// of index m is the even eigenvalue 2m, the function zero the odd 2m+1.
    pub fn merged_rows(&self) -> Vec<(usize, &'static str, f64)> {
        let mut rows = Vec::new();
        let n = self.ai_zeros.len().min(self.ai_prime_zeros.len());
        for m in 0..n {
            rows.push((2 * m, "even", self.ai_prime_zeros[m]));
            rows.push((2 * m + 1, "odd", self.ai_zeros[m]));
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    /// First ten zeros of Ai' and Ai (A&S Table 10.13, five decimals).
    const PRIME_ZEROS: [f64; 10] = [
        1.01879, 3.24820, 4.82010, 6.16331, 7.37218, 8.48849, 9.53545, 10.52766, 11.47506,
        12.38479,
    ];
    const FN_ZEROS: [f64; 10] = [
        2.33811, 4.08795, 5.52056, 6.78671, 7.94413, 9.02265, 10.04017, 11.00852, 11.93602,
        12.82878,
    ];

    #[test]
    fn value_at_origin() {
        assert_abs_diff_eq!(airy_ai(0.0), 0.3550280539, epsilon = 1e-10);
        assert_abs_diff_eq!(airy_ai_prime(0.0), -0.2588194038, epsilon = 1e-10);
    }

    #[test]
    fn classic_anchor_values() {
        assert_abs_diff_eq!(airy_ai(1.0), 0.1352924163128814, epsilon = 1e-12);
        assert_abs_diff_eq!(airy_ai_prime(1.0), -0.1591474412967932, epsilon = 1e-12);
        assert_abs_diff_eq!(airy_ai(-1.0), 0.5355608832923521, epsilon = 1e-12);
    }

    #[test]
    fn vanishes_at_tabulated_zeros() {
        assert_abs_diff_eq!(airy_ai(-2.33811), 0.0, epsilon = 1e-5);
        assert_abs_diff_eq!(airy_ai_prime(-1.01879), 0.0, epsilon = 1e-5);
    }

    #[test]
    fn zero_ladders_match_tabulated_values() {
        for (n, &z) in PRIME_ZEROS.iter().enumerate() {
            let got = airy_zero(n, AiryZeroKind::Derivative).unwrap();
            assert_abs_diff_eq!(got, z, epsilon = 5e-6);
        }
        for (n, &z) in FN_ZEROS.iter().enumerate() {
            let got = airy_zero(n, AiryZeroKind::Function).unwrap();
            assert_abs_diff_eq!(got, z, epsilon = 5e-6);
        }
    }

    #[test]
    fn zero_residuals_are_tiny() {
        for n in 0..25 {
            let t = airy_zero(n, AiryZeroKind::Function).unwrap();
            assert!(airy_ai(-t).abs() < 1e-12);
            let tp = airy_zero(n, AiryZeroKind::Derivative).unwrap();
            assert!(airy_ai_prime(-tp).abs() < 1e-12);
        }
    }

    #[test]
    fn large_zero_follows_mcmahon_growth() {
        // a_{n+1} ~ (3 pi n / 2)^{2/3} (1 + 3/(4n))^{2/3} for the Ai ladder
        let n = 50usize;
        let got = airy_zero(n, AiryZeroKind::Function).unwrap();
        let nf = n as f64;
        let approx = (1.5 * PI * nf).powf(2.0 / 3.0) * (1.0 + 0.75 / nf).powf(2.0 / 3.0);
        assert_relative_eq!(got / approx, 1.0, epsilon = 1e-4);
    }

    #[test]
    fn interlacing_first_twenty() {
        let table = AiryZeroTable::compute(20).unwrap();
        table.check_interlacing().unwrap();
        assert_eq!(table.merged_rows().len(), 40);
    }

    #[test]
    fn ode_residual_by_finite_differences() {
        // Ai'' = x Ai, second derivative approximated on a fine stencil
        let h = 1.1e-4;
        let mut x = -10.0;
        while x <= 2.0 {
            let second = (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / (h * h);
            assert_abs_diff_eq!(second, x * airy_ai(x), epsilon = 1e-7);
            x += 0.37;
        }
    }

    #[test]
    fn derivative_consistent_with_value() {
        let h = 1e-6;
        for &x in &[-12.0, -9.0, -5.0, -1.0, 0.5, 3.0, 6.0] {
            let fd = (airy_ai(x + h) - airy_ai(x - h)) / (2.0 * h);
            assert_abs_diff_eq!(fd, airy_ai_prime(x), epsilon = 1e-8);
        }
    }

    #[test]
    fn asymptotic_branches_agree_with_series_in_overlap() {
        // both representations sit near their accuracy floors here
        for &t in &[8.5, 9.0, 9.5, 10.0, 10.4] {
            let (ai_s, aip_s) = airy_series(-t);
            let (ai_a, aip_a) = airy_asymptotic_negative(-t);
            assert_abs_diff_eq!(ai_s, ai_a, epsilon = 2e-13);
            assert_abs_diff_eq!(aip_s, aip_a, epsilon = 2e-12);
        }
        for &x in &[4.6, 4.8, 5.0] {
            let (ai_s, aip_s) = airy_series(x);
            let (ai_a, aip_a) = airy_asymptotic_positive(x);
            assert_abs_diff_eq!(ai_s, ai_a, epsilon = 1e-10);
            assert_abs_diff_eq!(aip_s, aip_a, epsilon = 1e-10);
        }
    }
}

