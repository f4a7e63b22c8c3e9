//! Modified Bessel functions of fractional order on the positive real axis.
//!
//! `I_nu` uses the ascending series up to the crossover z = max(20, 2 nu^2)
//! and the large-argument expansion beyond it. The expansion's optimal
//! truncation floor is ~e^{-2z} sqrt(4 pi z), i.e. ~2e-9 at z = 12 but 1e-16
//! at z = 20, so the crossover sits at 20 where both branches deliver full
//! working precision. On the real axis the expansion also carries the
//! exponentially small reflected term
//! `-sin(nu pi) e^{-z} / sqrt(2 pi z) * sum a_k(nu)/z^k`.
//!
//! `K_nu` for z <= 2 is the reflection combination
//! `K = (pi/2)(I_{-nu} - I_nu)/sin(nu pi)` evaluated term by term (the
//! cancellation costs less than two digits there). For z > 2 that difference
//! loses digits like e^{2z}, so the same quantity is computed from Steed's
//! continued fraction CF2 (Thompson–Barnett / Temme), which is the analytic
//! cancellation of the identical combination.

use alloc::format;

use super::gamma::ln_gamma;
use crate::math;
use crate::{Error, Result};

use core::f64::consts::PI;

/// Series/asymptotic crossover for `I_nu`; both branches are well inside
/// their convergent regimes here for |nu| < 1.
fn i_crossover(order: f64) -> f64 {
    20.0f64.max(2.0 * order * order)
}

/// Ascending series: I_nu(z) = (z/2)^nu / Gamma(nu+1) * sum_k t_k with
/// t_0 = 1, t_k = t_{k-1} * (z^2/4) / (k (nu + k)). All terms positive.
fn bessel_i_series(order: f64, z: f64) -> Result<f64> {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * (order + k));
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
        k += 1.0;
        if k > 500.0 {
            return Err(Error::Numeric(format!(
                "I series did not converge at order {order}, z {z}"
            )));
        }
    }
    let log_prefactor = order * math::ln(0.5 * z) - ln_gamma(order + 1.0)?;
    Ok(math::exp(log_prefactor) * sum)
}

/// Large-argument expansion with the reflected exponentially small term.
fn bessel_i_asymptotic(order: f64, z: f64) -> f64 {
    let mu = 4.0 * order * order;
    let mut term = 1.0;
    let mut alternating = 1.0; // sum (-1)^k a_k / z^k
    let mut plain = 1.0; // sum a_k / z^k
    let mut k = 1.0;
    loop {
        let next = term * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * z);
        if next.abs() >= term.abs() || next.abs() < 1e-17 {
            if next.abs() < 1e-17 {
                alternating += if (k as u64) % 2 == 1 { -next } else { next };
                plain += next;
            }
            break;
        }
        term = next;
        if (k as u64) % 2 == 1 {
            alternating -= term;
        } else {
            alternating += term;
        }
        plain += term;
        k += 1.0;
    }
    let scale = 1.0 / math::sqrt(2.0 * PI * z);
    scale * (math::exp(z) * alternating - math::sin(order * PI) * math::exp(-z) * plain)
}

/// Modified Bessel function of the first kind, order in (-1, 1), z > 0.
pub fn bessel_i(order: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("bessel_i requires z > 0, got {z}")));
    }
    if !(order > -1.0 && order < 1.0) {
        return Err(Error::Domain(format!(
            "bessel_i supports orders in (-1, 1), got {order}"
        )));
    }
    if z <= i_crossover(order) {
        bessel_i_series(order, z)
    } else {
        Ok(bessel_i_asymptotic(order, z))
    }
}

/// Steed's CF2 for the scaled K: returns (e^z K_mu(z), e^z K_{mu+1}(z)).
/// Requires |mu| <= 1/2 and z > 0; accuracy degrades below z ~ 1, which the
/// caller avoids by using the series route there.
fn k_scaled_cf2(mu: f64, z: f64) -> Result<(f64, f64)> {
    let a1 = 0.25 - mu * mu;
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut a = -a1;
    let mut c = a1;
    let mut q = a1;
    let mut s = 1.0 + q * delh;

    let mut converged = false;
    for i in 2..20000u32 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-16 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numeric(format!(
            "K continued fraction stalled at order {mu}, z {z}"
        )));
    }
    let h = a1 * h;
    let k_mu = math::sqrt(PI / (2.0 * z)) / s;
    let k_mu1 = k_mu * (mu + z + 0.5 - h) / z;
    Ok((k_mu, k_mu1))
}

const K_SERIES_CUTOFF: f64 = 2.0;

/// Modified Bessel function of the second kind, order in (0, 1), z > 0.
pub fn bessel_k(order: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("bessel_k requires z > 0, got {z}")));
    }
    if !(order > 0.0 && order < 1.0) {
        return Err(Error::Domain(format!(
            "bessel_k requires order in (0, 1), got {order}: the reflection formula degenerates at integer order"
        )));
    }
    if z <= K_SERIES_CUTOFF {
        let i_minus = bessel_i_series(-order, z)?;
        let i_plus = bessel_i_series(order, z)?;
        Ok(0.5 * PI * (i_minus - i_plus) / math::sin(PI * order))
    } else if order <= 0.5 {
        Ok(k_scaled_cf2(order, z)?.0 * math::exp(-z))
    } else {
        // reduce to |mu| <= 1/2; CF2 yields K_mu and K_{mu+1} together
        let (_, k_up) = k_scaled_cf2(order - 1.0, z)?;
        Ok(k_up * math::exp(-z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn half_order_closed_forms() {
        // I_{1/2}(z) = sqrt(2/(pi z)) sinh z, K_{1/2}(z) = sqrt(pi/(2z)) e^{-z}
        for &z in &[0.3, 1.0, 2.5, 5.0, 11.0, 14.0, 25.0, 45.0] {
            let i_exact = (2.0 / (PI * z)).sqrt() * z.sinh();
            let k_exact = (PI / (2.0 * z)).sqrt() * (-z).exp();
            assert_relative_eq!(bessel_i(0.5, z).unwrap(), i_exact, max_relative = 1e-12);
            assert_relative_eq!(bessel_k(0.5, z).unwrap(), k_exact, max_relative = 1e-12);
        }
        assert_relative_eq!(
            bessel_i(0.5, 1.0).unwrap(),
            0.9376748882454876,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            bessel_k(0.5, 1.0).unwrap(),
            0.4610685044478946,
            max_relative = 1e-12
        );
    }

    #[test]
    fn small_argument_leading_behaviour() {
        // I_nu(z) -> (z/2)^nu / Gamma(1 + nu)
        let z: f64 = 1e-4;
        let nu = 1.0 / 3.0;
        let expected = (0.5 * z).powf(nu) / super::super::gamma(1.0 + nu).unwrap();
        assert_relative_eq!(bessel_i(nu, z).unwrap(), expected, max_relative = 1e-6);
    }

    #[test]
    fn k_matches_leading_asymptotic() {
        // K_nu(z) ~ sqrt(pi/(2z)) e^{-z} (1 + (4nu^2 - 1)/(8z))
        let nu = 0.25;
        let z = 10.0;
        let lead = (PI / (2.0 * z)).sqrt()
            * (-z).exp()
            * (1.0 + (4.0 * nu * nu - 1.0) / (8.0 * z));
        assert_relative_eq!(bessel_k(nu, z).unwrap(), lead, max_relative = 1e-3);
    }

    #[test]
    fn branches_agree_at_the_crossover() {
        for &nu in &[0.125, 1.0 / 3.0, 0.45, 0.75] {
            let zc = i_crossover(nu);
            let series = bessel_i_series(nu, zc).unwrap();
            let asymptotic = bessel_i_asymptotic(nu, zc);
            assert_relative_eq!(series, asymptotic, max_relative = 1e-13);
        }
        for &nu in &[0.125, 1.0 / 3.0, 0.45] {
            let z = K_SERIES_CUTOFF;
            let from_series = 0.5 * PI
                * (bessel_i_series(-nu, z).unwrap() - bessel_i_series(nu, z).unwrap())
                / (PI * nu).sin();
            let from_cf = k_scaled_cf2(nu, z).unwrap().0 * (-z).exp();
            assert_relative_eq!(from_series, from_cf, max_relative = 1e-12);
        }
    }

    #[test]
    fn wronskian_with_central_differences() {
        // I_nu(z) K'_nu(z) - K_nu(z) I'_nu(z) = -1/z
        let h = 1e-5;
        for &nu in &[0.2, 1.0 / 3.0, 0.5, 0.8] {
            for &z in &[0.5, 1.5, 3.0, 8.0, 20.0] {
                let di = (bessel_i(nu, z + h).unwrap() - bessel_i(nu, z - h).unwrap()) / (2.0 * h);
                let dk = (bessel_k(nu, z + h).unwrap() - bessel_k(nu, z - h).unwrap()) / (2.0 * h);
                let w = bessel_i(nu, z).unwrap() * dk - bessel_k(nu, z).unwrap() * di;
                assert_relative_eq!(w, -1.0 / z, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_i(0.5, 0.0).is_err());
        assert!(bessel_i(1.0, 1.0).is_err());
        assert!(bessel_k(0.0, 1.0).is_err());
        assert!(bessel_k(1.0, 1.0).is_err());
        assert!(bessel_k(0.5, -2.0).is_err());
    }
}

