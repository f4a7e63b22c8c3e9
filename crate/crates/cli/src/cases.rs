//! Verification cases: each reruns a pipeline and compares against expected
//! values with a fixed, versioned tolerance table. Every expected value
//! carries a provenance string naming the published source or exact identity
//! it comes from.

use anyhow::{bail, Result};
use serde::Serialize;
use std::f64::consts::PI;

use sumrules_core::greens::{
    build_zero_energy_solutions, compact_form_check, erf_integral_identity, general_sum_rules,
    second_order_sum, sum_rule_s_by_quadrature_with_tol,
};
use sumrules_core::potential::Potential;
use sumrules_core::powerlaw::{
    box_limit_sums, closed_form_s, closed_form_s1, closed_form_s2, s1_gamma_form, s2_gamma_form,
    scaled_s_box_limit, Parity, PowerLawParams,
};
use sumrules_core::specfun::{airy_zero, AiryZeroKind};
use sumrules_core::spectrum::{
    assemble_report, check_interlacing, partial_inverse_sum, solve_spectrum, wkb_tail,
};

/// Fixed tolerance table. Changing any entry is a behavioural change and
/// should be treated as such in review.
pub mod tolerance {
    /// Tabulated zeros are printed to five decimals.
    pub const TABLE_5DP: f64 = 5e-6;
    /// Three-significant-figure agreement quoted for the linear well.
    pub const AIRY_PARTIAL: f64 = 1e-3;
    pub const AIRY_REMAINDER: f64 = 5e-4;
    pub const AIRY_SUM: f64 = 2e-3;
    /// Quartic estimates are quoted to five decimals but carry the
    /// truncation of five exact levels.
    pub const QUARTIC_ESTIMATE: f64 = 5e-4;
    pub const QUARTIC_TABLE_REL: f64 = 1e-5;
    /// Closed-form cross checks (quadrature vs gamma ratios).
    pub const CLOSED_CROSS: f64 = 1e-8;
    /// Exact trigonometric recombinations.
    pub const EXACT_IDENTITY: f64 = 1e-12;
    /// Box sums are exact rational multiples of pi^2.
    pub const BOX_EXACT: f64 = 1e-12;
    pub const BOX_SCALED_LIMIT: f64 = 1e-4;
    pub const EIGENVALUE_ABS: f64 = 1e-8;
    pub const GENERAL_SUM: f64 = 1e-8;
    pub const SECOND_ORDER: f64 = 1e-6;
    pub const SECOND_ORDER_CROSS: f64 = 1e-4;
    pub const STRUCTURE_RESIDUAL: f64 = 1e-6;
    pub const WRONSKIAN: f64 = 1e-8;
    pub const DECAY_COEFFICIENT: f64 = 1e-6;
    pub const ACCELERATED_SUM: f64 = 1e-3;
}

#[derive(Debug, Clone, Serialize)]
pub struct Quantity {
    pub name: String,
    pub expected: f64,
    pub got: f64,
    pub tol: f64,
    pub provenance: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationCase {
    pub case: String,
    pub quantities: Vec<Quantity>,
    pub pass: bool,
}

struct CaseBuilder {
    case: String,
    quantities: Vec<Quantity>,
}

impl CaseBuilder {
    fn new(name: &str) -> Self {
        CaseBuilder {
            case: name.to_string(),
            quantities: Vec::new(),
        }
    }

    fn push(&mut self, name: &str, got: f64, expected: f64, tol: f64, provenance: &str) {
        let pass = (got - expected).abs() <= tol && got.is_finite();
        self.quantities.push(Quantity {
            name: name.to_string(),
            expected,
            got,
            tol,
            provenance: provenance.to_string(),
            pass,
        });
    }

    fn push_flag(&mut self, name: &str, got: bool, expected: bool, provenance: &str) {
        self.quantities.push(Quantity {
            name: name.to_string(),
            expected: if expected { 1.0 } else { 0.0 },
            got: if got { 1.0 } else { 0.0 },
            tol: 0.0,
            provenance: provenance.to_string(),
            pass: got == expected,
        });
    }

    fn finish(self) -> VerificationCase {
        let pass = self.quantities.iter().all(|q| q.pass);
        VerificationCase {
            case: self.case,
            quantities: self.quantities,
            pass,
        }
    }
}

/// Identifier grammar: `airy`, `sho`, `sho_shifted`, `quartic`, `box`,
/// `powerlaw:<N>`, `general:<potential-spec>`.
#[derive(Debug, Clone, PartialEq)]
pub enum CaseId {
    Airy,
    Sho,
    ShoShifted,
    Quartic,
    BoxWell,
    PowerLaw(f64),
    General(String),
}

impl CaseId {
    pub fn parse(text: &str) -> Result<CaseId> {
        let text = text.trim();
        Ok(match text {
            "airy" => CaseId::Airy,
            "sho" => CaseId::Sho,
            "sho_shifted" => CaseId::ShoShifted,
            "quartic" => CaseId::Quartic,
            "box" => CaseId::BoxWell,
            other => {
                if let Some(n) = other.strip_prefix("powerlaw:") {
                    CaseId::PowerLaw(n.parse()?)
                } else if let Some(spec) = other.strip_prefix("general:") {
                    CaseId::General(spec.to_string())
                } else {
                    bail!(
                        "unknown case `{other}`; expected airy, sho, sho_shifted, quartic, box, \
                         powerlaw:<N>, or general:<potential-spec>"
                    );
                }
            }
        })
    }
}

/// The default battery run by `verify` without `--case`.
pub fn default_cases() -> Vec<CaseId> {
    vec![
        CaseId::Airy,
        CaseId::Sho,
        CaseId::ShoShifted,
        CaseId::Quartic,
        CaseId::BoxWell,
        CaseId::PowerLaw(1.0),
        CaseId::PowerLaw(2.0),
        CaseId::PowerLaw(3.0),
        CaseId::PowerLaw(4.0),
        CaseId::PowerLaw(6.0),
    ]
}

pub fn run_case(id: &CaseId, quad_tol: Option<f64>) -> Result<VerificationCase> {
    match id {
        CaseId::Airy => airy_case(),
        CaseId::Sho => sho_case(quad_tol),
        CaseId::ShoShifted => sho_shifted_case(),
        CaseId::Quartic => quartic_case(),
        CaseId::BoxWell => box_case(),
        CaseId::PowerLaw(n) => power_law_case(*n, quad_tol),
        CaseId::General(spec) => general_case(spec),
    }
}

/// Zeros of Ai' (even levels) and Ai (odd levels), five decimals.
const LINEAR_EVEN: [f64; 10] = [
    1.01879, 3.24820, 4.82010, 6.16331, 7.37218, 8.48849, 9.53545, 10.52766, 11.47506, 12.38479,
];
const LINEAR_ODD: [f64; 10] = [
    2.33811, 4.08795, 5.52056, 6.78671, 7.94413, 9.02265, 10.04017, 11.00852, 11.93602, 12.82878,
];

fn airy_case() -> Result<VerificationCase> {
    let mut b = CaseBuilder::new("airy");
    let zero_source = "zeros of Ai and Ai' (Abramowitz & Stegun, Table 10.13)";
    let mut max_dev: f64 = 0.0;
    let mut partial = 0.0;
    for m in 0..10 {
        let even = airy_zero(m, AiryZeroKind::Derivative)?;
        let odd = airy_zero(m, AiryZeroKind::Function)?;
        max_dev = max_dev
            .max((even - LINEAR_EVEN[m]).abs())
            .max((odd - LINEAR_ODD[m]).abs());
        partial += 1.0 / even - 1.0 / odd;
    }
    b.push(
        "zero_table_max_abs_dev",
        max_dev,
        0.0,
        tolerance::TABLE_5DP,
        zero_source,
    );
    b.push(
        "partial_difference_sum",
        partial,
        0.691,
        tolerance::AIRY_PARTIAL,
        "ten tabulated inverse-zero differences",
    );
    let remainder = 0.5 * (2.0 / (3.0 * PI * 10.5)).powf(2.0 / 3.0);
    b.push(
        "integral_remainder",
        remainder,
        0.037,
        tolerance::AIRY_REMAINDER,
        "tail integral of the McMahon difference asymptotics from n = 10.5",
    );
    let params = PowerLawParams::new(1.0, 1.0).unwrap();
    let closed = closed_form_s(&params);
    b.push(
        "estimate_vs_closed_form",
        partial + remainder,
        closed,
        tolerance::AIRY_SUM,
        "closed form (1/3)^(2/3) Gamma(2/3)/Gamma(4/3)",
    );
    b.push(
        "closed_form_s",
        closed,
        0.729,
        tolerance::AIRY_PARTIAL,
        "closed form quoted to three figures",
    );
    Ok(b.finish())
}

fn sho_case(quad_tol: Option<f64>) -> Result<VerificationCase> {
    let mut b = CaseBuilder::new("sho");
    let params = PowerLawParams::new(2.0, 1.0).unwrap();
    let closed = closed_form_s(&params);
    b.push(
        "closed_form_s",
        closed,
        PI / 4.0,
        tolerance::EXACT_IDENTITY,
        "alternating series 1 - 1/3 + 1/5 - ... = pi/4",
    );
    let tol = quad_tol.unwrap_or(1e-12);
    b.push(
        "quadrature_s",
        sum_rule_s_by_quadrature_with_tol(&params, tol * 0.1, tol)?,
        closed,
        tolerance::CLOSED_CROSS,
        "diagonal Green's-function integral",
    );
    let report = assemble_report(&Potential::power_law(2.0, 1.0)?, 4, 1)?;
    b.push(
        "accelerated_numeric_s",
        report.s_estimate,
        PI / 4.0,
        tolerance::ACCELERATED_SUM,
        "pairwise-averaged alternating partial sums over 10^4 levels",
    );
    b.push_flag(
        "s1_divergent",
        report.s1_divergent,
        true,
        "inverse eigenvalues grow too slowly for single-parity sums at N = 2",
    );
    b.push_flag(
        "s2_divergent",
        report.s2_divergent,
        true,
        "inverse eigenvalues grow too slowly for single-parity sums at N = 2",
    );
    Ok(b.finish())
}

fn sho_shifted_case() -> Result<VerificationCase> {
    let mut b = CaseBuilder::new("sho_shifted");
    let pot = Potential::ShiftedOscillator;
    let even = solve_spectrum(&pot, Parity::Even, 11)?;
    let odd = solve_spectrum(&pot, Parity::Odd, 10)?;
    let mut max_dev: f64 = 0.0;
    for (m, lam) in even.eigenvalues.iter().enumerate() {
        max_dev = max_dev.max((lam - (4.0 * m as f64 + 2.0)).abs());
    }
    for (m, lam) in odd.eigenvalues.iter().enumerate() {
        max_dev = max_dev.max((lam - (4.0 * m as f64 + 4.0)).abs());
    }
    b.push(
        "eigenvalue_max_abs_dev",
        max_dev,
        0.0,
        tolerance::EIGENVALUE_ABS,
        "exact spectrum 2n + 2 of the unit-shifted oscillator",
    );

    let sys = build_zero_energy_solutions(&pot)?;
    b.push(
        "decay_coefficient",
        sys.c,
        -2.0 / PI.sqrt(),
        tolerance::DECAY_COEFFICIENT,
        "decay condition 1 + c int_0^inf e^{-y^2} dy = 0",
    );
    let rules = general_sum_rules(&sys)?;
    b.push(
        "general_s",
        rules.s.value,
        2f64.ln() / 2.0,
        tolerance::GENERAL_SUM,
        "alternating series 1/2 - 1/4 + 1/6 - ... = (ln 2)/2",
    );
    b.push_flag(
        "s1_divergent",
        rules.s1.is_divergent(),
        true,
        "logarithmically divergent odd-state sum",
    );
    b.push_flag(
        "s2_divergent",
        rules.s2.is_divergent(),
        true,
        "logarithmically divergent even-state sum",
    );
    b.push(
        "erf_integral",
        erf_integral_identity()?,
        2f64.ln(),
        tolerance::GENERAL_SUM,
        "sqrt(pi) int_0^inf e^{x^2} erfc(x)^2 dx = ln 2",
    );
    b.push(
        "compact_identity_residual",
        compact_form_check(&pot)?,
        0.0,
        tolerance::STRUCTURE_RESIDUAL,
        "boundary identity f''(0) = f(0)/Delta for the overlap integrals",
    );
    Ok(b.finish())
}

/// Quartic levels quoted by Bender, Olaussen & Wang (even) and Hioe &
/// Montroll (odd), six decimals.
const QUARTIC_EVEN: [f64; 5] = [1.060362, 7.455698, 16.261826, 26.528472, 37.923001];
const QUARTIC_ODD: [f64; 5] = [3.799673, 11.644746, 21.238373, 32.098598, 43.981158];

fn quartic_case() -> Result<VerificationCase> {
    let mut b = CaseBuilder::new("quartic");
    let pot = Potential::power_law(4.0, 1.0)?;
    let even = solve_spectrum(&pot, Parity::Even, 5)?;
    let odd = solve_spectrum(&pot, Parity::Odd, 5)?;
    let mut max_rel: f64 = 0.0;
    for (lam, expect) in even.eigenvalues.iter().zip(&QUARTIC_EVEN) {
        max_rel = max_rel.max(((lam - expect) / expect).abs());
    }
    for (lam, expect) in odd.eigenvalues.iter().zip(&QUARTIC_ODD) {
        max_rel = max_rel.max(((lam - expect) / expect).abs());
    }
    b.push(
        "table_max_rel_dev",
        max_rel,
        0.0,
        tolerance::QUARTIC_TABLE_REL,
        "quartic levels of Bender, Olaussen & Wang and Hioe & Montroll",
    );

    let report = assemble_report(&pot, 4, 1)?;
    let table_source = "five exact levels per parity plus WKB tail integrals";
    b.push(
        "s1_estimate",
        report.partial_s1 + report.tail_s1.unwrap_or(f64::NAN),
        0.76352,
        tolerance::QUARTIC_ESTIMATE,
        table_source,
    );
    b.push(
        "s2_estimate",
        report.partial_s2 + report.tail_s2.unwrap_or(f64::NAN),
        1.52679,
        tolerance::QUARTIC_ESTIMATE,
        table_source,
    );
    b.push(
        "s_estimate",
        report.s_estimate,
        0.76327,
        tolerance::QUARTIC_ESTIMATE,
        table_source,
    );
    let closed = closed_form_s(&PowerLawParams::new(4.0, 1.0).unwrap());
    b.push(
        "closed_form_s",
        closed,
        0.76330,
        tolerance::TABLE_5DP,
        "closed form (1/6)^(4/3) Gamma(1/2) Gamma^2(1/3)/(Gamma(2/3) Gamma(5/6))",
    );

    let sys = build_zero_energy_solutions(&pot)?;
    let rules = general_sum_rules(&sys)?;
    b.push(
        "greens_s1",
        rules.s1.value().unwrap_or(f64::NAN),
        closed,
        1e-6,
        "diagonal Green's-function integral of the odd channel",
    );
    // second-order cross-check: double integral vs partial + p = 2 tail
    let even8 = solve_spectrum(&pot, Parity::Even, 8)?;
    let partial2 = partial_inverse_sum(&even8, 2)?;
    let tail2 = wkb_tail(&PowerLawParams::new(4.0, 1.0).unwrap(), 7, Parity::Even, 2)?;
    b.push(
        "second_order_even",
        second_order_sum(&pot, Parity::Even)?,
        partial2 + tail2,
        tolerance::SECOND_ORDER_CROSS,
        "eight exact inverse-square levels plus WKB tail",
    );
    Ok(b.finish())
}

fn box_case() -> Result<VerificationCase> {
    let mut b = CaseBuilder::new("box");
    let sums = box_limit_sums();
    let source = "sums over inverse squares of even/odd integers";
    b.push(
        "s1",
        sums.s1.unwrap(),
        PI * PI / 24.0,
        tolerance::BOX_EXACT,
        source,
    );
    b.push(
        "s2",
        sums.s2.unwrap(),
        PI * PI / 8.0,
        tolerance::BOX_EXACT,
        source,
    );
    b.push("s", sums.s, PI * PI / 12.0, tolerance::BOX_EXACT, source);
    b.push(
        "scaled_limit_beta_1e-6",
        scaled_s_box_limit(1e-6)?,
        PI * PI / 12.0,
        tolerance::BOX_SCALED_LIMIT,
        "beta -> 0 limit of the scaled closed form",
    );

    let pot = Potential::box_well(PI / 2.0)?;
    let sys = build_zero_energy_solutions(&pot)?;
    let rules = general_sum_rules(&sys)?;
    b.push(
        "general_s1",
        rules.s1.value().unwrap_or(f64::NAN),
        PI * PI / 24.0,
        tolerance::BOX_EXACT,
        "overlap integral int x (1 - x/L) dx over the box",
    );
    b.push(
        "second_order_odd",
        second_order_sum(&pot, Parity::Odd)?,
        PI.powi(4) / 1440.0,
        tolerance::SECOND_ORDER,
        "sum of (2m+2)^{-4} = pi^4/1440",
    );
    Ok(b.finish())
}

fn power_law_case(n: f64, quad_tol: Option<f64>) -> Result<VerificationCase> {
    let mut b = CaseBuilder::new(&format!("powerlaw:{n}"));
    let params = PowerLawParams::new(n, 1.0)?;
    let closed = closed_form_s(&params);
    let tol = quad_tol.unwrap_or(1e-12);
    b.push(
        "quadrature_vs_closed_form",
        sum_rule_s_by_quadrature_with_tol(&params, tol * 0.1, tol)?,
        closed,
        tolerance::CLOSED_CROSS,
        "diagonal Green's-function integral vs gamma-ratio closed form",
    );
    if params.parity_sums_converge() {
        let s1 = closed_form_s1(&params)?;
        let s2 = closed_form_s2(&params)?;
        b.push(
            "s2_minus_s1_vs_s",
            s2 - s1,
            closed,
            tolerance::EXACT_IDENTITY,
            "trigonometric recombination of the parity sums",
        );
        b.push(
            "s1_compact_vs_gamma_form",
            s1,
            s1_gamma_form(&params)?,
            tolerance::EXACT_IDENTITY,
            "reflection identity applied to the gamma products",
        );
        b.push(
            "s2_compact_vs_gamma_form",
            s2,
            s2_gamma_form(&params)?,
            tolerance::EXACT_IDENTITY,
            "reflection identity applied to the gamma products",
        );
    } else {
        b.push_flag(
            "parity_sums_divergent",
            closed_form_s1(&params).is_err(),
            true,
            "single-parity sums diverge for N <= 2",
        );
    }
    Ok(b.finish())
}

fn general_case(spec: &str) -> Result<VerificationCase> {
    let pot = crate::spec_string::parse_potential(spec)?;
    let mut b = CaseBuilder::new(&format!("general:{spec}"));
    let sys = build_zero_energy_solutions(&pot)?;

    let mut worst: f64 = 0.0;
    for i in 0..sys.xi1.grid.len() {
        let w = sys.xi1.values[i] * sys.xi2.derivatives[i]
            - sys.xi2.values[i] * sys.xi1.derivatives[i];
        worst = worst.max((w - 1.0).abs());
    }
    b.push(
        "wronskian_max_abs_dev",
        worst,
        0.0,
        tolerance::WRONSKIAN,
        "constancy of the Wronskian of independent solutions",
    );
    let x_mid = sys.xi1.grid[sys.xi1.grid.len() / 2].max(1e-3);
    let jump = sys.greens_x_derivative(Parity::Odd, x_mid + 1e-9, x_mid)
        - sys.greens_x_derivative(Parity::Odd, x_mid - 1e-9, x_mid);
    b.push(
        "slope_jump",
        jump,
        -1.0,
        tolerance::STRUCTURE_RESIDUAL,
        "unit discontinuity of dG/dx across the source point",
    );
    b.push(
        "phi2_slope_identity",
        2.0 * sys.phi2.values[0] * sys.phi2.derivatives[0],
        2.0 * sys.c,
        tolerance::WRONSKIAN,
        "d/dx phi2^2 at the origin equals 2c for unit initial data",
    );
    let rules = general_sum_rules(&sys)?;
    if let (Some(s1), Some(s2)) = (rules.s1.value(), rules.s2.value()) {
        b.push(
            "s2_minus_s1_vs_s",
            s2 - s1,
            rules.s.value,
            1e-6,
            "the alternating sum must recombine from the parity sums",
        );
    }
    b.push(
        "compact_identity_residual",
        compact_form_check(&pot)?,
        0.0,
        tolerance::STRUCTURE_RESIDUAL,
        "boundary identity f''(0) = f(0)/Delta for the overlap integrals",
    );
    // structural sanity of the spectrum on top of the integrals
    let even = solve_spectrum(&pot, Parity::Even, 3)?;
    let odd = solve_spectrum(&pot, Parity::Odd, 3)?;
    b.push_flag(
        "parity_interlacing",
        check_interlacing(&even, &odd).is_ok(),
        true,
        "even and odd levels must interlace strictly",
    );
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_battery_passes() {
        for id in default_cases() {
            let case = run_case(&id, None).unwrap();
            assert!(
                case.pass,
                "case {} failed: {:?}",
                case.case,
                case.quantities
                    .iter()
                    .filter(|q| !q.pass)
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn case_id_grammar() {
        assert_eq!(CaseId::parse("airy").unwrap(), CaseId::Airy);
        assert_eq!(CaseId::parse("powerlaw:3.5").unwrap(), CaseId::PowerLaw(3.5));
        assert!(matches!(
            CaseId::parse("general:sho_shifted").unwrap(),
            CaseId::General(_)
        ));
        assert!(CaseId::parse("bogus").is_err());
    }

    #[test]
    fn perturbed_gamma_breaks_the_quartic_closed_form() {
        // fault injection: a 1e-3 shift of a gamma value moves the closed
        // form far outside the five-decimal tolerance
        let params = PowerLawParams::new(4.0, 1.0).unwrap();
        let honest = closed_form_s(&params);
        let perturbed = honest * (1.0 + 1e-3);
        let mut b = CaseBuilder::new("quartic-faulted");
        b.push(
            "closed_form_s",
            perturbed,
            0.76330,
            tolerance::TABLE_5DP,
            "closed form with a deliberately perturbed gamma factor",
        );
        let case = b.finish();
        assert!(!case.pass);
    }

    #[test]
    fn general_case_runs_on_a_sampled_potential() {
        // a sampled quartic behaves like the analytic one structurally
        let dir = std::env::temp_dir().join("sumrules_cases_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("quartic.csv");
        let mut body = String::new();
        for i in 0..=3000 {
            let x = 0.002 * i as f64;
            body.push_str(&format!("{x} {}\n", x * x * x * x));
        }
        std::fs::write(&path, body).unwrap();
        let case = run_case(
            &CaseId::General(format!("file:{}", path.display())),
            None,
        )
        .unwrap();
        for q in &case.quantities {
            // interlacing and structure hold even for tabulated wells
            if q.name != "compact_identity_residual" && q.name != "s2_minus_s1_vs_s" {
                assert!(q.pass, "{q:?}");
            }
        }
    }
}
