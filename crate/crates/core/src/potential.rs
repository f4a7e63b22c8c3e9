//! Symmetric confining potentials. Only the half-line x >= 0 is ever stored;
//! evenness is built in by evaluating at |x|.

use alloc::format;
use alloc::vec::Vec;

use crate::math;
use crate::powerlaw::PowerLawParams;
use crate::{Error, Result};

/// An even function V on a half-line grid, linearly interpolated.
#[derive(Debug, Clone)]
pub struct SampledPotential {
    xs: Vec<f64>,
    vs: Vec<f64>,
}

impl SampledPotential {
    /// Samples must start at x = 0, ascend strictly, and describe a
    /// confining well (non-decreasing over the outer half of the domain).
    pub fn new(xs: Vec<f64>, vs: Vec<f64>) -> Result<Self> {
        if xs.len() != vs.len() || xs.len() < 4 {
            return Err(Error::Domain(
                "sampled potential needs at least 4 matching (x, V) pairs".into(),
            ));
        }
        if xs[0] != 0.0 {
            return Err(Error::Domain(format!(
                "sampled potential must start at x = 0, got {}",
                xs[0]
            )));
        }
        for i in 1..xs.len() {
            if xs[i] <= xs[i - 1] {
                return Err(Error::Domain(format!(
                    "sample abscissae must ascend strictly, broken at index {i}"
                )));
            }
        }
        let tail_start = xs.len() / 2;
        let mut prev = vs[tail_start];
        for (i, &v) in vs.iter().enumerate().skip(tail_start + 1) {
            if v < prev - 1e-12 * prev.abs().max(1.0) {
                return Err(Error::Domain(format!(
                    "potential decreases at x = {}: not confining over the sampled tail",
                    xs[i]
                )));
            }
            prev = v;
        }
        if vs[xs.len() - 1] <= vs[0] {
            return Err(Error::Domain(
                "potential does not rise above its origin value: not confining".into(),
            ));
        }
        Ok(SampledPotential { xs, vs })
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    fn value(&self, x: f64) -> f64 {
        let x = x.abs();
        let xs = &self.xs;
        if x >= *xs.last().unwrap() {
            return *self.vs.last().unwrap();
        }
        let mut lo = 0usize;
        let mut hi = xs.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if xs[mid] <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = (x - xs[lo]) / (xs[lo + 1] - xs[lo]);
        self.vs[lo] * (1.0 - t) + self.vs[lo + 1] * t
    }

    /// Least-squares slope of log V against log x over the outer decade,
    /// giving an effective power-law exponent for tail models.
    pub fn tail_exponent(&self) -> f64 {
        let x_hi = self.x_max();
        let x_lo = x_hi / 10.0;
        let mut n = 0.0;
        let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
        for (x, v) in self.xs.iter().zip(&self.vs) {
            if *x >= x_lo && *v > 0.0 {
                let lx = math::ln(*x);
                let lv = math::ln(*v);
                n += 1.0;
                sx += lx;
                sy += lv;
                sxx += lx * lx;
                sxy += lx * lv;
            }
        }
        if n < 2.0 {
            return 0.0;
        }
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    }
}

/// A symmetric confining potential.
#[derive(Debug, Clone)]
pub enum Potential {
    /// `strength * |x|^exponent`.
    PowerLaw(PowerLawParams),
    /// `x^2 + 1`, whose spectrum is exactly `2n + 2`.
    ShiftedOscillator,
    /// Infinite square well with walls at `|x| = half_width`.
    Box { half_width: f64 },
    /// Tabulated even potential on `[0, x_max]`.
    Custom(SampledPotential),
}

impl Potential {
    pub fn power_law(exponent: f64, strength: f64) -> Result<Self> {
        Ok(Potential::PowerLaw(PowerLawParams::new(
            exponent, strength,
        )?))
    }

    pub fn box_well(half_width: f64) -> Result<Self> {
        if !(half_width > 0.0) {
            return Err(Error::Domain(format!(
                "box half-width must be positive, got {half_width}"
            )));
        }
        Ok(Potential::Box { half_width })
    }

    /// V(x); even by construction.
    pub fn value(&self, x: f64) -> f64 {
        let x = x.abs();
        match self {
            Potential::PowerLaw(p) => p.strength * math::powf(x, p.exponent),
            Potential::ShiftedOscillator => x * x + 1.0,
            Potential::Box { half_width } => {
                if x < *half_width {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Potential::Custom(s) => s.value(x),
        }
    }

    /// Minimum of V, attained at the origin for these families.
    pub fn min_value(&self) -> f64 {
        match self {
            Potential::ShiftedOscillator => 1.0,
            Potential::Custom(s) => s.value(0.0),
            _ => 0.0,
        }
    }

    /// Hard limit on how far the solver may integrate, when the
    /// representation has one.
    pub fn domain_limit(&self) -> Option<f64> {
        match self {
            Potential::Box { half_width } => Some(*half_width),
            Potential::Custom(s) => Some(s.x_max()),
            _ => None,
        }
    }

    /// Power-law parameters when this is (exactly) a power-law well.
    pub fn as_power_law(&self) -> Option<&PowerLawParams> {
        match self {
            Potential::PowerLaw(p) => Some(p),
            _ => None,
        }
    }

    /// Effective large-x behaviour `(n_eff, g_eff)` with `V ~ g_eff x^n_eff`,
    /// used for integral tail models: exact for power laws, (2, 1) for the
    /// shifted oscillator, fitted for tabulated potentials, none for the box.
    pub fn tail_model(&self) -> Option<(f64, f64)> {
        match self {
            Potential::PowerLaw(p) => Some((p.exponent, p.strength)),
            Potential::ShiftedOscillator => Some((2.0, 1.0)),
            Potential::Box { .. } => None,
            Potential::Custom(s) => {
                let n_eff = s.tail_exponent();
                if n_eff <= 0.0 {
                    None
                } else {
                    let x = s.x_max();
                    let g_eff = s.value(x) / math::powf(x, n_eff);
                    Some((n_eff, g_eff))
                }
            }
        }
    }
}
