//! Self-contained special functions: every closed form in the crate reduces
//! to gamma ratios, fractional-order modified Bessel functions, Airy
//! functions and their zeros, or the error function.

mod airy;
mod bessel;
mod dd;
mod erf;
mod gamma;

pub use airy::{airy_ai, airy_ai_prime, airy_zero, AiryZeroKind, AiryZeroTable};
pub use bessel::{bessel_i, bessel_k};
pub use erf::{erf, erfcx};
pub use gamma::{gamma, ln_gamma};
