//! Eigenvalue sum rules for symmetric one-dimensional confining potentials.
//!
//! A confining potential `V(x) -> inf` has a purely discrete spectrum, and the
//! two classical constructions of the zero-energy Green's function (eigenbasis
//! sum on one side, a pair of boundary-matched solutions on the other) force
//! equalities between integrals of the Green's function and sums over inverse
//! eigenvalues. This crate computes both sides:
//!
//! * [`specfun`] — self-contained gamma, modified Bessel I/K of fractional
//!   order, Airy Ai and its zeros, and the error function,
//! * [`powerlaw`] — closed-form sums and WKB ladders for `V(x) = gamma |x|^N`,
//! * [`spectrum`] — parity-resolved Numerov shooting spectra, partial inverse
//!   sums and WKB tail corrections,
//! * [`greens`] — diagonal Green's functions, zero-energy solution
//!   construction for arbitrary symmetric wells, and quadrature sum rules of
//!   order one and two.
//!
//! The crate is `no_std` (with `alloc`) so the numerical core stays free of
//! platform dependencies; all IO lives in the companion CLI crate.

#![cfg_attr(not(test), no_std)]
// numeric constants keep their published guard digits, and `!(x > 0.0)`
// comparisons intentionally reject NaN
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod greens;
pub(crate) mod math;
pub mod potential;
pub mod powerlaw;
pub mod quad;
pub mod specfun;
pub mod spectrum;

use alloc::string::String;
use core::fmt;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    Domain(String),
    /// A requested sum or integral does not converge.
    DivergentSum(String),
    /// An iterative solver failed to converge or stabilize.
    Solver(String),
    /// A numerical procedure could not reach the requested accuracy.
    Numeric(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::DivergentSum(msg) => write!(f, "divergent sum: {msg}"),
            Error::Solver(msg) => write!(f, "solver error: {msg}"),
            Error::Numeric(msg) => write!(f, "numeric error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
