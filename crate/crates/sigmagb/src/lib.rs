//! Exact tools for univariate binomial difference ideals `sat(y^{f+} - y^{f-})`.
//!
//! The crate decides whether such an ideal has a finite difference Gröbner
//! basis, computes the basis when it exists, streams an infinite family of
//! basis elements when it does not, and searches for monic cofactors `g`
//! with `f*g` having a single positive (leading) term.
//!
//! Module map:
//! - [`zx`]: integer and rational polynomials, gcds, resultants.
//! - [`algebraic`]: certified real and complex root isolation.
//! - [`phi`]: the `Φ₀`/`Φ₁` decision layer.
//! - [`sigma`]: binomial Buchberger engine and difference bases.
//! - [`zx_ideal`]: strong Gröbner bases in `Z[x]` and the multi-generator criterion.
//! - [`ipsearch`]: cofactor feasibility systems and degree bounds.
//! - [`cli`]: expression parser and command runner behind the `sigmagb` binary.

pub mod algebraic;
pub mod cli;
mod error;
pub mod ipsearch;
pub mod phi;
pub mod sigma;
pub mod zx;
pub mod zx_ideal;

pub use error::{Error, Result};
pub use zx::{IntPoly, RatPoly};
