//! Uniform tail bounds for normed sums of heavy-tailed random variables.
//!
//! A tail model `T(x) = P(|ξ| > x)` feeds the addition `ψ` of its
//! characteristic function and the envelope `ψ̄`, from which the bounds on
//! `U(x) = sup_n P(|S(n)| > x)` are built. The simulation layer checks each
//! bound against Monte-Carlo estimates of `U`.

// `!(x > 0.0)` rejects NaN on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod app;
pub mod bounds;
pub mod charfn;
pub mod error;
pub mod fields;
pub mod glspace;
pub mod norming;
pub mod numeric;
pub mod output;
pub mod simulate;
pub mod tailmodel;

pub use error::{Error, Result};
