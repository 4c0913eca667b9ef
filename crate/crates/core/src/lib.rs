// `!(x > 0.0)` guards are deliberate: they also reject NaN. Published
// coefficients and reference values keep their quoted digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod grid;
pub mod oscillator;
pub mod specfun;
mod czt;
mod dd;
pub mod lct;
pub mod logmap;
pub mod rigged;
pub mod wronskian;

pub use error::{Error, Result};
pub use grid::{SampledFunction, UniformGrid};
