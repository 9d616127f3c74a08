//! Computable analysis toolkit: names, represented spaces, and Weihrauch reductions.

pub mod numeric;
pub mod names;
pub mod spaces;
pub mod analytic;
pub mod polynomials;
pub mod testfns;
pub mod weihrauch;
pub mod error;
