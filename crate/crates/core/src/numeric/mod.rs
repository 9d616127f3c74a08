//! Exact dyadic arithmetic and interval enclosures.

pub mod complex;
pub mod dyadic;
pub mod elementary;
pub mod interval;

pub use complex::IntervalC;
pub use dyadic::{Dyadic, Round};
pub use interval::Interval;
