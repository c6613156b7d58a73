//! Small numerical kernels: monotone interpolation, bracketed root finding and
//! golden-section search.

mod interp;
mod search;

pub use interp::{Interpolation, MonotoneCubic};
pub use search::{bisect, golden_section_max, GoldenMax};
