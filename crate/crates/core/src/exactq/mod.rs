//! Exact rationals and truncated power series in one variable `q`.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `q^0 .. q^N`. Binary operations truncate to the smaller order of their
//! operands, so precision never silently grows.

mod rational;
mod series;

pub use rational::ExactRational;
pub use series::{
    series_add, series_deriv, series_from_coeffs, series_inv, series_mul, series_pow,
    TruncatedSeries,
};
