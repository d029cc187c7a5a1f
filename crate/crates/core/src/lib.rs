//! Design math for fixed-wing drones whose wings are made of food.
//!
//! Starting from a nutrition target and a payload, the crate sizes the mass
//! budget, wing planform and cruise point, checks thrust and tail volume
//! coefficients, loads the wing with a Schrenk lift distribution and lays out
//! the hexagonal cookie tiles that make up the plate.
//!
//! Everything here is pure computation on `f64` in SI base units (kcal is the
//! only non-SI unit kept). The crate is `no_std` and only needs `alloc`; file
//! formats, reports and the command line live in the `edible-wing` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
mod quadrature;

pub mod design_space;
pub mod materials;
pub mod performance;
pub mod pipeline;
pub mod sizing;
pub mod structure;
pub mod tail;
pub mod tiling;
pub mod units;

pub use error::{Error, Result};
pub use quadrature::{composite_simpson, cumulative_trapezoid};
