//! File formats, reports and exports around [`edible_wing_core`].
//!
//! * material and adhesive databases (comma-separated, `#` comments)
//! * flat `key = value` design configs
//! * text and JSON design reports
//! * wing-loading map as CSV and SVG heatmap
//! * SVG cut layout of the hexagonal tiling

pub mod config;
pub mod db;
pub mod design_map;
pub mod report;
pub mod svg;

mod error;

pub use error::{Error, Result};

/// Seed material database shipped with the tool.
pub const SEED_MATERIALS: &str = include_str!("../data/materials.csv");
/// Seed adhesive database shipped with the tool.
pub const SEED_ADHESIVES: &str = include_str!("../data/adhesives.csv");
