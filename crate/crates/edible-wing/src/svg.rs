//! SVG cut layout of a hexagonal tiling.
//!
//! User units are millimetres, coordinates carry three decimals and every
//! tile is one closed path, so identical layouts give identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use edible_wing_core::tiling::{TileKind, TilingLayout};
use edible_wing_core::units::m_to_mm;

use crate::{Error, Result};

/// Millimetre coordinate with three decimals; negative zero prints as zero.
pub fn mm3(m: f64) -> String {
    let s = format!("{:.3}", m_to_mm(m));
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn class(kind: TileKind) -> &'static str {
    match kind {
        TileKind::Hexagon => "hexagon",
        TileKind::HalfHexagon => "half-hexagon",
        TileKind::Partial => "partial",
    }
}

pub fn render_tiling(layout: &TilingLayout) -> String {
    let w = mm3(layout.spec.planform_span);
    let h = mm3(layout.spec.planform_chord);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}mm\" height=\"{h}mm\" viewBox=\"0 0 {w} {h}\">"
    );
    s.push_str("<g fill=\"none\" stroke=\"#000000\" stroke-width=\"0.100\">\n");
    for tile in &layout.tiles {
        let mut d = String::new();
        for (k, p) in tile.vertices.iter().enumerate() {
            let cmd = if k == 0 { "M" } else { " L" };
            let _ = write!(d, "{cmd} {} {}", mm3(p[0]), mm3(p[1]));
        }
        d.push_str(" Z");
        let _ = writeln!(s, "<path class=\"{}\" d=\"{d}\"/>", class(tile.kind));
    }
    s.push_str("</g>\n</svg>\n");
    s
}

pub fn write_tiling(layout: &TilingLayout, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, render_tiling(layout)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use edible_wing_core::tiling::{generate_hex_tiling, HexTilingSpec};

    #[test]
    fn one_path_per_tile_with_mm_viewbox() {
        let layout = generate_hex_tiling(&HexTilingSpec::new(0.07, 0.3, 0.15)).unwrap();
        let svg = render_tiling(&layout);
        assert_eq!(svg.matches("<path ").count(), layout.tiles.len());
        assert_eq!(svg.matches(" Z\"").count(), layout.tiles.len());
        assert!(svg.contains("width=\"300.000mm\" height=\"150.000mm\""));
        assert!(svg.contains("viewBox=\"0 0 300.000 150.000\""));
        assert!(!svg.contains("-0.000"));
    }

    #[test]
    fn coordinates_have_three_decimals() {
        assert_eq!(mm3(0.0155), "15.500");
        assert_eq!(mm3(-1e-9), "0.000");
        assert_eq!(mm3(0.67486), "674.860");
    }
}
