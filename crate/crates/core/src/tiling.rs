//! Hexagonal cut layout for a rectangular wing plate.
//!
//! Flat-top regular hexagons are laid in columns along the span, alternate
//! columns shifted by half a cell height, and clipped to the planform
//! rectangle `[0, b] × [0, c]`. The lattice is anchored so a whole hexagon
//! sits in the root/leading-edge corner; cells cut through their centre by the
//! leading or trailing edge come out as half hexagons (isosceles trapezoids).

use alloc::vec::Vec;

use crate::error::{non_negative, positive};
use crate::materials::{AdhesiveRecord, FoodMaterial};
use crate::{Error, Result};

pub type Point = [f64; 2];

/// m, across corners; a hexagon must fit inside one ~70 mm cookie.
pub const DEFAULT_CIRCUMDIAMETER: f64 = 0.070;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum HexOrientation {
    #[default]
    FlatTop,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HexTilingSpec {
    /// m
    pub circumdiameter: f64,
    /// m, along x
    pub planform_span: f64,
    /// m, along y
    pub planform_chord: f64,
    pub orientation: HexOrientation,
}

impl HexTilingSpec {
    pub fn new(circumdiameter: f64, planform_span: f64, planform_chord: f64) -> Self {
        Self {
            circumdiameter,
            planform_span,
            planform_chord,
            orientation: HexOrientation::FlatTop,
        }
    }

    pub fn side(&self) -> f64 {
        0.5 * self.circumdiameter
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TileKind {
    Hexagon,
    /// Hexagon cut through its centre along the flat sides.
    HalfHexagon,
    Partial,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tile {
    /// Counter-clockwise, m.
    pub vertices: Vec<Point>,
    pub kind: TileKind,
}

impl Tile {
    pub fn area(&self) -> f64 {
        polygon_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        polygon_perimeter(&self.vertices)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TilingLayout {
    pub spec: HexTilingSpec,
    pub tiles: Vec<Tile>,
    pub full_hex_count: usize,
    /// Half hexagons and every other clipped piece.
    pub partial_count: usize,
    /// m, total length of edges shared by two tiles.
    pub seam_length: f64,
    /// m²
    pub covered_area: f64,
}

/// Signed shoelace area, positive for counter-clockwise vertices.
pub fn polygon_area(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let [x0, y0] = vertices[i];
            let [x1, y1] = vertices[(i + 1) % n];
            x0 * y1 - x1 * y0
        })
        .sum();
    0.5 * twice
}

pub fn polygon_perimeter(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let [x0, y0] = vertices[i];
            let [x1, y1] = vertices[(i + 1) % n];
            libm::hypot(x1 - x0, y1 - y0)
        })
        .sum()
}

/// Regular flat-top hexagon, counter-clockwise from the +x corner.
pub fn flat_top_hexagon(center: Point, side: f64) -> Vec<Point> {
    let half_height = 0.5 * SQRT_3 * side;
    let [cx, cy] = center;
    alloc::vec![
        [cx + side, cy],
        [cx + 0.5 * side, cy + half_height],
        [cx - 0.5 * side, cy + half_height],
        [cx - side, cy],
        [cx - 0.5 * side, cy - half_height],
        [cx + 0.5 * side, cy - half_height],
    ]
}

/// Keeps the part of `poly` where `inside(p) >= 0`; `inside` is affine.
fn clip_half_plane(poly: &[Point], inside: impl Fn(Point) -> f64) -> Vec<Point> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    let n = poly.len();
    for i in 0..n {
        let cur = poly[i];
        let next = poly[(i + 1) % n];
        let (dc, dn) = (inside(cur), inside(next));
        if dc >= 0.0 {
            out.push(cur);
        }
        if (dc >= 0.0) != (dn >= 0.0) {
            let t = dc / (dc - dn);
            out.push([
                cur[0] + t * (next[0] - cur[0]),
                cur[1] + t * (next[1] - cur[1]),
            ]);
        }
    }
    out
}

/// Sutherland–Hodgman clip of a convex polygon to an axis-aligned box.
pub fn clip_to_rect(poly: &[Point], width: f64, height: f64) -> Vec<Point> {
    let p = clip_half_plane(poly, |[x, _]| x);
    let p = clip_half_plane(&p, |[x, _]| width - x);
    let p = clip_half_plane(&p, |[_, y]| y);
    clip_half_plane(&p, |[_, y]| height - y)
}

/// Drops repeated and collinear vertices left behind by clipping.
fn simplify(poly: Vec<Point>, eps: f64) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(poly.len());
    for p in poly {
        if pts
            .last()
            .is_none_or(|q: &Point| libm::hypot(p[0] - q[0], p[1] - q[1]) > eps)
        {
            pts.push(p);
        }
    }
    while pts.len() > 1 {
        let (a, b) = (pts[0], pts[pts.len() - 1]);
        if libm::hypot(a[0] - b[0], a[1] - b[1]) > eps {
            break;
        }
        pts.pop();
    }
    let mut changed = true;
    while changed && pts.len() >= 3 {
        changed = false;
        let n = pts.len();
        for i in 0..n {
            let a = pts[(i + n - 1) % n];
            let b = pts[i];
            let c = pts[(i + 1) % n];
            let cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
            let scale = libm::hypot(c[0] - a[0], c[1] - a[1]);
            if cross.abs() <= eps * scale {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    pts
}

pub fn generate_hex_tiling(spec: &HexTilingSpec) -> Result<TilingLayout> {
    let d = positive("circumdiameter", spec.circumdiameter)?;
    let b = positive("planform_span", spec.planform_span)?;
    let c = positive("planform_chord", spec.planform_chord)?;
    if d > 2.0 * b.min(c) {
        return Err(Error::CellTooLarge {
            circumdiameter: d,
            span: b,
            chord: c,
        });
    }

    let side = spec.side();
    let height = SQRT_3 * side;
    let hex_area = 1.5 * SQRT_3 * side * side;
    let eps = 1e-12 * b.max(c);
    let columns = libm::ceil(b / (1.5 * side)) as i64 + 1;
    let rows = libm::ceil(c / height) as i64 + 1;

    let mut tiles = Vec::new();
    for i in -1..=columns {
        let cx = side + 1.5 * side * i as f64;
        let shift = if i.rem_euclid(2) == 0 {
            0.5 * height
        } else {
            0.0
        };
        for j in -1..=rows {
            let cy = shift + height * j as f64;
            let hex = flat_top_hexagon([cx, cy], side);
            let clipped = simplify(clip_to_rect(&hex, b, c), eps);
            if clipped.len() < 3 {
                continue;
            }
            let area = polygon_area(&clipped);
            if area <= 1e-9 * hex_area {
                continue;
            }
            let kind = if (area - hex_area).abs() <= 1e-9 * hex_area {
                TileKind::Hexagon
            } else if clipped.len() == 4 && (2.0 * area - hex_area).abs() <= 1e-9 * hex_area {
                TileKind::HalfHexagon
            } else {
                TileKind::Partial
            };
            tiles.push(Tile {
                vertices: clipped,
                kind,
            });
        }
    }

    let full_hex_count = tiles.iter().filter(|t| t.kind == TileKind::Hexagon).count();
    let covered_area = tiles.iter().map(Tile::area).sum();
    let perimeters: f64 = tiles.iter().map(Tile::perimeter).sum();
    // Every interior edge is counted by both neighbours, the boundary once.
    let seam_length = (0.5 * (perimeters - 2.0 * (b + c))).max(0.0);
    Ok(TilingLayout {
        spec: *spec,
        partial_count: tiles.len() - full_hex_count,
        tiles,
        full_hex_count,
        seam_length,
        covered_area,
    })
}

/// Asymptotic seam length per unit area for hexagonal and square cells of
/// equal area, in m/m².
pub fn seam_density_comparison(cell_area: f64) -> Result<(f64, f64)> {
    positive("cell_area", cell_area)?;
    let side = libm::sqrt(cell_area / (1.5 * SQRT_3));
    let hex = 2.0 / (SQRT_3 * side);
    let square = 2.0 / libm::sqrt(cell_area);
    Ok((hex, square))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WingMassBreakdown {
    /// kg
    pub cookie_mass: f64,
    /// kg
    pub adhesive_mass: f64,
    /// kg
    pub total_mass: f64,
    /// kcal
    pub total_kcal: f64,
    pub edible_fraction_of_drone: f64,
}

pub fn edible_fraction(edible_mass: f64, drone_total_mass: f64) -> Result<f64> {
    non_negative("edible_mass", edible_mass)?;
    positive("drone_total_mass", drone_total_mass)?;
    Ok(edible_mass / drone_total_mass)
}

/// Cookie, glue and calorie content of a plate of the given area.
pub fn mass_and_calories_for_area(
    area: f64,
    material: &FoodMaterial,
    adhesive: &AdhesiveRecord,
    thickness: f64,
    adhesive_ratio: f64,
    drone_total_mass: f64,
) -> Result<WingMassBreakdown> {
    non_negative("area", area)?;
    positive("thickness", thickness)?;
    non_negative("adhesive_ratio", adhesive_ratio)?;
    material.validate()?;
    let cookie_mass = area * material.density * thickness;
    let adhesive_mass = adhesive_ratio * cookie_mass;
    let total_mass = cookie_mass + adhesive_mass;
    Ok(WingMassBreakdown {
        cookie_mass,
        adhesive_mass,
        total_mass,
        total_kcal: cookie_mass * material.caloric_density
            + adhesive_mass * adhesive.caloric_density,
        edible_fraction_of_drone: edible_fraction(total_mass, drone_total_mass)?,
    })
}

pub fn mass_and_calories(
    layout: &TilingLayout,
    material: &FoodMaterial,
    adhesive: &AdhesiveRecord,
    thickness: f64,
    adhesive_ratio: f64,
    drone_total_mass: f64,
) -> Result<WingMassBreakdown> {
    mass_and_calories_for_area(
        layout.covered_area,
        material,
        adhesive,
        thickness,
        adhesive_ratio,
        drone_total_mass,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{gelatin_glue, rice_cookie};

    #[test]
    fn prototype_planform_is_fully_covered() {
        let spec = HexTilingSpec::new(0.070, 0.6788, 0.1559);
        let layout = generate_hex_tiling(&spec).unwrap();
        assert!((layout.covered_area - 0.10582492).abs() <= 1e-9 * 0.10582492);
        assert_eq!(
            layout.full_hex_count + layout.partial_count,
            layout.tiles.len()
        );
        assert!(layout.tiles.iter().any(|t| t.kind == TileKind::HalfHexagon));
        for t in &layout.tiles {
            assert!(t.area() > 0.0, "tiles are counter-clockwise");
        }
    }

    #[test]
    fn hexagon_bounding_box() {
        let side = 0.035;
        let spec = HexTilingSpec::new(2.0 * side, 2.0 * side, SQRT_3 * side);
        let layout = generate_hex_tiling(&spec).unwrap();
        assert_eq!(layout.full_hex_count, 1);
        // Four corner triangles, each sharing one hexagon edge.
        assert_eq!(layout.partial_count, 4);
        assert!((layout.seam_length - 4.0 * side).abs() < 1e-12);
        let hex = layout
            .tiles
            .iter()
            .find(|t| t.kind == TileKind::Hexagon)
            .unwrap();
        assert_eq!(hex.vertices.len(), 6);
    }

    #[test]
    fn oversized_cell_is_rejected() {
        let spec = HexTilingSpec::new(0.5, 0.6788, 0.1559);
        assert!(matches!(
            generate_hex_tiling(&spec),
            Err(Error::CellTooLarge { .. })
        ));
    }

    #[test]
    fn seam_density_examples() {
        let side: f64 = 0.035;
        let area = 1.5 * SQRT_3 * side * side;
        let (hex, square) = seam_density_comparison(area).unwrap();
        assert!((hex - 32.99).abs() < 5e-3);
        assert!((square - 35.45).abs() < 5e-3);
        let (h4, s4) = seam_density_comparison(4.0 * area).unwrap();
        assert!((h4 - 0.5 * hex).abs() < 1e-12);
        assert!((s4 - 0.5 * square).abs() < 1e-12);
        assert!((hex / square - 0.9306).abs() < 1e-4);
    }

    #[test]
    fn calorie_budget_of_design_wing() {
        let m = mass_and_calories_for_area(
            0.105634,
            &rice_cookie(),
            &gelatin_glue(),
            0.0058,
            0.25,
            0.214,
        )
        .unwrap();
        assert!((m.cookie_mass - 0.0686).abs() < 1e-4);
        assert!((m.adhesive_mass - 0.0172).abs() < 1e-4);
        assert!((m.total_kcal - 300.0).abs() <= 3.0);
        assert_eq!(m.total_mass, m.cookie_mass + m.adhesive_mass);

        let bare =
            mass_and_calories_for_area(0.1, &rice_cookie(), &gelatin_glue(), 0.0058, 0.0, 0.2)
                .unwrap();
        assert_eq!(bare.adhesive_mass, 0.0);
        assert_eq!(bare.total_kcal, bare.cookie_mass * 3870.0);
        assert!(
            mass_and_calories_for_area(0.1, &rice_cookie(), &gelatin_glue(), 0.0, 0.25, 0.2)
                .is_err()
        );
    }

    #[test]
    fn thickness_scales_everything() {
        let one =
            mass_and_calories_for_area(0.1, &rice_cookie(), &gelatin_glue(), 0.005, 0.25, 1.0)
                .unwrap();
        let two =
            mass_and_calories_for_area(0.1, &rice_cookie(), &gelatin_glue(), 0.010, 0.25, 1.0)
                .unwrap();
        assert!((two.cookie_mass - 2.0 * one.cookie_mass).abs() < 1e-15);
        assert!((two.adhesive_mass - 2.0 * one.adhesive_mass).abs() < 1e-15);
        assert!((two.total_kcal - 2.0 * one.total_kcal).abs() < 1e-12);
    }

    #[test]
    fn edible_fraction_of_prototype() {
        assert_eq!(edible_fraction(0.100, 0.200).unwrap(), 0.5);
        assert!(edible_fraction(0.1, 0.0).is_err());
    }
}
