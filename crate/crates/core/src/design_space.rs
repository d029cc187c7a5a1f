//! Cruise wing-loading map over (V_c, AR) and its iso-contours.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::sizing::{wing_loading_cruise, EnvironmentSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DesignSpaceGrid {
    /// m/s, ascending
    pub cruise_speeds: Vec<f64>,
    /// ascending
    pub aspect_ratios: Vec<f64>,
    /// N/m², row-major: `values[i * aspect_ratios.len() + j]` is at
    /// `(cruise_speeds[i], aspect_ratios[j])`.
    pub values: Vec<f64>,
}

impl DesignSpaceGrid {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.aspect_ratios.len() + j]
    }
}

fn linspace(range: (f64, f64), steps: usize, name: &'static str) -> Result<Vec<f64>> {
    let (lo, hi) = range;
    if steps < 2 || !(lo.is_finite() && hi.is_finite()) || !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidParameter {
            name,
            value: hi - lo,
            expected: "a positive ascending range with at least 2 steps",
        });
    }
    let n = steps - 1;
    Ok((0..=n)
        .map(|k| {
            if k == n {
                hi
            } else {
                lo + (hi - lo) * k as f64 / n as f64
            }
        })
        .collect())
}

/// Evaluates the cruise constraint on a regular grid.
pub fn design_space_grid(
    speed_range: (f64, f64),
    aspect_range: (f64, f64),
    steps: (usize, usize),
    zero_lift_drag: f64,
    env: &EnvironmentSpec,
) -> Result<DesignSpaceGrid> {
    let cruise_speeds = linspace(speed_range, steps.0, "cruise_speed_range")?;
    let aspect_ratios = linspace(aspect_range, steps.1, "aspect_ratio_range")?;
    let mut values = Vec::with_capacity(cruise_speeds.len() * aspect_ratios.len());
    for &v in &cruise_speeds {
        for &ar in &aspect_ratios {
            values.push(wing_loading_cruise(v, ar, zero_lift_drag, env)?);
        }
    }
    Ok(DesignSpaceGrid {
        cruise_speeds,
        aspect_ratios,
        values,
    })
}

/// Grid edge identity: along V_c from node (i, j), or along AR from (i, j).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    Speed(usize, usize),
    Aspect(usize, usize),
}

/// Polylines in (V_c, AR) where the wing loading equals `target`.
///
/// Marching squares: each crossing is linearly interpolated on the grid edge
/// it lies on, and cell segments are chained through their shared edges.
pub fn iso_contour(grid: &DesignSpaceGrid, target: f64) -> Vec<Vec<[f64; 2]>> {
    let nv = grid.cruise_speeds.len();
    let na = grid.aspect_ratios.len();
    let above = |i: usize, j: usize| grid.at(i, j) >= target;

    let point = |edge: Edge| -> [f64; 2] {
        let ((i0, j0), (i1, j1)) = match edge {
            Edge::Speed(i, j) => ((i, j), (i + 1, j)),
            Edge::Aspect(i, j) => ((i, j), (i, j + 1)),
        };
        let (f0, f1) = (grid.at(i0, j0), grid.at(i1, j1));
        let t = (target - f0) / (f1 - f0);
        let v = grid.cruise_speeds[i0] + t * (grid.cruise_speeds[i1] - grid.cruise_speeds[i0]);
        let a = grid.aspect_ratios[j0] + t * (grid.aspect_ratios[j1] - grid.aspect_ratios[j0]);
        [v, a]
    };

    let mut links: BTreeMap<Edge, Vec<Edge>> = BTreeMap::new();
    for i in 0..nv.saturating_sub(1) {
        for j in 0..na.saturating_sub(1) {
            // Cell sides in ring order: bottom, right, top, left.
            let sides = [
                (Edge::Speed(i, j), above(i, j) != above(i + 1, j)),
                (
                    Edge::Aspect(i + 1, j),
                    above(i + 1, j) != above(i + 1, j + 1),
                ),
                (
                    Edge::Speed(i, j + 1),
                    above(i, j + 1) != above(i + 1, j + 1),
                ),
                (Edge::Aspect(i, j), above(i, j) != above(i, j + 1)),
            ];
            let crossed: Vec<Edge> = sides.iter().filter(|s| s.1).map(|s| s.0).collect();
            let pairs: Vec<(Edge, Edge)> = match crossed.len() {
                2 => alloc::vec![(crossed[0], crossed[1])],
                4 => {
                    // Saddle: resolve with the cell-centre average.
                    let centre = 0.25
                        * (grid.at(i, j)
                            + grid.at(i + 1, j)
                            + grid.at(i, j + 1)
                            + grid.at(i + 1, j + 1));
                    if (centre >= target) == above(i, j) {
                        alloc::vec![(crossed[0], crossed[1]), (crossed[2], crossed[3])]
                    } else {
                        alloc::vec![(crossed[0], crossed[3]), (crossed[1], crossed[2])]
                    }
                }
                _ => Vec::new(),
            };
            for (a, b) in pairs {
                links.entry(a).or_default().push(b);
                links.entry(b).or_default().push(a);
            }
        }
    }

    let mut lines = Vec::new();
    let mut visited: BTreeMap<Edge, bool> = links.keys().map(|e| (*e, false)).collect();
    // Open chains start at grid-boundary crossings (degree one); the rest are loops.
    let mut starts: Vec<Edge> = links
        .iter()
        .filter(|(_, n)| n.len() == 1)
        .map(|(e, _)| *e)
        .collect();
    starts.extend(links.keys().copied());
    for start in starts {
        if visited[&start] {
            continue;
        }
        let mut line = Vec::new();
        let mut prev: Option<Edge> = None;
        let mut cur = start;
        loop {
            visited.insert(cur, true);
            line.push(point(cur));
            let next = links[&cur]
                .iter()
                .copied()
                .find(|n| Some(*n) != prev && !visited[n]);
            match next {
                Some(n) => {
                    prev = Some(cur);
                    cur = n;
                }
                None => {
                    if line.len() > 2 && links[&cur].contains(&start) {
                        line.push(point(start));
                    }
                    break;
                }
            }
        }
        lines.push(line);
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_grid(steps: (usize, usize)) -> DesignSpaceGrid {
        design_space_grid(
            (4.0, 16.0),
            (1.0, 10.0),
            steps,
            0.02,
            &EnvironmentSpec::default(),
        )
        .unwrap()
    }

    #[test]
    fn cell_at_design_point() {
        let g = design_space_grid(
            (9.43, 10.43),
            (4.354, 5.354),
            (2, 2),
            0.02,
            &EnvironmentSpec::default(),
        )
        .unwrap();
        assert!((g.at(0, 0) - 27.3).abs() < 0.1);
        assert_eq!(g.values.len(), 4);
    }

    #[test]
    fn columns_increase_with_speed() {
        let g = reference_grid((25, 19));
        for j in 0..g.aspect_ratios.len() {
            for i in 1..g.cruise_speeds.len() {
                assert!(g.at(i, j) >= g.at(i - 1, j));
            }
        }
    }

    #[test]
    fn contour_vertices_satisfy_constraint() {
        let env = EnvironmentSpec::default();
        let g = reference_grid((61, 46));
        let lines = iso_contour(&g, 27.3);
        assert_eq!(lines.len(), 1, "monotone field gives one open curve");
        assert!(lines[0].len() > 10);
        for [v, ar] in lines.iter().flatten() {
            let ws = wing_loading_cruise(*v, *ar, 0.02, &env).unwrap();
            assert!((ws - 27.3).abs() < 0.01 * 27.3, "({v}, {ar}) -> {ws}");
        }
    }

    #[test]
    fn contour_passes_near_design_point() {
        let g = reference_grid((49, 37));
        let dv = g.cruise_speeds[1] - g.cruise_speeds[0];
        let da = g.aspect_ratios[1] - g.aspect_ratios[0];
        let lines = iso_contour(&g, 27.3);
        let near = lines
            .iter()
            .flatten()
            .any(|[v, a]| (v - 9.43).abs() <= dv && (a - 4.35).abs() <= da);
        assert!(near);
    }

    #[test]
    fn contour_outside_range_is_empty() {
        assert!(iso_contour(&reference_grid((5, 5)), 1e6).is_empty());
    }

    #[test]
    fn bad_ranges_are_rejected() {
        let env = EnvironmentSpec::default();
        assert!(design_space_grid((4.0, 4.0), (1.0, 10.0), (5, 5), 0.02, &env).is_err());
        assert!(design_space_grid((4.0, 16.0), (1.0, 10.0), (1, 5), 0.02, &env).is_err());
        assert!(design_space_grid((16.0, 4.0), (1.0, 10.0), (5, 5), 0.02, &env).is_err());
    }
}
