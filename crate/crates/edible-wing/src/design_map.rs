//! Wing-loading map export: CSV grid and SVG heatmap with the target
//! iso-line drawn dashed.

use std::fmt::Write as _;
use std::io::{Read, Write};

use edible_wing_core::design_space::DesignSpaceGrid;

use crate::{Error, Result};

pub const CSV_HEADER: [&str; 3] = ["Vc", "AR", "wing_loading"];

/// One row per grid node, V_c outer and AR inner, at full precision.
pub fn write_csv<W: Write>(grid: &DesignSpaceGrid, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for (i, v) in grid.cruise_speeds.iter().enumerate() {
        for (j, ar) in grid.aspect_ratios.iter().enumerate() {
            w.write_record([v.to_string(), ar.to_string(), grid.at(i, j).to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads back `(V_c, AR, W/S)` rows written by [`write_csv`].
pub fn read_csv<R: Read>(input: R, origin: &str) -> Result<Vec<[f64; 3]>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers().map_err(|e| parse_error(origin, &e))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Header {
            origin: origin.to_string(),
            expected: CSV_HEADER.join(","),
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| parse_error(origin, &e))?;
        let mut row = [0.0; 3];
        for (slot, field) in row.iter_mut().zip(record.iter()) {
            *slot = field.parse().map_err(|_| Error::Parse {
                origin: origin.to_string(),
                line: record.position().map_or(0, |p| p.line()),
                message: format!("`{field}` is not a number"),
            })?;
        }
        rows.push(row);
    }
    Ok(rows)
}

fn parse_error(origin: &str, e: &csv::Error) -> Error {
    Error::Parse {
        origin: origin.to_string(),
        line: e.position().map_or(0, |p| p.line()),
        message: e.to_string(),
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 100.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;

/// Viridis control points.
const RAMP: [[f64; 3]; 5] = [
    [68.0, 1.0, 84.0],
    [59.0, 82.0, 139.0],
    [33.0, 145.0, 140.0],
    [94.0, 201.0, 98.0],
    [253.0, 231.0, 37.0],
];

fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0) * (RAMP.len() - 1) as f64;
    let k = (t.floor() as usize).min(RAMP.len() - 2);
    let f = t - k as f64;
    let c: Vec<u8> = (0..3)
        .map(|ch| (RAMP[k][ch] + (RAMP[k + 1][ch] - RAMP[k][ch]) * f).round() as u8)
        .collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn f3(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

struct Frame {
    v: (f64, f64),
    ar: (f64, f64),
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        MARGIN_LEFT + (v - self.v.0) / (self.v.1 - self.v.0) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, ar: f64) -> f64 {
        HEIGHT
            - MARGIN_BOTTOM
            - (ar - self.ar.0) / (self.ar.1 - self.ar.0) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

/// Heatmap of the grid (V_c across, AR up) with `contours` dashed.
pub fn render_svg(grid: &DesignSpaceGrid, target: f64, contours: &[Vec<[f64; 2]>]) -> String {
    let (nv, na) = (grid.cruise_speeds.len(), grid.aspect_ratios.len());
    let frame = Frame {
        v: (grid.cruise_speeds[0], grid.cruise_speeds[nv - 1]),
        ar: (grid.aspect_ratios[0], grid.aspect_ratios[na - 1]),
    };
    let lo = grid.values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = grid
        .values
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"12\">",
        w = f3(WIDTH),
        h = f3(HEIGHT)
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n<g shape-rendering=\"crispEdges\">\n");
    for i in 0..nv - 1 {
        for j in 0..na - 1 {
            let mean =
                (grid.at(i, j) + grid.at(i + 1, j) + grid.at(i, j + 1) + grid.at(i + 1, j + 1))
                    / 4.0;
            let (x0, x1) = (
                frame.x(grid.cruise_speeds[i]),
                frame.x(grid.cruise_speeds[i + 1]),
            );
            let (y0, y1) = (
                frame.y(grid.aspect_ratios[j + 1]),
                frame.y(grid.aspect_ratios[j]),
            );
            let _ = writeln!(
                s,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                f3(x0),
                f3(y0),
                f3(x1 - x0),
                f3(y1 - y0),
                color((mean - lo) / span)
            );
        }
    }
    s.push_str("</g>\n");

    for line in contours {
        let points = line
            .iter()
            .map(|p| format!("{},{}", f3(frame.x(p[0])), f3(frame.y(p[1]))))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            s,
            "<polyline class=\"iso-line\" points=\"{points}\" fill=\"none\" stroke=\"#ffffff\" stroke-width=\"2.000\" stroke-dasharray=\"6 4\"/>"
        );
    }

    let (left, right) = (frame.x(frame.v.0), frame.x(frame.v.1));
    let (bottom, top) = (frame.y(frame.ar.0), frame.y(frame.ar.1));
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\"/>",
        f3(left),
        f3(top),
        f3(right - left),
        f3(bottom - top)
    );
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let v = frame.v.0 + t * (frame.v.1 - frame.v.0);
        let ar = frame.ar.0 + t * (frame.ar.1 - frame.ar.0);
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            f3(frame.x(v)),
            f3(bottom + 18.0),
            trim(v)
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>",
            f3(left - 6.0),
            f3(frame.y(ar) + 4.0),
            trim(ar)
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">cruise speed V_c (m/s)</text>",
        f3((left + right) / 2.0),
        f3(HEIGHT - 15.0)
    );
    let _ = writeln!(
        s,
        "<text x=\"20.000\" y=\"{y}\" text-anchor=\"middle\" transform=\"rotate(-90 20.000 {y})\">aspect ratio AR</text>",
        y = f3((top + bottom) / 2.0)
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"24.000\" text-anchor=\"middle\">wing loading W/S (N/m2), dashed: {} N/m2</text>",
        f3((left + right) / 2.0),
        trim(target)
    );

    let bar_x = right + 20.0;
    let steps = 50;
    for k in 0..steps {
        let t = k as f64 / steps as f64;
        let h = (bottom - top) / steps as f64;
        let _ = writeln!(
            s,
            "<rect x=\"{}\" y=\"{}\" width=\"16.000\" height=\"{}\" fill=\"{}\"/>",
            f3(bar_x),
            f3(bottom - (k + 1) as f64 * h),
            f3(h),
            color(t + 0.5 / steps as f64)
        );
    }
    for (value, y) in [(lo, bottom), (hi, top)] {
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\">{}</text>",
            f3(bar_x + 22.0),
            f3(y + 4.0),
            trim(value)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Short label: up to three decimals, trailing zeros dropped.
fn trim(x: f64) -> String {
    let s = f3(x);
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
