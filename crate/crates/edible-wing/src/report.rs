//! Design reports: an aligned text table and a JSON document.
//!
//! The JSON document holds the full report in SI at full precision, a
//! `display` block in g/mm/cm²/degrees, and the config echo. Keys are sorted
//! so identical reports serialize to identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use edible_wing_core::pipeline::DesignReport;
use edible_wing_core::units::{kg_to_g, m2_to_cm2, m_to_mm, rad_to_deg};
use serde_json::{json, Map, Value};

use crate::config::EchoEntry;
use crate::Result;

pub const STRUCTURE_SECTIONS: [&str; 2] = ["Structure", "Load test (half span)"];

pub const SCHEMA: &str = "edible-wing/design-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Both,
}

/// `x` to four significant figures, switching to exponent form outside
/// `1e-3..1e6`.
pub fn sig4(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-3..6).contains(&exp) {
        let decimals = (3 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // Rounding can carry into the next decade (9.9996 -> 10.000).
        let digits = s.chars().filter(|c| c.is_ascii_digit()).collect::<String>();
        if digits.trim_start_matches('0').len() > 4 && decimals > 0 {
            let d = decimals - 1;
            return format!("{x:.d$}");
        }
        s
    } else {
        format!("{x:.3e}")
    }
}

type Row = (String, String, &'static str);

fn row(label: impl Into<String>, value: f64, unit: &'static str) -> Row {
    (label.into(), sig4(value), unit)
}

fn text_row(label: impl Into<String>, value: impl Into<String>, unit: &'static str) -> Row {
    (label.into(), value.into(), unit)
}

fn verdict(pass: bool) -> String {
    if pass { "pass" } else { "FAIL" }.to_string()
}

fn sections(r: &DesignReport) -> Vec<(&'static str, Vec<Row>)> {
    let nutrition = r.inputs.requirements.nutrition_target;
    let mut out = vec![(
        "Design parameters",
        vec![
            row("Nutrition to carry", nutrition, "kcal"),
            row("Payload (W_payload)", kg_to_g(r.mass.payload_mass), "g"),
            row(
                "Estimated empty mass (W_wo_payload)",
                kg_to_g(r.mass.empty_mass),
                "g",
            ),
            row("Gross mass (W)", kg_to_g(r.mass.gross_mass), "g"),
            row("Areal caloric density", r.areal_caloric_density, "kcal/m2"),
            row(
                "Wing reference area (S)",
                m2_to_cm2(r.wing.reference_area),
                "cm2",
            ),
            row("Wing loading (W/S)", r.aero.wing_loading, "N/m2"),
            row("Wing aspect ratio (AR)", r.wing.aspect_ratio, "-"),
            row("Wing chord (c)", m_to_mm(r.wing.chord), "mm"),
            row("Wingspan (b)", m_to_mm(r.wing.span), "mm"),
            row("Plate thickness (t)", m_to_mm(r.wing.plate_thickness), "mm"),
            row("Dihedral angle", r.wing.dihedral_angle, "deg"),
            row("Cruise speed (V_c)", r.aero.cruise_speed, "m/s"),
            row("Chord Reynolds number (Re)", r.aero.achieved_re, "-"),
            row(
                "Critical angle of attack",
                rad_to_deg(r.critical.alpha),
                "deg",
            ),
            row(
                "Angle of attack (alpha)",
                rad_to_deg(r.aero.critical_alpha),
                "deg",
            ),
            row("Lift coefficient (C_L)", r.aero.lift_coefficient, "-"),
            row("Stall speed (V_s)", r.aero.stall_speed, "m/s"),
            row("Oswald efficiency (e)", r.aero.oswald_factor, "-"),
            row("Dynamic pressure (q)", r.aero.dynamic_pressure, "Pa"),
        ],
    )];

    let p = &r.propulsion;
    let mut thrust = vec![
        row("Drag coefficient (C_D)", p.drag_coefficient, "-"),
        row("Maximum thrust (T_max)", p.max_thrust, "N"),
        row("Cruise T/W", p.required_tw_cruise, "-"),
        row("Thrust-match T/W (1/(L/D))", p.thrust_match_tw, "-"),
        row("Maximum T/W", p.max_tw, "-"),
    ];
    for (label, m) in ["Margin over cruise T/W", "Margin over thrust-match T/W"]
        .into_iter()
        .zip(&r.thrust_margin.margins)
    {
        thrust.push(row(label, *m, "-"));
    }
    thrust.push(text_row(
        "Thrust verdict",
        verdict(r.thrust_margin.pass),
        "",
    ));
    out.push(("Thrust", thrust));

    let t = &r.tail;
    let mut tail = vec![
        row("C_VT", t.c_vt, "-"),
        row("C_HT", t.c_ht, "-"),
        row("C_HT / C_VT", r.tail_verdict.coefficient_ratio, "-"),
        row("Vertical tail area (S_VT)", m2_to_cm2(t.s_vt), "cm2"),
        row("Horizontal tail area (S_HT)", m2_to_cm2(t.s_ht), "cm2"),
        row("Vertical tail arm (L_VT)", m_to_mm(t.l_vt), "mm"),
        row("Horizontal tail arm (L_HT)", m_to_mm(t.l_ht), "mm"),
        text_row("Tail verdict", verdict(r.tail_verdict.pass()), ""),
    ];
    for v in &r.tail_verdict.violations {
        tail.push(text_row("Tail violation", v.clone(), ""));
    }
    out.push(("Tail", tail));

    let l = &r.load;
    let mut structure = vec![
        row("Total lift (W g)", l.total_lift, "N"),
        row("Schrenk intercept (f0)", l.intercept, "N/m"),
        row("Root load F(0)", l.root_load, "N/m"),
        row("Tip load F(b/2)", l.tip_load, "N/m"),
        row("Half-span lift", l.half_span_lift, "N"),
    ];
    match &r.strength {
        Some(s) => structure.extend([
            row("Required half-span lift", s.required_half_lift, "N"),
            row("Tested half-span capacity (L_s)", s.capacity_half_lift, "N"),
            row("Strength margin", s.margin, "-"),
            row("Full-span capacity / W g", s.full_span_capacity_in_wg, "-"),
            text_row("Strength verdict", verdict(s.pass), ""),
        ]),
        None => structure.push(text_row("Strength verdict", "not tested", "")),
    }
    if let Some(d) = &r.deflection {
        structure.push(row(
            "Tip deflection (delta)",
            m_to_mm(d.tip_deflection),
            "mm",
        ));
    }
    out.push(("Structure", structure));

    let bags = r
        .load
        .bag_plan
        .iter()
        .map(|b| {
            let label = format!(
                "Sand bag {}-{} mm",
                sig4(m_to_mm(b.x_start)),
                sig4(m_to_mm(b.x_end))
            );
            row(label, kg_to_g(b.mass), "g")
        })
        .collect();
    out.push(("Load test (half span)", bags));

    let w = &r.wing_mass;
    out.push((
        "Cut layout and energy",
        vec![
            row(
                "Hexagon width (vertex to vertex)",
                m_to_mm(r.tiling.spec.circumdiameter),
                "mm",
            ),
            text_row("Full hexagons", r.tiling.full_hex_count.to_string(), ""),
            text_row("Partial tiles", r.tiling.partial_count.to_string(), ""),
            row("Seam length", m_to_mm(r.tiling.seam_length), "mm"),
            row("Covered area", m2_to_cm2(r.tiling.covered_area), "cm2"),
            text_row("Adhesive", r.adhesive.name.clone(), ""),
            row(
                "Conservative adhesive strength",
                r.adhesive_conservative_strength / 1e3,
                "kPa",
            ),
            row("Cookie mass", kg_to_g(w.cookie_mass), "g"),
            row("Adhesive mass", kg_to_g(w.adhesive_mass), "g"),
            row("Edible wing mass", kg_to_g(w.total_mass), "g"),
            row("Wing energy", w.total_kcal, "kcal"),
            row("Edible fraction of drone", w.edible_fraction_of_drone, "-"),
        ],
    ));
    out
}

/// The aligned text report.
pub fn render_text(report: &DesignReport) -> String {
    render_text_sections(report, |_| true)
}

/// The text report restricted to the sections whose title passes `keep`.
pub fn render_text_sections(report: &DesignReport, keep: impl Fn(&str) -> bool) -> String {
    let sections: Vec<_> = sections(report)
        .into_iter()
        .filter(|(t, _)| keep(t))
        .collect();
    let label_w = sections
        .iter()
        .flat_map(|(_, rows)| rows.iter().map(|r| r.0.len()))
        .max()
        .unwrap_or(0);
    let value_w = sections
        .iter()
        .flat_map(|(_, rows)| rows.iter().map(|r| r.1.len()))
        .max()
        .unwrap_or(0);

    let mut s = String::new();
    for (title, rows) in &sections {
        if rows.is_empty() {
            continue;
        }
        let _ = writeln!(s, "{title}");
        let _ = writeln!(s, "{}", "-".repeat(title.len()));
        for (label, value, unit) in rows {
            let line = format!("  {label:<label_w$}  {value:>value_w$}  {unit}");
            let _ = writeln!(s, "{}", line.trim_end());
        }
        s.push('\n');
    }
    for w in &report.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    let _ = writeln!(s, "Overall verdict: {}", verdict(report.pass()));
    s
}

/// The main results in g, mm, cm² and degrees.
pub fn display_block(r: &DesignReport) -> Value {
    let mut m = Map::new();
    let mut put = |k: &str, v: f64| {
        m.insert(k.to_string(), json!(v));
    };
    put("nutrition_kcal", r.inputs.requirements.nutrition_target);
    put("payload_mass_g", kg_to_g(r.mass.payload_mass));
    put("empty_mass_g", kg_to_g(r.mass.empty_mass));
    put("gross_mass_g", kg_to_g(r.mass.gross_mass));
    put("reference_area_cm2", m2_to_cm2(r.wing.reference_area));
    put("wing_loading_n_m2", r.aero.wing_loading);
    put("aspect_ratio", r.wing.aspect_ratio);
    put("chord_mm", m_to_mm(r.wing.chord));
    put("span_mm", m_to_mm(r.wing.span));
    put("plate_thickness_mm", m_to_mm(r.wing.plate_thickness));
    put("dihedral_deg", r.wing.dihedral_angle);
    put("cruise_speed_m_s", r.aero.cruise_speed);
    put("reynolds_number", r.aero.achieved_re);
    put("critical_alpha_deg", rad_to_deg(r.critical.alpha));
    put("alpha_deg", rad_to_deg(r.aero.critical_alpha));
    put("lift_coefficient", r.aero.lift_coefficient);
    put("stall_speed_m_s", r.aero.stall_speed);
    put("cruise_tw", r.propulsion.required_tw_cruise);
    put("thrust_match_tw", r.propulsion.thrust_match_tw);
    put("max_tw", r.propulsion.max_tw);
    put("s_vt_cm2", m2_to_cm2(r.tail.s_vt));
    put("s_ht_cm2", m2_to_cm2(r.tail.s_ht));
    put("l_vt_mm", m_to_mm(r.tail.l_vt));
    put("l_ht_mm", m_to_mm(r.tail.l_ht));
    put("seam_length_mm", m_to_mm(r.tiling.seam_length));
    put("wing_mass_g", kg_to_g(r.wing_mass.total_mass));
    put("wing_kcal", r.wing_mass.total_kcal);
    put("edible_fraction", r.wing_mass.edible_fraction_of_drone);
    if let Some(d) = &r.deflection {
        put("tip_deflection_mm", m_to_mm(d.tip_deflection));
    }
    Value::Object(m)
}

/// The JSON report document.
pub fn report_document(
    report: &DesignReport,
    echo: &BTreeMap<&'static str, EchoEntry>,
) -> Result<Value> {
    Ok(json!({
        "schema": SCHEMA,
        "pass": report.pass(),
        "report": serde_json::to_value(report)?,
        "display": display_block(report),
        "echo": serde_json::to_value(echo)?,
    }))
}

/// Pretty-printed JSON with a trailing newline.
pub fn render_json(
    report: &DesignReport,
    echo: &BTreeMap<&'static str, EchoEntry>,
) -> Result<String> {
    to_json_text(&report_document(report, echo)?)
}

pub fn to_json_text(doc: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_significant_figures() {
        assert_eq!(sig4(294.117647), "294.1");
        assert_eq!(sig4(1056.338), "1056");
        assert_eq!(sig4(27.3141), "27.31");
        assert_eq!(sig4(0.50362), "0.5036");
        assert_eq!(sig4(9.99996), "10.00");
        assert_eq!(sig4(100000.0), "100000");
        assert_eq!(sig4(1.5e-5), "1.500e-5");
        assert_eq!(sig4(-0.0123456), "-0.01235");
        assert_eq!(sig4(0.0), "0");
    }
}
