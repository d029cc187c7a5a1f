//! Thrust-to-weight requirements and the available-thrust margin.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{non_negative, positive};
use crate::sizing::EnvironmentSpec;
use crate::Result;

pub const DEFAULT_DRAG_COEFFICIENT: f64 = 0.045;
/// N, static thrust of the motor/propeller pair on the prototype.
pub const DEFAULT_MAX_THRUST: f64 = 1.079;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PropulsionSpec {
    pub drag_coefficient: f64,
    /// N
    pub max_thrust: f64,
    pub required_tw_cruise: f64,
    pub max_tw: f64,
    pub thrust_match_tw: f64,
}

/// Cruise T/W split into its parasite and induced parts.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CruiseThrust {
    pub parasite: f64,
    pub induced: f64,
}

impl CruiseThrust {
    pub fn total(&self) -> f64 {
        self.parasite + self.induced
    }
}

/// Required T/W in level cruise, `q·C_D·S/W + W/(π·AR·e·q·S)`, by term.
pub fn cruise_thrust_terms(
    gross_weight: f64,
    area: f64,
    aspect_ratio: f64,
    oswald: f64,
    cruise_speed: f64,
    drag_coefficient: f64,
    env: &EnvironmentSpec,
) -> Result<CruiseThrust> {
    positive("gross_weight", gross_weight)?;
    positive("area", area)?;
    positive("aspect_ratio", aspect_ratio)?;
    positive("oswald", oswald)?;
    positive("cruise_speed", cruise_speed)?;
    non_negative("drag_coefficient", drag_coefficient)?;
    env.validate()?;
    let q = positive("dynamic_pressure", env.dynamic_pressure(cruise_speed))?;
    let loading = gross_weight / area;
    Ok(CruiseThrust {
        parasite: q * drag_coefficient / loading,
        induced: loading / (PI * aspect_ratio * oswald * q),
    })
}

pub fn cruise_thrust_to_weight(
    gross_weight: f64,
    area: f64,
    aspect_ratio: f64,
    oswald: f64,
    cruise_speed: f64,
    drag_coefficient: f64,
    env: &EnvironmentSpec,
) -> Result<f64> {
    cruise_thrust_terms(
        gross_weight,
        area,
        aspect_ratio,
        oswald,
        cruise_speed,
        drag_coefficient,
        env,
    )
    .map(|t| t.total())
}

/// Lowest cruise T/W over all dynamic pressures, `2·sqrt(C_D/(π·AR·e))`.
pub fn min_cruise_thrust_to_weight(drag_coefficient: f64, aspect_ratio: f64, oswald: f64) -> f64 {
    2.0 * libm::sqrt(drag_coefficient / (PI * aspect_ratio * oswald))
}

/// T/W from thrust matching in steady cruise, `1/(L/D)`.
pub fn thrust_match_tw(lift_drag_ratio: f64) -> Result<f64> {
    Ok(1.0 / positive("lift_drag_ratio", lift_drag_ratio)?)
}

pub fn max_thrust_to_weight(max_thrust: f64, gross_weight: f64) -> Result<f64> {
    non_negative("max_thrust", max_thrust)?;
    positive("gross_weight", gross_weight)?;
    Ok(max_thrust / gross_weight)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ThrustMarginReport {
    pub max_tw: f64,
    pub required: Vec<f64>,
    pub margins: Vec<f64>,
    /// All margins strictly above 1.
    pub pass: bool,
}

pub fn check_thrust_margin(max_tw: f64, required: &[f64]) -> Result<ThrustMarginReport> {
    non_negative("max_tw", max_tw)?;
    for &r in required {
        positive("required_tw", r)?;
    }
    let margins: Vec<f64> = required.iter().map(|r| max_tw / r).collect();
    Ok(ThrustMarginReport {
        max_tw,
        required: required.to_vec(),
        pass: margins.iter().all(|&m| m > 1.0),
        margins,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn env() -> EnvironmentSpec {
        EnvironmentSpec::default()
    }

    #[test]
    fn cruise_tw_examples() {
        let e = env();
        let tw = cruise_thrust_to_weight(2.88, 0.105634, 4.354, 0.9222, 9.43, 0.045, &e).unwrap();
        assert!((tw - 0.130).abs() <= 0.003, "{tw}");
        let induced =
            cruise_thrust_to_weight(2.88, 0.105634, 4.354, 0.9222, 9.43, 0.0, &e).unwrap();
        assert!((induced - 0.0397).abs() < 1e-4);

        let one = cruise_thrust_terms(2.88, 0.105634, 4.354, 0.9222, 9.43, 0.045, &e).unwrap();
        let two = cruise_thrust_terms(5.76, 0.105634, 4.354, 0.9222, 9.43, 0.045, &e).unwrap();
        assert!((two.total() - (0.5 * one.parasite + 2.0 * one.induced)).abs() < 1e-15);
    }

    #[test]
    fn cruise_tw_rejects_zero_inputs() {
        let e = env();
        assert!(cruise_thrust_to_weight(0.0, 0.1, 4.0, 0.9, 9.0, 0.045, &e).is_err());
        assert!(cruise_thrust_to_weight(2.0, 0.0, 4.0, 0.9, 9.0, 0.045, &e).is_err());
        assert!(cruise_thrust_to_weight(2.0, 0.1, 4.0, 0.9, 0.0, 0.045, &e).is_err());
    }

    #[test]
    fn thrust_match_examples() {
        assert!((thrust_match_tw(6.2).unwrap() - 0.1613).abs() < 1e-4);
        assert_eq!(thrust_match_tw(1.0).unwrap(), 1.0);
        assert!((thrust_match_tw(7.0).unwrap() - 0.1429).abs() < 1e-4);
        assert!(thrust_match_tw(0.0).is_err());
    }

    #[test]
    fn max_tw_examples() {
        assert!((max_thrust_to_weight(1.079, 2.884).unwrap() - 0.374).abs() < 5e-4);
        assert_eq!(max_thrust_to_weight(2.0, 2.0).unwrap(), 1.0);
        assert_eq!(max_thrust_to_weight(0.0, 2.0).unwrap(), 0.0);
        assert!(max_thrust_to_weight(1.0, 0.0).is_err());
    }

    #[test]
    fn margin_examples() {
        let r = check_thrust_margin(0.374, &[0.130, 0.161]).unwrap();
        assert!((r.margins[0] - 2.877).abs() < 1e-3);
        assert!((r.margins[1] - 2.323).abs() < 1e-3);
        assert!(r.pass);

        let edge = check_thrust_margin(0.374, &[0.374]).unwrap();
        assert_eq!(edge.margins, [1.0]);
        assert!(!edge.pass);

        let weak = check_thrust_margin(0.1, &[0.13]).unwrap();
        assert!((weak.margins[0] - 0.769).abs() < 1e-3);
        assert!(!weak.pass);

        assert!(check_thrust_margin(0.3, &[0.1, 0.0]).is_err());
    }

    proptest! {
        #[test]
        fn cruise_tw_above_analytic_minimum(
            w in 0.5f64..20.0, s in 0.02f64..1.0, ar in 1.0f64..20.0,
            e in 0.5f64..1.05, v in 2.0f64..40.0, cd in 0.005f64..0.2,
        ) {
            let tw = cruise_thrust_to_weight(w, s, ar, e, v, cd, &env()).unwrap();
            prop_assert!(tw >= min_cruise_thrust_to_weight(cd, ar, e) * (1.0 - 1e-12));
        }

        #[test]
        fn cruise_tw_depends_on_loading_only(w in 0.5f64..20.0, s in 0.02f64..1.0, k in 0.1f64..10.0) {
            let e = env();
            let a = cruise_thrust_to_weight(w, s, 4.3, 0.92, 9.4, 0.045, &e).unwrap();
            let b = cruise_thrust_to_weight(k * w, k * s, 4.3, 0.92, 9.4, 0.045, &e).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a);
        }
    }
}
