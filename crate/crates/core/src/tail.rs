//! Tail sizing through the horizontal and vertical tail volume coefficients,
//! `C_VT = L_VT·S_VT/(b·S)` and `C_HT = L_HT·S_HT/(c·S)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{non_negative, positive};
use crate::Result;

pub const DEFAULT_C_VT: f64 = 0.05;
pub const DEFAULT_C_HT: f64 = 0.25;
/// Accepted C_HT/C_VT band, inclusive.
pub const COEFFICIENT_RATIO_BAND: (f64, f64) = (5.0, 12.0);
/// Relative tolerance on the volume-coefficient identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TailSpec {
    pub c_vt: f64,
    pub c_ht: f64,
    /// m²
    pub s_vt: f64,
    /// m²
    pub s_ht: f64,
    /// m, wing quarter chord to vertical tail quarter chord.
    pub l_vt: f64,
    /// m, wing quarter chord to horizontal tail quarter chord.
    pub l_ht: f64,
}

/// Tail moment arm that reaches `coefficient` with a given tail area.
pub fn tail_arm_from_area(
    coefficient: f64,
    reference_length: f64,
    wing_area: f64,
    tail_area: f64,
) -> Result<f64> {
    non_negative("coefficient", coefficient)?;
    positive("reference_length", reference_length)?;
    positive("wing_area", wing_area)?;
    positive("tail_area", tail_area)?;
    Ok(coefficient * reference_length * wing_area / tail_area)
}

/// Tail area that reaches `coefficient` with a given moment arm.
pub fn tail_area_from_arm(
    coefficient: f64,
    reference_length: f64,
    wing_area: f64,
    arm: f64,
) -> Result<f64> {
    non_negative("coefficient", coefficient)?;
    positive("reference_length", reference_length)?;
    positive("wing_area", wing_area)?;
    positive("arm", arm)?;
    Ok(coefficient * reference_length * wing_area / arm)
}

pub fn volume_coefficient(arm: f64, tail_area: f64, reference_length: f64, wing_area: f64) -> f64 {
    arm * tail_area / (reference_length * wing_area)
}

/// Arms for both tails from predetermined tail areas.
pub fn size_tail(
    c_vt: f64,
    c_ht: f64,
    s_vt: f64,
    s_ht: f64,
    span: f64,
    chord: f64,
    wing_area: f64,
) -> Result<TailSpec> {
    Ok(TailSpec {
        c_vt,
        c_ht,
        s_vt,
        s_ht,
        l_vt: tail_arm_from_area(c_vt, span, wing_area, s_vt)?,
        l_ht: tail_arm_from_area(c_ht, chord, wing_area, s_ht)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TailVerdict {
    pub coefficient_ratio: f64,
    pub vt_identity_residual: f64,
    pub ht_identity_residual: f64,
    pub violations: Vec<String>,
}

impl TailVerdict {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the C_HT/C_VT band and that the arms and areas reproduce both
/// coefficients for the given wing.
pub fn validate_tail(
    spec: &TailSpec,
    span: f64,
    chord: f64,
    wing_area: f64,
) -> Result<TailVerdict> {
    positive("c_vt", spec.c_vt)?;
    positive("c_ht", spec.c_ht)?;
    positive("s_vt", spec.s_vt)?;
    positive("s_ht", spec.s_ht)?;
    positive("l_vt", spec.l_vt)?;
    positive("l_ht", spec.l_ht)?;
    positive("span", span)?;
    positive("chord", chord)?;
    positive("wing_area", wing_area)?;

    let ratio = spec.c_ht / spec.c_vt;
    let vt = volume_coefficient(spec.l_vt, spec.s_vt, span, wing_area) / spec.c_vt - 1.0;
    let ht = volume_coefficient(spec.l_ht, spec.s_ht, chord, wing_area) / spec.c_ht - 1.0;

    let mut violations = Vec::new();
    let (lo, hi) = COEFFICIENT_RATIO_BAND;
    if !(lo..=hi).contains(&ratio) {
        violations.push(format!("C_HT/C_VT = {ratio:.4} outside [{lo}, {hi}]"));
    }
    if vt.abs() > IDENTITY_TOLERANCE {
        violations.push(format!(
            "vertical tail: L_VT·S_VT/(b·S) differs from C_VT by {:.4e} (relative)",
            vt
        ));
    }
    if ht.abs() > IDENTITY_TOLERANCE {
        violations.push(format!(
            "horizontal tail: L_HT·S_HT/(c·S) differs from C_HT by {:.4e} (relative)",
            ht
        ));
    }
    Ok(TailVerdict {
        coefficient_ratio: ratio,
        vt_identity_residual: vt,
        ht_identity_residual: ht,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const B: f64 = 0.6788;
    const C: f64 = 0.1559;
    const S: f64 = 0.105634;

    #[test]
    fn arm_examples() {
        assert!((tail_arm_from_area(0.25, C, S, 0.01).unwrap() - 0.4117).abs() < 1e-4);
        assert!((tail_arm_from_area(0.05, B, S, 0.005).unwrap() - 0.7171).abs() < 1e-4);
        let l = tail_arm_from_area(1.0, 2.0, 3.0, 0.5).unwrap();
        assert_eq!(l * 0.5, 2.0 * 3.0);
        assert!(tail_arm_from_area(0.25, C, S, 0.0).is_err());
    }

    #[test]
    fn area_examples() {
        let s = tail_area_from_arm(0.25, C, S, 0.41170851500000005).unwrap();
        assert!((s - 0.01).abs() < 1e-15);
        assert_eq!(tail_area_from_arm(0.0, C, S, 0.4).unwrap(), 0.0);
        let full = tail_area_from_arm(0.25, C, S, 0.4).unwrap();
        let half = tail_area_from_arm(0.25, C, S, 0.2).unwrap();
        assert!((half - 2.0 * full).abs() < 1e-15);
        assert!(tail_area_from_arm(0.25, C, S, 0.0).is_err());
    }

    #[test]
    fn default_coefficients_pass_on_band_edge() {
        let spec = size_tail(DEFAULT_C_VT, DEFAULT_C_HT, 0.005, 0.01, B, C, S).unwrap();
        let v = validate_tail(&spec, B, C, S).unwrap();
        assert_eq!(v.coefficient_ratio, 5.0);
        assert!(v.pass(), "{:?}", v.violations);
    }

    #[test]
    fn ratio_out_of_band_fails() {
        let spec = size_tail(0.02, 0.26, 0.005, 0.01, B, C, S).unwrap();
        let v = validate_tail(&spec, B, C, S).unwrap();
        assert!(!v.pass());
        assert!(v.violations[0].contains("C_HT/C_VT = 13"));
    }

    #[test]
    fn inconsistent_arm_is_reported() {
        let mut spec = size_tail(DEFAULT_C_VT, DEFAULT_C_HT, 0.005, 0.01, B, C, S).unwrap();
        spec.l_ht *= 1.05;
        let v = validate_tail(&spec, B, C, S).unwrap();
        assert!(!v.pass());
        assert_eq!(v.violations.len(), 1);
        assert!((v.ht_identity_residual - 0.05).abs() < 1e-12);
        assert!(v.violations[0].starts_with("horizontal tail"));
    }

    #[test]
    fn unpopulated_spec_is_an_error() {
        let spec = TailSpec {
            c_vt: 0.05,
            c_ht: 0.25,
            s_vt: 0.005,
            s_ht: 0.01,
            l_vt: 0.0,
            l_ht: 0.4,
        };
        assert!(validate_tail(&spec, B, C, S).is_err());
    }

    proptest! {
        #[test]
        fn arm_area_round_trip(
            k in 0.01f64..1.0, len in 0.05f64..2.0, s in 0.01f64..1.0, area in 1e-4f64..0.1,
        ) {
            let arm = tail_arm_from_area(k, len, s, area).unwrap();
            let back = tail_area_from_arm(k, len, s, arm).unwrap();
            prop_assert!((back - area).abs() <= 1e-12 * area);
            prop_assert!((volume_coefficient(arm, area, len, s) - k).abs() <= 1e-12 * k);
        }
    }
}
