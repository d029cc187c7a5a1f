//! End-to-end design: mass budget, calorie-driven area, planform, angle of
//! attack, thrust, tail, structure and cut layout, in that order.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::positive;
use crate::materials::{
    rice_cookie, seed_adhesives, select_adhesive, AdhesiveRecord, FoodMaterial,
};
use crate::performance::{
    check_thrust_margin, cruise_thrust_to_weight, max_thrust_to_weight, thrust_match_tw,
    PropulsionSpec, ThrustMarginReport, DEFAULT_DRAG_COEFFICIENT, DEFAULT_MAX_THRUST,
};
use crate::sizing::{
    self, critical_alpha, estimate_mass_budget, lift_coefficient_lp, oswald_factor, solve_planform,
    stall_speed, wing_area_from_calories, AeroResult, CriticalAlpha, DesignRequirements,
    EnvironmentSpec, MassBudget, WingGeometry,
};
use crate::structure::{
    bag_load_plan, cantilever_deflection, integrate_halfspan, schrenk_distribution,
    strength_margin, BagStation, DeflectionResult, LoadCase, StrengthReport, DEFAULT_SAMPLE_COUNT,
};
use crate::tail::{size_tail, validate_tail, TailSpec, TailVerdict, DEFAULT_C_HT, DEFAULT_C_VT};
use crate::tiling::{
    generate_hex_tiling, mass_and_calories, HexTilingSpec, WingMassBreakdown,
    DEFAULT_CIRCUMDIAMETER,
};
use crate::{Error, Result};

/// Default tail areas. The prototype's actual tail areas are not published;
/// these give arms of a few tenths of a metre on the design wing.
pub const DEFAULT_S_VT: f64 = 0.005;
pub const DEFAULT_S_HT: f64 = 0.010;
pub const DEFAULT_ALPHA_STEP_DEG: f64 = 0.1;
pub const DEFAULT_BAG_STATIONS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DesignInputs {
    pub requirements: DesignRequirements,
    /// Recompute the areal calorie density from the plate instead of using
    /// `requirements.areal_caloric_density`.
    pub derive_areal_density: bool,
    pub environment: EnvironmentSpec,
    pub lift_drag_ratio: f64,
    pub drag_coefficient: f64,
    /// N
    pub max_thrust: f64,
    pub c_vt: f64,
    pub c_ht: f64,
    /// m²
    pub s_vt: f64,
    /// m²
    pub s_ht: f64,
    /// m
    pub plate_thickness: f64,
    pub dihedral_deg: f64,
    pub adhesive_ratio: f64,
    /// m
    pub circumdiameter: f64,
    pub material: FoodMaterial,
    pub adhesives: Vec<AdhesiveRecord>,
    /// Fixed design angle of attack; must not be below the critical angle.
    pub design_alpha_deg: Option<f64>,
    /// The critical angle is rounded up to a multiple of this; 0 keeps it exact.
    pub alpha_step_deg: f64,
    /// N, tested half-span capacity.
    pub strength_capacity: Option<f64>,
    /// N·m², for the tip-deflection estimate.
    pub flexural_rigidity: Option<f64>,
    /// kg, mass the edible fraction is taken of; the empty mass when unset.
    pub drone_total_mass: Option<f64>,
    pub sample_count: usize,
    pub bag_stations: usize,
}

impl Default for DesignInputs {
    fn default() -> Self {
        Self {
            requirements: DesignRequirements::default(),
            derive_areal_density: false,
            environment: EnvironmentSpec::default(),
            lift_drag_ratio: sizing::DEFAULT_LIFT_DRAG_RATIO,
            drag_coefficient: DEFAULT_DRAG_COEFFICIENT,
            max_thrust: DEFAULT_MAX_THRUST,
            c_vt: DEFAULT_C_VT,
            c_ht: DEFAULT_C_HT,
            s_vt: DEFAULT_S_VT,
            s_ht: DEFAULT_S_HT,
            plate_thickness: sizing::DEFAULT_PLATE_THICKNESS,
            dihedral_deg: sizing::DEFAULT_DIHEDRAL_DEG,
            adhesive_ratio: sizing::DEFAULT_ADHESIVE_RATIO,
            circumdiameter: DEFAULT_CIRCUMDIAMETER,
            material: rice_cookie(),
            adhesives: seed_adhesives(),
            design_alpha_deg: None,
            alpha_step_deg: DEFAULT_ALPHA_STEP_DEG,
            strength_capacity: None,
            flexural_rigidity: None,
            drone_total_mass: None,
            sample_count: DEFAULT_SAMPLE_COUNT,
            bag_stations: DEFAULT_BAG_STATIONS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Stage {
    Materials,
    Mass,
    Area,
    Planform,
    Aerodynamics,
    Thrust,
    Tail,
    Structure,
    Tiling,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Materials => "materials",
            Stage::Mass => "mass",
            Stage::Area => "area",
            Stage::Planform => "planform",
            Stage::Aerodynamics => "aerodynamics",
            Stage::Thrust => "thrust",
            Stage::Tail => "tail",
            Stage::Structure => "structure",
            Stage::Tiling => "tiling",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineError {
    pub stage: Stage,
    pub source: Error,
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} stage failed: {}", self.stage.name(), self.source)
    }
}

impl core::error::Error for PipelineError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        Some(&self.source)
    }
}

trait AtStage<T> {
    fn at(self, stage: Stage) -> core::result::Result<T, PipelineError>;
}

impl<T> AtStage<T> for Result<T> {
    fn at(self, stage: Stage) -> core::result::Result<T, PipelineError> {
        self.map_err(|source| PipelineError { stage, source })
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LoadSummary {
    /// N
    pub total_lift: f64,
    /// N/m
    pub intercept: f64,
    /// N/m
    pub root_load: f64,
    /// N/m
    pub tip_load: f64,
    /// N, Simpson integral over the half span.
    pub half_span_lift: f64,
    pub bag_plan: Vec<BagStation>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TilingSummary {
    pub spec: HexTilingSpec,
    pub full_hex_count: usize,
    pub partial_count: usize,
    /// m
    pub seam_length: f64,
    /// m²
    pub covered_area: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DesignReport {
    pub inputs: DesignInputs,
    pub adhesive: AdhesiveRecord,
    /// Pa
    pub adhesive_conservative_strength: f64,
    /// kcal/m² actually used for the area.
    pub areal_caloric_density: f64,
    pub mass: MassBudget,
    pub wing: WingGeometry,
    pub aero: AeroResult,
    pub critical: CriticalAlpha,
    pub planform_residual: f64,
    pub planform_iterations: u32,
    pub propulsion: PropulsionSpec,
    pub thrust_margin: ThrustMarginReport,
    pub tail: TailSpec,
    pub tail_verdict: TailVerdict,
    pub load: LoadSummary,
    pub strength: Option<StrengthReport>,
    pub deflection: Option<DeflectionResult>,
    pub tiling: TilingSummary,
    pub wing_mass: WingMassBreakdown,
    pub warnings: Vec<String>,
}

impl DesignReport {
    /// Thrust margin, tail check and (when tested) strength all pass.
    pub fn pass(&self) -> bool {
        self.thrust_margin.pass && self.tail_verdict.pass() && self.strength.is_none_or(|s| s.pass)
    }
}

pub fn run_design_pipeline(
    inputs: &DesignInputs,
) -> core::result::Result<DesignReport, PipelineError> {
    let req = &inputs.requirements;
    let env = &inputs.environment;

    inputs.material.validate().at(Stage::Materials)?;
    for a in &inputs.adhesives {
        a.validate().at(Stage::Materials)?;
    }
    let (adhesive, adhesive_strength) = select_adhesive(&inputs.adhesives).at(Stage::Materials)?;

    let mass = estimate_mass_budget(req, env).at(Stage::Mass)?;

    let areal = if inputs.derive_areal_density {
        sizing::areal_caloric_density(
            inputs.material.density,
            inputs.plate_thickness,
            inputs.material.caloric_density,
            adhesive.caloric_density,
            inputs.adhesive_ratio,
        )
        .at(Stage::Area)?
    } else {
        req.areal_caloric_density
    };
    positive("nutrition_target", req.nutrition_target).at(Stage::Area)?;
    let area = wing_area_from_calories(req.nutrition_target, areal).at(Stage::Area)?;

    let wing_loading = mass.gross_weight / area;
    let planform = solve_planform(wing_loading, area, req.target_re, req.zero_lift_drag, env)
        .at(Stage::Planform)?;
    let wing = WingGeometry {
        plate_thickness: positive("plate_thickness", inputs.plate_thickness).at(Stage::Planform)?,
        dihedral_angle: inputs.dihedral_deg,
        ..planform.geometry
    };
    let cruise_speed = planform.cruise_speed;

    let mut warnings = Vec::new();
    let critical = critical_alpha(wing_loading, wing.aspect_ratio, cruise_speed, env)
        .at(Stage::Aerodynamics)?;
    let alpha = match inputs.design_alpha_deg {
        Some(deg) => {
            let a = deg.to_radians();
            if a.is_nan() || a < critical.alpha {
                return Err(PipelineError {
                    stage: Stage::Aerodynamics,
                    source: Error::InvalidParameter {
                        name: "design_alpha_deg",
                        value: deg,
                        expected: "an angle at or above the critical angle of attack",
                    },
                });
            }
            a
        }
        None if inputs.alpha_step_deg > 0.0 => {
            let step = inputs.alpha_step_deg;
            let rounded = libm::ceil(critical.alpha.to_degrees() / step) * step;
            rounded.to_radians().max(critical.alpha)
        }
        None => critical.alpha,
    };
    if alpha > sizing::LINEAR_LIFT_LIMIT_DEG.to_radians() {
        warnings.push(format!(
            "design angle of attack {:.2} deg is beyond the {} deg linear lift range",
            alpha.to_degrees(),
            sizing::LINEAR_LIFT_LIMIT_DEG
        ));
    }
    let lift_coefficient = lift_coefficient_lp(alpha, wing.aspect_ratio).at(Stage::Aerodynamics)?;
    let stall = stall_speed(wing_loading, lift_coefficient, env).at(Stage::Aerodynamics)?;
    let oswald = oswald_factor(wing.aspect_ratio).at(Stage::Aerodynamics)?;
    let aero = AeroResult {
        cruise_speed,
        stall_speed: stall,
        critical_alpha: alpha,
        lift_coefficient,
        oswald_factor: oswald,
        dynamic_pressure: env.dynamic_pressure(cruise_speed),
        achieved_re: planform.achieved_re,
        wing_loading,
        lift_drag_ratio: inputs.lift_drag_ratio,
    };

    let required_tw_cruise = cruise_thrust_to_weight(
        mass.gross_weight,
        area,
        wing.aspect_ratio,
        oswald,
        cruise_speed,
        inputs.drag_coefficient,
        env,
    )
    .at(Stage::Thrust)?;
    let match_tw = thrust_match_tw(inputs.lift_drag_ratio).at(Stage::Thrust)?;
    let max_tw = max_thrust_to_weight(inputs.max_thrust, mass.gross_weight).at(Stage::Thrust)?;
    let thrust_margin =
        check_thrust_margin(max_tw, &[required_tw_cruise, match_tw]).at(Stage::Thrust)?;
    let propulsion = PropulsionSpec {
        drag_coefficient: inputs.drag_coefficient,
        max_thrust: inputs.max_thrust,
        required_tw_cruise,
        max_tw,
        thrust_match_tw: match_tw,
    };

    let tail = size_tail(
        inputs.c_vt,
        inputs.c_ht,
        inputs.s_vt,
        inputs.s_ht,
        wing.span,
        wing.chord,
        area,
    )
    .at(Stage::Tail)?;
    let tail_verdict = validate_tail(&tail, wing.span, wing.chord, area).at(Stage::Tail)?;

    let case =
        LoadCase::new(mass.gross_weight, wing.span, inputs.sample_count).at(Stage::Structure)?;
    let dist = schrenk_distribution(&case).at(Stage::Structure)?;
    let half_span_lift = integrate_halfspan(&dist).at(Stage::Structure)?;
    let bag_plan = bag_load_plan(&dist, inputs.bag_stations, env.gravity).at(Stage::Structure)?;
    let load = LoadSummary {
        total_lift: case.total_lift,
        intercept: dist.intercept,
        root_load: dist.samples[0].1,
        tip_load: dist.samples[dist.samples.len() - 1].1,
        half_span_lift,
        bag_plan,
    };
    let strength = inputs
        .strength_capacity
        .map(|cap| strength_margin(cap, mass.gross_weight))
        .transpose()
        .at(Stage::Structure)?;
    let deflection = inputs
        .flexural_rigidity
        .map(|ei| cantilever_deflection(&dist, ei))
        .transpose()
        .at(Stage::Structure)?;

    let tiling_spec = HexTilingSpec::new(inputs.circumdiameter, wing.span, wing.chord);
    let layout = generate_hex_tiling(&tiling_spec).at(Stage::Tiling)?;
    let wing_mass = mass_and_calories(
        &layout,
        &inputs.material,
        &adhesive,
        inputs.plate_thickness,
        inputs.adhesive_ratio,
        inputs.drone_total_mass.unwrap_or(mass.empty_mass),
    )
    .at(Stage::Tiling)?;

    Ok(DesignReport {
        inputs: inputs.clone(),
        adhesive,
        adhesive_conservative_strength: adhesive_strength,
        areal_caloric_density: areal,
        mass,
        wing,
        aero,
        critical,
        planform_residual: planform.residual,
        planform_iterations: planform.iterations,
        propulsion,
        thrust_margin,
        tail,
        tail_verdict,
        load,
        strength,
        deflection,
        tiling: TilingSummary {
            spec: tiling_spec,
            full_hex_count: layout.full_hex_count,
            partial_count: layout.partial_count,
            seam_length: layout.seam_length,
            covered_area: layout.covered_area,
        },
        wing_mass,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_design_reproduces_table() {
        let r = run_design_pipeline(&DesignInputs::default()).unwrap();
        assert!((r.mass.gross_mass - 0.294).abs() < 1e-3);
        assert!((r.wing.reference_area - 0.105634).abs() < 1e-6);
        assert!((r.aero.wing_loading - 27.3).abs() < 0.1);
        assert!((r.aero.critical_alpha.to_degrees() - 7.2).abs() < 1e-9);
        assert!(r.aero.stall_speed <= r.aero.cruise_speed);
        assert_eq!(r.adhesive.name, "gelatin");
        assert!(r.thrust_margin.pass);
        assert!(r.tail_verdict.pass());
        assert!(r.warnings.is_empty());
        assert!(r.pass());
        assert_eq!(r.wing.dihedral_angle, 10.0);
    }

    #[test]
    fn zero_nutrition_fails_at_area_stage() {
        let mut inputs = DesignInputs::default();
        inputs.requirements.nutrition_target = 0.0;
        let err = run_design_pipeline(&inputs).unwrap_err();
        assert_eq!(err.stage, Stage::Area);
    }

    #[test]
    fn infeasible_planform_names_its_stage() {
        let mut inputs = DesignInputs::default();
        inputs.requirements.payload_mass = 3.0;
        let err = run_design_pipeline(&inputs).unwrap_err();
        assert_eq!(err.stage, Stage::Planform);
        assert!(matches!(err.source, Error::InfeasiblePlanform { .. }));
    }

    #[test]
    fn doubling_nutrition_halves_wing_loading() {
        let base = run_design_pipeline(&DesignInputs::default()).unwrap();
        let mut inputs = DesignInputs::default();
        inputs.requirements.nutrition_target = 600.0;
        let big = run_design_pipeline(&inputs).unwrap();
        assert!((big.wing.reference_area - 2.0 * base.wing.reference_area).abs() < 1e-15);
        assert_eq!(big.mass.gross_mass, base.mass.gross_mass);
        assert!((big.aero.wing_loading - 0.5 * base.aero.wing_loading).abs() < 1e-12);
    }

    #[test]
    fn design_alpha_below_critical_is_rejected() {
        let inputs = DesignInputs {
            design_alpha_deg: Some(5.0),
            ..Default::default()
        };
        let err = run_design_pipeline(&inputs).unwrap_err();
        assert_eq!(err.stage, Stage::Aerodynamics);
    }

    #[test]
    fn optional_structure_checks() {
        let inputs = DesignInputs {
            strength_capacity: Some(1.04),
            flexural_rigidity: Some(2.0),
            ..Default::default()
        };
        let r = run_design_pipeline(&inputs).unwrap();
        assert!(!r.strength.unwrap().pass);
        assert!(!r.pass());
        assert!(r.deflection.unwrap().tip_deflection > 0.0);
    }

    #[test]
    fn derived_areal_density() {
        let inputs = DesignInputs {
            derive_areal_density: true,
            ..Default::default()
        };
        let r = run_design_pipeline(&inputs).unwrap();
        assert!((r.areal_caloric_density - 2838.752).abs() < 1e-9);
        assert!((r.wing_mass.total_kcal - 300.0).abs() < 1e-9);
    }
}
