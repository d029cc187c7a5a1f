//! Mass budget, calorie-driven wing area and the Reynolds-constrained
//! rectangular planform, plus the lift and stall relations used to pick the
//! design angle of attack.

use core::f64::consts::PI;

use crate::error::{check, non_negative, positive};
use crate::{Error, Result};

pub const DEFAULT_PAYLOAD_RATIO: f64 = 0.272;
pub const DEFAULT_TARGET_RE: f64 = 1e5;
pub const DEFAULT_CD0: f64 = 0.02;
/// kcal/m², i.e. 28.4 kcal per 100 cm².
pub const DEFAULT_AREAL_CALORIC_DENSITY: f64 = 2840.0;
/// m; one layer of puffed rice cookie.
pub const DEFAULT_PLATE_THICKNESS: f64 = 0.0058;
pub const DEFAULT_DIHEDRAL_DEG: f64 = 10.0;
pub const DEFAULT_LIFT_DRAG_RATIO: f64 = 6.2;
/// Adhesive-to-cookie mass ratio (cookies and glue at 4:1).
pub const DEFAULT_ADHESIVE_RATIO: f64 = 0.25;
/// Beyond this the linear lift-slope model is an extrapolation for a thin plate.
pub const LINEAR_LIFT_LIMIT_DEG: f64 = 15.0;

/// Aspect-ratio bracket searched by [`solve_planform`].
pub const ASPECT_RATIO_BRACKET: (f64, f64) = (1.0, 20.0);
/// Relative residual accepted for the cruise constraint.
pub const PLANFORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnvironmentSpec {
    /// kg/m³
    pub air_density: f64,
    /// kg/(m·s)
    pub air_viscosity: f64,
    /// m/s²
    pub gravity: f64,
}

impl Default for EnvironmentSpec {
    fn default() -> Self {
        Self {
            air_density: 1.225,
            air_viscosity: 1.81e-5,
            gravity: 9.81,
        }
    }
}

impl EnvironmentSpec {
    pub fn validate(&self) -> Result<()> {
        positive("air_density", self.air_density)?;
        positive("air_viscosity", self.air_viscosity)?;
        positive("gravity", self.gravity)?;
        Ok(())
    }

    /// ½ρV²
    pub fn dynamic_pressure(&self, speed: f64) -> f64 {
        0.5 * self.air_density * speed * speed
    }

    pub fn reynolds(&self, speed: f64, length: f64) -> f64 {
        self.air_density * speed * length / self.air_viscosity
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DesignRequirements {
    /// kcal carried in the wing.
    pub nutrition_target: f64,
    /// kg
    pub payload_mass: f64,
    /// Payload over gross mass, from statistics of small fixed-wing drones.
    pub payload_ratio: f64,
    pub target_re: f64,
    pub zero_lift_drag: f64,
    /// kcal/m²
    pub areal_caloric_density: f64,
}

impl Default for DesignRequirements {
    fn default() -> Self {
        Self {
            nutrition_target: 300.0,
            payload_mass: 0.080,
            payload_ratio: DEFAULT_PAYLOAD_RATIO,
            target_re: DEFAULT_TARGET_RE,
            zero_lift_drag: DEFAULT_CD0,
            areal_caloric_density: DEFAULT_AREAL_CALORIC_DENSITY,
        }
    }
}

impl DesignRequirements {
    pub fn validate(&self) -> Result<()> {
        positive("nutrition_target", self.nutrition_target)?;
        non_negative("payload_mass", self.payload_mass)?;
        check_payload_ratio(self.payload_ratio)?;
        positive("target_re", self.target_re)?;
        positive("zero_lift_drag", self.zero_lift_drag)?;
        positive("areal_caloric_density", self.areal_caloric_density)?;
        Ok(())
    }
}

fn check_payload_ratio(ratio: f64) -> Result<f64> {
    check("payload_ratio", ratio, "a value in (0, 1]", |r| {
        r > 0.0 && r <= 1.0
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MassBudget {
    /// kg
    pub payload_mass: f64,
    /// kg, drone without payload.
    pub empty_mass: f64,
    /// kg
    pub gross_mass: f64,
    /// N
    pub gross_weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WingGeometry {
    /// m²
    pub reference_area: f64,
    pub aspect_ratio: f64,
    /// m
    pub span: f64,
    /// m
    pub chord: f64,
    /// m
    pub plate_thickness: f64,
    /// Degrees. Recorded only, it does not enter any calculation.
    pub dihedral_angle: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AeroResult {
    /// m/s
    pub cruise_speed: f64,
    /// m/s
    pub stall_speed: f64,
    /// rad, design angle of attack (at or above the critical one).
    pub critical_alpha: f64,
    /// C_L at the design angle, taken as C_Lmax.
    pub lift_coefficient: f64,
    pub oswald_factor: f64,
    /// Pa
    pub dynamic_pressure: f64,
    pub achieved_re: f64,
    /// N/m²
    pub wing_loading: f64,
    pub lift_drag_ratio: f64,
}

pub fn estimate_mass_budget(req: &DesignRequirements, env: &EnvironmentSpec) -> Result<MassBudget> {
    env.validate()?;
    positive("payload_mass", req.payload_mass)?;
    let ratio = check_payload_ratio(req.payload_ratio)?;
    let gross_mass = req.payload_mass / ratio;
    // Subtracting keeps payload + empty == gross bit-for-bit in the common case.
    let empty_mass = gross_mass - req.payload_mass;
    Ok(MassBudget {
        payload_mass: req.payload_mass,
        empty_mass,
        gross_mass,
        gross_weight: gross_mass * env.gravity,
    })
}

/// kcal per m² of glued plate: `ρ·t·(kcal_cookie + ratio·kcal_adhesive)`.
pub fn areal_caloric_density(
    cookie_density: f64,
    thickness: f64,
    cookie_kcal: f64,
    adhesive_kcal: f64,
    adhesive_ratio: f64,
) -> Result<f64> {
    non_negative("cookie_density", cookie_density)?;
    non_negative("thickness", thickness)?;
    non_negative("cookie_kcal", cookie_kcal)?;
    non_negative("adhesive_kcal", adhesive_kcal)?;
    non_negative("adhesive_ratio", adhesive_ratio)?;
    Ok(cookie_density * thickness * (cookie_kcal + adhesive_ratio * adhesive_kcal))
}

pub fn wing_area_from_calories(nutrition: f64, areal_density: f64) -> Result<f64> {
    non_negative("nutrition", nutrition)?;
    positive("areal_density", areal_density)?;
    Ok(nutrition / areal_density)
}

/// Oswald span efficiency of a straight wing, `1.78(1 − 0.045·AR^0.68) − 0.64`.
pub fn oswald_factor(aspect_ratio: f64) -> Result<f64> {
    positive("aspect_ratio", aspect_ratio)?;
    Ok(1.78 * (1.0 - 0.045 * libm::pow(aspect_ratio, 0.68)) - 0.64)
}

/// Wing loading sustainable in cruise for a propeller aircraft,
/// `½ρV²·sqrt(π·e·AR·C_D0)`.
pub fn wing_loading_cruise(
    cruise_speed: f64,
    aspect_ratio: f64,
    zero_lift_drag: f64,
    env: &EnvironmentSpec,
) -> Result<f64> {
    non_negative("cruise_speed", cruise_speed)?;
    positive("zero_lift_drag", zero_lift_drag)?;
    env.validate()?;
    let e = oswald_factor(aspect_ratio)?;
    Ok(env.dynamic_pressure(cruise_speed) * libm::sqrt(PI * e * aspect_ratio * zero_lift_drag))
}

/// Result of the aspect-ratio solve; the cruise speed is the one that puts
/// the chord exactly at the target Reynolds number.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PlanformSolution {
    pub geometry: WingGeometry,
    /// m/s
    pub cruise_speed: f64,
    pub achieved_re: f64,
    /// Cruise wing loading at the solution minus the target, N/m².
    pub residual: f64,
    pub iterations: u32,
}

/// Chord and Reynolds-limited cruise speed for a rectangular wing of area
/// `area` at aspect ratio `aspect_ratio`.
pub fn chord_and_speed(
    area: f64,
    aspect_ratio: f64,
    target_re: f64,
    env: &EnvironmentSpec,
) -> (f64, f64) {
    let chord = libm::sqrt(area / aspect_ratio);
    let speed = target_re * env.air_viscosity / (env.air_density * chord);
    (chord, speed)
}

fn planform_residual(
    target_wing_loading: f64,
    area: f64,
    aspect_ratio: f64,
    target_re: f64,
    zero_lift_drag: f64,
    env: &EnvironmentSpec,
) -> Result<f64> {
    let (_, speed) = chord_and_speed(area, aspect_ratio, target_re, env);
    Ok(wing_loading_cruise(speed, aspect_ratio, zero_lift_drag, env)? - target_wing_loading)
}

/// Finds the aspect ratio in [1, 20] at which a wing of area `area`, flying at
/// the speed that makes its chord Reynolds number `target_re`, sustains
/// `target_wing_loading` in cruise.
///
/// The residual is strictly increasing on the bracket (shorter chord means a
/// faster cruise and e·AR grows), so plain bisection is enough.
pub fn solve_planform(
    target_wing_loading: f64,
    area: f64,
    target_re: f64,
    zero_lift_drag: f64,
    env: &EnvironmentSpec,
) -> Result<PlanformSolution> {
    positive("target_wing_loading", target_wing_loading)?;
    positive("area", area)?;
    positive("target_re", target_re)?;
    positive("zero_lift_drag", zero_lift_drag)?;
    env.validate()?;

    let residual = |ar: f64| {
        planform_residual(
            target_wing_loading,
            area,
            ar,
            target_re,
            zero_lift_drag,
            env,
        )
    };
    let (mut lo, mut hi) = ASPECT_RATIO_BRACKET;
    let r_lo = residual(lo)?;
    let r_hi = residual(hi)?;
    if r_lo == 0.0 {
        hi = lo;
    } else if r_hi == 0.0 {
        lo = hi;
    } else if r_lo.signum() == r_hi.signum() {
        return Err(Error::InfeasiblePlanform {
            aspect_lo: lo,
            aspect_hi: hi,
            residual_lo: r_lo,
            residual_hi: r_hi,
        });
    }

    let lo_sign = r_lo.signum();
    let mut iterations = 0;
    while hi - lo > 4.0 * f64::EPSILON * hi && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        let r = residual(mid)?;
        iterations += 1;
        if r == 0.0 {
            lo = mid;
            hi = mid;
        } else if r.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let aspect_ratio = 0.5 * (lo + hi);
    let r = residual(aspect_ratio)?;
    if r.abs() >= PLANFORM_TOLERANCE * target_wing_loading {
        return Err(Error::InfeasiblePlanform {
            aspect_lo: lo,
            aspect_hi: hi,
            residual_lo: residual(lo)?,
            residual_hi: residual(hi)?,
        });
    }

    let (chord, cruise_speed) = chord_and_speed(area, aspect_ratio, target_re, env);
    let span = libm::sqrt(area * aspect_ratio);
    Ok(PlanformSolution {
        geometry: WingGeometry {
            reference_area: area,
            aspect_ratio,
            span,
            chord,
            plate_thickness: DEFAULT_PLATE_THICKNESS,
            dihedral_angle: DEFAULT_DIHEDRAL_DEG,
        },
        cruise_speed,
        achieved_re: env.reynolds(cruise_speed, chord),
        residual: r,
        iterations,
    })
}

/// Lift-curve slope per radian of a rectangular wing, `2πAR / (2 + sqrt(4 + AR²))`.
pub fn lift_slope(aspect_ratio: f64) -> Result<f64> {
    positive("aspect_ratio", aspect_ratio)?;
    Ok(2.0 * PI * aspect_ratio / (2.0 + libm::sqrt(4.0 + aspect_ratio * aspect_ratio)))
}

/// Lowry–Polhamus lift coefficient at angle of attack `alpha` (rad).
pub fn lift_coefficient_lp(alpha: f64, aspect_ratio: f64) -> Result<f64> {
    check("alpha", alpha, "a finite angle", |_| true)?;
    Ok(alpha * lift_slope(aspect_ratio)?)
}

/// Minimum level-flight speed for a given wing loading and C_Lmax.
pub fn stall_speed(wing_loading: f64, cl_max: f64, env: &EnvironmentSpec) -> Result<f64> {
    non_negative("wing_loading", wing_loading)?;
    positive("cl_max", cl_max)?;
    env.validate()?;
    Ok(libm::sqrt(2.0 * wing_loading / (env.air_density * cl_max)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CriticalAlpha {
    /// rad
    pub alpha: f64,
    pub lift_coefficient: f64,
    /// m/s, never above the cruise speed.
    pub stall_speed: f64,
    /// Set when the angle exceeds [`LINEAR_LIFT_LIMIT_DEG`].
    pub beyond_linear_regime: bool,
}

/// Smallest angle of attack whose Lowry–Polhamus C_L keeps the stall speed at
/// or below `cruise_speed`.
pub fn critical_alpha(
    wing_loading: f64,
    aspect_ratio: f64,
    cruise_speed: f64,
    env: &EnvironmentSpec,
) -> Result<CriticalAlpha> {
    positive("wing_loading", wing_loading)?;
    positive("cruise_speed", cruise_speed)?;
    env.validate()?;
    let slope = lift_slope(aspect_ratio)?;
    let mut alpha = 2.0 * wing_loading / (env.air_density * cruise_speed * cruise_speed * slope);
    // The closed form can land one ulp short of V_s <= V_c.
    while stall_speed(wing_loading, alpha * slope, env)? > cruise_speed {
        alpha = alpha.next_up();
    }
    let lift_coefficient = alpha * slope;
    Ok(CriticalAlpha {
        alpha,
        lift_coefficient,
        stall_speed: stall_speed(wing_loading, lift_coefficient, env)?,
        beyond_linear_regime: alpha > LINEAR_LIFT_LIMIT_DEG.to_radians(),
    })
}
