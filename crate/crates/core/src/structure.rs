//! Spanwise loading of the half wing with Schrenk's approximation, the
//! strength margin against the level-flight requirement, a numeric cantilever
//! deflection and the sandbag plan used to reproduce the load on a test bed.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{non_negative, positive};
use crate::quadrature::{composite_simpson, cumulative_trapezoid};
use crate::{Error, Result};

pub const MIN_SAMPLE_COUNT: usize = 64;
/// Intervals on the half span. The elliptic term has a square-root tip, so
/// Simpson converges only as h^1.5; 4096 keeps the lift integral within 1e-6.
pub const DEFAULT_SAMPLE_COUNT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LoadCase {
    /// N, lift over the full span; each half carries half of it.
    pub total_lift: f64,
    /// m
    pub span: f64,
    /// Number of uniform intervals on [0, b/2]; even and at least 64.
    pub sample_count: usize,
}

impl LoadCase {
    pub fn new(total_lift: f64, span: f64, sample_count: usize) -> Result<Self> {
        let case = Self {
            total_lift,
            span,
            sample_count,
        };
        case.validate()?;
        Ok(case)
    }

    pub fn validate(&self) -> Result<()> {
        non_negative("total_lift", self.total_lift)?;
        positive("span", self.span)?;
        if self.sample_count < MIN_SAMPLE_COUNT || !self.sample_count.is_multiple_of(2) {
            return Err(Error::InvalidParameter {
                name: "sample_count",
                value: self.sample_count as f64,
                expected: "an even count >= 64",
            });
        }
        Ok(())
    }

    pub fn half_span(&self) -> f64 {
        0.5 * self.span
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LoadDistribution {
    /// N/m, amplitude of the elliptic part at the root.
    pub intercept: f64,
    /// (x in m from the root, F in N/m), uniform in x, both ends included.
    pub samples: Vec<(f64, f64)>,
    pub case: LoadCase,
}

impl LoadDistribution {
    /// Samples an arbitrary running load on the half span of `case`.
    pub fn from_fn(case: LoadCase, intercept: f64, load: impl Fn(f64) -> f64) -> Result<Self> {
        case.validate()?;
        let half = case.half_span();
        let n = case.sample_count;
        let samples = (0..=n)
            .map(|i| {
                let x = if i == n {
                    half
                } else {
                    half * i as f64 / n as f64
                };
                (x, load(x))
            })
            .collect();
        Ok(Self {
            intercept,
            samples,
            case,
        })
    }

    fn spacing(&self) -> Result<f64> {
        if self.samples.len() < 3 {
            return Err(Error::MalformedSamples("fewer than three samples"));
        }
        let n = self.samples.len() - 1;
        let first = self.samples[0].0;
        let last = self.samples[n].0;
        let h = (last - first) / n as f64;
        if h.is_nan() || h <= 0.0 {
            return Err(Error::MalformedSamples("abscissae are not increasing"));
        }
        let uniform = self
            .samples
            .iter()
            .enumerate()
            .all(|(i, (x, _))| (x - (first + h * i as f64)).abs() <= 1e-9 * (last - first));
        if !uniform {
            return Err(Error::MalformedSamples(
                "abscissae are not uniformly spaced",
            ));
        }
        Ok(h)
    }

    fn loads(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.1).collect()
    }
}

/// Schrenk running load: the mean of a rectangular and an elliptic
/// distribution that each carry the full lift,
/// `F(x) = ½(L/b + f0·sqrt(1 − (2x/b)²))` with `f0 = 4L/(πb)`.
pub fn schrenk_load(total_lift: f64, span: f64, x: f64) -> f64 {
    let f0 = schrenk_intercept(total_lift, span);
    let u = x / (0.5 * span);
    let elliptic = if u >= 1.0 {
        0.0
    } else {
        libm::sqrt(1.0 - u * u)
    };
    0.5 * (total_lift / span + f0 * elliptic)
}

pub fn schrenk_intercept(total_lift: f64, span: f64) -> f64 {
    4.0 * total_lift / (PI * span)
}

pub fn schrenk_distribution(case: &LoadCase) -> Result<LoadDistribution> {
    case.validate()?;
    let (lift, span) = (case.total_lift, case.span);
    LoadDistribution::from_fn(*case, schrenk_intercept(lift, span), |x| {
        schrenk_load(lift, span, x)
    })
}

/// Simulated half-span lift `∫₀^{b/2} F dx` by composite Simpson.
pub fn integrate_halfspan(dist: &LoadDistribution) -> Result<f64> {
    let h = dist.spacing()?;
    composite_simpson(&dist.loads(), h)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StrengthReport {
    /// N, half of the gross weight.
    pub required_half_lift: f64,
    /// N, largest half-span lift the wing survived.
    pub capacity_half_lift: f64,
    pub margin: f64,
    /// Full-span capacity as a multiple of the gross weight.
    pub full_span_capacity_in_wg: f64,
    pub pass: bool,
}

pub fn strength_margin(capacity_half_lift: f64, gross_weight: f64) -> Result<StrengthReport> {
    positive("capacity_half_lift", capacity_half_lift)?;
    positive("gross_weight", gross_weight)?;
    let required = 0.5 * gross_weight;
    let margin = capacity_half_lift / required;
    Ok(StrengthReport {
        required_half_lift: required,
        capacity_half_lift,
        margin,
        full_span_capacity_in_wg: 2.0 * capacity_half_lift / gross_weight,
        pass: margin >= 1.0,
    })
}

/// Half-span capacity over the empty (no payload) weight.
pub fn empty_weight_ratio_check(capacity_half_lift: f64, empty_weight: f64) -> Result<f64> {
    positive("capacity_half_lift", capacity_half_lift)?;
    positive("empty_weight", empty_weight)?;
    Ok(capacity_half_lift / empty_weight)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DeflectionResult {
    /// m, positive in the direction of the load.
    pub tip_deflection: f64,
    /// N·m²
    pub flexural_rigidity_used: f64,
}

/// Tip deflection of the half wing as a cantilever clamped at the root.
///
/// Shear and bending moment are accumulated from the free tip with the
/// trapezoid rule, then `δ = ∫₀^L (L − x)·M(x)/EI dx` by Simpson.
pub fn cantilever_deflection(
    dist: &LoadDistribution,
    flexural_rigidity: f64,
) -> Result<DeflectionResult> {
    positive("flexural_rigidity", flexural_rigidity)?;
    let h = dist.spacing()?;
    let xs: Vec<f64> = dist.samples.iter().map(|s| s.0).collect();
    let loads = dist.loads();
    let length = xs[xs.len() - 1];

    let from_root = cumulative_trapezoid(&xs, &loads);
    let total = from_root[from_root.len() - 1];
    let shear: Vec<f64> = from_root.iter().map(|c| total - c).collect();

    let from_root = cumulative_trapezoid(&xs, &shear);
    let total = from_root[from_root.len() - 1];
    let integrand: Vec<f64> = xs
        .iter()
        .zip(&from_root)
        .map(|(x, c)| (length - x) * (total - c))
        .collect();

    Ok(DeflectionResult {
        tip_deflection: composite_simpson(&integrand, h)? / flexural_rigidity,
        flexural_rigidity_used: flexural_rigidity,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BagStation {
    /// m from the root
    pub x_start: f64,
    pub x_end: f64,
    /// kg of granules to place on this station.
    pub mass: f64,
}

/// Splits the half span into equal stations and converts the lift each one
/// carries into a bag mass.
///
/// Station edges have to land on sample points with an even number of
/// intervals per station, so `sample_count` must divide by `2·station_count`.
pub fn bag_load_plan(
    dist: &LoadDistribution,
    station_count: usize,
    gravity: f64,
) -> Result<Vec<BagStation>> {
    if station_count == 0 {
        return Err(Error::InvalidParameter {
            name: "station_count",
            value: 0.0,
            expected: "at least one station",
        });
    }
    positive("gravity", gravity)?;
    let h = dist.spacing()?;
    let intervals = dist.samples.len() - 1;
    if !intervals.is_multiple_of(2 * station_count) {
        return Err(Error::StationMisaligned {
            intervals,
            stations: station_count,
        });
    }
    let per = intervals / station_count;
    let loads = dist.loads();
    (0..station_count)
        .map(|k| {
            let slice = &loads[k * per..=(k + 1) * per];
            Ok(BagStation {
                x_start: dist.samples[k * per].0,
                x_end: dist.samples[(k + 1) * per].0,
                mass: composite_simpson(slice, h)? / gravity,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const LIFT: f64 = 2.884;
    const SPAN: f64 = 0.6788;

    fn design_case(n: usize) -> LoadCase {
        LoadCase::new(LIFT, SPAN, n).unwrap()
    }

    /// Adaptive Simpson on the closed form, used as an independent reference.
    fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let c = 0.5 * (a + b);
        let whole = (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
        let left = (c - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + c)) + f(c));
        let right = (b - c) / 6.0 * (f(c) + 4.0 * f(0.5 * (c + b)) + f(b));
        if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            adaptive(f, a, c, tol / 2.0, depth - 1) + adaptive(f, c, b, tol / 2.0, depth - 1)
        }
    }

    #[test]
    fn schrenk_design_point_values() {
        let d = schrenk_distribution(&design_case(DEFAULT_SAMPLE_COUNT)).unwrap();
        assert!((d.intercept - 5.410).abs() < 1e-3);
        assert!((d.samples[0].1 - 4.829).abs() < 1e-3);
        let tip = d.samples.last().unwrap();
        assert_eq!(tip.0, 0.5 * SPAN);
        assert!((tip.1 - 0.5 * LIFT / SPAN).abs() <= 1e-9);
        assert!((tip.1 - 2.124).abs() < 1e-3);

        // f0 is pinned by the lift: an adaptive quadrature of the closed form
        // must give back half the total.
        let f = |x: f64| schrenk_load(LIFT, SPAN, x);
        let half = adaptive(&f, 0.0, 0.5 * SPAN, 1e-13, 50);
        assert!((half - 0.5 * LIFT).abs() < 1e-9);
    }

    #[test]
    fn zero_lift_is_flat_zero() {
        let d = schrenk_distribution(&LoadCase::new(0.0, SPAN, 64).unwrap()).unwrap();
        assert!(d.samples.iter().all(|s| s.1 == 0.0));
        assert_eq!(integrate_halfspan(&d).unwrap(), 0.0);
    }

    #[test]
    fn half_span_integral() {
        let d = schrenk_distribution(&design_case(DEFAULT_SAMPLE_COUNT)).unwrap();
        let ls = integrate_halfspan(&d).unwrap();
        assert!((ls - 1.442).abs() < 1e-3);
        assert!((ls - 0.5 * LIFT).abs() <= 1e-6 * 0.5 * LIFT);

        let d2 = schrenk_distribution(&LoadCase::new(2.0 * LIFT, SPAN, 4096).unwrap()).unwrap();
        assert!((integrate_halfspan(&d2).unwrap() - 2.0 * ls).abs() < 1e-12);
    }

    #[test]
    fn coarse_grids_converge_at_rate_one_and_a_half() {
        // Tip singularity: the error is about 1.4e-4 at 64 intervals and
        // shrinks by 2^1.5 per halving.
        let mut prev = f64::INFINITY;
        for n in [64, 128, 256, 512, 1024, 2048] {
            let d = schrenk_distribution(&design_case(n)).unwrap();
            let err = (integrate_halfspan(&d).unwrap() / (0.5 * LIFT) - 1.0).abs();
            assert!(err < 2e-4 * (64.0 / n as f64).powf(1.5), "n={n} err={err}");
            assert!(err < prev);
            prev = err;
        }
    }

    #[test]
    fn odd_interval_count_is_rejected() {
        let mut d = schrenk_distribution(&design_case(64)).unwrap();
        d.samples.pop();
        assert_eq!(integrate_halfspan(&d), Err(Error::OddIntervalCount(63)));
        assert!(LoadCase::new(LIFT, SPAN, 65).is_err());
        assert!(LoadCase::new(LIFT, SPAN, 62).is_err());
    }

    #[test]
    fn strength_examples() {
        let r = strength_margin(1.56, 2.884).unwrap();
        assert!((r.margin - 1.082).abs() < 1e-3);
        assert!((r.full_span_capacity_in_wg - 1.08).abs() < 5e-3);
        assert!(r.pass);

        let r = strength_margin(1.04, 2.884).unwrap();
        assert!((r.margin - 0.721).abs() < 1e-3);
        assert!(!r.pass);

        let r = strength_margin(1.442, 2.884).unwrap();
        assert_eq!(r.margin, 1.0);
        assert!(r.pass);

        assert!(strength_margin(1.0, 0.0).is_err());
        assert_eq!(
            strength_margin(3.12, 5.768).unwrap().margin,
            strength_margin(1.56, 2.884).unwrap().margin
        );
    }

    #[test]
    fn empty_weight_examples() {
        assert!((empty_weight_ratio_check(1.56, 2.099).unwrap() - 0.743).abs() < 1e-3);
        assert_eq!(empty_weight_ratio_check(2.0, 2.0).unwrap(), 1.0);
        assert!((empty_weight_ratio_check(0.78, 2.099).unwrap() - 0.372).abs() < 1e-3);
        assert!(empty_weight_ratio_check(1.0, 0.0).is_err());
    }

    fn uniform(w: f64, length: f64, n: usize) -> LoadDistribution {
        let case = LoadCase::new(2.0 * w * length, 2.0 * length, n).unwrap();
        LoadDistribution::from_fn(case, 0.0, |_| w).unwrap()
    }

    #[test]
    fn uniform_cantilever_matches_closed_form() {
        let d = cantilever_deflection(&uniform(1.0, 1.0, 256), 1.0).unwrap();
        assert!((d.tip_deflection - 0.125).abs() < 1e-12);

        let d = cantilever_deflection(&uniform(4.249, 0.3394, 256), 1.0).unwrap();
        assert!((d.tip_deflection - 7.05e-3).abs() < 5e-6);
        assert!(cantilever_deflection(&uniform(1.0, 1.0, 64), 0.0).is_err());
    }

    #[test]
    fn schrenk_deflection_is_grid_converged() {
        let coarse = cantilever_deflection(&schrenk_distribution(&design_case(256)).unwrap(), 1.0)
            .unwrap()
            .tip_deflection;
        let fine = cantilever_deflection(&schrenk_distribution(&design_case(2560)).unwrap(), 1.0)
            .unwrap()
            .tip_deflection;
        assert!(coarse > 0.0);
        assert!((coarse - fine).abs() <= 1e-3 * fine);
    }

    #[test]
    fn deflection_scales_with_load_and_rigidity() {
        let d1 = schrenk_distribution(&design_case(512)).unwrap();
        let d2 = schrenk_distribution(&LoadCase::new(3.0 * LIFT, SPAN, 512).unwrap()).unwrap();
        let a = cantilever_deflection(&d1, 2.0).unwrap().tip_deflection;
        let b = cantilever_deflection(&d2, 2.0).unwrap().tip_deflection;
        let c = cantilever_deflection(&d1, 8.0).unwrap().tip_deflection;
        assert!((b - 3.0 * a).abs() <= 1e-12 * b);
        assert!((c - a / 4.0).abs() <= 1e-12 * a);
    }

    #[test]
    fn bag_plan_examples() {
        let d = schrenk_distribution(&design_case(DEFAULT_SAMPLE_COUNT)).unwrap();
        let one = bag_load_plan(&d, 1, 9.81).unwrap();
        assert_eq!(one.len(), 1);
        assert!((one[0].mass - 0.1470).abs() < 1e-4);

        let eight = bag_load_plan(&d, 8, 9.81).unwrap();
        assert!(eight.windows(2).all(|w| w[0].mass > w[1].mass));
        let sum: f64 = eight.iter().map(|s| s.mass).sum();
        let expected = 0.5 * LIFT / 9.81;
        assert!((sum - expected).abs() <= 1e-6 * expected);
        assert_eq!(eight[0].x_start, 0.0);
        assert_eq!(eight[7].x_end, 0.5 * SPAN);

        assert!(matches!(
            bag_load_plan(&d, 3, 9.81),
            Err(Error::StationMisaligned { .. })
        ));
        assert!(bag_load_plan(&d, 0, 9.81).is_err());
    }
}
