//! Edible structural materials and adhesives: records, Ashby-style ranking
//! against a target stiffness/density, Pareto filtering and adhesive choice.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{non_negative, positive};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FoodMaterial {
    pub name: String,
    /// Pa
    pub youngs_modulus: f64,
    /// Pa, 0 when unknown.
    pub youngs_modulus_sd: f64,
    /// kg/m³
    pub density: f64,
    /// kg/m³, 0 when unknown.
    pub density_sd: f64,
    /// kcal/kg
    pub caloric_density: f64,
    pub provenance: String,
}

impl FoodMaterial {
    pub fn validate(&self) -> Result<()> {
        positive("youngs_modulus", self.youngs_modulus)?;
        positive("density", self.density)?;
        non_negative("youngs_modulus_sd", self.youngs_modulus_sd)?;
        non_negative("density_sd", self.density_sd)?;
        non_negative("caloric_density", self.caloric_density)?;
        Ok(())
    }

    /// True when `self` is at least as good as `other` in density (lower),
    /// stiffness and calories (higher), and strictly better in one of them.
    pub fn dominates(&self, other: &FoodMaterial) -> bool {
        let no_worse = self.density <= other.density
            && self.youngs_modulus >= other.youngs_modulus
            && self.caloric_density >= other.caloric_density;
        let better = self.density < other.density
            || self.youngs_modulus > other.youngs_modulus
            || self.caloric_density > other.caloric_density;
        no_worse && better
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum StrengthKind {
    /// Mean of a set of pull tests that broke in the bond.
    MeasuredMean,
    /// The substrate failed first; the bond is at least this strong.
    LowerBound,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AdhesiveRecord {
    pub name: String,
    pub strength_kind: StrengthKind,
    /// Pa
    pub adhesive_stress: f64,
    /// Pa, always 0 for lower-bound records.
    pub adhesive_stress_sd: f64,
    /// kcal/kg
    pub caloric_density: f64,
}

impl AdhesiveRecord {
    pub fn validate(&self) -> Result<()> {
        positive("adhesive_stress", self.adhesive_stress)?;
        non_negative("adhesive_stress_sd", self.adhesive_stress_sd)?;
        non_negative("caloric_density", self.caloric_density)?;
        if self.strength_kind == StrengthKind::LowerBound && self.adhesive_stress_sd != 0.0 {
            return Err(Error::InvalidParameter {
                name: "adhesive_stress_sd",
                value: self.adhesive_stress_sd,
                expected: "0 for a lower-bound record",
            });
        }
        Ok(())
    }

    /// Strength used for ranking: the bound itself, or mean minus one sd.
    pub fn conservative_strength(&self) -> f64 {
        match self.strength_kind {
            StrengthKind::LowerBound => self.adhesive_stress,
            StrengthKind::MeasuredMean => self.adhesive_stress - self.adhesive_stress_sd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MaterialTarget {
    /// Pa
    pub target_modulus: f64,
    /// kg/m³
    pub target_density: f64,
}

impl MaterialTarget {
    pub fn new(target_modulus: f64, target_density: f64) -> Result<Self> {
        Ok(Self {
            target_modulus: positive("target_modulus", target_modulus)?,
            target_density: positive("target_density", target_density)?,
        })
    }
}

/// Euclidean distance between `material` and `target` on log10 axes.
pub fn ashby_distance(material: &FoodMaterial, target: &MaterialTarget) -> f64 {
    let de = libm::log10(material.youngs_modulus) - libm::log10(target.target_modulus);
    let dr = libm::log10(material.density) - libm::log10(target.target_density);
    libm::sqrt(de * de + dr * dr)
}

/// Every record paired with its Ashby distance, closest first, ties by name.
pub fn rank_by_ashby_distance(
    db: &[FoodMaterial],
    target: &MaterialTarget,
) -> Result<Vec<(FoodMaterial, f64)>> {
    if db.is_empty() {
        return Err(Error::Empty("material database"));
    }
    positive("target_modulus", target.target_modulus)?;
    positive("target_density", target.target_density)?;
    let mut ranked: Vec<(FoodMaterial, f64)> = db
        .iter()
        .map(|m| (m.clone(), ashby_distance(m, target)))
        .collect();
    ranked.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.name.cmp(&b.0.name)));
    Ok(ranked)
}

/// Non-dominated records (low density, high modulus, high kcal/kg), by name.
///
/// Records are swept in lexicographic objective order, so any dominator of a
/// record has already been seen; by transitivity it is enough to compare
/// against the front collected so far.
pub fn pareto_front(db: &[FoodMaterial]) -> Result<Vec<FoodMaterial>> {
    if db.is_empty() {
        return Err(Error::Empty("material database"));
    }
    let mut order: Vec<&FoodMaterial> = db.iter().collect();
    order.sort_by(|a, b| {
        a.density
            .total_cmp(&b.density)
            .then_with(|| b.youngs_modulus.total_cmp(&a.youngs_modulus))
            .then_with(|| b.caloric_density.total_cmp(&a.caloric_density))
    });
    let mut front: Vec<&FoodMaterial> = Vec::new();
    for candidate in order {
        if !front.iter().any(|kept| kept.dominates(candidate)) {
            front.push(candidate);
        }
    }
    let mut out: Vec<FoodMaterial> = front.into_iter().cloned().collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

/// The adhesive with the highest conservative strength, ties by name.
pub fn select_adhesive(candidates: &[AdhesiveRecord]) -> Result<(AdhesiveRecord, f64)> {
    let best = candidates
        .iter()
        .min_by(|a, b| {
            b.conservative_strength()
                .total_cmp(&a.conservative_strength())
                .then_with(|| a.name.cmp(&b.name))
        })
        .ok_or(Error::Empty("adhesive candidates"))?;
    Ok((best.clone(), best.conservative_strength()))
}

/// Puffed rice cookie, measured by three-point bending and weighing.
pub fn rice_cookie() -> FoodMaterial {
    FoodMaterial {
        name: "rice cookie".to_string(),
        youngs_modulus: 10.4e6,
        youngs_modulus_sd: 1.3e6,
        density: 112.0,
        density_sd: 8.4,
        caloric_density: 3870.0,
        provenance:
            "measured (3-point bending, mass of known volume); 387 kcal/100 g manufacturer data"
                .to_string(),
    }
}

pub fn seed_materials() -> Vec<FoodMaterial> {
    alloc::vec![rice_cookie()]
}

pub fn gelatin_glue() -> AdhesiveRecord {
    AdhesiveRecord {
        name: "gelatin".to_string(),
        strength_kind: StrengthKind::LowerBound,
        adhesive_stress: 150e3,
        adhesive_stress_sd: 0.0,
        caloric_density: 2000.0,
    }
}

/// Corn starch, chocolate and gelatin glue from tensile pull tests.
///
/// Chocolate carries the 5000 kcal/kg floor quoted for sweets; no calorie
/// figure exists for the corn-starch glue, so it is recorded as 0.
pub fn seed_adhesives() -> Vec<AdhesiveRecord> {
    alloc::vec![
        AdhesiveRecord {
            name: "chocolate".to_string(),
            strength_kind: StrengthKind::MeasuredMean,
            adhesive_stress: 113.3e3,
            adhesive_stress_sd: 15.1e3,
            caloric_density: 5000.0,
        },
        AdhesiveRecord {
            name: "corn starch".to_string(),
            strength_kind: StrengthKind::MeasuredMean,
            adhesive_stress: 79.4e3,
            adhesive_stress_sd: 18.3e3,
            caloric_density: 0.0,
        },
        gelatin_glue(),
    ]
}
