//! Flat `key = value` design configuration.
//!
//! Keys carry their unit in the suffix (`payload_mass_g`, `plate_thickness_mm`);
//! values are converted to SI when the config is resolved. Blank lines and
//! `#` comments are ignored, and an unknown key is an error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use edible_wing_core::materials::FoodMaterial;
use edible_wing_core::pipeline::DesignInputs;
use edible_wing_core::units::{cm2_to_m2, g_to_kg, kg_to_g, m2_to_cm2, m_to_mm, mm_to_m};
use serde::Serialize;

use crate::{db, Error, Result};

/// Every accepted key with its display unit and a short description.
pub const KEYS: &[(&str, &str, &str)] = &[
    ("nutrition_kcal", "kcal", "energy the wing must carry"),
    ("payload_mass_g", "g", "payload mass"),
    ("payload_ratio", "-", "payload share of gross mass"),
    ("target_re", "-", "chord Reynolds number at cruise"),
    ("cd0", "-", "zero-lift drag coefficient"),
    (
        "areal_kcal_per_m2",
        "kcal/m2",
        "energy per wing area, or `derived` from the plate",
    ),
    ("air_density_kg_m3", "kg/m3", "air density"),
    ("air_viscosity_pa_s", "Pa s", "dynamic viscosity of air"),
    ("gravity_m_s2", "m/s2", "gravitational acceleration"),
    ("lift_drag_ratio", "-", "cruise lift-to-drag ratio"),
    (
        "drag_coefficient",
        "-",
        "wing drag coefficient for the thrust estimate",
    ),
    ("max_thrust_n", "N", "static thrust of the motor"),
    ("c_vt", "-", "vertical tail volume coefficient"),
    ("c_ht", "-", "horizontal tail volume coefficient"),
    ("s_vt_cm2", "cm2", "vertical tail area"),
    ("s_ht_cm2", "cm2", "horizontal tail area"),
    ("plate_thickness_mm", "mm", "wing plate thickness"),
    ("dihedral_deg", "deg", "dihedral angle (recorded only)"),
    ("adhesive_ratio", "-", "adhesive-to-cookie mass ratio"),
    (
        "hex_circumdiameter_mm",
        "mm",
        "hexagon vertex-to-vertex width",
    ),
    (
        "material",
        "-",
        "wing material name in the material database",
    ),
    ("material_db", "path", "material database file, or `seed`"),
    ("adhesive_db", "path", "adhesive database file, or `seed`"),
    (
        "design_alpha_deg",
        "deg",
        "fixed design angle of attack, or `auto`",
    ),
    (
        "alpha_step_deg",
        "deg",
        "rounding step for the critical angle of attack",
    ),
    (
        "strength_capacity_n",
        "N",
        "tested half-span lift capacity, or `none`",
    ),
    (
        "flexural_rigidity_n_m2",
        "N m2",
        "plate E*I for the tip deflection, or `none`",
    ),
    (
        "drone_total_mass_g",
        "g",
        "drone mass for the edible fraction, or `empty`",
    ),
    ("sample_count", "-", "spanwise load intervals (even, >= 64)"),
    ("bag_stations", "-", "sand-bag stations along the half span"),
    (
        "map_vc_min_m_s",
        "m/s",
        "wing-loading map: lowest cruise speed",
    ),
    (
        "map_vc_max_m_s",
        "m/s",
        "wing-loading map: highest cruise speed",
    ),
    ("map_ar_min", "-", "wing-loading map: lowest aspect ratio"),
    ("map_ar_max", "-", "wing-loading map: highest aspect ratio"),
    (
        "map_vc_steps",
        "-",
        "wing-loading map: cruise-speed samples",
    ),
    (
        "map_ar_steps",
        "-",
        "wing-loading map: aspect-ratio samples",
    ),
    (
        "map_target_n_m2",
        "N/m2",
        "iso-line wing loading, or `design`",
    ),
    ("tile_span_mm", "mm", "tiling planform span, or `design`"),
    ("tile_chord_mm", "mm", "tiling planform chord, or `design`"),
    ("out_dir", "path", "directory for written files"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Default,
    Config,
    Override,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Entry {
    value: String,
    source: Source,
    origin: String,
    line: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DesignConfig {
    entries: BTreeMap<&'static str, Entry>,
}

fn known_key(key: &str) -> Option<&'static str> {
    KEYS.iter().map(|k| k.0).find(|k| *k == key)
}

impl DesignConfig {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut config = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx as u64 + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(Error::Parse {
                    origin: origin.to_string(),
                    line,
                    message: format!("expected `key = value`, found `{content}`"),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            let Some(known) = known_key(key) else {
                return Err(Error::UnknownKey {
                    origin: origin.to_string(),
                    line,
                    key: key.to_string(),
                });
            };
            if config.entries.contains_key(known) {
                return Err(Error::Parse {
                    origin: origin.to_string(),
                    line,
                    message: format!("key `{key}` given twice"),
                });
            }
            config.entries.insert(
                known,
                Entry {
                    value: value.to_string(),
                    source: Source::Config,
                    origin: origin.to_string(),
                    line,
                },
            );
        }
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Overrides one key, as from the command line.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let known = known_key(key).ok_or_else(|| Error::UnknownKey {
            origin: "command line".to_string(),
            line: 0,
            key: key.to_string(),
        })?;
        self.entries.insert(
            known,
            Entry {
                value: value.trim().to_string(),
                source: Source::Override,
                origin: "command line".to_string(),
                line: 0,
            },
        );
        Ok(())
    }

    /// Parses `key=value` and applies it with [`DesignConfig::set`].
    pub fn set_assignment(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment.split_once('=').ok_or_else(|| Error::Parse {
            origin: "command line".to_string(),
            line: 0,
            message: format!("expected `key=value`, found `{assignment}`"),
        })?;
        self.set(key.trim(), value)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.value.as_str())
    }

    pub fn resolve(&self) -> Result<ResolvedConfig> {
        let mut r = Resolver {
            config: self,
            echo: BTreeMap::new(),
        };
        let d = DesignInputs::default();

        let material_db = r.path("material_db")?;
        let adhesive_db = r.path("adhesive_db")?;
        let materials = match &material_db {
            Some(p) => db::load_material_db(p)?,
            None => db::seed_materials(),
        };
        let adhesives = match &adhesive_db {
            Some(p) => db::load_adhesive_db(p)?,
            None => db::seed_adhesives(),
        };
        let material_name = r.text("material", &d.material.name);
        let material = find_material(&materials, &material_name)?;

        let req = d.requirements;
        let areal = r.number_or("areal_kcal_per_m2", req.areal_caloric_density, "derived")?;
        let mut inputs = DesignInputs {
            derive_areal_density: areal.is_none(),
            material,
            adhesives,
            ..d.clone()
        };
        let q = &mut inputs.requirements;
        q.nutrition_target = r.number("nutrition_kcal", req.nutrition_target)?;
        q.payload_mass = g_to_kg(r.number("payload_mass_g", kg_to_g(req.payload_mass))?);
        q.payload_ratio = r.number("payload_ratio", req.payload_ratio)?;
        q.target_re = r.number("target_re", req.target_re)?;
        q.zero_lift_drag = r.number("cd0", req.zero_lift_drag)?;
        q.areal_caloric_density = areal.unwrap_or(req.areal_caloric_density);

        let env = &mut inputs.environment;
        env.air_density = r.number("air_density_kg_m3", d.environment.air_density)?;
        env.air_viscosity = r.number("air_viscosity_pa_s", d.environment.air_viscosity)?;
        env.gravity = r.number("gravity_m_s2", d.environment.gravity)?;

        inputs.lift_drag_ratio = r.number("lift_drag_ratio", d.lift_drag_ratio)?;
        inputs.drag_coefficient = r.number("drag_coefficient", d.drag_coefficient)?;
        inputs.max_thrust = r.number("max_thrust_n", d.max_thrust)?;
        inputs.c_vt = r.number("c_vt", d.c_vt)?;
        inputs.c_ht = r.number("c_ht", d.c_ht)?;
        inputs.s_vt = cm2_to_m2(r.number("s_vt_cm2", m2_to_cm2(d.s_vt))?);
        inputs.s_ht = cm2_to_m2(r.number("s_ht_cm2", m2_to_cm2(d.s_ht))?);
        inputs.plate_thickness =
            mm_to_m(r.number("plate_thickness_mm", m_to_mm(d.plate_thickness))?);
        inputs.dihedral_deg = r.number("dihedral_deg", d.dihedral_deg)?;
        inputs.adhesive_ratio = r.number("adhesive_ratio", d.adhesive_ratio)?;
        inputs.circumdiameter =
            mm_to_m(r.number("hex_circumdiameter_mm", m_to_mm(d.circumdiameter))?);
        inputs.design_alpha_deg = r.optional("design_alpha_deg", "auto")?;
        inputs.alpha_step_deg = r.number("alpha_step_deg", d.alpha_step_deg)?;
        inputs.strength_capacity = r.optional("strength_capacity_n", "none")?;
        inputs.flexural_rigidity = r.optional("flexural_rigidity_n_m2", "none")?;
        inputs.drone_total_mass = r.optional("drone_total_mass_g", "empty")?.map(g_to_kg);
        inputs.sample_count = r.count("sample_count", d.sample_count)?;
        inputs.bag_stations = r.count("bag_stations", d.bag_stations)?;

        let map = MapSettings {
            speed_range: (
                r.number("map_vc_min_m_s", 4.0)?,
                r.number("map_vc_max_m_s", 16.0)?,
            ),
            aspect_range: (r.number("map_ar_min", 1.0)?, r.number("map_ar_max", 10.0)?),
            steps: (r.count("map_vc_steps", 121)?, r.count("map_ar_steps", 91)?),
            target_wing_loading: r.optional("map_target_n_m2", "design")?,
        };
        let tile_span = r.optional("tile_span_mm", "design")?.map(mm_to_m);
        let tile_chord = r.optional("tile_chord_mm", "design")?.map(mm_to_m);
        let out_dir = PathBuf::from(r.text("out_dir", "."));

        Ok(ResolvedConfig {
            inputs,
            materials,
            map,
            tile_span,
            tile_chord,
            out_dir,
            echo: r.echo,
        })
    }
}

fn find_material(db: &[FoodMaterial], name: &str) -> Result<FoodMaterial> {
    db.iter()
        .find(|m| m.name == name)
        .cloned()
        .ok_or_else(|| Error::UnknownMaterial(name.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EchoEntry {
    pub value: String,
    pub unit: &'static str,
    pub source: Source,
}

/// Settings for the wing-loading map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapSettings {
    /// m/s
    pub speed_range: (f64, f64),
    pub aspect_range: (f64, f64),
    pub steps: (usize, usize),
    /// N/m²; the design point's wing loading when unset.
    pub target_wing_loading: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedConfig {
    pub inputs: DesignInputs,
    /// The loaded material database.
    pub materials: Vec<FoodMaterial>,
    pub map: MapSettings,
    pub tile_span: Option<f64>,
    pub tile_chord: Option<f64>,
    pub out_dir: PathBuf,
    /// Every key with the value used and where it came from.
    pub echo: BTreeMap<&'static str, EchoEntry>,
}

struct Resolver<'a> {
    config: &'a DesignConfig,
    echo: BTreeMap<&'static str, EchoEntry>,
}

impl Resolver<'_> {
    fn unit(key: &str) -> &'static str {
        KEYS.iter().find(|k| k.0 == key).map(|k| k.1).unwrap_or("-")
    }

    fn record(&mut self, key: &'static str, value: String, source: Source) {
        let unit = Self::unit(key);
        self.echo.insert(
            key,
            EchoEntry {
                value,
                unit,
                source,
            },
        );
    }

    fn provided(&self, key: &str) -> Option<&Entry> {
        self.config.entries.get(key)
    }

    fn invalid(key: &str, entry: &Entry, expected: &str) -> Error {
        Error::Parse {
            origin: entry.origin.clone(),
            line: entry.line,
            message: format!("`{key} = {}`: expected {expected}", entry.value),
        }
    }

    fn parse_number(key: &str, entry: &Entry) -> Result<f64> {
        entry
            .value
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Self::invalid(key, entry, "a finite number"))
    }

    fn number(&mut self, key: &'static str, default: f64) -> Result<f64> {
        Ok(self.number_or(key, default, "")?.unwrap_or(default))
    }

    /// A number, or `keyword` meaning "not a number"; absent means `default`.
    fn number_or(&mut self, key: &'static str, default: f64, keyword: &str) -> Result<Option<f64>> {
        match self.provided(key).cloned() {
            None => {
                self.record(key, default.to_string(), Source::Default);
                Ok(Some(default))
            }
            Some(e) if !keyword.is_empty() && e.value == keyword => {
                self.record(key, e.value, e.source);
                Ok(None)
            }
            Some(e) => {
                let v = Self::parse_number(key, &e)?;
                self.record(key, e.value, e.source);
                Ok(Some(v))
            }
        }
    }

    /// Unset by default, spelled `keyword`.
    fn optional(&mut self, key: &'static str, keyword: &str) -> Result<Option<f64>> {
        match self.provided(key).cloned() {
            None => {
                self.record(key, keyword.to_string(), Source::Default);
                Ok(None)
            }
            Some(e) if e.value == keyword => {
                self.record(key, e.value, e.source);
                Ok(None)
            }
            Some(e) => {
                let v = Self::parse_number(key, &e)?;
                self.record(key, e.value, e.source);
                Ok(Some(v))
            }
        }
    }

    fn count(&mut self, key: &'static str, default: usize) -> Result<usize> {
        match self.provided(key).cloned() {
            None => {
                self.record(key, default.to_string(), Source::Default);
                Ok(default)
            }
            Some(e) => {
                let v = e
                    .value
                    .parse::<usize>()
                    .map_err(|_| Self::invalid(key, &e, "a non-negative integer"))?;
                self.record(key, e.value, e.source);
                Ok(v)
            }
        }
    }

    fn text(&mut self, key: &'static str, default: &str) -> String {
        let (value, source) = match self.provided(key) {
            Some(e) => (e.value.clone(), e.source),
            None => (default.to_string(), Source::Default),
        };
        self.record(key, value.clone(), source);
        value
    }

    fn path(&mut self, key: &'static str) -> Result<Option<PathBuf>> {
        let value = self.text(key, "seed");
        if let Some(e) = self.provided(key).filter(|e| e.value.is_empty()) {
            return Err(Self::invalid(key, e, "a path or `seed`"));
        }
        Ok((value != "seed").then(|| PathBuf::from(value)))
    }
}
