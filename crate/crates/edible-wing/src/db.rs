//! Material and adhesive databases.
//!
//! Comma-separated text, one record per line, `#` lines ignored. Materials
//! use the header `name,E_MPa,E_sd_MPa,rho_kg_m3,rho_sd,kcal_per_kg,provenance`;
//! adhesives use `name,kind,stress_kPa,stress_sd_kPa,kcal_per_kg` with `kind`
//! one of `mean` or `lower_bound`. Values are converted to SI on load.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim, WriterBuilder};
use edible_wing_core::materials::{AdhesiveRecord, FoodMaterial, StrengthKind};
use edible_wing_core::units::{PA_PER_KPA, PA_PER_MPA};

use crate::{Error, Result};

pub const MATERIAL_HEADER: [&str; 7] = [
    "name",
    "E_MPa",
    "E_sd_MPa",
    "rho_kg_m3",
    "rho_sd",
    "kcal_per_kg",
    "provenance",
];
pub const ADHESIVE_HEADER: [&str; 5] =
    ["name", "kind", "stress_kPa", "stress_sd_kPa", "kcal_per_kg"];

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(Trim::All)
        .has_headers(true)
        .from_reader(input)
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, expected: &[&str], origin: &str) -> Result<()> {
    let header = rdr.headers().map_err(|e| csv_error(e, origin))?.clone();
    if header.iter().ne(expected.iter().copied()) {
        return Err(Error::Header {
            origin: origin.to_string(),
            expected: expected.join(","),
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }
    Ok(())
}

fn csv_error(e: csv::Error, origin: &str) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    Error::Parse {
        origin: origin.to_string(),
        line,
        message: e.to_string(),
    }
}

struct Row<'a> {
    record: &'a StringRecord,
    header: &'a [&'a str],
    origin: &'a str,
    line: u64,
}

impl Row<'_> {
    fn fail(&self, message: String) -> Error {
        Error::Parse {
            origin: self.origin.to_string(),
            line: self.line,
            message,
        }
    }

    fn text(&self, col: usize) -> &str {
        self.record.get(col).unwrap_or("")
    }

    fn number(&self, col: usize) -> Result<f64> {
        let raw = self.text(col);
        raw.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| {
                self.fail(format!(
                    "column `{}`: `{raw}` is not a number",
                    self.header[col]
                ))
            })
    }

    fn validated<T>(
        &self,
        value: T,
        check: impl FnOnce(&T) -> edible_wing_core::Result<()>,
    ) -> Result<T> {
        check(&value).map_err(|e| self.fail(e.to_string()))?;
        Ok(value)
    }
}

fn line_of(record: &StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

pub fn parse_material_db<R: Read>(input: R, origin: &str) -> Result<Vec<FoodMaterial>> {
    let mut rdr = reader(input);
    check_header(&mut rdr, &MATERIAL_HEADER, origin)?;
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(e, origin))?;
        let row = Row {
            record: &record,
            header: &MATERIAL_HEADER,
            origin,
            line: line_of(&record),
        };
        let material = FoodMaterial {
            name: row.text(0).to_string(),
            youngs_modulus: row.number(1)? * PA_PER_MPA,
            youngs_modulus_sd: row.number(2)? * PA_PER_MPA,
            density: row.number(3)?,
            density_sd: row.number(4)?,
            caloric_density: row.number(5)?,
            provenance: row.text(6).to_string(),
        };
        out.push(row.validated(material, FoodMaterial::validate)?);
    }
    Ok(out)
}

pub fn parse_adhesive_db<R: Read>(input: R, origin: &str) -> Result<Vec<AdhesiveRecord>> {
    let mut rdr = reader(input);
    check_header(&mut rdr, &ADHESIVE_HEADER, origin)?;
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(e, origin))?;
        let row = Row {
            record: &record,
            header: &ADHESIVE_HEADER,
            origin,
            line: line_of(&record),
        };
        let kind = match row.text(1) {
            "mean" => StrengthKind::MeasuredMean,
            "lower_bound" => StrengthKind::LowerBound,
            other => {
                return Err(row.fail(format!("kind `{other}` is not `mean` or `lower_bound`")));
            }
        };
        let adhesive = AdhesiveRecord {
            name: row.text(0).to_string(),
            strength_kind: kind,
            adhesive_stress: row.number(2)? * PA_PER_KPA,
            adhesive_stress_sd: row.number(3)? * PA_PER_KPA,
            caloric_density: row.number(4)?,
        };
        out.push(row.validated(adhesive, AdhesiveRecord::validate)?);
    }
    Ok(out)
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

pub fn load_material_db(path: impl AsRef<Path>) -> Result<Vec<FoodMaterial>> {
    let path = path.as_ref();
    parse_material_db(open(path)?, &path.display().to_string())
}

pub fn load_adhesive_db(path: impl AsRef<Path>) -> Result<Vec<AdhesiveRecord>> {
    let path = path.as_ref();
    parse_adhesive_db(open(path)?, &path.display().to_string())
}

pub fn seed_materials() -> Vec<FoodMaterial> {
    parse_material_db(crate::SEED_MATERIALS.as_bytes(), "seed materials").expect("seed DB parses")
}

pub fn seed_adhesives() -> Vec<AdhesiveRecord> {
    parse_adhesive_db(crate::SEED_ADHESIVES.as_bytes(), "seed adhesives").expect("seed DB parses")
}

pub fn write_material_db<W: Write>(out: W, db: &[FoodMaterial]) -> io::Result<()> {
    let mut w = WriterBuilder::new().from_writer(out);
    w.write_record(MATERIAL_HEADER)?;
    for m in db {
        w.write_record([
            m.name.clone(),
            (m.youngs_modulus / PA_PER_MPA).to_string(),
            (m.youngs_modulus_sd / PA_PER_MPA).to_string(),
            m.density.to_string(),
            m.density_sd.to_string(),
            m.caloric_density.to_string(),
            m.provenance.clone(),
        ])?;
    }
    w.flush()
}
