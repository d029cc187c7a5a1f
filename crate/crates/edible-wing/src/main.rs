use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use edible_wing::config::{DesignConfig, ResolvedConfig};
use edible_wing::report::{self, Format};
use edible_wing::{design_map, svg, Error, Result};
use edible_wing_core::design_space::{design_space_grid, iso_contour};
use edible_wing_core::materials::{
    pareto_front, rank_by_ashby_distance, select_adhesive, MaterialTarget, StrengthKind,
};
use edible_wing_core::pipeline::{run_design_pipeline, DesignReport};
use edible_wing_core::sizing::estimate_mass_budget;
use edible_wing_core::structure::{schrenk_distribution, LoadCase};
use edible_wing_core::tiling::{generate_hex_tiling, mass_and_calories, HexTilingSpec};
use edible_wing_core::units::{kg_to_g, m2_to_cm2, m_to_mm, PA_PER_KPA, PA_PER_MPA};
use serde_json::json;

/// Size an edible-wing drone from a nutrition target and export its layout.
#[derive(Debug, Parser)]
#[command(name = "edible-wing", version)]
struct Cli {
    /// Flat `key = value` design config.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Directory for written files (overrides `out_dir`).
    #[arg(long, global = true, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// Output format on stdout; `both` writes text and JSON reports.
    #[arg(long, global = true, value_enum, default_value = "both")]
    format: Format,
    /// Override any config key, e.g. `--set payload_mass_g=100`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full design pipeline and write the report and cut layout.
    Design(DesignArgs),
    /// Wing-loading map over cruise speed and aspect ratio.
    Map(MapArgs),
    /// Hexagonal cut layout of the planform as SVG.
    Tile(TileArgs),
    /// Spanwise load, strength margin and load-test sand bags.
    Structure(StructureArgs),
    /// Query the material and adhesive databases.
    Materials(MaterialsArgs),
}

#[derive(Debug, Args)]
struct DesignArgs {
    #[arg(long)]
    nutrition_kcal: Option<f64>,
    #[arg(long)]
    payload_mass_g: Option<f64>,
    #[arg(long)]
    material: Option<String>,
    #[arg(long)]
    strength_capacity_n: Option<f64>,
}

#[derive(Debug, Args)]
struct MapArgs {
    #[arg(long)]
    map_target_n_m2: Option<f64>,
    #[arg(long)]
    map_vc_steps: Option<usize>,
    #[arg(long)]
    map_ar_steps: Option<usize>,
}

#[derive(Debug, Args)]
struct TileArgs {
    #[arg(long)]
    hex_circumdiameter_mm: Option<f64>,
    #[arg(long)]
    tile_span_mm: Option<f64>,
    #[arg(long)]
    tile_chord_mm: Option<f64>,
}

#[derive(Debug, Args)]
struct StructureArgs {
    #[arg(long)]
    strength_capacity_n: Option<f64>,
    #[arg(long)]
    flexural_rigidity_n_m2: Option<f64>,
    #[arg(long)]
    bag_stations: Option<usize>,
    #[arg(long)]
    sample_count: Option<usize>,
}

#[derive(Debug, Args)]
struct MaterialsArgs {
    #[command(subcommand)]
    query: MaterialsQuery,
}

#[derive(Debug, Subcommand)]
enum MaterialsQuery {
    /// List all materials and adhesives.
    List,
    /// Rank materials by log-space distance to a target E and density.
    Rank {
        #[arg(long)]
        modulus_mpa: f64,
        #[arg(long)]
        density_kg_m3: f64,
    },
    /// Materials not beaten on density, stiffness and energy at once.
    Pareto,
    /// The adhesive with the highest conservative strength.
    Adhesive,
}

fn opt<T: ToString>(key: &'static str, v: &Option<T>) -> Option<(&'static str, String)> {
    v.as_ref().map(|v| (key, v.to_string()))
}

impl Command {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let list = match self {
            Command::Design(a) => vec![
                opt("nutrition_kcal", &a.nutrition_kcal),
                opt("payload_mass_g", &a.payload_mass_g),
                opt("material", &a.material),
                opt("strength_capacity_n", &a.strength_capacity_n),
            ],
            Command::Map(a) => vec![
                opt("map_target_n_m2", &a.map_target_n_m2),
                opt("map_vc_steps", &a.map_vc_steps),
                opt("map_ar_steps", &a.map_ar_steps),
            ],
            Command::Tile(a) => vec![
                opt("hex_circumdiameter_mm", &a.hex_circumdiameter_mm),
                opt("tile_span_mm", &a.tile_span_mm),
                opt("tile_chord_mm", &a.tile_chord_mm),
            ],
            Command::Structure(a) => vec![
                opt("strength_capacity_n", &a.strength_capacity_n),
                opt("flexural_rigidity_n_m2", &a.flexural_rigidity_n_m2),
                opt("bag_stations", &a.bag_stations),
                opt("sample_count", &a.sample_count),
            ],
            Command::Materials(_) => vec![],
        };
        list.into_iter().flatten().collect()
    }
}

fn resolve(cli: &Cli) -> Result<ResolvedConfig> {
    let mut config = match &cli.config {
        Some(path) => DesignConfig::load(path)?,
        None => DesignConfig::default(),
    };
    for assignment in &cli.set {
        config.set_assignment(assignment)?;
    }
    for (key, value) in cli.command.overrides() {
        config.set(key, &value)?;
    }
    let mut resolved = config.resolve()?;
    if let Some(dir) = &cli.out_dir {
        resolved.out_dir = dir.clone();
    }
    Ok(resolved)
}

fn write(dir: &Path, name: &str, contents: impl AsRef<[u8]>) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Error::Io {
        path: path.clone(),
        source: e,
    })?;
    Ok(path)
}

fn note(path: &Path) {
    eprintln!("wrote {}", path.display());
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    print!("{}", report::to_json_text(value)?);
    Ok(())
}

fn design(cli: &Cli, cfg: &ResolvedConfig) -> Result<bool> {
    let report = run_design_pipeline(&cfg.inputs)?;
    let text = report::render_text(&report);
    let json = report::render_json(&report, &cfg.echo)?;
    if cli.format != Format::Json {
        note(&write(&cfg.out_dir, "design_report.txt", &text)?);
    }
    if cli.format != Format::Text {
        note(&write(&cfg.out_dir, "design_report.json", &json)?);
    }
    let layout = generate_hex_tiling(&report.tiling.spec).map_err(|e| stage("tiling", e))?;
    note(&write(
        &cfg.out_dir,
        "tiling.svg",
        svg::render_tiling(&layout),
    )?);
    match cli.format {
        Format::Json => print!("{json}"),
        _ => print!("{text}"),
    }
    Ok(report.pass())
}

fn stage(name: &'static str, source: edible_wing_core::Error) -> Error {
    Error::Stage {
        stage: name,
        source,
    }
}

fn map(cli: &Cli, cfg: &ResolvedConfig) -> Result<bool> {
    let (target, design_point) = match cfg.map.target_wing_loading {
        Some(t) => (t, None),
        None => {
            let r = run_design_pipeline(&cfg.inputs)?;
            (
                r.aero.wing_loading,
                Some((r.aero.cruise_speed, r.wing.aspect_ratio)),
            )
        }
    };
    let m = &cfg.map;
    let grid = design_space_grid(
        m.speed_range,
        m.aspect_range,
        m.steps,
        cfg.inputs.requirements.zero_lift_drag,
        &cfg.inputs.environment,
    )
    .map_err(|e| stage("map", e))?;
    let contours = iso_contour(&grid, target);

    let mut csv_bytes = Vec::new();
    design_map::write_csv(&grid, &mut csv_bytes).map_err(|e| Error::Parse {
        origin: "design_map.csv".to_string(),
        line: 0,
        message: e.to_string(),
    })?;
    note(&write(&cfg.out_dir, "design_map.csv", csv_bytes)?);
    note(&write(
        &cfg.out_dir,
        "design_map.svg",
        design_map::render_svg(&grid, target, &contours),
    )?);

    let vertices = contours.iter().map(Vec::len).sum::<usize>();
    if cli.format == Format::Json {
        print_json(&json!({
            "target_wing_loading": target,
            "grid": [grid.cruise_speeds.len(), grid.aspect_ratios.len()],
            "design_point": design_point.map(|(v, ar)| [v, ar]),
            "iso_lines": contours,
        }))?;
    } else {
        println!("target wing loading: {} N/m2", report::sig4(target));
        println!(
            "grid: {} x {} (V_c x AR)",
            grid.cruise_speeds.len(),
            grid.aspect_ratios.len()
        );
        println!("iso-lines: {} with {vertices} vertices", contours.len());
        if let Some((v, ar)) = design_point {
            println!(
                "design point: V_c = {} m/s, AR = {}",
                report::sig4(v),
                report::sig4(ar)
            );
        }
    }
    Ok(true)
}

fn tile(cli: &Cli, cfg: &ResolvedConfig) -> Result<bool> {
    let inputs = &cfg.inputs;
    let (span, chord) = match (cfg.tile_span, cfg.tile_chord) {
        (Some(b), Some(c)) => (b, c),
        (b, c) => {
            let r = run_design_pipeline(inputs)?;
            (b.unwrap_or(r.wing.span), c.unwrap_or(r.wing.chord))
        }
    };
    let layout = generate_hex_tiling(&HexTilingSpec::new(inputs.circumdiameter, span, chord))
        .map_err(|e| stage("tiling", e))?;
    let (adhesive, _) = select_adhesive(&inputs.adhesives).map_err(|e| stage("materials", e))?;
    let drone_mass = match inputs.drone_total_mass {
        Some(m) => m,
        None => {
            estimate_mass_budget(&inputs.requirements, &inputs.environment)
                .map_err(|e| stage("mass", e))?
                .empty_mass
        }
    };
    let mass = mass_and_calories(
        &layout,
        &inputs.material,
        &adhesive,
        inputs.plate_thickness,
        inputs.adhesive_ratio,
        drone_mass,
    )
    .map_err(|e| stage("tiling", e))?;
    note(&write(
        &cfg.out_dir,
        "tiling.svg",
        svg::render_tiling(&layout),
    )?);

    if cli.format == Format::Json {
        print_json(&json!({
            "span_mm": m_to_mm(span),
            "chord_mm": m_to_mm(chord),
            "circumdiameter_mm": m_to_mm(inputs.circumdiameter),
            "full_hex_count": layout.full_hex_count,
            "partial_count": layout.partial_count,
            "seam_length_mm": m_to_mm(layout.seam_length),
            "covered_area_cm2": m2_to_cm2(layout.covered_area),
            "adhesive": adhesive.name,
            "wing_mass": serde_json::to_value(mass)?,
        }))?;
    } else {
        let s = report::sig4;
        println!("planform: {} x {} mm", s(m_to_mm(span)), s(m_to_mm(chord)));
        println!("hexagon width: {} mm", s(m_to_mm(inputs.circumdiameter)));
        println!(
            "tiles: {} full hexagons, {} partial",
            layout.full_hex_count, layout.partial_count
        );
        println!("seam length: {} mm", s(m_to_mm(layout.seam_length)));
        println!("covered area: {} cm2", s(m2_to_cm2(layout.covered_area)));
        println!("adhesive: {}", adhesive.name);
        println!(
            "wing mass: {} g (cookie {} g, adhesive {} g)",
            s(kg_to_g(mass.total_mass)),
            s(kg_to_g(mass.cookie_mass)),
            s(kg_to_g(mass.adhesive_mass))
        );
        println!("wing energy: {} kcal", s(mass.total_kcal));
        println!("edible fraction: {}", s(mass.edible_fraction_of_drone));
    }
    Ok(true)
}

fn structure(cli: &Cli, cfg: &ResolvedConfig) -> Result<bool> {
    let report: DesignReport = run_design_pipeline(&cfg.inputs)?;
    let case = LoadCase::new(
        report.load.total_lift,
        report.wing.span,
        cfg.inputs.sample_count,
    )
    .map_err(|e| stage("structure", e))?;
    let dist = schrenk_distribution(&case).map_err(|e| stage("structure", e))?;
    let mut csv = String::from("x_m,load_n_per_m\n");
    for (x, f) in &dist.samples {
        csv.push_str(&format!("{x},{f}\n"));
    }
    note(&write(&cfg.out_dir, "spanwise_load.csv", csv)?);

    if cli.format == Format::Json {
        print_json(&json!({
            "load": serde_json::to_value(&report.load)?,
            "strength": serde_json::to_value(report.strength)?,
            "deflection": serde_json::to_value(report.deflection)?,
        }))?;
    } else {
        print!(
            "{}",
            report::render_text_sections(&report, |t| report::STRUCTURE_SECTIONS.contains(&t))
        );
    }
    Ok(report.strength.is_none_or(|s| s.pass))
}

fn materials(cli: &Cli, cfg: &ResolvedConfig, query: &MaterialsQuery) -> Result<bool> {
    let db = &cfg.materials;
    let adhesives = &cfg.inputs.adhesives;
    let json = cli.format == Format::Json;
    let describe = |m: &edible_wing_core::materials::FoodMaterial| {
        format!(
            "{:<16} E {:>8} MPa  rho {:>8} kg/m3  {:>8} kcal/kg",
            m.name,
            report::sig4(m.youngs_modulus / PA_PER_MPA),
            report::sig4(m.density),
            report::sig4(m.caloric_density)
        )
    };
    match query {
        MaterialsQuery::List => {
            if json {
                print_json(&json!({ "materials": db, "adhesives": adhesives }))?;
            } else {
                for m in db {
                    println!("{}", describe(m));
                }
                for a in adhesives {
                    let kind = match a.strength_kind {
                        StrengthKind::MeasuredMean => "mean",
                        StrengthKind::LowerBound => ">=",
                    };
                    println!(
                        "{:<16} {kind} {} kPa (sd {})  conservative {} kPa  {} kcal/kg",
                        a.name,
                        report::sig4(a.adhesive_stress / PA_PER_KPA),
                        report::sig4(a.adhesive_stress_sd / PA_PER_KPA),
                        report::sig4(a.conservative_strength() / PA_PER_KPA),
                        report::sig4(a.caloric_density)
                    );
                }
            }
        }
        MaterialsQuery::Rank {
            modulus_mpa,
            density_kg_m3,
        } => {
            let target = MaterialTarget::new(modulus_mpa * PA_PER_MPA, *density_kg_m3)
                .map_err(|e| stage("materials", e))?;
            let ranked = rank_by_ashby_distance(db, &target).map_err(|e| stage("materials", e))?;
            if json {
                let rows: Vec<_> = ranked
                    .iter()
                    .map(|(m, d)| json!({ "name": m.name, "distance": d }))
                    .collect();
                print_json(&json!(rows))?;
            } else {
                for (k, (m, d)) in ranked.iter().enumerate() {
                    println!(
                        "{:>3}. {}  distance {}",
                        k + 1,
                        describe(m),
                        report::sig4(*d)
                    );
                }
            }
        }
        MaterialsQuery::Pareto => {
            let front = pareto_front(db).map_err(|e| stage("materials", e))?;
            if json {
                print_json(&json!(front))?;
            } else {
                for m in &front {
                    println!("{}", describe(m));
                }
            }
        }
        MaterialsQuery::Adhesive => {
            let (a, strength) = select_adhesive(adhesives).map_err(|e| stage("materials", e))?;
            if json {
                print_json(&json!({ "adhesive": a, "conservative_strength_pa": strength }))?;
            } else {
                println!(
                    "{} ({} kPa conservative)",
                    a.name,
                    report::sig4(strength / PA_PER_KPA)
                );
            }
        }
    }
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = resolve(cli)?;
    match &cli.command {
        Command::Design(_) => design(cli, &cfg),
        Command::Map(_) => map(cli, &cfg),
        Command::Tile(_) => tile(cli, &cfg),
        Command::Structure(_) => structure(cli, &cfg),
        Command::Materials(a) => materials(cli, &cfg, &a.query),
    }
}

/// Exit status when every check passed, when one failed, and on error.
const EXIT_PASS: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_FAILED_CHECK: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::from(EXIT_PASS),
        Ok(false) => {
            eprintln!("design check failed");
            ExitCode::from(EXIT_FAILED_CHECK)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
