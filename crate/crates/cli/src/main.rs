//! `atomphase` command-line front end.

mod output;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use atomphase::sweep::{evaluate_point, SeriesData};
use atomphase::{
    cone_weighted_solid_angle, figure_preset, optimize_doughnut_waist, recollimation_parameters,
    run_sweep, BeamProfile, Branch, ConeAperture, Coupling, DipoleOrientation, FigurePreset, Model,
    ParabolicMirror, SweepSpec,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "atomphase", version, about = "Phase shift of a focused beam on a single two-level atom")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Symmetric,
    Asymmetric,
    Kerr,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Symmetric => Model::Symmetric,
            ModelArg::Asymmetric => Model::Asymmetric,
            ModelArg::Kerr => Model::Kerr,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl From<PresetArg> for FigurePreset {
    fn from(p: PresetArg) -> Self {
        match p {
            PresetArg::Fig2 => FigurePreset::Fig2,
            PresetArg::Fig3 => FigurePreset::Fig3,
            PresetArg::Fig4 => FigurePreset::Fig4,
            PresetArg::Fig5 => FigurePreset::Fig5,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Axial,
    Transverse,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single detuning/saturation point.
    Eval {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long = "omega-n")]
        omega_n: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long = "omega-n-prime")]
        omega_n_prime: Option<f64>,
        #[arg(long = "eta-prime")]
        eta_prime: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        /// Detuning in units of the linewidth.
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        /// On-resonance saturation parameter.
        #[arg(long)]
        s0: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run a sweep described by a JSON config file; CSV goes to stdout.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Write the data series of a figure preset, one CSV per curve.
    Figures {
        #[arg(long, value_enum)]
        name: PresetArg,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Coupling parameters of a focusing geometry, as JSON.
    #[command(subcommand)]
    Geometry(GeometryCommand),
}

#[derive(Subcommand)]
enum GeometryCommand {
    /// Lens cone of half-angle ALPHA around the optical axis.
    Cone {
        /// Semi-aperture angle in radians.
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "axial")]
        orientation: OrientationArg,
    },
    /// Deep parabolic mirror with the atom at its focus (axial dipole).
    Mirror {
        /// Focal length.
        #[arg(long)]
        f: f64,
        /// Aperture radius.
        #[arg(long = "R")]
        r: f64,
        /// Radius of the central hole.
        #[arg(long, default_value_t = 0.0)]
        hole: f64,
        /// Incident profile: flattop, matched, doughnut:<waist> or doughnut:auto.
        #[arg(long)]
        profile: Option<String>,
    },
}

enum CliError {
    Model(atomphase::Error),
    Usage(String),
    Io(io::Error),
}

impl From<atomphase::Error> for CliError {
    fn from(e: atomphase::Error) -> Self {
        CliError::Model(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Model(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    let stdout = io::stdout();
    match command {
        Command::Eval {
            model,
            omega_n,
            eta,
            omega_n_prime,
            eta_prime,
            p,
            delta,
            s0,
            format,
        } => {
            let coupling = Coupling {
                omega_n,
                eta,
                omega_n_prime,
                eta_prime,
                p,
            };
            let row = evaluate_point(model.into(), &coupling, delta, s0, delta)?;
            if row.branch == Branch::Boundary {
                return Err(atomphase::Error::Boundary.into());
            }
            match format {
                Format::Csv => output::write_rows_csv(stdout.lock(), &[row], &[])?,
                Format::Json => output::write_json(stdout.lock(), &row)?,
            }
        }
        Command::Sweep { config, format } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", config.display())))?;
            let spec: SweepSpec = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("invalid sweep config {}: {e}", config.display())))?;
            let rows = run_sweep(&spec)?;
            match format {
                Format::Csv => output::write_rows_csv(stdout.lock(), &rows, &[])?,
                Format::Json => output::write_json(stdout.lock(), &rows)?,
            }
        }
        Command::Figures { name, out } => {
            let written = write_figure(name.into(), &out)?;
            let mut lock = stdout.lock();
            for path in written {
                writeln!(lock, "{}", path.display())?;
            }
        }
        Command::Geometry(g) => geometry(g, stdout.lock())?,
    }
    Ok(())
}

fn write_figure(preset: FigurePreset, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir)?;
    let figure = figure_preset(preset);
    let mut written = Vec::new();
    for series in &figure.series {
        let mut comments = vec![
            ("preset".to_string(), preset.as_str().to_string()),
            ("series".to_string(), series.name.clone()),
        ];
        if let atomphase::sweep::SeriesSpec::Sweep(spec) = &series.spec {
            comments.push((
                "spec".to_string(),
                serde_json::to_string(spec).expect("sweep spec serializes"),
            ));
        }
        comments.extend(figure.metadata.iter().cloned());
        let path = dir.join(format!("{}-{}.csv", preset.as_str(), series.name));
        let file = io::BufWriter::new(fs::File::create(&path)?);
        match series.evaluate()? {
            SeriesData::Sweep(rows) => output::write_rows_csv(file, &rows, &comments)?,
            SeriesData::BranchGrid(rows) => output::write_branch_csv(file, &rows, &comments)?,
        }
        written.push(path);
    }
    Ok(written)
}

#[derive(Serialize)]
struct GeometryReport {
    omega_n: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_n_prime: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta_prime: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    waist: Option<f64>,
}

fn parse_profile(spec: &str, mirror: &ParabolicMirror) -> Result<(BeamProfile, Option<f64>), CliError> {
    match spec {
        "flattop" => Ok((BeamProfile::FlatTop, None)),
        "matched" => Ok((BeamProfile::DipoleMatched, None)),
        "doughnut:auto" => {
            let best = optimize_doughnut_waist(mirror)?;
            Ok((BeamProfile::Doughnut { waist: best.waist }, Some(best.waist)))
        }
        other => {
            let waist = other
                .strip_prefix("doughnut:")
                .and_then(|w| w.parse::<f64>().ok())
                .ok_or_else(|| CliError::Usage(format!("unknown profile '{other}'")))?;
            if !(waist > 0.0 && waist.is_finite()) {
                return Err(atomphase::Error::Domain(format!("doughnut waist {waist} must be > 0")).into());
            }
            Ok((BeamProfile::Doughnut { waist }, Some(waist)))
        }
    }
}

fn geometry<W: Write>(command: GeometryCommand, out: W) -> Result<(), CliError> {
    let report = match command {
        GeometryCommand::Cone { alpha, orientation } => {
            let orientation = match orientation {
                OrientationArg::Axial => DipoleOrientation::Axial,
                OrientationArg::Transverse => DipoleOrientation::Transverse,
            };
            GeometryReport {
                omega_n: cone_weighted_solid_angle(&ConeAperture::new(alpha, orientation)?)?,
                omega_n_prime: None,
                eta: None,
                eta_prime: None,
                p: None,
                waist: None,
            }
        }
        GeometryCommand::Mirror { f, r, hole, profile } => {
            let mirror = ParabolicMirror::new(f, r, hole)?;
            match profile {
                None => GeometryReport {
                    omega_n: atomphase::mirror_weighted_solid_angle(&mirror),
                    omega_n_prime: None,
                    eta: None,
                    eta_prime: None,
                    p: None,
                    waist: None,
                },
                Some(spec) => {
                    let (profile, waist) = parse_profile(&spec, &mirror)?;
                    let rc = recollimation_parameters(&mirror, &profile)?;
                    GeometryReport {
                        omega_n: rc.omega_n,
                        omega_n_prime: Some(rc.omega_n_prime),
                        eta: Some(rc.eta),
                        eta_prime: Some(rc.eta_prime),
                        p: Some(rc.p),
                        waist,
                    }
                }
            }
        }
    };
    output::write_json(out, &report)?;
    Ok(())
}
