//! The `slitwave` command line.
//!
//! Exit status is 0 on success, 1 when `validate` finds a failing check and
//! 2 for usage or configuration errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analytic::{
    classical_displacement, energy_peak_spacing, fringe_visibility, shutter_current_ratio, space_slit_maxima_angles,
    time_slit_peak_energies, time_slit_period, SpaceSlitConfig, TimeSlitConfig,
};
use crate::error::{Error, Result};
use crate::output::OutputRecord;
use crate::scenarios::{builtin, catalog, run_scenario, ScenarioSpec};
use crate::units::{
    convert, derived_kinematics, parse_quantity, Dimension, Energy, Length, Particle, Time, Unit,
};
use crate::validate::{run_validation, ValidateOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "slitwave", version, about = "Space and time double-slit, shutter and complementarity calculations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a builtin scenario or a scenario spec file.
    Scenario(ScenarioArgs),
    /// Evaluate one closed-form expression.
    Eval {
        #[command(subcommand)]
        op: EvalOp,
    },
    /// Cross-check the closed forms against the spectral propagator.
    Validate {
        /// Force coarse grids; the aliasing-sensitive checks then fail.
        #[arg(long)]
        coarse: bool,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// List builtin scenarios.
    List {
        /// Print the full specs as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    /// Builtin scenario name.
    #[arg(required_unless_present = "spec", conflicts_with = "spec")]
    name: Option<String>,
    /// Read the scenario spec from a JSON file.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Override a spec field, `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the event histogram as CSV to this file.
    #[arg(long)]
    events_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ParticleArgs {
    /// Kinetic energy, e.g. 0.3eV.
    #[arg(long)]
    energy: String,
    /// Rest mass, e.g. 1me or 938272088eV/c2; an electron by default.
    #[arg(long)]
    mass: Option<String>,
}

impl ParticleArgs {
    fn particle(&self) -> Result<Particle> {
        let energy = Energy::parse(&self.energy)?;
        match &self.mass {
            None => Particle::electron(energy),
            Some(text) => {
                let (value, unit) = parse_quantity(text)?;
                Particle::with_energy(convert(value, unit, Unit::MassEv)?, energy)
            }
        }
    }
}

#[derive(Debug, Subcommand)]
enum EvalOp {
    /// Energy spacing h/tau of time double-slit peaks.
    PeakSpacing {
        #[arg(long)]
        tau: String,
        /// Output unit; meV below 1 eV, otherwise eV.
        #[arg(long)]
        unit: Option<String>,
    },
    /// Energy of the n-th time double-slit peak.
    PeakEnergy {
        #[command(flatten)]
        particle: ParticleArgs,
        #[arg(long)]
        tau: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        order: i64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phase: f64,
    },
    /// Fringe visibility of a double slit with weights alpha and 1 - alpha.
    Visibility {
        #[arg(long)]
        alpha: f64,
    },
    /// Classical wave-front displacement v0 t.
    Displacement {
        #[command(flatten)]
        particle: ParticleArgs,
        #[arg(long)]
        t: String,
    },
    /// Speed and de Broglie wavelength.
    Kinematics {
        #[command(flatten)]
        particle: ParticleArgs,
    },
    /// Local oscillation period at a fixed point behind a time double slit.
    Period {
        #[command(flatten)]
        particle: ParticleArgs,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        t: String,
    },
    /// Angle of the n-th maximum behind a space double slit, in rad.
    MaximumAngle {
        #[command(flatten)]
        particle: ParticleArgs,
        #[arg(long)]
        separation: String,
        #[arg(long, allow_negative_numbers = true)]
        order: i64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phase: f64,
    },
    /// Shutter current relative to the stationary current.
    ShutterRatio {
        #[command(flatten)]
        particle: ParticleArgs,
        #[arg(long)]
        z: String,
        #[arg(long)]
        t: String,
    },
    /// Convert a quantity to another unit of the same dimension.
    Convert {
        quantity: String,
        #[arg(long)]
        to: String,
    },
}

fn unit(symbol: &str) -> Result<Unit> {
    Unit::from_symbol(symbol).ok_or_else(|| Error::UnitParse(format!("unknown unit `{symbol}`")))
}

fn evaluate(op: &EvalOp) -> Result<String> {
    Ok(match op {
        EvalOp::PeakSpacing { tau, unit: out } => {
            let spacing = energy_peak_spacing(&TimeSlitConfig::symmetric(Time::parse(tau)?)?);
            let out = match out {
                Some(symbol) => unit(symbol)?,
                None if spacing.to_ev() < 1.0 => Unit::MilliElectronVolt,
                None => Unit::ElectronVolt,
            };
            format!("{} {}", spacing.value_in(out)?, out.symbol())
        }
        EvalOp::PeakEnergy {
            particle,
            tau,
            order,
            phase,
        } => {
            let cfg = TimeSlitConfig::new(Time::parse(tau)?, *phase, 0.5)?;
            format!("{} eV", time_slit_peak_energies(*order, &cfg, &particle.particle()?)?.to_ev())
        }
        EvalOp::Visibility { alpha } => format!("{}", fringe_visibility(*alpha)?),
        EvalOp::Displacement { particle, t } => {
            format!("{} nm", classical_displacement(Time::parse(t)?, &particle.particle()?)?.to_nm())
        }
        EvalOp::Kinematics { particle } => {
            let k = derived_kinematics(&particle.particle()?)?;
            format!(
                "velocity {} nm/fs\nde_broglie {} nm",
                k.velocity.to_nm_per_fs(),
                k.de_broglie.to_nm()
            )
        }
        EvalOp::Period { particle, tau, z, t } => {
            let cfg = TimeSlitConfig::symmetric(Time::parse(tau)?)?;
            let xi = time_slit_period(Length::parse(z)?, Time::parse(t)?, &cfg, &particle.particle()?)?;
            format!("{} fs", xi.to_fs())
        }
        EvalOp::MaximumAngle {
            particle,
            separation,
            order,
            phase,
        } => {
            let cfg = SpaceSlitConfig::new(Length::parse(separation)?, *phase, 0.5)?;
            format!("{} rad", space_slit_maxima_angles(*order, &cfg, &particle.particle()?)?)
        }
        EvalOp::ShutterRatio { particle, z, t } => {
            format!(
                "{}",
                shutter_current_ratio(Length::parse(z)?, Time::parse(t)?, &particle.particle()?)?
            )
        }
        EvalOp::Convert { quantity, to } => {
            let (value, from) = parse_quantity(quantity)?;
            let to = unit(to)?;
            if from.dimension() == Dimension::Angle && to.dimension() != Dimension::Angle {
                return Err(Error::Dimension {
                    from: from.symbol().into(),
                    to: to.symbol().into(),
                });
            }
            format!("{} {}", convert(value, from, to)?, to.symbol())
        }
    })
}

fn write_output(path: Option<&PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn scenario(args: &ScenarioArgs, stdout: &mut dyn Write) -> Result<()> {
    let base = match (&args.name, &args.spec) {
        (Some(name), _) => builtin(name)?,
        (None, Some(path)) => ScenarioSpec::from_json(&std::fs::read_to_string(path)?)?,
        (None, None) => return Err(Error::config("give a scenario name or --spec")),
    };
    let spec = base.with_overrides(&args.overrides)?;
    let record = OutputRecord::from_result(&run_scenario(&spec)?);
    let text = match args.format {
        Format::Csv => record.to_csv(),
        Format::Json => record.to_json() + "\n",
    };
    write_output(args.out.as_ref(), &text, stdout)?;
    if let Some(path) = &args.events_out {
        let hist = record
            .histogram_csv()
            .ok_or_else(|| Error::config("scenario has no events section (try --set events=on)"))?;
        std::fs::write(path, hist)?;
    }
    Ok(())
}

fn list(json: bool, stdout: &mut dyn Write) -> Result<()> {
    let specs = catalog();
    if json {
        let text = serde_json::to_string_pretty(&specs)?;
        writeln!(stdout, "{text}")?;
    } else {
        let width = specs.iter().map(|s| s.name.len()).max().unwrap_or(0);
        for s in &specs {
            writeln!(stdout, "{:<width$}  {}", s.name, s.description)?;
        }
    }
    Ok(())
}

/// Parse `args` (program name first) and run; returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Scenario(args) => scenario(args, stdout).map(|_| EXIT_OK),
        Command::Eval { op } => evaluate(op).and_then(|text| {
            writeln!(stdout, "{text}")?;
            Ok(EXIT_OK)
        }),
        Command::Validate { coarse, json } => {
            let report = run_validation(ValidateOptions { coarse: *coarse });
            let text = if *json { report.to_json() + "\n" } else { report.to_text() };
            stdout
                .write_all(text.as_bytes())
                .map_err(Error::from)
                .map(|_| if report.passed() { EXIT_OK } else { EXIT_VALIDATION })
        }
        Command::List { json } => list(*json, stdout).map(|_| EXIT_OK),
    };
    match outcome {
        Ok(code) => code,
        // A reader such as `head` closed the pipe early.
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("slitwave").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_ops() {
        let (code, out, _) = call(&["eval", "peak-spacing", "--tau", "96fs"]);
        assert_eq!(code, 0);
        let v: f64 = out.split_whitespace().next().unwrap().parse().unwrap();
        assert!((v - 43.08).abs() < 0.01 && out.trim_end().ends_with("meV"), "{out}");
        assert_eq!(call(&["eval", "visibility", "--alpha", "0.5"]).1.trim(), "1");
        let (_, out, _) = call(&["eval", "displacement", "--energy", "0.3eV", "--t", "900fs"]);
        let z: f64 = out.split_whitespace().next().unwrap().parse().unwrap();
        assert!((z / 293.0 - 1.0).abs() < 0.01);
        let (_, out, _) = call(&["eval", "convert", "1eV", "--to", "meV"]);
        assert_eq!(out.trim(), "1000 meV");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["eval", "displacement", "--energy", "0.3", "--t", "900fs"]).0, 2);
        assert_eq!(call(&["eval", "peak-spacing"]).0, 2);
        assert_eq!(call(&["scenario", "nonexistent"]).0, 2);
        assert_eq!(call(&["scenario", "fig1_shutter", "--set", "nonsense=1"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["eval", "convert", "1eV", "--to", "fs"]).0, 2);
    }

    #[test]
    fn list_names_scenarios() {
        let (code, out, _) = call(&["list"]);
        assert_eq!(code, 0);
        for s in catalog() {
            assert!(out.contains(&s.name));
        }
        assert!(call(&["--help"]).0 == 0);
    }
}
