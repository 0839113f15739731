use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::path::Path;

use clap::{ArgAction, CommandFactory};
use qvh_core::vacuum::DEFAULT_REL_TOL;
use qvh_core::UnitSystem;

use crate::args::{Cli, Command, CurveArgs, Format};
use crate::CliError;

/// A fully resolved invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub units: UnitSystem,
    pub alpha: f64,
    pub rel_tol: f64,
    pub format: Format,
    pub command: Command,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            units: UnitSystem::Si,
            alpha: 1.0,
            rel_tol: DEFAULT_REL_TOL,
            format: Format::Table,
            command: Command::Constants,
        }
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let d = Self::default();
        let cfg = Self {
            units: cli.units.unwrap_or(d.units),
            alpha: cli.alpha.unwrap_or(d.alpha),
            rel_tol: cli.rel_tol.unwrap_or(d.rel_tol),
            format: cli.format.unwrap_or(d.format),
            command: cli.command,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(CliError::Config("alpha must be positive".into()));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(CliError::Config(format!(
                "rel-tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        Ok(())
    }

    /// Arguments (without the program name) that reproduce this run exactly.
    pub fn to_args(&self) -> Vec<String> {
        let mut out = vec![self.command.name().to_string()];
        let mut flag = |name: &str, value: String| {
            out.push(format!("--{name}"));
            out.push(value);
        };
        match &self.command {
            Command::Constants | Command::Limits => {}
            Command::Schwinger { field, mass } => {
                flag("field", num(*field));
                if let Some(m) = mass {
                    flag("mass", num(*m));
                }
            }
            Command::Unruh {
                acceleration,
                mass,
                omega,
            } => {
                for (name, v) in [("acceleration", acceleration), ("mass", mass), ("omega", omega)] {
                    if let Some(v) = v {
                        flag(name, num(*v));
                    }
                }
            }
            Command::Hawking { mass, probe, r } => {
                flag("mass", num(*mass));
                for (name, v) in [("probe", probe), ("r", r)] {
                    if let Some(v) = v {
                        flag(name, num(*v));
                    }
                }
            }
            Command::Worldline {
                curve,
                samples,
                s_min,
                s_max,
            } => {
                curve_args(curve, &mut flag);
                flag("samples", samples.to_string());
                flag("s-min", num(*s_min));
                if let Some(s) = s_max {
                    flag("s-max", num(*s));
                }
            }
            Command::Bundle { curve, s } => {
                curve_args(curve, &mut flag);
                flag("s", num(*s));
            }
            Command::Suppress {
                mass,
                momentum,
                velocity,
                n,
                sweep,
                p_max,
                points,
            } => {
                flag("mass", num(*mass));
                flag("momentum", vec3(momentum));
                flag("velocity", vec3(velocity));
                flag("n", num(*n));
                if let Some(p) = p_max {
                    flag("p-max", num(*p));
                }
                flag("points", points.to_string());
                if *sweep {
                    out.push("--sweep".into());
                }
            }
        }
        let format = match self.format {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Table => "table",
        };
        out.extend([
            "--units".into(),
            self.units.name().into(),
            "--alpha".into(),
            num(self.alpha),
            "--rel-tol".into(),
            num(self.rel_tol),
            "--format".into(),
            format.into(),
        ]);
        out
    }
}

/// Shortest decimal form that parses back to the same f64.
fn num(x: f64) -> String {
    format!("{x:e}")
}

fn vec3(v: &[f64; 3]) -> String {
    format!("{},{},{}", num(v[0]), num(v[1]), num(v[2]))
}

fn curve_args(c: &CurveArgs, flag: &mut impl FnMut(&str, String)) {
    let metric = match c.metric {
        crate::args::MetricKind::Minkowski => "minkowski",
        crate::args::MetricKind::Schwarzschild => "schwarzschild",
    };
    let curve = match c.curve {
        crate::args::CurveKind::Static => "static",
        crate::args::CurveKind::Hyperbolic => "hyperbolic",
        crate::args::CurveKind::Geodesic => "geodesic",
    };
    flag("metric", metric.into());
    flag("curve", curve.into());
    for (name, v) in [("mass", c.mass), ("r", c.r), ("accel", c.accel)] {
        if let Some(v) = v {
            flag(name, num(v));
        }
    }
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
pub fn read_config_file(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!(
                "{}:{}: expected `key = value`",
                path.display(),
                i + 1
            )));
        };
        let key = key
            .trim()
            .trim_start_matches("--")
            .replace('_', "-")
            .to_ascii_lowercase();
        out.push((key, value.trim().trim_matches('"').to_string()));
    }
    Ok(out)
}

fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}

fn given_on_command_line(argv: &[OsString], key: &str) -> bool {
    let long = format!("--{key}");
    let prefix = format!("--{key}=");
    argv.iter().skip(1).any(|a| {
        let s = a.to_string_lossy();
        s == long || s.starts_with(&prefix)
    })
}

/// Appends config-file settings to `argv` for every flag not already given,
/// so that explicit flags win over the file and the file wins over
/// QVH_UNITS. Keys belonging only to other subcommands are ignored.
pub fn merge_config_file(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let entries = read_config_file(Path::new(&path))?;
    let root = Cli::command();
    let sub_name = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .find(|a| root.find_subcommand(a).is_some());

    let mut known = BTreeSet::new();
    let mut accepted = Vec::new();
    for arg in root.get_arguments() {
        if let Some(long) = arg.get_long() {
            known.insert(long.to_string());
            accepted.push(arg.clone());
        }
    }
    for sub in root.get_subcommands() {
        for arg in sub.get_arguments() {
            if let Some(long) = arg.get_long() {
                known.insert(long.to_string());
                if Some(sub.get_name()) == sub_name.as_deref() {
                    accepted.push(arg.clone());
                }
            }
        }
    }

    let mut out = argv.clone();
    for (key, value) in entries {
        if key == "config" || !known.contains(&key) {
            return Err(CliError::Config(format!("unknown config key `{key}`")));
        }
        let Some(arg) = accepted.iter().find(|a| a.get_long() == Some(key.as_str())) else {
            continue;
        };
        if given_on_command_line(&argv, &key) {
            continue;
        }
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value.to_ascii_lowercase().as_str() {
                "true" | "yes" | "1" => out.push(format!("--{key}").into()),
                "false" | "no" | "0" => {}
                other => {
                    return Err(CliError::Config(format!(
                        "`{key}` expects true or false, got `{other}`"
                    )))
                }
            }
        } else {
            out.push(format!("--{key}={value}").into());
        }
    }
    Ok(out)
}
