use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qvh_core::UnitSystem;

#[derive(Parser, Debug)]
#[command(
    name = "qvh",
    version,
    about = "Vacuum, horizon and maximal-acceleration calculations"
)]
pub struct Cli {
    /// Unit system for all inputs and outputs (si, natural, planck).
    #[arg(long, global = true, env = "QVH_UNITS", value_parser = parse_units)]
    pub units: Option<UnitSystem>,

    /// Order-unity coefficient in a₀ = 2πα(c⁷/ħG)^{1/2} [default: 1].
    #[arg(long, global = true)]
    pub alpha: Option<f64>,

    /// Relative tolerance for series truncation [default: 1e-12].
    #[arg(long = "rel-tol", global = true)]
    pub rel_tol: Option<f64>,

    /// Output format [default: table].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// File of `key = value` lines mirroring the long flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

fn parse_units(s: &str) -> Result<UnitSystem, qvh_core::Error> {
    s.parse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricKind {
    Minkowski,
    Schwarzschild,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    /// Observer at rest (at radius --r in Schwarzschild).
    Static,
    /// Uniform acceleration --accel in Minkowski.
    Hyperbolic,
    /// Radial free fall from rest at --r, or inertial rest in Minkowski.
    Geodesic,
}

/// Metric and worldline selection shared by `worldline` and `bundle`.
#[derive(Args, Clone, Debug, PartialEq)]
pub struct CurveArgs {
    #[arg(long, value_enum, default_value = "minkowski")]
    pub metric: MetricKind,
    /// Central mass of the Schwarzschild metric.
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long, value_enum, default_value = "hyperbolic")]
    pub curve: CurveKind,
    /// Areal radius of a static or infalling observer.
    #[arg(long)]
    pub r: Option<f64>,
    /// Proper acceleration of a hyperbolic worldline.
    #[arg(long)]
    pub accel: Option<f64>,
}

#[derive(Subcommand, Clone, Debug, PartialEq)]
pub enum Command {
    /// Fundamental constants and Planck units of the chosen system.
    Constants,
    /// Pair-production rate in a static electric field.
    #[command(allow_negative_numbers = true)]
    Schwinger {
        #[arg(long)]
        field: f64,
        /// Mass of the created particles [default: electron mass].
        #[arg(long)]
        mass: Option<f64>,
    },
    /// Temperature of the vacuum seen by an accelerated observer.
    #[command(allow_negative_numbers = true)]
    Unruh {
        #[arg(long, required_unless_present = "mass")]
        acceleration: Option<f64>,
        /// Use the characteristic acceleration 2mc³/ħ of this mass.
        #[arg(long, conflicts_with = "acceleration")]
        mass: Option<f64>,
        /// Angular frequency for the massless-quantum estimate.
        #[arg(long)]
        omega: Option<f64>,
    },
    /// Hawking temperature by both routes.
    #[command(allow_negative_numbers = true)]
    Hawking {
        #[arg(long)]
        mass: f64,
        /// Probe mass for the tidal route [default: electron mass].
        #[arg(long)]
        probe: Option<f64>,
        /// Radius for the local horizon acceleration and Tolman factor.
        #[arg(long)]
        r: Option<f64>,
    },
    /// Quantities fixed by the maximal proper acceleration.
    Limits,
    /// Proper acceleration sampled along a worldline.
    #[command(allow_negative_numbers = true)]
    Worldline {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 11)]
        samples: usize,
        #[arg(long = "s-min", default_value_t = 0.0)]
        s_min: f64,
        /// Last proper-length sample [default: the curve's natural scale].
        #[arg(long = "s-max")]
        s_max: Option<f64>,
    },
    /// Tangent-bundle metric and acceleration bound at one worldline point.
    #[command(allow_negative_numbers = true)]
    Bundle {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 0.0)]
        s: f64,
    },
    /// Planck-scale suppression of a field mode.
    #[command(allow_negative_numbers = true)]
    Suppress {
        #[arg(long)]
        mass: f64,
        /// Spatial momentum px,py,pz.
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        momentum: [f64; 3],
        /// Field-point velocity dx/dt as vx,vy,vz.
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, default_value = "0,0,0")]
        velocity: [f64; 3],
        /// Mode normalisation N.
        #[arg(long, default_value_t = 1.0)]
        n: f64,
        /// Tabulate the factor against |p| along the momentum direction.
        #[arg(long)]
        sweep: bool,
        /// Largest |p| in the sweep [default: Planck momentum m_pl c].
        #[arg(long = "p-max")]
        p_max: Option<f64>,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Constants => "constants",
            Command::Schwinger { .. } => "schwinger",
            Command::Unruh { .. } => "unruh",
            Command::Hawking { .. } => "hawking",
            Command::Limits => "limits",
            Command::Worldline { .. } => "worldline",
            Command::Bundle { .. } => "bundle",
            Command::Suppress { .. } => "suppress",
        }
    }
}

pub fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got `{s}`"));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| format!("`{part}` is not a number"))?;
    }
    Ok(out)
}
