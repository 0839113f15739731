use std::f64::consts::FRAC_PI_2;

use nalgebra::{Vector3, Vector4};
use num_complex::Complex64;
use qvh_core::black_hole::{
    black_hole_mass_check, hawking_temperature, local_horizon_acceleration, planck_limits, schwarzschild_radius,
    tidal_chain, tolman_transport, SchwarzschildBh,
};
use qvh_core::bundle::{acceleration_bound_check, bundle_metric, gauge_potential, BundlePoint};
use qvh_core::field::{lorentz_gamma, mode_amplitude, suppression_factor, Branch, FieldPoint, ModeSpec};
use qvh_core::geometry::{
    covariant_acceleration, CurvatureRadius, HyperbolicWorldline, InertialObserver, Metric, Minkowski, RadialFreeFall,
    Schwarzschild, StaticObserver, Worldline,
};
use qvh_core::units::planck_scale;
use qvh_core::vacuum::{
    characteristic_acceleration, critical_field, fluctuation_scales, massless_chain, schwinger_rate_detailed,
    unruh_temperature,
};
use qvh_core::{ConstantSet, Dimension, Estimate, Quantity};
use rayon::prelude::*;

use crate::args::{Command, CurveArgs, CurveKind, MetricKind};
use crate::config::RunConfig;
use crate::envelope::{ResultEnvelope, Sci, Table};
use crate::CliError;

const EXACT: Option<Estimate> = Some(Estimate::Exact);
const HEURISTIC: Option<Estimate> = Some(Estimate::Heuristic);

fn q(value: f64, dim: Dimension) -> Quantity {
    Quantity::new(value, dim)
}

/// Runs the command in `config` and collects its results.
pub fn dispatch(config: &RunConfig) -> Result<ResultEnvelope, CliError> {
    config.validate()?;
    let consts = ConstantSet::for_system(config.units);
    let mut env = ResultEnvelope::new(
        config.command.name(),
        config.to_args(),
        config.units,
        config.alpha,
        config.rel_tol,
    );
    match &config.command {
        Command::Constants => constants(&mut env, &consts)?,
        Command::Schwinger { field, mass } => schwinger(&mut env, &consts, config, *field, *mass)?,
        Command::Unruh {
            acceleration,
            mass,
            omega,
        } => unruh(&mut env, &consts, *acceleration, *mass, *omega)?,
        Command::Hawking { mass, probe, r } => hawking(&mut env, &consts, *mass, *probe, *r)?,
        Command::Limits => limits(&mut env, &consts, config.alpha)?,
        Command::Worldline {
            curve,
            samples,
            s_min,
            s_max,
        } => worldline(&mut env, &consts, curve, *samples, *s_min, *s_max)?,
        Command::Bundle { curve, s } => bundle(&mut env, &consts, config.alpha, curve, *s)?,
        Command::Suppress {
            mass,
            momentum,
            velocity,
            n,
            sweep,
            p_max,
            points,
        } => {
            let sweep = sweep.then_some((*p_max, *points));
            suppress(&mut env, &consts, config.alpha, *mass, momentum, velocity, *n, sweep)?
        }
    }
    Ok(env)
}

fn constants(env: &mut ResultEnvelope, c: &ConstantSet) -> Result<(), CliError> {
    let source = if c.system == qvh_core::UnitSystem::Si {
        "CODATA 2018".to_string()
    } else {
        format!("CODATA 2018 in {} units", c.system)
    };
    for (name, value) in c.entries() {
        env.output(name, value, &source, None);
    }
    let p = planck_scale(c)?;
    env.output("m_pl", p.m_pl, "(ħc/G)^(1/2)", None);
    env.output("l_pl", p.l_pl, "(ħG/c³)^(1/2)", None);
    env.output("t_pl", p.t_pl, "l_pl/c", None);
    env.output("T_pl", p.temp_pl, "(ħc⁵/G)^(1/2)/k", None);
    Ok(())
}

fn schwinger(
    env: &mut ResultEnvelope,
    c: &ConstantSet,
    config: &RunConfig,
    field: f64,
    mass: Option<f64>,
) -> Result<(), CliError> {
    let field = q(field, Dimension::electric_field());
    env.input("field", field);
    let mut c = *c;
    if let Some(m) = mass {
        c.m_e = q(m, Dimension::mass());
    }
    env.input("mass", c.m_e);
    env.flag("electron_mass_default", mass.is_none());
    let r = schwinger_rate_detailed(field, &c, config.rel_tol)?;
    env.output("rate", r.rate, "(eE)²/(π²ħ²c) Σ e^(−nE_c/E)/n²", None);
    env.output("prefactor", r.prefactor, "(eE)²/(π²ħ²c)", None);
    env.output(
        "series_sum",
        Quantity::dimensionless(r.series_sum),
        "Σ e^(−nE_c/E)/n²",
        None,
    );
    env.output(
        "series_terms",
        Quantity::dimensionless(r.terms as f64),
        "terms summed",
        None,
    );
    env.output("E_c", r.critical_field, "πm²c³/(eħ)", EXACT);
    env.output(
        "E_c",
        critical_field(c.m_e, &c, Estimate::Heuristic)?,
        "2m²c³/(eħ)",
        HEURISTIC,
    );
    let f = fluctuation_scales(c.m_e, &c)?;
    env.output("delta_t", f.delta_t, "ħ/(2mc²)", None);
    env.output("delta_x", f.delta_x, "ħ/(2mc)", None);
    env.output("a_char", characteristic_acceleration(c.m_e, &c)?, "2mc³/ħ", None);
    if r.terms == 0 {
        env.notes.push("zero field: no pairs are produced".into());
    }
    Ok(())
}

fn unruh(
    env: &mut ResultEnvelope,
    c: &ConstantSet,
    acceleration: Option<f64>,
    mass: Option<f64>,
    omega: Option<f64>,
) -> Result<(), CliError> {
    let a = match (acceleration, mass) {
        (Some(a), _) => q(a, Dimension::acceleration()),
        (None, Some(m)) => {
            let m = q(m, Dimension::mass());
            env.input("mass", m);
            characteristic_acceleration(m, c)?
        }
        (None, None) => return Err(CliError::Config("unruh needs --acceleration or --mass".into())),
    };
    env.input("acceleration", a);
    let t = unruh_temperature(a, c)?;
    env.output("T", t.exact, "ħa/(2πkc)", EXACT);
    env.output("T", t.heuristic, "ħa/(6kc)", HEURISTIC);
    env.output(
        "ratio",
        Quantity::dimensionless(t.heuristic.value / t.exact.value),
        "π/3",
        None,
    );
    if let Some(w) = omega {
        let w = q(w, Dimension::angular_frequency());
        env.input("omega", w);
        let chain = massless_chain(a, w, c)?;
        env.output("wavelength", chain.wavelength, "2πc/ω", None);
        env.output("effective_mass", chain.effective_mass, "ħω/c²", None);
        env.output("work_from_chain", chain.work_from_chain, "(ħω/c²) a λ/(4π)", None);
        env.output("T_massless", chain.temperature, "ħa/(6kc)", HEURISTIC);
    }
    Ok(())
}

fn hawking(
    env: &mut ResultEnvelope,
    c: &ConstantSet,
    mass: f64,
    probe: Option<f64>,
    r: Option<f64>,
) -> Result<(), CliError> {
    let m = q(mass, Dimension::mass());
    env.input("mass", m);
    let probe_q = probe.map_or(c.m_e, |p| q(p, Dimension::mass()));
    env.input("probe", probe_q);
    env.flag("electron_probe_default", probe.is_none());
    let bh = SchwarzschildBh::new(m, c)?;
    env.output("R", schwarzschild_radius(m, c)?, "2GM/c²", None);
    env.output("T_H", hawking_temperature(m, c, Estimate::Exact)?, "ħc³/(8πkGM)", EXACT);
    env.output(
        "T_H",
        hawking_temperature(m, c, Estimate::Heuristic)?,
        "ħc³/(24kGM)",
        HEURISTIC,
    );
    let chain = tidal_chain(m, probe_q, c)?;
    env.output(
        "T_tidal",
        chain.temperature,
        "tidal pair work mc² = 3kT, redshifted",
        HEURISTIC,
    );
    env.output("work_stripped", chain.work_stripped, "g₀₀ (GMm/R³)(ħ/2mc)²", None);
    env.output(
        "local_temperature_stripped",
        chain.local_temperature_stripped,
        "√g₀₀ T_R",
        None,
    );
    env.flag("is_black_hole_particle", black_hole_mass_check(m, c)?);
    if let Some(r) = r {
        let r = q(r, Dimension::length());
        env.input("r", r);
        let local = local_horizon_acceleration(m, r, c)?;
        env.output("a_local", local, "GM/(r² √g₀₀)", None);
        let g00 = bh.g00(r)?;
        env.output("g00", Quantity::dimensionless(g00), "1 − 2GM/(rc²)", None);
        let t_local = unruh_temperature(local, c)?.exact;
        env.output("T_local", t_local, "ħa/(2πkc)", EXACT);
        env.output("T_local_redshifted", tolman_transport(t_local, g00)?, "√g₀₀ T", EXACT);
    }
    Ok(())
}

fn limits(env: &mut ResultEnvelope, c: &ConstantSet, alpha: f64) -> Result<(), CliError> {
    let l = planck_limits(alpha, c)?;
    env.input("alpha", Quantity::dimensionless(alpha));
    let sources = [
        "½(ħc/G)^(1/2)",
        "2πα(c⁷/ħG)^(1/2)",
        "α(ħc⁵/G)^(1/2)/k",
        "m_pl/(8πα)",
        "l_pl/(4πα)",
        "k/(16πα²)",
        "c²/a₀",
    ];
    for ((name, value), source) in l.entries().into_iter().zip(sources) {
        env.output(name, value, source, None);
    }
    env.flag("alpha_default", alpha == 1.0);
    Ok(())
}

struct Curve {
    metric: Box<dyn Metric>,
    path: Box<dyn Worldline>,
    default_span: f64,
    spatial_unit: [Dimension; 3],
}

type NamedInputs = Vec<(&'static str, Quantity)>;

fn build_curve(args: &CurveArgs, c: &ConstantSet) -> Result<(Curve, NamedInputs), CliError> {
    let length = Dimension::length();
    let mut inputs = Vec::new();
    let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| CliError::Config(format!("this curve needs --{flag}")));
    let curve = match args.metric {
        MetricKind::Minkowski => {
            let (path, span): (Box<dyn Worldline>, f64) = match args.curve {
                CurveKind::Hyperbolic => {
                    let a = q(need(args.accel, "accel")?, Dimension::acceleration());
                    inputs.push(("accel", a));
                    let w = HyperbolicWorldline::new(a, c)?;
                    (Box::new(w), w.rho)
                }
                CurveKind::Static | CurveKind::Geodesic => (Box::new(InertialObserver::at_rest(Vector4::zeros())), 1.0),
            };
            Curve {
                metric: Box::new(Minkowski),
                path,
                default_span: span,
                spatial_unit: [length; 3],
            }
        }
        MetricKind::Schwarzschild => {
            let m = q(need(args.mass, "mass")?, Dimension::mass());
            let r = q(need(args.r, "r")?, length);
            r.expect(length, "r")?;
            inputs.push(("mass", m));
            inputs.push(("r", r));
            let metric = Schwarzschild::new(m, c)?;
            let (path, span): (Box<dyn Worldline>, f64) = match args.curve {
                CurveKind::Static => (
                    Box::new(StaticObserver::new(metric.rs, r.value, FRAC_PI_2, 0.0)?),
                    r.value,
                ),
                CurveKind::Geodesic => {
                    let w = RadialFreeFall::new(metric.rs, r.value, FRAC_PI_2, 0.0)?;
                    (Box::new(w), 0.9 * w.horizon_crossing())
                }
                CurveKind::Hyperbolic => {
                    return Err(CliError::Config(
                        "the hyperbolic curve is defined in the minkowski metric".into(),
                    ))
                }
            };
            Curve {
                metric: Box::new(metric),
                path,
                default_span: span,
                spatial_unit: [length, Dimension::dimensionless(), Dimension::dimensionless()],
            }
        }
    };
    Ok((curve, inputs))
}

fn worldline(
    env: &mut ResultEnvelope,
    c: &ConstantSet,
    args: &CurveArgs,
    samples: usize,
    s_min: f64,
    s_max: Option<f64>,
) -> Result<(), CliError> {
    let (curve, inputs) = build_curve(args, c)?;
    for (name, v) in inputs {
        env.input(name, v);
    }
    if samples == 0 {
        return Err(CliError::Config("samples must be positive".into()));
    }
    let s_max = s_max.unwrap_or(s_min + curve.default_span);
    let length = Dimension::length();
    env.input("s_min", q(s_min, length));
    env.input("s_max", q(s_max, length));
    let grid: Vec<f64> = (0..samples)
        .map(|i| {
            if samples == 1 {
                s_min
            } else {
                s_min + (s_max - s_min) * i as f64 / (samples - 1) as f64
            }
        })
        .collect();
    let rows = grid
        .par_iter()
        .map(|&s| {
            let acc = covariant_acceleration(curve.metric.as_ref(), curve.path.as_ref(), s, c)?;
            let mut row = vec![Sci(s)];
            row.extend(acc.velocity.position.iter().map(|&x| Sci(x)));
            row.extend(acc.velocity.components.iter().map(|&v| Sci(v)));
            row.push(Sci(acc.scalar_a.value));
            row.push(Sci(match acc.rho {
                CurvatureRadius::Finite(r) => r.value,
                CurvatureRadius::Infinite => f64::INFINITY,
            }));
            Ok(row)
        })
        .collect::<Result<Vec<_>, qvh_core::Error>>()?;

    let inv = length.scaled((-1).into());
    let velocity_units = curve
        .spatial_unit
        .map(|d| if d == length { Dimension::dimensionless() } else { inv });
    let mut columns = vec![env.column("s", q(0.0, length)), env.column("x0", q(0.0, length))];
    for (i, d) in curve.spatial_unit.iter().enumerate() {
        columns.push(env.column(&format!("x{}", i + 1), q(0.0, *d)));
    }
    columns.push(env.column("v0", Quantity::dimensionless(0.0)));
    for (i, d) in velocity_units.iter().enumerate() {
        columns.push(env.column(&format!("v{}", i + 1), q(0.0, *d)));
    }
    columns.push(env.column("a", q(0.0, Dimension::acceleration())));
    columns.push(env.column("rho", q(0.0, length)));
    let geodesic = rows.iter().all(|r| r[9].0 == 0.0);
    env.flag("geodesic", geodesic);
    env.notes
        .push(format!("metric {}, signature (+,−,−,−), x0 = ct", curve.metric.name()));
    if rows.iter().any(|r| !r[10].0.is_finite()) {
        env.notes.push("rho is infinite where a = 0".into());
    }
    env.table = Some(Table { columns, rows });
    Ok(())
}

fn bundle(env: &mut ResultEnvelope, c: &ConstantSet, alpha: f64, args: &CurveArgs, s: f64) -> Result<(), CliError> {
    let (curve, inputs) = build_curve(args, c)?;
    for (name, v) in inputs {
        env.input(name, v);
    }
    env.input("s", q(s, Dimension::length()));
    let l = planck_limits(alpha, c)?;
    let acc = covariant_acceleration(curve.metric.as_ref(), curve.path.as_ref(), s, c)?;
    let point = BundlePoint::with_limits(acc.velocity.position, acc.velocity.components, &l)?;
    let bm = bundle_metric(curve.metric.as_ref(), &point)?;
    let report = acceleration_bound_check(curve.metric.as_ref(), curve.path.as_ref(), s, &l, c)?;
    let gauge = gauge_potential(curve.metric.as_ref(), &point)?;

    env.output("rho0", l.rho0, "c²/a₀", None);
    env.output("a0", l.a0, "2πα(c⁷/ħG)^(1/2)", None);
    env.output("a", report.a, "c²(−g(Dv/ds, Dv/ds))^(1/2)", None);
    env.output("a_over_a0", Quantity::dimensionless(report.ratio), "a/a₀", None);
    env.output(
        "dsigma2_per_ds2",
        Quantity::dimensionless(report.dsigma2_per_ds2),
        "1 + ρ₀² g(Dv/ds, Dv/ds)",
        None,
    );
    env.output(
        "gauge_norm",
        Quantity::dimensionless(gauge.0.norm()),
        "|ρ₀ v^λ Γ^μ_λν|",
        None,
    );
    env.flag("bound_satisfied", report.satisfied);
    env.flag("bound_saturated", report.saturated);
    env.notes.push("bundle coordinates (x^μ, ρ₀ v^μ), indices 0..7".into());
    env.matrix = Some(
        (0..8)
            .map(|i| (0..8).map(|j| Sci(bm.matrix[(i, j)])).collect())
            .collect(),
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn suppress(
    env: &mut ResultEnvelope,
    c: &ConstantSet,
    alpha: f64,
    mass: f64,
    momentum: &[f64; 3],
    velocity: &[f64; 3],
    n: f64,
    sweep: Option<(Option<f64>, usize)>,
) -> Result<(), CliError> {
    let m = q(mass, Dimension::mass());
    let p = momentum.map(|x| q(x, Dimension::momentum()));
    let u = velocity.map(|x| q(x, Dimension::velocity()));
    env.input("mass", m);
    for (name, v) in ["px", "py", "pz"].into_iter().zip(p) {
        env.input(name, v);
    }
    for (name, v) in ["vx", "vy", "vz"].into_iter().zip(u) {
        env.input(name, v);
    }
    env.input("N", Quantity::dimensionless(n));
    env.flag("n_default", n == 1.0);
    let l = planck_limits(alpha, c)?;
    let mode = ModeSpec::new(m, &p, Complex64::new(1.0, 0.0), Branch::Positive, c)?;
    let pt = FieldPoint::new(Vector4::zeros(), &u, c)?;
    let s = suppression_factor(&mode, &pt, &l, c)?;
    let none = Quantity::dimensionless;
    env.output("gamma", none(lorentz_gamma(&u, c)?), "(1 − |dx/dt|²/c²)^(−1/2)", None);
    env.output(
        "exponent",
        none(s.exponent),
        "(1/2πα)(γm/m_pl)((1 + |p|²/m²c²)^(1/2) − p·u/mc²)",
        None,
    );
    env.output(
        "exponent_contracted",
        none(s.exponent_contracted),
        "ρ₀|p_μ v^μ|/ħ",
        None,
    );
    env.output("factor", none(s.value), "e^(−exponent)", None);
    let v = pt.four_velocity(c);
    let canonical = mode_amplitude(&mode, &pt, &v, n, q(0.0, Dimension::length()), c)?.norm();
    let regularised = mode_amplitude(&mode, &pt, &v, n, l.rho0, c)?.norm();
    env.output(
        "amplitude_canonical",
        none(canonical),
        "2/((2π)^(3/2)(2p⁰N)^(1/2))",
        None,
    );
    env.output(
        "amplitude_regularised",
        none(regularised),
        "canonical × e^(−ρ₀ p_μ v^μ/ħ)",
        None,
    );
    env.flag("positive_branch_open", mode.contract_velocity(&v) >= 0.0);

    if let Some((p_max, points)) = sweep {
        if points < 2 {
            return Err(CliError::Config("a sweep needs at least two points".into()));
        }
        let dir = Vector3::from(*momentum);
        let dir = if dir.norm() > 0.0 {
            dir.normalize()
        } else {
            Vector3::z()
        };
        let p_max = match p_max {
            Some(v) => v,
            None => (planck_scale(c)?.m_pl * c.c).value,
        };
        env.input("p_max", q(p_max, Dimension::momentum()));
        let rows = (0..points)
            .into_par_iter()
            .map(|i| {
                let k = p_max * i as f64 / (points - 1) as f64;
                let pk = (dir * k).map(|x| q(x, Dimension::momentum()));
                let mode = ModeSpec::new(m, &[pk[0], pk[1], pk[2]], Complex64::new(1.0, 0.0), Branch::Positive, c)?;
                let s = suppression_factor(&mode, &pt, &l, c)?;
                Ok(vec![Sci(k), Sci(s.value)])
            })
            .collect::<Result<Vec<_>, qvh_core::Error>>()?;
        let columns = vec![
            env.column("p", q(0.0, Dimension::momentum())),
            env.column("factor", none(0.0)),
        ];
        env.table = Some(Table { columns, rows });
    }
    Ok(())
}
