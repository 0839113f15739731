//! Schwarzschild horizon thermodynamics and the Planck-limit family built on
//! the maximal proper acceleration.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{must_be_positive, Error, Result};
use crate::units::{ConstantSet, Dimension, Quantity};
use crate::vacuum::{inertial_pair_work, thermal_temperature};
use crate::Estimate;

/// A Schwarzschild black hole: its mass and horizon radius 2GM/c².
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SchwarzschildBh {
    pub mass: Quantity,
    pub radius: Quantity,
}

impl SchwarzschildBh {
    pub fn new(mass: Quantity, consts: &ConstantSet) -> Result<Self> {
        let radius = schwarzschild_radius(mass, consts)?;
        Ok(Self { mass, radius })
    }

    /// g₀₀ = 1 − R/r at areal radius `r`; positive outside the horizon.
    pub fn g00(&self, r: Quantity) -> Result<f64> {
        let r = r.expect(Dimension::length(), "radius")?;
        Ok(1.0 - self.radius.value / r)
    }
}

pub fn schwarzschild_radius(mass: Quantity, consts: &ConstantSet) -> Result<Quantity> {
    mass.expect_positive(Dimension::mass(), "mass")?;
    (2.0 * consts.g * mass / consts.c.powi(2)).ensure_finite("Schwarzschild radius")
}

fn outside_horizon(bh: &SchwarzschildBh, r: Quantity) -> Result<f64> {
    let g00 = bh.g00(r)?;
    if r.value <= bh.radius.value || g00 <= 0.0 {
        return Err(Error::HorizonSingular {
            r: r.value,
            horizon: bh.radius.value,
            g00,
        });
    }
    Ok(g00)
}

/// Proper acceleration (GM/r²)/√g₀₀ of an observer held static at `r`.
pub fn local_horizon_acceleration(mass: Quantity, r: Quantity, consts: &ConstantSet) -> Result<Quantity> {
    let bh = SchwarzschildBh::new(mass, consts)?;
    let g00 = outside_horizon(&bh, r)?;
    (consts.g * mass / r.powi(2) / g00.sqrt()).ensure_finite("local acceleration")
}

/// Redshifts a locally measured temperature to infinity: T∞ = √g₀₀ T.
pub fn tolman_transport(local: Quantity, g00: f64) -> Result<Quantity> {
    local.expect_nonnegative(Dimension::temperature(), "local temperature")?;
    if !(g00 > 0.0 && g00 <= 1.0) {
        return Err(Error::InvalidInput(format!("g00 must lie in (0, 1], got {g00}")));
    }
    Ok(local * g00.sqrt())
}

/// √g₀₀ times the energy ħa/(2c) that the horizon acceleration deposits on
/// a virtual particle, i.e. ħκ/(2c) with κ = GM/R². The equivalence-principle
/// route and the tidal route both reduce to this once the √g₀₀ factors are
/// cancelled against the Tolman redshift.
fn redshifted_pair_energy(bh: &SchwarzschildBh, consts: &ConstantSet) -> Quantity {
    let surface_gravity = consts.g * bh.mass / bh.radius.powi(2);
    inertial_pair_work(surface_gravity, consts)
}

/// Temperature at infinity of a Schwarzschild black hole: ħc³/(8πkGM)
/// exactly, ħc³/(24kGM) from the accelerated-vacuum estimate.
pub fn hawking_temperature(mass: Quantity, consts: &ConstantSet, mode: Estimate) -> Result<Quantity> {
    let bh = SchwarzschildBh::new(mass, consts)?;
    let energy = redshifted_pair_energy(&bh, consts);
    let t = match mode {
        Estimate::Exact => energy / (PI * consts.k),
        Estimate::Heuristic => thermal_temperature(energy, consts),
    };
    t.ensure_finite("Hawking temperature")
}

/// Work (1/g₀₀)(GMm/r³)(ħ/2mc)² done by the tidal force across a virtual
/// pair of mass `probe` at radius `r`.
pub fn tidal_work(mass: Quantity, probe: Quantity, r: Quantity, consts: &ConstantSet) -> Result<Quantity> {
    probe.expect_positive(Dimension::mass(), "probe mass")?;
    let bh = SchwarzschildBh::new(mass, consts)?;
    let g00 = outside_horizon(&bh, r)?;
    let compton = consts.hbar / (2.0 * probe * consts.c);
    (consts.g * mass * probe / r.powi(3) * compton.powi(2) / g00).ensure_finite("tidal work")
}

/// Intermediates of the tidal-force temperature estimate. Quantities at the
/// horizon carry a 1/√g₀₀ (or 1/g₀₀) factor that diverges there, so they are
/// reported with that factor stripped.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TidalChain {
    /// g₀₀ × tidal work at r = R for the given probe mass.
    pub work_stripped: Quantity,
    /// √g₀₀ × mc² solved from work = 2mc².
    pub rest_energy_stripped: Quantity,
    /// √g₀₀ × T_R, with mc² = 3kT_R.
    pub local_temperature_stripped: Quantity,
    /// T∞ after the Tolman redshift.
    pub temperature: Quantity,
}

pub fn tidal_chain(mass: Quantity, probe: Quantity, consts: &ConstantSet) -> Result<TidalChain> {
    probe.expect_positive(Dimension::mass(), "probe mass")?;
    let bh = SchwarzschildBh::new(mass, consts)?;
    let r = bh.radius;
    let compton = consts.hbar / (2.0 * probe * consts.c);
    let work_stripped = (consts.g * mass * probe / r.powi(3) * compton.powi(2)).ensure_finite("tidal work")?;
    // (1/g00) W m-independent form: (mc²)² g00 = G M ħ² / (8 R³)
    let rest_energy_stripped = (consts.g * mass * consts.hbar.powi(2) / (8.0 * r.powi(3)))
        .sqrt()
        .ensure_finite("tidal rest energy")?;
    let local_temperature_stripped = thermal_temperature(rest_energy_stripped, consts);
    let temperature =
        thermal_temperature(redshifted_pair_energy(&bh, consts), consts).ensure_finite("tidal temperature")?;
    Ok(TidalChain {
        work_stripped,
        rest_energy_stripped,
        local_temperature_stripped,
        temperature,
    })
}

/// Horizon temperature from tidal pair creation, seen at infinity; equal to
/// the heuristic Hawking temperature and independent of the probe mass.
pub fn tidal_temperature(mass: Quantity, probe: Quantity, consts: &ConstantSet) -> Result<Quantity> {
    tidal_chain(mass, probe, consts).map(|c| c.temperature)
}

/// Limits set by the maximal proper acceleration a₀ for a given order-unity α.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlanckLimits {
    pub alpha: f64,
    /// Smallest mass whose Schwarzschild radius exceeds its Compton length.
    pub m0: Quantity,
    /// Maximal proper acceleration.
    pub a0: Quantity,
    /// Sakharov temperature, the Unruh temperature at a₀.
    #[serde(rename = "T_S")]
    pub t_s: Quantity,
    /// Mass of a black hole at the Sakharov temperature.
    #[serde(rename = "M0")]
    pub big_m0: Quantity,
    /// Its horizon radius.
    #[serde(rename = "R0")]
    pub r0: Quantity,
    /// Its entropy.
    #[serde(rename = "S0")]
    pub s0: Quantity,
    /// Minimum radius of curvature of worldlines, c²/a₀.
    pub rho0: Quantity,
}

impl PlanckLimits {
    pub fn entries(&self) -> [(&'static str, Quantity); 7] {
        [
            ("m0", self.m0),
            ("a0", self.a0),
            ("T_S", self.t_s),
            ("M0", self.big_m0),
            ("R0", self.r0),
            ("S0", self.s0),
            ("rho0", self.rho0),
        ]
    }
}

/// ½(ħc/G)^{1/2}.
pub fn minimum_black_hole_mass(consts: &ConstantSet) -> Result<Quantity> {
    (0.5 * (consts.hbar * consts.c / consts.g).sqrt()).ensure_finite("minimum black-hole mass")
}

pub fn planck_limits(alpha: f64, consts: &ConstantSet) -> Result<PlanckLimits> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(must_be_positive("alpha"));
    }
    consts.validate()?;
    let ConstantSet { hbar, c, k, g, .. } = *consts;
    let planck_mass = (hbar * c / g).sqrt();
    let planck_length = (hbar * g / c.powi(3)).sqrt();
    let m0 = minimum_black_hole_mass(consts)?;
    let a0 = (2.0 * PI * alpha * (c.powi(7) / (hbar * g)).sqrt()).ensure_finite("a0")?;
    let t_s = (alpha * (hbar * c.powi(5) / g).sqrt() / k).ensure_finite("T_S")?;
    let big_m0 = (planck_mass / (8.0 * PI * alpha)).ensure_finite("M0")?;
    let r0 = (planck_length / (4.0 * PI * alpha)).ensure_finite("R0")?;
    let s0 = (k / (16.0 * PI * alpha * alpha)).ensure_finite("S0")?;
    let rho0 = (planck_length / (2.0 * PI * alpha)).ensure_finite("rho0")?;
    Ok(PlanckLimits {
        alpha,
        m0,
        a0,
        t_s,
        big_m0,
        r0,
        s0,
        rho0,
    })
}

/// Whether a particle of mass `m` is a black hole, i.e. its Schwarzschild
/// radius 2Gm/c² reaches its Compton extent ħ/(2mc).
pub fn black_hole_mass_check(m: Quantity, consts: &ConstantSet) -> Result<bool> {
    m.expect_positive(Dimension::mass(), "mass")?;
    Ok(m.value >= minimum_black_hole_mass(consts)?.value)
}
