//! Vacuum pair production by a static electric field and the thermal
//! response of the vacuum to uniform proper acceleration.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::exp_dilog;
use crate::units::{ConstantSet, Dimension, Quantity};
use crate::Estimate;

/// Default relative truncation tolerance for the pair-production series.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// Time and distance over which a virtual pair of mass `m` can exist.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FluctuationScales {
    pub delta_t: Quantity,
    pub delta_e: Quantity,
    pub delta_x: Quantity,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TemperatureEstimate {
    pub exact: Quantity,
    pub heuristic: Quantity,
}

/// Breakdown of a pair-production rate evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SchwingerRate {
    pub rate: Quantity,
    pub prefactor: Quantity,
    pub critical_field: Quantity,
    /// Σ e^{-n E_c/E}/n².
    pub series_sum: f64,
    pub terms: u32,
}

fn check_rel_tol(rel_tol: f64) -> Result<()> {
    if rel_tol > 0.0 && rel_tol < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "rel_tol must lie in (0, 1), got {rel_tol}"
        )))
    }
}

/// Electron-positron pairs produced per unit time and volume by a static
/// field `field`.
pub fn schwinger_rate(field: Quantity, consts: &ConstantSet, rel_tol: f64) -> Result<Quantity> {
    schwinger_rate_detailed(field, consts, rel_tol).map(|r| r.rate)
}

pub fn schwinger_rate_detailed(field: Quantity, consts: &ConstantSet, rel_tol: f64) -> Result<SchwingerRate> {
    let e_field = field.expect_nonnegative(Dimension::electric_field(), "electric field")?;
    check_rel_tol(rel_tol)?;
    consts.validate()?;
    let critical = critical_field(consts.m_e, consts, Estimate::Exact)?;
    let prefactor = consts.e.powi(2) * field.powi(2) / (consts.hbar.powi(2) * consts.c) / (PI * PI);
    if e_field == 0.0 {
        return Ok(SchwingerRate {
            rate: Quantity::new(0.0, Dimension::rate_density()),
            prefactor,
            critical_field: critical,
            series_sum: 0.0,
            terms: 0,
        });
    }
    let sum = exp_dilog(critical.value / e_field, rel_tol);
    let rate = (prefactor * sum.value).ensure_finite("pair-production rate")?;
    debug_assert_eq!(rate.dim, Dimension::rate_density());
    Ok(SchwingerRate {
        rate,
        prefactor,
        critical_field: critical,
        series_sum: sum.value,
        terms: sum.terms,
    })
}

/// Field strength at which pair production of mass-`mass` particles becomes
/// copious: πm²c³/(eħ) exactly, 2m²c³/(eħ) from the work-over-Compton-length
/// estimate.
pub fn critical_field(mass: Quantity, consts: &ConstantSet, mode: Estimate) -> Result<Quantity> {
    mass.expect_positive(Dimension::mass(), "mass")?;
    let coefficient = match mode {
        Estimate::Exact => PI,
        Estimate::Heuristic => 2.0,
    };
    (coefficient * mass.powi(2) * consts.c.powi(3) / (consts.e * consts.hbar)).ensure_finite("critical field")
}

pub fn fluctuation_scales(mass: Quantity, consts: &ConstantSet) -> Result<FluctuationScales> {
    mass.expect_positive(Dimension::mass(), "mass")?;
    let delta_e = (2.0 * mass * consts.c.powi(2)).ensure_finite("energy uncertainty")?;
    let delta_t = (consts.hbar / delta_e).ensure_finite("fluctuation time")?;
    let delta_x = (consts.c * delta_t).ensure_finite("fluctuation length")?;
    Ok(FluctuationScales {
        delta_t,
        delta_e,
        delta_x,
    })
}

/// Proper acceleration 2mc³/ħ at which the inertial force does work mc² over
/// the fluctuation length ħ/(2mc).
pub fn characteristic_acceleration(mass: Quantity, consts: &ConstantSet) -> Result<Quantity> {
    mass.expect_positive(Dimension::mass(), "mass")?;
    (2.0 * mass * consts.c.powi(3) / consts.hbar).ensure_finite("characteristic acceleration")
}

/// Work (ma)(ħ/2mc) = ħa/(2c) done on one virtual particle; the particle
/// mass cancels.
pub(crate) fn inertial_pair_work(accel: Quantity, consts: &ConstantSet) -> Quantity {
    consts.hbar * accel / (2.0 * consts.c)
}

/// Temperature of a relativistic gas whose mean energy is `energy` = 3kT.
pub(crate) fn thermal_temperature(energy: Quantity, consts: &ConstantSet) -> Quantity {
    energy / (3.0 * consts.k)
}

pub fn unruh_temperature(accel: Quantity, consts: &ConstantSet) -> Result<TemperatureEstimate> {
    accel.expect_nonnegative(Dimension::acceleration(), "acceleration")?;
    let exact = (consts.hbar * accel / (2.0 * PI * consts.k * consts.c)).ensure_finite("Unruh temperature")?;
    let heuristic =
        thermal_temperature(inertial_pair_work(accel, consts), consts).ensure_finite("Unruh temperature estimate")?;
    Ok(TemperatureEstimate { exact, heuristic })
}

/// Intermediate values of the massless-quantum temperature estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MasslessChain {
    pub delta_t: Quantity,
    pub wavelength: Quantity,
    pub delta_x: Quantity,
    pub effective_mass: Quantity,
    /// (ħω/c²)·a·λ/(4π) evaluated numerically from the intermediates.
    pub work_from_chain: Quantity,
    /// The same work after substituting ω = 2πc/λ, which removes ω.
    pub work: Quantity,
    pub temperature: Quantity,
}

pub fn massless_chain(accel: Quantity, omega: Quantity, consts: &ConstantSet) -> Result<MasslessChain> {
    accel.expect_nonnegative(Dimension::acceleration(), "acceleration")?;
    omega.expect_positive(Dimension::angular_frequency(), "angular frequency")?;
    let delta_t = (0.5 * omega.recip()).ensure_finite("massless fluctuation time")?;
    let wavelength = (2.0 * PI * consts.c / omega).ensure_finite("wavelength")?;
    let delta_x = wavelength / (4.0 * PI);
    let effective_mass = consts.hbar * omega / consts.c.powi(2);
    let work_from_chain = (effective_mass * accel * delta_x).ensure_finite("massless work")?;
    let work = inertial_pair_work(accel, consts).ensure_finite("massless work")?;
    let temperature = thermal_temperature(work, consts).ensure_finite("massless temperature")?;
    Ok(MasslessChain {
        delta_t,
        wavelength,
        delta_x,
        effective_mass,
        work_from_chain,
        work,
        temperature,
    })
}

/// ħa/(6kc) from the massless-quantum argument; independent of `omega`.
pub fn massless_unruh_temperature(accel: Quantity, omega: Quantity, consts: &ConstantSet) -> Result<Quantity> {
    massless_chain(accel, omega, consts).map(|c| c.temperature)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::UnitSystem;

    fn si() -> ConstantSet {
        ConstantSet::si()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn zero_field_gives_zero_rate() {
        let r = schwinger_rate(Quantity::new(0.0, Dimension::electric_field()), &si(), 1e-12).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.dim, Dimension::rate_density());
    }

    #[test]
    fn negative_field_and_bad_tolerance_rejected() {
        let e = Quantity::new(-1.0, Dimension::electric_field());
        assert!(schwinger_rate(e, &si(), 1e-12).is_err());
        let e = Quantity::new(1.0, Dimension::electric_field());
        assert!(schwinger_rate(e, &si(), 0.0).is_err());
        assert!(schwinger_rate(e, &si(), 1.0).is_err());
    }

    #[test]
    fn rate_at_critical_field() {
        let c = si();
        let ec = critical_field(c.m_e, &c, Estimate::Exact).unwrap();
        let r = schwinger_rate_detailed(ec, &c, 1e-12).unwrap();
        // brute-force Σ e^{-n}/n² (mpmath nsum): 0.40875428734889626903
        assert!(rel(r.series_sum, 0.408_754_287_348_896_3) < 1e-11);
        assert!(rel(r.rate.value, r.prefactor.value * 0.408_754_287_348_896_3) < 1e-11);
    }

    #[test]
    fn critical_field_values() {
        let c = si();
        let ec = critical_field(c.m_e, &c, Estimate::Exact).unwrap();
        assert!(rel(ec.value, 4.157_223_926_699_237_6e18) < 1e-12);
        assert_eq!(ec.dim, Dimension::electric_field());
        let h = critical_field(c.m_e, &c, Estimate::Heuristic).unwrap();
        assert!(rel(h.value / ec.value, 2.0 / PI) < 1e-15);
        let doubled = critical_field(2.0 * c.m_e, &c, Estimate::Exact).unwrap();
        assert!(rel(doubled.value, 4.0 * ec.value) < 1e-15);
        assert!(critical_field(Quantity::new(0.0, Dimension::mass()), &c, Estimate::Exact).is_err());
    }

    #[test]
    fn fluctuation_scale_values() {
        let c = si();
        let s = fluctuation_scales(c.m_e, &c).unwrap();
        assert!(rel(s.delta_x.value, 1.930_796_338_621_416_8e-13) < 1e-12);
        assert!(rel((s.delta_x / s.delta_t).value, c.c.value) < 1e-15);
        let s2 = fluctuation_scales(2.0 * c.m_e, &c).unwrap();
        assert!(rel(s2.delta_x.value, 0.5 * s.delta_x.value) < 1e-15);
        assert!(rel(s2.delta_t.value, 0.5 * s.delta_t.value) < 1e-15);
    }

    #[test]
    fn characteristic_acceleration_values() {
        let c = si();
        let a = characteristic_acceleration(c.m_e, &c).unwrap();
        assert!(rel(a.value, 4.654_841_946_605_96e29) < 1e-12);
        let m = Quantity::new(c.hbar.value / (2.0 * c.c.value.powi(3)), Dimension::mass());
        assert!(rel(characteristic_acceleration(m, &c).unwrap().value, 1.0) < 1e-15);
    }

    #[test]
    fn unruh_values() {
        let c = si();
        let t = unruh_temperature(Quantity::new(9.81, Dimension::acceleration()), &c).unwrap();
        assert!(rel(t.exact.value, 3.977_968_265_813_07e-20) < 1e-12);
        assert!(rel(t.heuristic.value / t.exact.value, PI / 3.0) < 1e-15);
        assert_eq!(t.exact.dim, Dimension::temperature());
        let z = unruh_temperature(Quantity::new(0.0, Dimension::acceleration()), &c).unwrap();
        assert_eq!((z.exact.value, z.heuristic.value), (0.0, 0.0));
        assert!(unruh_temperature(Quantity::new(-1.0, Dimension::acceleration()), &c).is_err());
    }

    #[test]
    fn massless_channel() {
        let c = si();
        let a = Quantity::new(3.2e20, Dimension::acceleration());
        let w = Quantity::new(1.0e15, Dimension::angular_frequency());
        let chain = massless_chain(a, w, &c).unwrap();
        assert!(rel(chain.work_from_chain.value, chain.work.value) < 1e-14);
        assert_eq!(chain.temperature, unruh_temperature(a, &c).unwrap().heuristic);
        let w10 = Quantity::new(1.0e16, Dimension::angular_frequency());
        assert_eq!(
            massless_unruh_temperature(a, w, &c).unwrap(),
            massless_unruh_temperature(a, w10, &c).unwrap()
        );
        let zero = Quantity::new(0.0, Dimension::acceleration());
        assert_eq!(massless_unruh_temperature(zero, w, &c).unwrap().value, 0.0);
        let bad = Quantity::new(0.0, Dimension::angular_frequency());
        assert!(massless_unruh_temperature(a, bad, &c).is_err());
    }

    #[test]
    fn natural_units_dimensions() {
        let c = ConstantSet::for_system(UnitSystem::Natural);
        let t = unruh_temperature(Quantity::new(2.0 * PI, Dimension::acceleration()), &c).unwrap();
        assert!(rel(t.exact.value, 1.0) < 1e-15);
    }
}
