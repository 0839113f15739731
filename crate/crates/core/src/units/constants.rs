use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{Dimension, Quantity, BASE_COUNT};
use crate::error::{Error, Result};

/// Elementary charge, C (exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Reduced Planck constant, J s (exact).
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Newtonian constant of gravitation, m³ kg⁻¹ s⁻² (CODATA 2018).
pub const GRAVITATIONAL: f64 = 6.674_30e-11;
/// Electron mass, kg (CODATA 2018).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// 1 GeV in joules; fixes the remaining mass scale of natural units.
pub const GEV: f64 = 1.602_176_634e-10;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    /// kg, m, s, K, A.
    Si,
    /// ħ = c = k = 1; masses in GeV/c², charges in units of e.
    Natural,
    /// ħ = c = k = G = 1; charges in units of e.
    Planck,
}

impl UnitSystem {
    pub const ALL: [UnitSystem; 3] = [UnitSystem::Si, UnitSystem::Natural, UnitSystem::Planck];

    pub fn name(self) -> &'static str {
        match self {
            UnitSystem::Si => "si",
            UnitSystem::Natural => "natural",
            UnitSystem::Planck => "planck",
        }
    }

    /// SI size of the unit for each base dimension (M, L, T, Θ, I), using
    /// the CODATA values.
    pub fn base_scales(self) -> [f64; BASE_COUNT] {
        self.base_scales_from(&ConstantSet::si())
    }

    /// Same as [`UnitSystem::base_scales`] with the SI constants taken from `si`.
    pub fn base_scales_from(self, si: &ConstantSet) -> [f64; BASE_COUNT] {
        let (hbar, c, k, g, e) = (si.hbar.value, si.c.value, si.k.value, si.g.value, si.e.value);
        let mass = match self {
            UnitSystem::Si => return [1.0; BASE_COUNT],
            UnitSystem::Natural => GEV / (c * c),
            UnitSystem::Planck => (hbar * c / g).sqrt(),
        };
        let length = hbar / (mass * c);
        let time = length / c;
        [mass, length, time, mass * c * c / k, e / time]
    }

    /// Symbols for the base units, used to build unit labels.
    pub fn base_symbols(self) -> [&'static str; BASE_COUNT] {
        match self {
            UnitSystem::Si => ["kg", "m", "s", "K", "A"],
            UnitSystem::Natural => ["GeV/c^2", "hbar*c/GeV", "hbar/GeV", "GeV/k", "e*GeV/hbar"],
            UnitSystem::Planck => ["m_P", "l_P", "t_P", "T_P", "e/t_P"],
        }
    }

    /// SI size of one unit of `dim` in this system.
    fn unit_size(self, si: &ConstantSet, dim: &Dimension) -> f64 {
        self.base_scales_from(si)
            .iter()
            .zip(dim.exponents())
            .map(|(s, e)| s.powf(*e.numer() as f64 / *e.denom() as f64))
            .product()
    }

    /// Human-readable unit label for a dimension in this system.
    pub fn unit_label(self, dim: &Dimension) -> String {
        if dim.is_dimensionless() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .base_symbols()
            .iter()
            .zip(dim.exponents())
            .filter(|(_, e)| **e != 0.into())
            .map(|(sym, e)| {
                if *e == 1.into() {
                    sym.to_string()
                } else if e.is_integer() {
                    format!("{sym}^{}", e.to_integer())
                } else {
                    format!("{sym}^({}/{})", e.numer(), e.denom())
                }
            })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for UnitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for UnitSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "si" => Ok(UnitSystem::Si),
            "natural" => Ok(UnitSystem::Natural),
            "planck" => Ok(UnitSystem::Planck),
            other => Err(Error::UnknownUnitSystem(other.to_string())),
        }
    }
}

/// The six fundamental constants in one unit system.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConstantSet {
    pub system: UnitSystem,
    pub e: Quantity,
    pub hbar: Quantity,
    pub c: Quantity,
    pub k: Quantity,
    #[serde(rename = "G")]
    pub g: Quantity,
    pub m_e: Quantity,
}

impl ConstantSet {
    /// Builds a set from raw values, checking signs and dimensions.
    pub fn new(
        system: UnitSystem,
        e: Quantity,
        hbar: Quantity,
        c: Quantity,
        k: Quantity,
        g: Quantity,
        m_e: Quantity,
    ) -> Result<Self> {
        let set = Self {
            system,
            e,
            hbar,
            c,
            k,
            g,
            m_e,
        };
        set.validate()?;
        Ok(set)
    }

    /// CODATA 2018 values in SI units.
    pub fn si() -> Self {
        Self {
            system: UnitSystem::Si,
            e: Quantity::new(ELEMENTARY_CHARGE, Dimension::charge()),
            hbar: Quantity::new(REDUCED_PLANCK, Dimension::action()),
            c: Quantity::new(SPEED_OF_LIGHT, Dimension::velocity()),
            k: Quantity::new(BOLTZMANN, Dimension::entropy()),
            g: Quantity::new(GRAVITATIONAL, Dimension::gravitational()),
            m_e: Quantity::new(ELECTRON_MASS, Dimension::mass()),
        }
    }

    pub fn for_system(system: UnitSystem) -> Self {
        let si = Self::si();
        if system == UnitSystem::Si {
            return si;
        }
        let to = |q: Quantity| Quantity::new(q.value / system.unit_size(&si, &q.dim), q.dim);
        let unity = |q: Quantity| Quantity::new(1.0, q.dim);
        let g = match system {
            UnitSystem::Planck => unity(si.g),
            _ => to(si.g),
        };
        Self {
            system,
            e: unity(si.e),
            hbar: unity(si.hbar),
            c: unity(si.c),
            k: unity(si.k),
            g,
            m_e: to(si.m_e),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.e.expect_positive(Dimension::charge(), "elementary charge e")?;
        self.hbar.expect_positive(Dimension::action(), "hbar")?;
        self.c.expect_positive(Dimension::velocity(), "speed of light c")?;
        self.k.expect_positive(Dimension::entropy(), "Boltzmann constant k")?;
        self.g
            .expect_positive(Dimension::gravitational(), "gravitational constant G")?;
        self.m_e.expect_positive(Dimension::mass(), "electron mass")?;
        Ok(())
    }

    /// Named entries in a fixed order, for tabulation.
    pub fn entries(&self) -> [(&'static str, Quantity); 6] {
        [
            ("e", self.e),
            ("hbar", self.hbar),
            ("c", self.c),
            ("k", self.k),
            ("G", self.g),
            ("m_e", self.m_e),
        ]
    }
}

/// Constant set for a unit-system tag such as `"si"`.
pub fn make_constants(system: &str) -> Result<ConstantSet> {
    Ok(ConstantSet::for_system(system.parse()?))
}

/// Planck mass, length, time and temperature.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlanckScale {
    pub m_pl: Quantity,
    pub l_pl: Quantity,
    pub t_pl: Quantity,
    #[serde(rename = "T_pl")]
    pub temp_pl: Quantity,
}

pub fn planck_scale(consts: &ConstantSet) -> Result<PlanckScale> {
    consts.validate()?;
    let ConstantSet { hbar, c, k, g, .. } = *consts;
    let m_pl = (hbar * c / g).sqrt().ensure_finite("Planck mass")?;
    let l_pl = (hbar * g / c.powi(3)).sqrt().ensure_finite("Planck length")?;
    let t_pl = (l_pl / c).ensure_finite("Planck time")?;
    let temp_pl = ((hbar * c.powi(5) / g).sqrt() / k).ensure_finite("Planck temperature")?;
    Ok(PlanckScale {
        m_pl,
        l_pl,
        t_pl,
        temp_pl,
    })
}

/// Re-expresses `q` (given in `from` units) in `to` units. The SI sizes of
/// the base units are derived from `consts`, which must be the SI set.
pub fn convert(q: Quantity, from: UnitSystem, to: UnitSystem, consts: &ConstantSet) -> Result<Quantity> {
    if consts.system != UnitSystem::Si {
        return Err(Error::InvalidInput("unit conversion needs the SI constant set".into()));
    }
    let value = q.expect(q.dim, "converted quantity")?;
    if from == to {
        return Ok(q);
    }
    let scale = from.unit_size(consts, &q.dim) / to.unit_size(consts, &q.dim);
    let out = value * scale;
    if !out.is_finite() || (out == 0.0 && value != 0.0) {
        return Err(Error::NotExpressible {
            dim: q.dim,
            system: to.to_string(),
        });
    }
    Ok(Quantity::new(out, q.dim))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn si_speed_of_light_is_exact() {
        let c = make_constants("SI").unwrap().c;
        assert_eq!(c.value, 299_792_458.0);
        assert_eq!(c.dim, Dimension::velocity());
    }

    #[test]
    fn natural_and_planck_unities() {
        let nat = make_constants("natural").unwrap();
        assert_eq!((nat.hbar.value, nat.c.value, nat.k.value), (1.0, 1.0, 1.0));
        assert_eq!(nat.hbar.dim, Dimension::action());
        let planck = make_constants("planck").unwrap();
        assert_eq!(planck.g.value, 1.0);
        // electron mass in GeV
        assert!((nat.m_e.value - 0.000_510_998_95).abs() < 1e-11);
    }

    #[test]
    fn unknown_tag() {
        assert!(matches!(make_constants("cgs"), Err(Error::UnknownUnitSystem(_))));
    }

    #[test]
    fn constant_dimensions_are_checked() {
        let si = ConstantSet::si();
        let bad = ConstantSet::new(UnitSystem::Si, si.e, si.c, si.c, si.k, si.g, si.m_e);
        assert!(matches!(bad, Err(Error::DimensionMismatch { .. })));
        let neg = ConstantSet::new(UnitSystem::Si, si.e, si.hbar, -si.c, si.k, si.g, si.m_e);
        assert!(matches!(neg, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn planck_units_give_unit_planck_mass() {
        let p = planck_scale(&ConstantSet::for_system(UnitSystem::Planck)).unwrap();
        assert_eq!(p.m_pl.value, 1.0);
        assert_eq!(p.l_pl.value, 1.0);
        assert_eq!(p.temp_pl.value, 1.0);
    }

    #[test]
    fn conversions() {
        let si = ConstantSet::si();
        let one_planck_mass = Quantity::new(1.0, Dimension::mass());
        let kg = convert(one_planck_mass, UnitSystem::Planck, UnitSystem::Si, &si).unwrap();
        assert!((kg.value / 2.176_434_342_051_126_7e-8 - 1.0).abs() < 1e-12);

        let c = Quantity::new(SPEED_OF_LIGHT, Dimension::velocity());
        let nat = convert(c, UnitSystem::Si, UnitSystem::Natural, &si).unwrap();
        assert!((nat.value - 1.0).abs() < 1e-15);

        let q = Quantity::new(3.7, Dimension::energy());
        assert_eq!(convert(q, UnitSystem::Natural, UnitSystem::Natural, &si).unwrap(), q);

        let nat_consts = ConstantSet::for_system(UnitSystem::Natural);
        assert!(convert(q, UnitSystem::Natural, UnitSystem::Si, &nat_consts).is_err());
    }

    #[test]
    fn unit_labels() {
        assert_eq!(UnitSystem::Si.unit_label(&Dimension::acceleration()), "m s^-2");
        assert_eq!(UnitSystem::Planck.unit_label(&Dimension::mass()), "m_P");
    }
}
