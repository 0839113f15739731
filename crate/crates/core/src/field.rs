//! Mode functions of the Planck-regularised scalar field, treated with
//! c-number amplitudes in place of creation and annihilation operators.

use std::f64::consts::PI;

use nalgebra::{Vector3, Vector4};
use num_complex::Complex64;
use serde::Serialize;

use crate::black_hole::PlanckLimits;
use crate::error::{must_be_positive, Error, Result};
use crate::geometry::Coords;
use crate::units::{planck_scale, ConstantSet, Dimension, Quantity};

/// Relative tolerance on p⁰² = (mc)² + |p|² when validating a mode.
pub const ON_SHELL_TOL: f64 = 1e-12;

fn expect_vec3(q: &[Quantity; 3], dim: Dimension, what: &str) -> Result<Vector3<f64>> {
    let mut out = Vector3::zeros();
    for (o, c) in out.iter_mut().zip(q) {
        *o = c.expect(dim, what)?;
    }
    Ok(out)
}

/// Γ = (1 − |u|²/c²)^{-1/2} for a coordinate velocity `dxdt`.
pub fn lorentz_gamma(dxdt: &[Quantity; 3], consts: &ConstantSet) -> Result<f64> {
    let u = expect_vec3(dxdt, Dimension::velocity(), "velocity")?;
    gamma_from_speed(u.norm(), consts.c.value)
}

fn gamma_from_speed(speed: f64, c: f64) -> Result<f64> {
    if !(speed < c) {
        return Err(Error::InvalidInput("speed must be below c".into()));
    }
    // (c − u)(c + u) keeps precision as u → c
    Ok(c / ((c - speed) * (c + speed)).sqrt())
}

/// Field evaluation point: spacetime position and the tangent-space
/// velocity dx/dt, with its Lorentz factor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FieldPoint {
    pub x: Coords,
    /// Coordinate velocity in the working velocity unit.
    pub dxdt: Vector3<f64>,
    pub gamma: f64,
}

impl FieldPoint {
    pub fn new(x: Coords, dxdt: &[Quantity; 3], consts: &ConstantSet) -> Result<Self> {
        let gamma = lorentz_gamma(dxdt, consts)?;
        let dxdt = expect_vec3(dxdt, Dimension::velocity(), "velocity")?;
        Ok(Self { x, dxdt, gamma })
    }

    /// v^μ = γ(1, u/c).
    pub fn four_velocity(&self, consts: &ConstantSet) -> Vector4<f64> {
        let u = self.dxdt / consts.c.value;
        Vector4::new(self.gamma, self.gamma * u[0], self.gamma * u[1], self.gamma * u[2])
    }
}

/// Positive-frequency modes carry a(p), negative-frequency modes a†(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModeSpec {
    pub mass: Quantity,
    /// Spatial momentum in the working momentum unit.
    pub momentum: Vector3<f64>,
    /// Energy component p⁰ = E/c, in momentum units.
    pub p0: f64,
    pub amplitude: Complex64,
    pub branch: Branch,
}

impl ModeSpec {
    /// On-shell mode with p⁰ = ((mc)² + |p|²)^{1/2}.
    pub fn new(
        mass: Quantity,
        momentum: &[Quantity; 3],
        amplitude: Complex64,
        branch: Branch,
        consts: &ConstantSet,
    ) -> Result<Self> {
        mass.expect_positive(Dimension::mass(), "mass")?;
        let p = expect_vec3(momentum, Dimension::momentum(), "momentum")?;
        let mc = mass.value * consts.c.value;
        let p0 = mc.hypot(p.norm());
        if !p0.is_finite() {
            return Err(Error::NonFinite("mode energy".into()));
        }
        Ok(Self {
            mass,
            momentum: p,
            p0,
            amplitude,
            branch,
        })
    }

    pub fn check_on_shell(&self, consts: &ConstantSet) -> Result<()> {
        self.mass.expect_positive(Dimension::mass(), "mass")?;
        let mc = self.mass.value * consts.c.value;
        let shell = mc.hypot(self.momentum.norm());
        if !(self.p0 > 0.0) || ((self.p0 - shell) / shell).abs() > ON_SHELL_TOL {
            return Err(Error::InvalidInput(format!(
                "mode is off shell: p0 = {} but ((mc)^2 + |p|^2)^(1/2) = {shell}",
                self.p0
            )));
        }
        Ok(())
    }

    /// p_μ v^μ = p⁰v⁰ − p·v in signature (+,−,−,−).
    pub fn contract_velocity(&self, v: &Vector4<f64>) -> f64 {
        self.p0 * v[0] - self.momentum.dot(&v.fixed_rows::<3>(1))
    }

    /// p_μ x^μ with x⁰ = ct.
    pub fn contract_position(&self, x: &Coords) -> f64 {
        self.p0 * x[0] - self.momentum.dot(&x.fixed_rows::<3>(1))
    }
}

/// The Planck suppression of one mode, computed from the explicit
/// mass/momentum/velocity expansion and from the four-vector contraction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Suppression {
    /// (1/2πα)(γm/m_pl)(√(1 + (|p|/mc)²) − p·u/(mc²)).
    pub exponent: f64,
    /// ρ₀ |p_μ v^μ| / ħ.
    pub exponent_contracted: f64,
    /// e^{−exponent}, in (0, 1].
    pub value: f64,
    pub value_contracted: f64,
}

pub fn suppression_factor(
    mode: &ModeSpec,
    pt: &FieldPoint,
    limits: &PlanckLimits,
    consts: &ConstantSet,
) -> Result<Suppression> {
    mode.check_on_shell(consts)?;
    gamma_from_speed(pt.dxdt.norm(), consts.c.value)?;
    let rho0 = limits.rho0.expect_nonnegative(Dimension::length(), "rho0")?;
    if !(limits.alpha > 0.0) {
        return Err(must_be_positive("alpha"));
    }
    let m_pl = planck_scale(consts)?.m_pl.value;
    let c = consts.c.value;
    let m = mode.mass.value;
    let mc = m * c;
    let p = mode.momentum;
    let bracket = (1.0 + (p.norm() / mc).powi(2)).sqrt() - p.dot(&pt.dxdt) / (mc * c);
    let exponent = pt.gamma * m / m_pl * bracket / (2.0 * PI * limits.alpha);

    let pv = mode.contract_velocity(&pt.four_velocity(consts));
    let exponent_contracted = rho0 * pv.abs() / consts.hbar.value;
    if !(exponent.is_finite() && exponent_contracted.is_finite()) {
        return Err(Error::NonFinite("suppression exponent".into()));
    }
    Ok(Suppression {
        exponent,
        exponent_contracted,
        value: (-exponent).exp(),
        value_contracted: (-exponent_contracted).exp(),
    })
}

/// 2 / ((2π)^{3/2} (2p⁰N)^{1/2}).
fn mode_normalisation(p0: f64, n: f64) -> f64 {
    2.0 / ((2.0 * PI).powf(1.5) * (2.0 * p0 * n).sqrt())
}

fn amplitude_at(
    mode: &ModeSpec,
    x: &Coords,
    v: &Vector4<f64>,
    n: f64,
    rho0: f64,
    consts: &ConstantSet,
) -> Result<Complex64> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(must_be_positive("normalisation N"));
    }
    mode.check_on_shell(consts)?;
    let hbar = consts.hbar.value;
    let pv = mode.contract_velocity(v);
    let phase = mode.contract_position(x) / hbar;
    let damping = rho0 * pv / hbar;
    // pv = 0 belongs to the positive branch
    let (sign, open) = match mode.branch {
        Branch::Positive => (-1.0, pv >= 0.0),
        Branch::Negative => (1.0, pv < 0.0),
    };
    if !open {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let wave = Complex64::from_polar((sign * damping).exp(), sign * phase);
    let out = mode_normalisation(mode.p0, n) * wave * mode.amplitude;
    if !(out.re.is_finite() && out.im.is_finite()) {
        return Err(Error::NonFinite("mode amplitude".into()));
    }
    Ok(out)
}

/// Single-mode term of the field at `pt.x` and tangent-space velocity `v`:
/// positive branch 2 e^{−ipx/ħ} e^{−ρ₀pv/ħ} θ(pv) a / ((2π)^{3/2}(2p⁰N)^{1/2}),
/// negative branch with the signs of both exponents flipped and θ(−pv).
pub fn mode_amplitude(
    mode: &ModeSpec,
    pt: &FieldPoint,
    v: &Vector4<f64>,
    n: f64,
    rho0: Quantity,
    consts: &ConstantSet,
) -> Result<Complex64> {
    let rho0 = rho0.expect_nonnegative(Dimension::length(), "rho0")?;
    amplitude_at(mode, &pt.x, v, n, rho0, consts)
}

/// A mode together with its quadrature weight on the momentum grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightedMode {
    pub mode: ModeSpec,
    pub weight: f64,
}

/// Σ weight × mode amplitude over a user-supplied momentum grid, summed in
/// input order.
pub fn field_sample(
    x: &Coords,
    v: &Vector4<f64>,
    modes: &[WeightedMode],
    n: f64,
    rho0: Quantity,
    consts: &ConstantSet,
) -> Result<Complex64> {
    if modes.is_empty() {
        return Err(Error::InvalidInput("mode list is empty".into()));
    }
    let rho0 = rho0.expect_nonnegative(Dimension::length(), "rho0")?;
    let mut acc = Complex64::new(0.0, 0.0);
    for wm in modes {
        acc += wm.weight * amplitude_at(&wm.mode, x, v, n, rho0, consts)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::black_hole::planck_limits;
    use crate::units::UnitSystem;

    fn vel(v: [f64; 3]) -> [Quantity; 3] {
        v.map(|c| Quantity::new(c, Dimension::velocity()))
    }

    fn mom(v: [f64; 3]) -> [Quantity; 3] {
        v.map(|c| Quantity::new(c, Dimension::momentum()))
    }

    #[test]
    fn gamma_values() {
        let c = ConstantSet::si();
        let cv = c.c.value;
        assert_eq!(lorentz_gamma(&vel([0.0; 3]), &c).unwrap(), 1.0);
        let g = lorentz_gamma(&vel([0.0, 3f64.sqrt() / 2.0 * cv, 0.0]), &c).unwrap();
        assert!((g - 2.0).abs() < 1e-12);
        // mpmath, 40 digits: 707.10695796330911233
        let g = lorentz_gamma(&vel([0.999_999 * cv, 0.0, 0.0]), &c).unwrap();
        assert!((g / 707.106_957_963_309_1 - 1.0).abs() < 1e-9);
        assert!(lorentz_gamma(&vel([cv, 0.0, 0.0]), &c).is_err());
    }

    #[test]
    fn rest_mode_suppression() {
        let c = ConstantSet::for_system(UnitSystem::Planck);
        let l = planck_limits(1.0, &c).unwrap();
        let m = Quantity::new(0.01, Dimension::mass());
        let mode = ModeSpec::new(m, &mom([0.0; 3]), Complex64::new(1.0, 0.0), Branch::Positive, &c).unwrap();
        let pt = FieldPoint::new(Coords::zeros(), &vel([0.0; 3]), &c).unwrap();
        let s = suppression_factor(&mode, &pt, &l, &c).unwrap();
        assert!((s.value - (-0.01 / (2.0 * PI)).exp()).abs() < 1e-15);
    }

    #[test]
    fn off_shell_rejected() {
        let c = ConstantSet::for_system(UnitSystem::Planck);
        let l = planck_limits(1.0, &c).unwrap();
        let mut mode = ModeSpec::new(
            Quantity::new(0.5, Dimension::mass()),
            &mom([0.1, 0.0, 0.0]),
            Complex64::new(1.0, 0.0),
            Branch::Positive,
            &c,
        )
        .unwrap();
        mode.p0 *= 1.01;
        let pt = FieldPoint::new(Coords::zeros(), &vel([0.0; 3]), &c).unwrap();
        assert!(suppression_factor(&mode, &pt, &l, &c).is_err());
    }

    #[test]
    fn branch_gate() {
        let c = ConstantSet::for_system(UnitSystem::Planck);
        let mode = ModeSpec::new(
            Quantity::new(0.5, Dimension::mass()),
            &mom([0.3, 0.0, 0.0]),
            Complex64::new(1.0, 0.0),
            Branch::Positive,
            &c,
        )
        .unwrap();
        let pt = FieldPoint::new(Coords::zeros(), &vel([0.0; 3]), &c).unwrap();
        let rho0 = Quantity::new(0.1, Dimension::length());
        let past = Vector4::new(-1.0, 0.0, 0.0, 0.0);
        assert_eq!(
            mode_amplitude(&mode, &pt, &past, 1.0, rho0, &c).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let neg = ModeSpec {
            branch: Branch::Negative,
            ..mode
        };
        assert_ne!(
            mode_amplitude(&neg, &pt, &past, 1.0, rho0, &c).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        // pv = 0 goes to the positive branch
        let v_null_pv = Vector4::new(0.3, mode.p0, 0.0, 0.0);
        assert_eq!(mode.contract_velocity(&v_null_pv), 0.0);
        assert_ne!(
            mode_amplitude(&mode, &pt, &v_null_pv, 1.0, rho0, &c).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(
            mode_amplitude(&neg, &pt, &v_null_pv, 1.0, rho0, &c).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert!(mode_amplitude(&mode, &pt, &past, 0.0, rho0, &c).is_err());
    }

    #[test]
    fn field_sample_basics() {
        let c = ConstantSet::for_system(UnitSystem::Planck);
        let mode = ModeSpec::new(
            Quantity::new(0.5, Dimension::mass()),
            &mom([0.3, 0.1, 0.0]),
            Complex64::new(0.2, 0.7),
            Branch::Positive,
            &c,
        )
        .unwrap();
        let x = Coords::new(1.0, 0.5, -0.2, 0.3);
        let v = Vector4::new(1.0, 0.0, 0.0, 0.0);
        let rho0 = Quantity::new(0.05, Dimension::length());
        let pt = FieldPoint::new(x, &vel([0.0; 3]), &c).unwrap();
        let single = field_sample(&x, &v, &[WeightedMode { mode, weight: 0.25 }], 1.0, rho0, &c).unwrap();
        assert_eq!(single, 0.25 * mode_amplitude(&mode, &pt, &v, 1.0, rho0, &c).unwrap());
        let silent = ModeSpec {
            amplitude: Complex64::new(0.0, 0.0),
            ..mode
        };
        let zero = field_sample(
            &x,
            &v,
            &[WeightedMode {
                mode: silent,
                weight: 1.0,
            }; 3],
            1.0,
            rho0,
            &c,
        )
        .unwrap();
        assert_eq!(zero, Complex64::new(0.0, 0.0));
        assert!(field_sample(&x, &v, &[], 1.0, rho0, &c).is_err());
    }
}
