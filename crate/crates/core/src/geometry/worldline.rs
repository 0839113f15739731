use std::fmt;
use std::sync::Arc;

use nalgebra::{Vector3, Vector4};

use super::metric::Coords;
use crate::error::{must_be_positive, Error, Result};
use crate::units::{ConstantSet, Dimension, Quantity};

/// A timelike curve x^μ(s) parametrised by the interval s (a length).
///
/// Implementors may supply analytic first and second derivatives; missing
/// ones are computed by central differences.
pub trait Worldline: Send + Sync {
    fn position(&self, s: f64) -> Coords;

    /// dx^μ/ds.
    fn velocity(&self, _s: f64) -> Option<Vector4<f64>> {
        None
    }

    /// d²x^μ/ds².
    fn acceleration(&self, _s: f64) -> Option<Vector4<f64>> {
        None
    }

    /// Typical interval over which the curve bends appreciably.
    fn parameter_scale(&self) -> f64 {
        1.0
    }
}

/// Inertial observer in Minkowski coordinates (ct, x, y, z) moving with
/// coordinate velocity β c.
#[derive(Clone, Copy, Debug)]
pub struct InertialObserver {
    pub origin: Coords,
    /// dx⁰/ds, dx^i/ds.
    pub four_velocity: Vector4<f64>,
}

impl InertialObserver {
    pub fn at_rest(origin: Coords) -> Self {
        Self {
            origin,
            four_velocity: Vector4::new(1.0, 0.0, 0.0, 0.0),
        }
    }

    pub fn moving(origin: Coords, beta: Vector3<f64>) -> Result<Self> {
        let b2 = beta.norm_squared();
        if !(b2 < 1.0) {
            return Err(Error::InvalidInput("speed must be below c".into()));
        }
        let gamma = 1.0 / (1.0 - b2).sqrt();
        Ok(Self {
            origin,
            four_velocity: Vector4::new(gamma, gamma * beta[0], gamma * beta[1], gamma * beta[2]),
        })
    }
}

impl Worldline for InertialObserver {
    fn position(&self, s: f64) -> Coords {
        self.origin + self.four_velocity * s
    }
    fn velocity(&self, _s: f64) -> Option<Vector4<f64>> {
        Some(self.four_velocity)
    }
    fn acceleration(&self, _s: f64) -> Option<Vector4<f64>> {
        Some(Vector4::zeros())
    }
}

/// Uniformly accelerated motion along x in Minkowski spacetime:
/// ct = ρ sinh(s/ρ), x = ρ cosh(s/ρ) with ρ = c²/a.
#[derive(Clone, Copy, Debug)]
pub struct HyperbolicWorldline {
    /// c²/a in the working length unit.
    pub rho: f64,
}

impl HyperbolicWorldline {
    pub fn new(accel: Quantity, consts: &ConstantSet) -> Result<Self> {
        let a = accel.expect_positive(Dimension::acceleration(), "acceleration")?;
        let rho = consts.c.value * consts.c.value / a;
        if !rho.is_finite() || rho <= 0.0 {
            return Err(Error::NonFinite("worldline curvature radius".into()));
        }
        Ok(Self { rho })
    }
}

impl Worldline for HyperbolicWorldline {
    fn position(&self, s: f64) -> Coords {
        let u = s / self.rho;
        Vector4::new(self.rho * u.sinh(), self.rho * u.cosh(), 0.0, 0.0)
    }
    fn velocity(&self, s: f64) -> Option<Vector4<f64>> {
        let u = s / self.rho;
        Some(Vector4::new(u.cosh(), u.sinh(), 0.0, 0.0))
    }
    fn acceleration(&self, s: f64) -> Option<Vector4<f64>> {
        let u = s / self.rho;
        Some(Vector4::new(u.sinh(), u.cosh(), 0.0, 0.0) / self.rho)
    }
    fn parameter_scale(&self) -> f64 {
        self.rho
    }
}

fn check_exterior(rs: f64, r: f64) -> Result<()> {
    if !(rs > 0.0 && rs.is_finite()) {
        return Err(must_be_positive("Schwarzschild radius"));
    }
    if !(r > rs && r.is_finite()) {
        return Err(Error::HorizonSingular {
            r,
            horizon: rs,
            g00: 1.0 - rs / r,
        });
    }
    Ok(())
}

/// Observer held at fixed (r, θ, φ) outside a Schwarzschild horizon.
#[derive(Clone, Copy, Debug)]
pub struct StaticObserver {
    pub rs: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl StaticObserver {
    pub fn new(rs: f64, r: f64, theta: f64, phi: f64) -> Result<Self> {
        check_exterior(rs, r)?;
        Ok(Self { rs, r, theta, phi })
    }

    fn redshift(&self) -> f64 {
        (1.0 - self.rs / self.r).sqrt()
    }
}

impl Worldline for StaticObserver {
    fn position(&self, s: f64) -> Coords {
        Vector4::new(s / self.redshift(), self.r, self.theta, self.phi)
    }
    fn velocity(&self, _s: f64) -> Option<Vector4<f64>> {
        Some(Vector4::new(1.0 / self.redshift(), 0.0, 0.0, 0.0))
    }
    fn acceleration(&self, _s: f64) -> Option<Vector4<f64>> {
        Some(Vector4::zeros())
    }
    fn parameter_scale(&self) -> f64 {
        self.r
    }
}

/// Radial geodesic plunge from rest at infinity, passing `r_start` at s = 0:
/// r(s)^{3/2} = r_start^{3/2} − (3/2)√r_s s.
#[derive(Clone, Copy, Debug)]
pub struct RadialFreeFall {
    pub rs: f64,
    pub r_start: f64,
    pub theta: f64,
    pub phi: f64,
}

impl RadialFreeFall {
    pub fn new(rs: f64, r_start: f64, theta: f64, phi: f64) -> Result<Self> {
        check_exterior(rs, r_start)?;
        Ok(Self {
            rs,
            r_start,
            theta,
            phi,
        })
    }

    pub fn radius(&self, s: f64) -> f64 {
        (self.r_start.powf(1.5) - 1.5 * self.rs.sqrt() * s).powf(2.0 / 3.0)
    }

    /// Interval elapsed before reaching the horizon.
    pub fn horizon_crossing(&self) -> f64 {
        (self.r_start.powf(1.5) - self.rs.powf(1.5)) / (1.5 * self.rs.sqrt())
    }

    /// ct(r) = −r_s[(2/3)u³ + 2u + ln|(u − 1)/(u + 1)|], u = √(r/r_s), up to
    /// a constant fixed so that ct(r_start) = 0.
    fn coordinate_time(&self, r: f64) -> f64 {
        let f = |r: f64| {
            let u = (r / self.rs).sqrt();
            -self.rs * (2.0 / 3.0 * u.powi(3) + 2.0 * u + ((u - 1.0) / (u + 1.0)).abs().ln())
        };
        f(r) - f(self.r_start)
    }
}

impl Worldline for RadialFreeFall {
    fn position(&self, s: f64) -> Coords {
        let r = self.radius(s);
        Vector4::new(self.coordinate_time(r), r, self.theta, self.phi)
    }
    fn velocity(&self, s: f64) -> Option<Vector4<f64>> {
        let r = self.radius(s);
        let f = 1.0 - self.rs / r;
        Some(Vector4::new(1.0 / f, -(self.rs / r).sqrt(), 0.0, 0.0))
    }
    fn acceleration(&self, s: f64) -> Option<Vector4<f64>> {
        let r = self.radius(s);
        let f = 1.0 - self.rs / r;
        let dr = -(self.rs / r).sqrt();
        let d2r = -self.rs / (2.0 * r * r);
        let d2t = -(self.rs / (r * r)) * dr / (f * f);
        Some(Vector4::new(d2t, d2r, 0.0, 0.0))
    }
    fn parameter_scale(&self) -> f64 {
        self.r_start
    }
}

type PathFn = dyn Fn(f64) -> Coords + Send + Sync;

/// A worldline given only by its position callback; derivatives are numeric.
#[derive(Clone)]
pub struct WorldlineFn {
    path: Arc<PathFn>,
    scale: f64,
}

impl WorldlineFn {
    pub fn new(scale: f64, path: impl Fn(f64) -> Coords + Send + Sync + 'static) -> Self {
        Self {
            path: Arc::new(path),
            scale,
        }
    }
}

impl fmt::Debug for WorldlineFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WorldlineFn").field("scale", &self.scale).finish()
    }
}

impl Worldline for WorldlineFn {
    fn position(&self, s: f64) -> Coords {
        (self.path)(s)
    }
    fn parameter_scale(&self) -> f64 {
        self.scale
    }
}

/// dx/ds, analytic when available.
pub fn tangent<W: Worldline + ?Sized>(w: &W, s: f64) -> Vector4<f64> {
    if let Some(v) = w.velocity(s) {
        return v;
    }
    let h = step(f64::EPSILON.cbrt(), w, s);
    (w.position(s + h) - w.position(s - h)) / ((s + h) - (s - h))
}

/// d²x/ds², analytic when available, else differenced from the tangent.
pub fn curvature_vector<W: Worldline + ?Sized>(w: &W, s: f64) -> Vector4<f64> {
    if let Some(a) = w.acceleration(s) {
        return a;
    }
    if w.velocity(s).is_some() {
        let h = step(f64::EPSILON.cbrt(), w, s);
        return (tangent(w, s + h) - tangent(w, s - h)) / ((s + h) - (s - h));
    }
    let h = step(f64::EPSILON.powf(0.25), w, s);
    let width = 0.5 * ((s + h) - (s - h));
    (w.position(s + h) - 2.0 * w.position(s) + w.position(s - h)) / (width * width)
}

fn step<W: Worldline + ?Sized>(relative: f64, w: &W, s: f64) -> f64 {
    relative * w.parameter_scale().abs().max(s.abs() * f64::EPSILON.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_derivatives_of_hyperbola() {
        let hyper = HyperbolicWorldline { rho: 2.0 };
        let path = WorldlineFn::new(2.0, move |s| hyper.position(s));
        for s in [-1.0, 0.0, 0.7, 3.0] {
            let v = tangent(&path, s);
            let a = curvature_vector(&path, s);
            assert!((v - hyper.velocity(s).unwrap()).norm() < 1e-9 * v.norm());
            let exact = hyper.acceleration(s).unwrap();
            assert!((a - exact).norm() < 1e-6 * exact.norm(), "{a} vs {exact}");
        }
    }

    #[test]
    fn free_fall_derivatives_are_consistent() {
        let w = RadialFreeFall::new(1.0, 20.0, 1.0, 0.0).unwrap();
        let numeric = WorldlineFn::new(20.0, move |s| w.position(s));
        for s in [0.0, 10.0, 40.0] {
            let v = w.velocity(s).unwrap();
            let vn = tangent(&numeric, s);
            assert!((v - vn).norm() < 1e-8 * v.norm(), "{v} vs {vn}");
        }
        assert!(w.radius(w.horizon_crossing()) - 1.0 < 1e-12);
    }

    #[test]
    fn exterior_required() {
        assert!(StaticObserver::new(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(RadialFreeFall::new(1.0, 0.5, 1.0, 0.0).is_err());
        assert!(InertialObserver::moving(Coords::zeros(), Vector3::new(1.0, 0.0, 0.0)).is_err());
    }
}
