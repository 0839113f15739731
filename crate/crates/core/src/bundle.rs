//! Geometry of the spacetime tangent bundle: the connection-induced gauge
//! potential, the 8×8 bundle metric, its line element, and the maximal
//! acceleration bound along worldlines.

use nalgebra::{Matrix4, SMatrix, SVector, Vector4};
use serde::Serialize;

use crate::black_hole::PlanckLimits;
use crate::error::{Error, Result};
use crate::geometry::{christoffel, covariant_acceleration, quadratic_form, Coords, Metric, Worldline};
use crate::units::{ConstantSet, Dimension, Quantity};

pub type Matrix8 = SMatrix<f64, 8, 8>;
pub type Vector8 = SVector<f64, 8>;

/// Tolerance on the two routes to dσ²/ds² inside [`acceleration_bound_check`],
/// and on how far below zero dσ²/ds² may round while still counting as the
/// saturated bound.
pub const BOUND_IDENTITY_TOL: f64 = 1e-10;
pub const BOUNDARY_TOL: f64 = 1e-12;

/// A point (x^μ, v^μ) of the tangent bundle together with the length ρ₀ that
/// converts four-velocities into bundle coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BundlePoint {
    pub x: Coords,
    pub v: Vector4<f64>,
    pub rho0: Quantity,
}

impl BundlePoint {
    pub fn new(x: Coords, v: Vector4<f64>, rho0: Quantity) -> Result<Self> {
        rho0.expect_nonnegative(Dimension::length(), "rho0")?;
        if x.iter().chain(v.iter()).any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("bundle point".into()));
        }
        Ok(Self { x, v, rho0 })
    }

    /// Uses the ρ₀ of a Planck-limit set.
    pub fn with_limits(x: Coords, v: Vector4<f64>, limits: &PlanckLimits) -> Result<Self> {
        Self::new(x, v, limits.rho0)
    }

    /// Bundle coordinates {x^μ, ρ₀ v^μ}.
    pub fn coordinates(&self) -> Vector8 {
        let r = self.rho0.value;
        Vector8::from_fn(|i, _| if i < 4 { self.x[i] } else { r * self.v[i - 4] })
    }
}

/// A^μ_ν = ρ₀ v^λ Γ^μ_{λν}, stored with row μ and column ν.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaugePotential(pub Matrix4<f64>);

pub fn gauge_potential<M: Metric + ?Sized>(metric: &M, p: &BundlePoint) -> Result<GaugePotential> {
    let gamma = christoffel(metric, &p.x)?;
    let rho0 = p.rho0.value;
    let a = Matrix4::from_fn(|mu, nu| {
        let mut acc = 0.0;
        for lambda in 0..4 {
            acc += p.v[lambda] * gamma[(mu, lambda, nu)];
        }
        rho0 * acc
    });
    Ok(GaugePotential(a))
}

/// The bundle metric
///
/// ```text
/// G = | g + Aᵀ g A   (g A)ᵀ |
///     | g A          g      |
/// ```
///
/// where (g A)_{nμ} = g_{nα} A^α_μ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BundleMetric {
    pub matrix: Matrix8,
    pub g: Matrix4<f64>,
    pub gauge: GaugePotential,
    /// g + Aᵀ g A.
    pub upper_left: Matrix4<f64>,
    /// g A, the lower-left block; its transpose is the upper-right block.
    pub lower_left: Matrix4<f64>,
}

impl BundleMetric {
    pub fn quadratic_form(&self, d: &Vector8) -> f64 {
        d.dot(&(self.matrix * d))
    }
}

pub fn bundle_metric<M: Metric + ?Sized>(metric: &M, p: &BundlePoint) -> Result<BundleMetric> {
    let gauge = gauge_potential(metric, p)?;
    let g = metric.components(&p.x);
    let a = gauge.0;
    let lowered = g * a;
    let quad = a.transpose() * lowered;
    // symmetrise so the assembled matrix is exactly symmetric
    let upper_left = Matrix4::from_fn(|i, j| g[(i, j)] + 0.5 * (quad[(i, j)] + quad[(j, i)]));
    let mut matrix = Matrix8::zeros();
    for i in 0..4 {
        for j in 0..4 {
            matrix[(i, j)] = upper_left[(i, j)];
            matrix[(i, j + 4)] = lowered[(j, i)];
            matrix[(i + 4, j)] = lowered[(i, j)];
            matrix[(i + 4, j + 4)] = g[(i, j)];
        }
    }
    Ok(BundleMetric {
        matrix,
        g,
        gauge,
        upper_left,
        lower_left: lowered,
    })
}

/// dσ² evaluated two ways.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BundleInterval {
    /// g dx dx + ρ₀² g (dv + Γ v dx)(dv + Γ v dx).
    pub direct: f64,
    /// G_MN dX^M dX^N with dX = {dx, ρ₀ dv}.
    pub block: f64,
}

pub fn bundle_interval<M: Metric + ?Sized>(
    metric: &M,
    p: &BundlePoint,
    dx: &Vector4<f64>,
    dv: &Vector4<f64>,
) -> Result<BundleInterval> {
    let g = metric.components(&p.x);
    let gamma = christoffel(metric, &p.x)?;
    let rho0 = p.rho0.value;
    let covariant = dv + gamma.contract(&p.v, dx);
    let direct = quadratic_form(&g, dx, dx) + rho0 * rho0 * quadratic_form(&g, &covariant, &covariant);

    let bm = bundle_metric(metric, p)?;
    let d = Vector8::from_fn(|i, _| if i < 4 { dx[i] } else { rho0 * dv[i - 4] });
    let block = bm.quadratic_form(&d);
    if !(direct.is_finite() && block.is_finite()) {
        return Err(Error::NonFinite("bundle interval".into()));
    }
    Ok(BundleInterval { direct, block })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub a: Quantity,
    /// a / a₀.
    pub ratio: f64,
    /// 1 + ρ₀² g(Dv/ds, Dv/ds), which equals 1 − a²/a₀².
    pub dsigma2_per_ds2: f64,
    /// dσ²/ds² ≥ 0, allowing [`BOUNDARY_TOL`] of rounding at saturation.
    pub satisfied: bool,
    /// |dσ²/ds²| within [`BOUNDARY_TOL`]: the acceleration sits at a₀.
    pub saturated: bool,
}

/// Evaluates the bundle line element per unit ds² along `w` and whether the
/// proper acceleration stays within a₀.
pub fn acceleration_bound_check<M, W>(
    metric: &M,
    w: &W,
    s: f64,
    limits: &PlanckLimits,
    consts: &ConstantSet,
) -> Result<BoundReport>
where
    M: Metric + ?Sized,
    W: Worldline + ?Sized,
{
    let acc = covariant_acceleration(metric, w, s, consts)?;
    let rho0 = limits.rho0.expect(Dimension::length(), "rho0")?;
    let a0 = limits.a0.expect_positive(Dimension::acceleration(), "a0")?;
    let ratio = acc.scalar_a.value / a0;
    let from_bundle = 1.0 + rho0 * rho0 * acc.g_dv_dv;
    let from_ratio = 1.0 - ratio * ratio;
    if !from_bundle.is_finite() || (from_bundle - from_ratio).abs() > BOUND_IDENTITY_TOL * from_ratio.abs().max(1.0) {
        return Err(Error::IdentityViolation(format!(
            "1 + rho0^2 g(Dv,Dv) = {from_bundle} but 1 - a^2/a0^2 = {from_ratio}"
        )));
    }
    Ok(BoundReport {
        a: acc.scalar_a,
        ratio,
        dsigma2_per_ds2: from_bundle,
        satisfied: from_bundle >= -BOUNDARY_TOL,
        saturated: from_bundle.abs() <= BOUNDARY_TOL,
    })
}
