use nalgebra::Vector4;
use serde::Serialize;

use super::metric::{christoffel, quadratic_form, Coords, Metric};
use super::worldline::{curvature_vector, tangent, Worldline};
use crate::error::{Error, Result};
use crate::units::{ConstantSet, Dimension, Quantity};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FourVelocity {
    pub position: Coords,
    pub components: Vector4<f64>,
    /// g_{μν} v^μ v^ν.
    pub norm: f64,
    /// norm − 1; zero for an interval-parametrised timelike curve.
    pub norm_defect: f64,
}

/// Radius of curvature c²/a of a worldline; geodesics have none.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum CurvatureRadius {
    Finite(Quantity),
    Infinite,
}

impl CurvatureRadius {
    pub fn finite(&self) -> Option<Quantity> {
        match self {
            CurvatureRadius::Finite(q) => Some(*q),
            CurvatureRadius::Infinite => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CovariantAcceleration {
    pub velocity: FourVelocity,
    /// Dv^μ/ds = dv^μ/ds + Γ^μ_{αβ} v^α v^β.
    pub components: Vector4<f64>,
    /// g_{μν} (Dv^μ/ds)(Dv^ν/ds); non-positive for timelike curves.
    pub g_dv_dv: f64,
    /// Proper acceleration a = c² √(−g(Dv, Dv)).
    pub scalar_a: Quantity,
    pub rho: CurvatureRadius,
}

/// v^μ = dx^μ/ds at `s`, without renormalisation.
pub fn four_velocity<M, W>(w: &W, metric: &M, s: f64) -> Result<FourVelocity>
where
    M: Metric + ?Sized,
    W: Worldline + ?Sized,
{
    let position = w.position(s);
    let components = tangent(w, s);
    if components.iter().chain(position.iter()).any(|c| !c.is_finite()) {
        return Err(Error::NonFinite(format!("four-velocity at s = {s}")));
    }
    let norm = quadratic_form(&metric.components(&position), &components, &components);
    if !norm.is_finite() {
        return Err(Error::NonFinite(format!("four-velocity norm at s = {s}")));
    }
    Ok(FourVelocity {
        position,
        components,
        norm,
        norm_defect: norm - 1.0,
    })
}

/// Covariant derivative of the four-velocity along `w` and the proper
/// acceleration it implies.
pub fn covariant_acceleration<M, W>(metric: &M, w: &W, s: f64, consts: &ConstantSet) -> Result<CovariantAcceleration>
where
    M: Metric + ?Sized,
    W: Worldline + ?Sized,
{
    let velocity = four_velocity(w, metric, s)?;
    if velocity.norm <= 0.0 {
        return Err(Error::NotTimelike { s, norm: velocity.norm });
    }
    let x = velocity.position;
    let v = velocity.components;
    let gamma = christoffel(metric, &x)?;
    let dv = curvature_vector(w, s);
    let components = dv + gamma.contract(&v, &v);
    if components.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite(format!("covariant acceleration at s = {s}")));
    }
    let g_dv_dv = quadratic_form(&metric.components(&x), &components, &components);
    let c2 = consts.c.value * consts.c.value;
    let a = c2 * (-g_dv_dv).max(0.0).sqrt();
    let scalar_a = Quantity::finite(a, Dimension::acceleration())?;
    let rho = if a > 0.0 {
        CurvatureRadius::Finite(Quantity::finite(c2 / a, Dimension::length())?)
    } else {
        CurvatureRadius::Infinite
    };
    Ok(CovariantAcceleration {
        velocity,
        components,
        g_dv_dv,
        scalar_a,
        rho,
    })
}
