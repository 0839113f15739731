use std::fmt;
use std::ops::{Index, IndexMut};
use std::sync::Arc;

use nalgebra::{Matrix4, Vector4};
use serde::Serialize;

use crate::black_hole::schwarzschild_radius;
use crate::error::{Error, Result};
use crate::units::{ConstantSet, Quantity};

pub type Coords = Vector4<f64>;

/// |det g| at or below this is treated as singular.
pub const SINGULAR_DET: f64 = 1e-30;

/// Γ^μ_{αβ}, stored as `[mu][alpha][beta]`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct Christoffel(pub [[[f64; 4]; 4]; 4]);

impl Christoffel {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Γ^μ_{αβ} a^α b^β.
    pub fn contract(&self, a: &Vector4<f64>, b: &Vector4<f64>) -> Vector4<f64> {
        Vector4::from_fn(|mu, _| {
            let mut acc = 0.0;
            for alpha in 0..4 {
                for beta in 0..4 {
                    acc += self.0[mu][alpha][beta] * a[alpha] * b[beta];
                }
            }
            acc
        })
    }

    /// Largest |Γ^μ_{αβ} − Γ^μ_{βα}|.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for mu in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    worst = worst.max((self.0[mu][a][b] - self.0[mu][b][a]).abs());
                }
            }
        }
        worst
    }
}

impl Index<(usize, usize, usize)> for Christoffel {
    type Output = f64;

    fn index(&self, (mu, a, b): (usize, usize, usize)) -> &f64 {
        &self.0[mu][a][b]
    }
}

impl IndexMut<(usize, usize, usize)> for Christoffel {
    fn index_mut(&mut self, (mu, a, b): (usize, usize, usize)) -> &mut f64 {
        &mut self.0[mu][a][b]
    }
}

/// A spacetime metric of signature (+,−,−,−) over coordinates whose zeroth
/// entry is x⁰ = ct, so that all coordinates of length type share a unit.
pub trait Metric: Send + Sync {
    fn name(&self) -> &str;

    /// g_{μν}(x).
    fn components(&self, x: &Coords) -> Matrix4<f64>;

    /// Analytic Γ^μ_{αβ}(x) when the metric knows it.
    fn christoffel_closed_form(&self, _x: &Coords) -> Option<Christoffel> {
        None
    }

    /// Typical size of each coordinate near `x`; finite-difference steps
    /// are taken proportional to it.
    fn coordinate_scale(&self, x: &Coords) -> Vector4<f64> {
        x.map(|c| c.abs().max(1.0))
    }
}

impl<M: Metric + ?Sized> Metric for Arc<M> {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn components(&self, x: &Coords) -> Matrix4<f64> {
        (**self).components(x)
    }
    fn christoffel_closed_form(&self, x: &Coords) -> Option<Christoffel> {
        (**self).christoffel_closed_form(x)
    }
    fn coordinate_scale(&self, x: &Coords) -> Vector4<f64> {
        (**self).coordinate_scale(x)
    }
}

/// Flat spacetime in Cartesian coordinates (ct, x, y, z).
#[derive(Clone, Copy, Debug, Default)]
pub struct Minkowski;

impl Metric for Minkowski {
    fn name(&self) -> &str {
        "minkowski"
    }

    fn components(&self, _x: &Coords) -> Matrix4<f64> {
        Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
    }

    fn christoffel_closed_form(&self, _x: &Coords) -> Option<Christoffel> {
        Some(Christoffel::zero())
    }
}

/// Exterior Schwarzschild geometry in coordinates (ct, r, θ, φ).
#[derive(Clone, Copy, Debug)]
pub struct Schwarzschild {
    pub mass: Quantity,
    /// Horizon radius 2GM/c² in the working length unit.
    pub rs: f64,
}

impl Schwarzschild {
    pub fn new(mass: Quantity, consts: &ConstantSet) -> Result<Self> {
        let rs = schwarzschild_radius(mass, consts)?.value;
        Ok(Self { mass, rs })
    }

    /// 1 − r_s/r.
    pub fn g00_at(&self, r: f64) -> f64 {
        1.0 - self.rs / r
    }
}

impl Metric for Schwarzschild {
    fn name(&self) -> &str {
        "schwarzschild"
    }

    fn components(&self, x: &Coords) -> Matrix4<f64> {
        let (r, theta) = (x[1], x[2]);
        let f = self.g00_at(r);
        let s = theta.sin();
        Matrix4::from_diagonal(&Vector4::new(f, -1.0 / f, -r * r, -r * r * s * s))
    }

    fn christoffel_closed_form(&self, x: &Coords) -> Option<Christoffel> {
        let (r, theta) = (x[1], x[2]);
        let rs = self.rs;
        let f = self.g00_at(r);
        let (s, c) = theta.sin_cos();
        let mut g = Christoffel::zero();
        let tr = rs / (2.0 * r * r * f);
        g[(0, 0, 1)] = tr;
        g[(0, 1, 0)] = tr;
        g[(1, 0, 0)] = rs * f / (2.0 * r * r);
        g[(1, 1, 1)] = -tr;
        g[(1, 2, 2)] = -r * f;
        g[(1, 3, 3)] = -r * f * s * s;
        g[(2, 1, 2)] = 1.0 / r;
        g[(2, 2, 1)] = 1.0 / r;
        g[(2, 3, 3)] = -s * c;
        g[(3, 1, 3)] = 1.0 / r;
        g[(3, 3, 1)] = 1.0 / r;
        g[(3, 2, 3)] = c / s;
        g[(3, 3, 2)] = c / s;
        Some(g)
    }

    fn coordinate_scale(&self, x: &Coords) -> Vector4<f64> {
        let r = x[1].abs();
        Vector4::new(x[0].abs().max(r), r, 1.0, 1.0)
    }
}

type MetricFn = dyn Fn(&Coords) -> Matrix4<f64> + Send + Sync;
type ChristoffelFn = dyn Fn(&Coords) -> Christoffel + Send + Sync;
type ScaleFn = dyn Fn(&Coords) -> Vector4<f64> + Send + Sync;

/// A metric supplied as callbacks, for geometries outside the built-ins.
#[derive(Clone)]
pub struct MetricSpec {
    name: String,
    g: Arc<MetricFn>,
    christoffel: Option<Arc<ChristoffelFn>>,
    scale: Option<Arc<ScaleFn>>,
}

impl MetricSpec {
    pub fn new(name: impl Into<String>, g: impl Fn(&Coords) -> Matrix4<f64> + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            g: Arc::new(g),
            christoffel: None,
            scale: None,
        }
    }

    pub fn with_christoffel(mut self, gamma: impl Fn(&Coords) -> Christoffel + Send + Sync + 'static) -> Self {
        self.christoffel = Some(Arc::new(gamma));
        self
    }

    pub fn with_scale(mut self, scale: impl Fn(&Coords) -> Vector4<f64> + Send + Sync + 'static) -> Self {
        self.scale = Some(Arc::new(scale));
        self
    }
}

impl fmt::Debug for MetricSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricSpec")
            .field("name", &self.name)
            .field("closed_form_christoffel", &self.christoffel.is_some())
            .finish()
    }
}

impl Metric for MetricSpec {
    fn name(&self) -> &str {
        &self.name
    }

    fn components(&self, x: &Coords) -> Matrix4<f64> {
        (self.g)(x)
    }

    fn christoffel_closed_form(&self, x: &Coords) -> Option<Christoffel> {
        self.christoffel.as_ref().map(|f| f(x))
    }

    fn coordinate_scale(&self, x: &Coords) -> Vector4<f64> {
        match &self.scale {
            Some(f) => f(x),
            None => x.map(|c| c.abs().max(1.0)),
        }
    }
}

/// Hides a metric's closed-form connection so that every consumer falls
/// back to finite differences.
#[derive(Clone, Copy, Debug)]
pub struct NumericOnly<M>(pub M);

impl<M: Metric> Metric for NumericOnly<M> {
    fn name(&self) -> &str {
        self.0.name()
    }
    fn components(&self, x: &Coords) -> Matrix4<f64> {
        self.0.components(x)
    }
    fn coordinate_scale(&self, x: &Coords) -> Vector4<f64> {
        self.0.coordinate_scale(x)
    }
}

/// g^{μν}(x), rejecting singular or non-finite metrics.
pub fn inverse_metric<M: Metric + ?Sized>(metric: &M, x: &Coords) -> Result<Matrix4<f64>> {
    let g = metric.components(x);
    let det = g.determinant();
    let singular = || Error::SingularMetric {
        at: [x[0], x[1], x[2], x[3]],
        det,
    };
    if !det.is_finite() || det.abs() <= SINGULAR_DET {
        return Err(singular());
    }
    g.try_inverse().ok_or_else(singular)
}

/// Γ^μ_{αβ}(x): the metric's closed form when it has one, central finite
/// differences otherwise.
pub fn christoffel<M: Metric + ?Sized>(metric: &M, x: &Coords) -> Result<Christoffel> {
    match metric.christoffel_closed_form(x) {
        Some(gamma) => {
            inverse_metric(metric, x)?;
            Ok(gamma)
        }
        None => christoffel_numeric(metric, x),
    }
}

/// Γ^μ_{αβ} = ½ g^{μν}(∂_α g_{νβ} + ∂_β g_{να} − ∂_ν g_{αβ}) with each
/// derivative taken by central differences, step ε^{1/3} × coordinate scale.
/// Lower-index symmetry is exact by construction.
pub fn christoffel_numeric<M: Metric + ?Sized>(metric: &M, x: &Coords) -> Result<Christoffel> {
    let ginv = inverse_metric(metric, x)?;
    let scale = metric.coordinate_scale(x);
    let step = f64::EPSILON.cbrt();
    // dg[k] = ∂_k g
    let mut dg = [Matrix4::zeros(); 4];
    for (k, dgk) in dg.iter_mut().enumerate() {
        let h = step * scale[k];
        let mut plus = *x;
        let mut minus = *x;
        plus[k] += h;
        minus[k] -= h;
        let width = plus[k] - minus[k];
        *dgk = (metric.components(&plus) - metric.components(&minus)) / width;
    }
    let mut gamma = Christoffel::zero();
    for mu in 0..4 {
        for a in 0..4 {
            for b in a..4 {
                let mut acc = 0.0;
                for nu in 0..4 {
                    acc += ginv[(mu, nu)] * (dg[a][(nu, b)] + dg[b][(nu, a)] - dg[nu][(a, b)]);
                }
                gamma[(mu, a, b)] = 0.5 * acc;
                gamma[(mu, b, a)] = 0.5 * acc;
            }
        }
    }
    if gamma.0.iter().flatten().flatten().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("Christoffel symbols".into()));
    }
    Ok(gamma)
}

/// ds² = g_{μν}(x) dx^μ dx^ν; positive for timelike displacements.
pub fn interval<M: Metric + ?Sized>(metric: &M, x: &Coords, dx: &Vector4<f64>) -> f64 {
    quadratic_form(&metric.components(x), dx, dx)
}

/// g(a, b).
pub fn quadratic_form(g: &Matrix4<f64>, a: &Vector4<f64>, b: &Vector4<f64>) -> f64 {
    a.dot(&(g * b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::Dimension;

    fn schwarzschild_unit() -> Schwarzschild {
        Schwarzschild {
            mass: Quantity::new(0.5, Dimension::mass()),
            rs: 1.0,
        }
    }

    #[test]
    fn minkowski_connection_vanishes() {
        let x = Coords::new(3.0, -2.0, 5.0, 1.0);
        assert_eq!(christoffel(&Minkowski, &x).unwrap(), Christoffel::zero());
        assert_eq!(christoffel_numeric(&Minkowski, &x).unwrap(), Christoffel::zero());
    }

    #[test]
    fn numeric_matches_closed_form() {
        let m = schwarzschild_unit();
        let x = Coords::new(0.0, 7.5, 1.1, 0.4);
        let exact = m.christoffel_closed_form(&x).unwrap();
        let fd = christoffel_numeric(&m, &x).unwrap();
        for mu in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let (e, n) = (exact[(mu, a, b)], fd[(mu, a, b)]);
                    assert!((e - n).abs() <= 1e-8 * e.abs().max(1e-30), "{mu}{a}{b}: {e} vs {n}");
                }
            }
        }
        assert_eq!(fd.asymmetry(), 0.0);
    }

    #[test]
    fn singular_metric_rejected() {
        let spec = MetricSpec::new("degenerate", |_| {
            Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, 0.0, -1.0))
        });
        assert!(matches!(
            christoffel(&spec, &Coords::zeros()),
            Err(Error::SingularMetric { .. })
        ));
    }

    #[test]
    fn intervals() {
        let x = Coords::zeros();
        let dt = 0.3;
        assert_eq!(interval(&Minkowski, &x, &Vector4::new(dt, 0.0, 0.0, 0.0)), dt * dt);
        assert_eq!(interval(&Minkowski, &x, &Vector4::new(dt, dt, 0.0, 0.0)), 0.0);
        let m = schwarzschild_unit();
        let x = Coords::new(0.0, 4.0, 1.0, 0.0);
        let dr = 0.01;
        let ds2 = interval(&m, &x, &Vector4::new(0.0, dr, 0.0, 0.0));
        assert!((ds2 + dr * dr / (1.0 - 1.0 / 4.0)).abs() < 1e-18);
    }

    #[test]
    fn callback_metric_uses_supplied_connection() {
        let spec = MetricSpec::new("flat", |_| Minkowski.components(&Coords::zeros())).with_christoffel(|_| {
            let mut g = Christoffel::zero();
            g[(0, 1, 1)] = 42.0;
            g
        });
        assert_eq!(christoffel(&spec, &Coords::zeros()).unwrap()[(0, 1, 1)], 42.0);
        assert_eq!(
            christoffel(&NumericOnly(spec), &Coords::zeros()).unwrap()[(0, 1, 1)],
            0.0
        );
    }
}
