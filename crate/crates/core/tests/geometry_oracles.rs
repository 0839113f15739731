//! Finite-difference geometry checked against hand-coded Schwarzschild
//! formulas and an independent geodesic integrator.

use std::f64::consts::PI;

use nalgebra::{Matrix4, Vector4};
use qvh_core::black_hole::local_horizon_acceleration;
use qvh_core::geometry::{
    christoffel, christoffel_numeric, covariant_acceleration, four_velocity, quadratic_form, Coords,
    HyperbolicWorldline, InertialObserver, Metric, MetricSpec, Minkowski, NumericOnly, RadialFreeFall, Schwarzschild,
    StaticObserver, Worldline,
};
use qvh_core::units::{ConstantSet, Dimension, Quantity, UnitSystem};
use rand::{rngs::StdRng, Rng, SeedableRng};

const SOLAR: f64 = 1.988_92e30;

/// Textbook Schwarzschild connection in (ct, r, θ, φ), written out
/// component by component.
fn oracle_gamma(rs: f64, r: f64, theta: f64) -> [[[f64; 4]; 4]; 4] {
    let mut g = [[[0.0; 4]; 4]; 4];
    let f = 1.0 - rs / r;
    let m_over = rs / 2.0; // GM/c²
    g[0][0][1] = (m_over / (r * r)) / f;
    g[0][1][0] = g[0][0][1];
    g[1][0][0] = (m_over / (r * r)) * f;
    g[1][1][1] = -(m_over / (r * r)) / f;
    g[1][2][2] = -(r - rs);
    g[1][3][3] = -(r - rs) * theta.sin().powi(2);
    g[2][1][2] = 1.0 / r;
    g[2][2][1] = 1.0 / r;
    g[2][3][3] = -theta.sin() * theta.cos();
    g[3][1][3] = 1.0 / r;
    g[3][3][1] = 1.0 / r;
    g[3][2][3] = theta.cos() / theta.sin();
    g[3][3][2] = theta.cos() / theta.sin();
    g
}

fn solar() -> (ConstantSet, Schwarzschild) {
    let c = ConstantSet::si();
    let m = Schwarzschild::new(Quantity::new(SOLAR, Dimension::mass()), &c).unwrap();
    (c, m)
}

#[test]
fn numeric_connection_matches_oracle_across_radii() {
    let (_, m) = solar();
    let mut rng = StdRng::seed_from_u64(7);
    for i in 0..20 {
        let r = m.rs * (3.0 + 97.0 * i as f64 / 19.0);
        let theta = rng.gen_range(0.3..2.8);
        let x = Coords::new(rng.gen_range(-1e4..1e4), r, theta, rng.gen_range(0.0..2.0 * PI));
        let fd = christoffel_numeric(&m, &x).unwrap();
        let oracle = oracle_gamma(m.rs, r, theta);
        for mu in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let (n, e) = (fd[(mu, a, b)], oracle[mu][a][b]);
                    if e == 0.0 {
                        assert_eq!(n, 0.0, "Γ^{mu}_{a}{b} at r = {r}");
                    } else {
                        assert!(((n - e) / e).abs() < 1e-6, "Γ^{mu}_{a}{b} at r = {r}: {n} vs {e}");
                    }
                }
            }
        }
        let closed = m.christoffel_closed_form(&x).unwrap();
        for mu in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let e = oracle[mu][a][b];
                    assert!((closed[(mu, a, b)] - e).abs() <= 1e-14 * e.abs());
                }
            }
        }
    }
}

fn wavy_metric() -> MetricSpec {
    MetricSpec::new("wavy", |x: &Coords| {
        let h = 0.1 * (x[1] * 0.7).sin() * (x[2] * 0.3).cos();
        let mut g = Matrix4::from_diagonal(&Vector4::new(1.0 + h, -1.0, -1.0 - 0.5 * h, -1.0));
        g[(0, 1)] = 0.05 * (x[0] * 0.2 + x[3]).sin();
        g[(1, 0)] = g[(0, 1)];
        g[(2, 3)] = 0.02 * x[1].cos();
        g[(3, 2)] = g[(2, 3)];
        g
    })
}

#[test]
fn lower_index_symmetry_at_random_points() {
    let (_, m) = solar();
    let wavy = wavy_metric();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let x = Coords::new(
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
        );
        assert_eq!(christoffel(&wavy, &x).unwrap().asymmetry(), 0.0);
        assert_eq!(christoffel(&Minkowski, &x).unwrap().asymmetry(), 0.0);
        let xs = Coords::new(
            0.0,
            m.rs * rng.gen_range(1.5..200.0),
            rng.gen_range(0.2..3.0),
            rng.gen_range(0.0..6.0),
        );
        assert_eq!(christoffel(&m, &xs).unwrap().asymmetry(), 0.0);
        assert_eq!(christoffel_numeric(&m, &xs).unwrap().asymmetry(), 0.0);
    }
}

#[test]
fn metric_is_symmetric_and_grr_is_inverse_g00() {
    let (_, m) = solar();
    let wavy = wavy_metric();
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..100 {
        let r = m.rs * rng.gen_range(1.01..1000.0);
        let g = m.components(&Coords::new(0.0, r, 1.0, 0.0));
        assert!((g[(1, 1)] * g[(0, 0)] + 1.0).abs() < 1e-12);
        let x = Coords::new(
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
        );
        let gw = wavy.components(&x);
        assert!((gw - gw.transpose()).amax() <= 1e-12 * gw.amax());
    }
}

/// Classical RK4 on x'' = −Γ(x)(x', x') with the oracle connection.
fn integrate_geodesic(
    rs: f64,
    x0: Vector4<f64>,
    v0: Vector4<f64>,
    s_end: f64,
    steps: usize,
) -> (Vector4<f64>, Vector4<f64>) {
    let rhs = |x: &Vector4<f64>, v: &Vector4<f64>| -> Vector4<f64> {
        let g = oracle_gamma(rs, x[1], x[2]);
        Vector4::from_fn(|mu, _| {
            let mut acc = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    acc -= g[mu][a][b] * v[a] * v[b];
                }
            }
            acc
        })
    };
    let h = s_end / steps as f64;
    let (mut x, mut v) = (x0, v0);
    for _ in 0..steps {
        let k1x = v;
        let k1v = rhs(&x, &v);
        let k2x = v + 0.5 * h * k1v;
        let k2v = rhs(&(x + 0.5 * h * k1x), &k2x);
        let k3x = v + 0.5 * h * k2v;
        let k3v = rhs(&(x + 0.5 * h * k2x), &k3x);
        let k4x = v + h * k3v;
        let k4v = rhs(&(x + h * k3x), &k4x);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    (x, v)
}

#[test]
fn free_fall_worldline_agrees_with_integrated_geodesic() {
    let w = RadialFreeFall::new(1.0, 30.0, 1.0, 0.5).unwrap();
    let s_end = 0.8 * w.horizon_crossing();
    let (x, v) = integrate_geodesic(1.0, w.position(0.0), w.velocity(0.0).unwrap(), s_end, 20_000);
    let xa = w.position(s_end);
    let va = w.velocity(s_end).unwrap();
    assert!((x - xa).norm() < 1e-8 * xa.norm(), "{x} vs {xa}");
    assert!((v - va).norm() < 1e-8 * va.norm(), "{v} vs {va}");
}

#[test]
fn geodesic_has_no_proper_acceleration() {
    let (c, m) = solar();
    let w = RadialFreeFall::new(m.rs, 50.0 * m.rs, 1.2, 0.0).unwrap();
    let end = w.horizon_crossing();
    for i in 0..10 {
        let s = end * 0.9 * i as f64 / 9.0;
        for acc in [
            covariant_acceleration(&m, &w, s, &c).unwrap(),
            covariant_acceleration(&NumericOnly(m), &w, s, &c).unwrap(),
        ] {
            let r = w.radius(s);
            let scale = c.c.value.powi(2) / r;
            assert!(acc.scalar_a.value < 1e-8 * scale, "s = {s}: a = {}", acc.scalar_a.value);
            assert!(acc.velocity.norm_defect.abs() < 1e-12);
        }
    }
}

#[test]
fn hyperbola_is_unit_normalised_with_constant_acceleration() {
    let c = ConstantSet::si();
    let a = Quantity::new(9.81, Dimension::acceleration());
    let w = HyperbolicWorldline::new(a, &c).unwrap();
    for i in 0..50 {
        let s = w.rho * (-3.0 + 6.0 * i as f64 / 49.0);
        let v = four_velocity(&w, &Minkowski, s).unwrap();
        assert!(v.norm_defect.abs() < 1e-12 * v.components.norm_squared());
        let acc = covariant_acceleration(&Minkowski, &w, s, &c).unwrap();
        assert!((acc.scalar_a.value / 9.81 - 1.0).abs() < 1e-8);
    }
}

#[test]
fn static_observer_matches_horizon_acceleration() {
    let (c, m) = solar();
    for i in 0..20 {
        let r = m.rs * (1.5 + 200.0 * i as f64 / 19.0);
        let w = StaticObserver::new(m.rs, r, 1.0, 0.0).unwrap();
        let expected = local_horizon_acceleration(m.mass, Quantity::new(r, Dimension::length()), &c).unwrap();
        for a in [
            covariant_acceleration(&m, &w, 0.0, &c).unwrap().scalar_a,
            covariant_acceleration(&NumericOnly(m), &w, 0.0, &c).unwrap().scalar_a,
        ] {
            assert!((a.value / expected.value - 1.0).abs() < 1e-6, "r = {r}");
        }
    }
}

#[test]
fn acceleration_is_orthogonal_to_velocity() {
    let c = ConstantSet::for_system(UnitSystem::Planck);
    let m = Schwarzschild::new(Quantity::new(10.0, Dimension::mass()), &c).unwrap();
    let hyper = HyperbolicWorldline::new(Quantity::new(0.3, Dimension::acceleration()), &c).unwrap();
    let fall = RadialFreeFall::new(m.rs, 40.0 * m.rs, 1.0, 0.0).unwrap();
    let stat = StaticObserver::new(m.rs, 7.0 * m.rs, 0.8, 1.0).unwrap();
    let moving = InertialObserver::moving(Coords::zeros(), nalgebra::Vector3::new(0.3, -0.2, 0.1)).unwrap();
    let cases: Vec<(&dyn Metric, &dyn Worldline)> =
        vec![(&Minkowski, &hyper), (&m, &fall), (&m, &stat), (&Minkowski, &moving)];
    for (metric, w) in cases {
        for s in [0.0, 1.0, 5.0] {
            let acc = covariant_acceleration(metric, w, s, &c).unwrap();
            let g = metric.components(&acc.velocity.position);
            let dot = quadratic_form(&g, &acc.velocity.components, &acc.components);
            // natural size of g(v, Dv) is |v|²/(curve scale)
            let size = acc.velocity.components.norm_squared() / w.parameter_scale();
            assert!(dot.abs() < 1e-8 * size, "{}: {dot}", metric.name());
            if let Some(rho) = acc.rho.finite() {
                assert!(((rho * acc.scalar_a) / c.c.powi(2)).value - 1.0 < 1e-14);
            }
        }
    }
}
