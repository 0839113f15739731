//! Metrics, connections and the proper acceleration of worldlines.

mod acceleration;
mod metric;
mod worldline;

pub use acceleration::{covariant_acceleration, four_velocity, CovariantAcceleration, CurvatureRadius, FourVelocity};
pub use metric::{
    christoffel, christoffel_numeric, interval, inverse_metric, quadratic_form, Christoffel, Coords, Metric,
    MetricSpec, Minkowski, NumericOnly, Schwarzschild, SINGULAR_DET,
};
pub use worldline::{
    curvature_vector, tangent, HyperbolicWorldline, InertialObserver, RadialFreeFall, StaticObserver, Worldline,
    WorldlineFn,
};
