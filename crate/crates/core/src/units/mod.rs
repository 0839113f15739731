//! Dimension-checked quantities, fundamental constants and unit systems.

mod constants;
mod dimension;
mod quantity;

pub use constants::{
    convert, make_constants, planck_scale, ConstantSet, PlanckScale, UnitSystem, BOLTZMANN, ELECTRON_MASS,
    ELEMENTARY_CHARGE, GEV, GRAVITATIONAL, REDUCED_PLANCK, SPEED_OF_LIGHT,
};
pub use dimension::{Dimension, BASE_COUNT};
pub use quantity::Quantity;
