//! Physical outputs built on the closed-form states.

mod bands;
mod density;
mod envelope;

pub use bands::{tight_binding_bands, TightBinding, DEFAULT_GAMMA0, DEFAULT_GAMMA1};
pub use density::{
    current_density, default_state_grid, probability_density, BilayerState, Carrier,
    CurrentProfile, DensityProfile,
};
pub use envelope::{envelope, envelope_touch_check, EnvelopeQuadratic, TouchReport};
