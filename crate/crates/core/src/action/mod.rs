//! Finite groups acting on the unit polydisk by ball-to-ball maps, their
//! extension to all of `K^N`, and σ-radial functions.

mod ball;
mod extend;
mod group;
mod radial;

pub use ball::{Ball, BallUnion};
pub use extend::{
    axis_probes, default_rho, extend_action, random_vector, CoreMap, CustomFn, ExtendedMap, GroupAction,
};
pub use group::FiniteGroup;
pub use radial::{
    check_sigma_increasing, check_sigma_radial, RadialFn, RadialFunction, SamplingReport, SigmaRadialProfile,
};
