//! Solver and verification toolkit for the one-dimensional double degenerate
//! parabolic equation with absorption
//!
//! `u_t = (|(u^m)_x|^(p-1) (u^m)_x)_x - b u^beta`.

pub mod analytic;
pub mod classification;
pub mod error;
pub mod profiles;
pub mod scalar;
pub mod weno;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Params = classification::ProblemParams<f64>;
pub type Params32 = classification::ProblemParams<f32>;
pub type Field64 = weno::Field<f64>;
pub type Grid64 = weno::Grid<f64>;
pub type ProfileTable64 = profiles::ProfileTable<f64>;
pub type PhasePlaneTable64 = profiles::PhasePlaneTable<f64>;
