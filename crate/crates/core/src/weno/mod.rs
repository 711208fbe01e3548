//! Fifth-order WENO finite differences for the degenerate flux, TVD-RK3 in
//! time, and interface capture on a periodic uniform grid.

mod grid;
mod interface;
mod kernel;
mod operator;
mod time;

pub use grid::{Boundary, Field, Grid, MIN_NODES};
pub use interface::locate_interface;
pub use kernel::{weno5, weno5_halfnode_reconstruct, weno5_node_derivative, WENO_EPS};
pub use operator::{degenerate_diffusion, flux_phi, max_diffusivity, rhs, Workspace};
pub use time::{
    cfl_dt, evolve, rk3_step, rk3_step_with, Evolution, InterfaceTrack, Observer, Snapshots, StepControl, Stepper,
    TimeStep, DEFAULT_CFL, DEFAULT_INTERFACE_THRESHOLD, DIFFUSIVITY_FLOOR,
};
