//! Weighted compact central schemes for hyperbolic conservation laws.
//!
//! The solver works on two interleaved Cartesian meshes. Each half time-step
//! moves the solution from one mesh to the other: space-time Taylor jets are
//! built in every source cell by the Cauchy-Kovalewski procedure, cell
//! averages are updated by a Riemann-solver-free finite-volume balance, and
//! spatial derivatives by central differences of time-extrapolated vertex
//! values. A WENO-type limiter, optionally in characteristic variables,
//! controls oscillations at discontinuities.
//!
//! Modules:
//! - [`jet`]: truncated Taylor jets and the Cauchy-Kovalewski procedure
//! - [`mesh`]: staggered mesh geometry, DOF storage and boundary conditions
//! - [`physics`]: scalar laws and perfect-gas Euler equations
//! - [`scheme`]: one half-step in 1D and 2D
//! - [`limiter`]: smoothness indicators, weights and characteristic limiting
//! - [`stability`]: von Neumann analysis of the linear schemes
//! - [`problems`]: benchmark initial/boundary data and exact solutions
//! - [`bench`]: run configuration, time loop, norms and output

pub mod bench;
pub mod error;
pub mod jet;
pub mod limiter;
pub mod mesh;
pub mod physics;
pub mod problems;
pub mod scheme;
pub mod stability;

pub use error::{Error, Result};
