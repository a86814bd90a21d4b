//! Four-body trapezoidal central configurations in mutual-distance
//! coordinates.

pub mod ccsystem;
pub mod cli;
pub mod geometry;
pub mod golden;
pub mod solver;
pub mod verify;
