//! Core library for a deterministic multi-vehicle parking lot simulator.
//!
//! The crate is organized bottom-up:
//!
//! - [`geometry`]: convex polygons, signed distance, separation certificates
//! - [`dynamics`]: kinematic bicycle model and discrete integration
//! - [`map`]: parking lot model, map file I/O, routing with lane offset
//! - [`maneuver`]: parking maneuver templates and their offline optimizer
//! - [`control`]: Stanley path following, MPC tracking, template interpolation
//! - [`coordination`]: rule-based collision avoidance state machine
//! - [`sim`]: the fleet simulation world, spawning, occupancy, metrics
//! - [`assign`]: parking spot assignment strategies and the learned estimator
//! - [`scenario`]: scenario configuration shared with the command line tools

pub mod assign;
pub mod control;
pub mod coordination;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod maneuver;
pub mod map;
pub mod scenario;
pub mod sim;

pub use error::{Error, Result};
