//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug)]
pub enum Error {
    /// An argument violates a documented precondition.
    InvalidInput(String),
    /// A file could not be parsed.
    Parse(String),
    /// A map file parsed but violated a structural invariant.
    MapValidation(String),
    /// No route exists between two waypoint nodes.
    NoRoute { from: u32, to: u32 },
    /// The maneuver optimizer exhausted its budget without a feasible trajectory.
    PlannerFailure {
        message: String,
        position_residual: f64,
        heading_residual: f64,
        speed_residual: f64,
        min_clearance: f64,
    },
    /// A spot claim raced with an existing claim; the assignment layer must retry.
    SpotContention { spot: u32 },
    /// No empty spot is available for an assignment or an exiting spawn.
    NoSpotAvailable,
    /// A spawn schedule cannot be realized.
    ScheduleInfeasible(String),
    /// Two vehicle bodies intersected; the run is invalid.
    SafetyViolation {
        tick: u64,
        vehicle_a: u32,
        vehicle_b: u32,
        penetration: f64,
    },
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::MapValidation(msg) => write!(f, "map validation: {msg}"),
            Error::NoRoute { from, to } => write!(f, "no route from node {from} to node {to}"),
            Error::PlannerFailure {
                message,
                position_residual,
                heading_residual,
                speed_residual,
                min_clearance,
            } => write!(
                f,
                "planner failure: {message} (pos {position_residual:.4} m, \
                 heading {heading_residual:.4} rad, speed {speed_residual:.4} m/s, \
                 clearance {min_clearance:.4} m)"
            ),
            Error::SpotContention { spot } => write!(f, "spot {spot} is already claimed"),
            Error::NoSpotAvailable => write!(f, "no empty parking spot available"),
            Error::ScheduleInfeasible(msg) => write!(f, "schedule infeasible: {msg}"),
            Error::SafetyViolation {
                tick,
                vehicle_a,
                vehicle_b,
                penetration,
            } => write!(
                f,
                "safety violation at tick {tick}: vehicles {vehicle_a} and {vehicle_b} \
                 intersect by {penetration:.4} m"
            ),
            Error::Io(e) => write!(f, "io error: {e}"),
            Error::Json(e) => write!(f, "json error: {e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e)
    }
}
