//! Maneuver template type and its transforms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::{derivative, step, ControlInput, VehicleParams, VehicleState};
use crate::error::{Error, Result};
use crate::geometry::{wrap_angle, Vec2};
use crate::map::{AisleSide, ParkingSpot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StartSide {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FinalHeading {
    Up,
    Down,
}

/// One of the eight maneuver primitives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ManeuverKey {
    pub start_side: StartSide,
    pub orientation: AisleSide,
    pub final_heading: FinalHeading,
}

impl ManeuverKey {
    pub const ALL: [ManeuverKey; 8] = {
        let mut keys = [ManeuverKey {
            start_side: StartSide::Left,
            orientation: AisleSide::North,
            final_heading: FinalHeading::Up,
        }; 8];
        let sides = [StartSide::Left, StartSide::Right];
        let orientations = [AisleSide::North, AisleSide::South];
        let finals = [FinalHeading::Up, FinalHeading::Down];
        let mut i = 0;
        while i < 8 {
            keys[i] = ManeuverKey {
                start_side: sides[i / 4],
                orientation: orientations[(i / 2) % 2],
                final_heading: finals[i % 2],
            };
            i += 1;
        }
        keys
    };

    pub fn mirrored(self) -> ManeuverKey {
        ManeuverKey {
            start_side: match self.start_side {
                StartSide::Left => StartSide::Right,
                StartSide::Right => StartSide::Left,
            },
            ..self
        }
    }
}

impl fmt::Display for ManeuverKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.start_side {
            StartSide::Left => "left",
            StartSide::Right => "right",
        };
        let orient = match self.orientation {
            AisleSide::North => "north",
            AisleSide::South => "south",
        };
        let fin = match self.final_heading {
            FinalHeading::Up => "up",
            FinalHeading::Down => "down",
        };
        write!(f, "{side}-{orient}-{fin}")
    }
}

impl std::str::FromStr for ManeuverKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('-').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("bad maneuver key '{s}'")));
        }
        let start_side = match parts[0] {
            "left" => StartSide::Left,
            "right" => StartSide::Right,
            _ => return Err(Error::Parse(format!("bad start side '{}'", parts[0]))),
        };
        let orientation = match parts[1] {
            "north" => AisleSide::North,
            "south" => AisleSide::South,
            _ => return Err(Error::Parse(format!("bad orientation '{}'", parts[1]))),
        };
        let final_heading = match parts[2] {
            "up" => FinalHeading::Up,
            "down" => FinalHeading::Down,
            _ => return Err(Error::Parse(format!("bad final heading '{}'", parts[2]))),
        };
        Ok(ManeuverKey {
            start_side,
            orientation,
            final_heading,
        })
    }
}

/// Which one-sided Euler convention the stored state sequence satisfies.
///
/// A time-reversed sequence of a forward-Euler trajectory satisfies the same
/// bicycle model with the derivative evaluated at the successor state; the
/// flag records which convention applies so consistency can be checked
/// exactly and reversal stays an exact involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegrationSense {
    Forward,
    Reversed,
}

/// A precomputed, collision-checked maneuver trajectory in the local spot
/// frame (spot center at the origin).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManeuverTemplate {
    pub key: ManeuverKey,
    pub states: Vec<VehicleState>,
    pub inputs: Vec<ControlInput>,
    pub dt: f64,
    pub sense: IntegrationSense,
}

impl ManeuverTemplate {
    pub fn duration(&self) -> f64 {
        self.inputs.len() as f64 * self.dt
    }

    pub fn initial_state(&self) -> VehicleState {
        self.states[0]
    }

    pub fn final_state(&self) -> VehicleState {
        *self.states.last().unwrap()
    }

    /// Largest per-component defect against the template's Euler convention.
    pub fn dynamics_residual(&self, params: &VehicleParams) -> Result<f64> {
        if self.states.len() != self.inputs.len() + 1 {
            return Err(Error::InvalidInput(
                "template state/input lengths are inconsistent".into(),
            ));
        }
        let mut worst: f64 = 0.0;
        for k in 0..self.inputs.len() {
            let a = self.states[k];
            let b = self.states[k + 1];
            let u = self.inputs[k];
            let predicted = match self.sense {
                IntegrationSense::Forward => step(&a, &u, self.dt, params)?,
                IntegrationSense::Reversed => {
                    let d = derivative(&b, &u, params)?;
                    VehicleState {
                        x: a.x + d.dx * self.dt,
                        y: a.y + d.dy * self.dt,
                        heading: wrap_angle(a.heading + d.dheading * self.dt),
                        speed: a.speed + d.dspeed * self.dt,
                    }
                }
            };
            worst = worst
                .max((predicted.x - b.x).abs())
                .max((predicted.y - b.y).abs())
                .max(wrap_angle(predicted.heading - b.heading).abs())
                .max((predicted.speed - b.speed).abs());
        }
        Ok(worst)
    }

    /// Reflects the trajectory across the perpendicular axis through the spot
    /// center (the local y-axis): x -> -x, heading -> pi - heading,
    /// steer -> -steer. Flips the key's start side. Involution.
    pub fn mirrored(&self) -> ManeuverTemplate {
        ManeuverTemplate {
            key: self.key.mirrored(),
            states: self
                .states
                .iter()
                .map(|z| VehicleState {
                    x: -z.x,
                    y: z.y,
                    heading: wrap_angle(std::f64::consts::PI - z.heading),
                    speed: z.speed,
                })
                .collect(),
            inputs: self
                .inputs
                .iter()
                .map(|u| ControlInput {
                    accel: u.accel,
                    steer: -u.steer,
                })
                .collect(),
            dt: self.dt,
            sense: self.sense,
        }
    }

    /// Time reversal with negated speeds: the unparking motion along the
    /// entry path, endpoint roles swapped. Involution.
    pub fn reversed(&self) -> ManeuverTemplate {
        ManeuverTemplate {
            key: self.key,
            states: self
                .states
                .iter()
                .rev()
                .map(|z| VehicleState {
                    speed: -z.speed,
                    ..*z
                })
                .collect(),
            inputs: self.inputs.iter().rev().cloned().collect(),
            dt: self.dt,
            sense: match self.sense {
                IntegrationSense::Forward => IntegrationSense::Reversed,
                IntegrationSense::Reversed => IntegrationSense::Forward,
            },
        }
    }

    /// Rigid transform of every state into the world frame.
    pub fn transformed(&self, translation: Vec2, rotation: f64) -> ManeuverTemplate {
        ManeuverTemplate {
            states: self
                .states
                .iter()
                .map(|z| {
                    let p = Vec2::new(z.x, z.y).rotate(rotation) + translation;
                    VehicleState {
                        x: p.x,
                        y: p.y,
                        heading: wrap_angle(z.heading + rotation),
                        speed: z.speed,
                    }
                })
                .collect(),
            inputs: self.inputs.clone(),
            ..self.clone()
        }
    }

    /// Instantiates the template at a spot. Synthetic lots are axis-aligned,
    /// so the transform is the translation to the spot center.
    pub fn instantiate(&self, spot: &ParkingSpot) -> Result<ManeuverTemplate> {
        if self.key.orientation != spot.aisle_side {
            return Err(Error::InvalidInput(format!(
                "template {} cannot serve a {:?}-side spot",
                self.key, spot.aisle_side
            )));
        }
        Ok(self.transformed(spot.center, 0.0))
    }
}

/// Picks the maneuver key for an approach: the start side follows the sign of
/// the spot's lateral position relative to the approach heading (ties go
/// left), the orientation comes from the spot, and the final heading from the
/// caller's required exit direction.
pub fn select_key(
    approach: &VehicleState,
    spot: &ParkingSpot,
    final_heading: FinalHeading,
) -> ManeuverKey {
    let to_spot = spot.center - approach.position();
    let lateral = approach.heading_vector().cross(to_spot);
    let start_side = if lateral < 0.0 {
        StartSide::Right
    } else {
        StartSide::Left
    };
    ManeuverKey {
        start_side,
        orientation: spot.aisle_side,
        final_heading,
    }
}

/// Key whose reversed template leaves `spot` ready to drive in the requested
/// direction, given that the vehicle is parked nose away from the aisle.
pub fn select_unpark_key(spot: &ParkingSpot, exit_eastbound: bool) -> ManeuverKey {
    let final_heading = match spot.aisle_side {
        AisleSide::North => FinalHeading::Up,
        AisleSide::South => FinalHeading::Down,
    };
    // The reversed template ends at the park template's start pose, so pick
    // the key whose approach direction matches the requested exit.
    let start_side = match (spot.aisle_side, exit_eastbound) {
        (AisleSide::North, true) | (AisleSide::South, false) => StartSide::Left,
        (AisleSide::North, false) | (AisleSide::South, true) => StartSide::Right,
    };
    ManeuverKey {
        start_side,
        orientation: spot.aisle_side,
        final_heading,
    }
}
