//! Parking maneuver templates: offline trajectory optimization for the eight
//! park/unpark primitives, template transforms, and the template cache.
//!
//! Templates live in a local frame with the target spot centered at the
//! origin and its aisle running east-west beside it. A key identifies one of
//! the eight primitives by start side, spot orientation and final heading.

mod cache;
mod planner;
mod template;

pub use cache::{generate_template_set, load_or_generate, write_template_set, TemplateSet};
pub use planner::{plan_maneuver, PlanResult, PlannerConfig};
pub use template::{
    select_key, select_unpark_key, FinalHeading, IntegrationSense, ManeuverKey, ManeuverTemplate,
    StartSide,
};

use crate::dynamics::{VehicleParams, VehicleState};
use crate::geometry::{ConvexPolygon, OrientedBox, Vec2};
use crate::map::AisleSide;

/// Local-frame geometry shared by all eight template solves: one spot of the
/// bundled dimensions at the origin, flanked by occupied neighbor spots, with
/// the facing row across the aisle and a back-to-back row behind.
#[derive(Clone, Debug, PartialEq)]
pub struct TemplateGeometry {
    pub spot_width: f64,
    pub spot_length: f64,
    pub lane_width: f64,
    /// Lateral offset of the driving lane from the aisle centerline.
    pub lane_offset: f64,
    /// Longitudinal distance from the spot center to the maneuver start.
    pub start_setback: f64,
    pub vehicle: VehicleParams,
}

impl TemplateGeometry {
    pub fn new(spot_width: f64, spot_length: f64, lane_width: f64, vehicle: VehicleParams) -> Self {
        TemplateGeometry {
            spot_width,
            spot_length,
            lane_width,
            lane_offset: lane_width / 4.0,
            start_setback: 4.5,
            vehicle,
        }
    }

    /// Signed y of the aisle centerline relative to the spot center.
    fn aisle_y(&self, orientation: AisleSide) -> f64 {
        let d = 0.5 * self.spot_length + 0.5 * self.lane_width;
        match orientation {
            AisleSide::North => -d,
            AisleSide::South => d,
        }
    }

    /// True when the maneuver is approached driving east (+x).
    fn eastbound(key: ManeuverKey) -> bool {
        matches!(
            (key.start_side, key.orientation),
            (StartSide::Left, AisleSide::North) | (StartSide::Right, AisleSide::South)
        )
    }

    /// Maneuver start pose: at rest on the correct right-hand lane, one
    /// setback before the spot.
    pub fn start_state(&self, key: ManeuverKey) -> VehicleState {
        let aisle = self.aisle_y(key.orientation);
        if Self::eastbound(key) {
            // Eastbound traffic keeps to the south half of its aisle.
            VehicleState::new(-self.start_setback, aisle - self.lane_offset, 0.0, 0.0)
        } else {
            VehicleState::new(
                self.start_setback,
                aisle + self.lane_offset,
                std::f64::consts::PI,
                0.0,
            )
        }
    }

    /// Maneuver goal pose: centered in the spot, at rest.
    pub fn goal_state(&self, key: ManeuverKey) -> VehicleState {
        let heading = match key.final_heading {
            FinalHeading::Up => std::f64::consts::FRAC_PI_2,
            FinalHeading::Down => -std::f64::consts::FRAC_PI_2,
        };
        VehicleState::new(0.0, 0.0, heading, 0.0)
    }

    /// Obstacles of the local scene. Neighbor spots are blocked by their full
    /// spot boxes, so any legally parked neighbor keeps at least the planned
    /// clearance.
    pub fn obstacles(&self, key: ManeuverKey) -> Vec<ConvexPolygon> {
        let w = self.spot_width;
        let l = self.spot_length;
        let row_half_span = 4.5 * w;
        let sign = match key.orientation {
            AisleSide::North => 1.0,
            AisleSide::South => -1.0,
        };
        let mut boxes: Vec<OrientedBox> = Vec::new();
        // Two occupied neighbor spots on each side.
        for k in [-2.0f64, -1.0, 1.0, 2.0] {
            boxes.push(
                OrientedBox::new(Vec2::new(k * w, 0.0), w, l, std::f64::consts::FRAC_PI_2)
                    .unwrap(),
            );
        }
        // Facing row across the aisle.
        let facing_y = -sign * (l + self.lane_width);
        boxes.push(OrientedBox::new(Vec2::new(0.0, facing_y), l, 2.0 * row_half_span, 0.0).unwrap());
        // Back-to-back row behind the target spot.
        boxes.push(OrientedBox::new(Vec2::new(0.0, sign * l), l, 2.0 * row_half_span, 0.0).unwrap());
        boxes.iter().map(|b| b.polygon()).collect()
    }

    /// Stable fingerprint of everything the template solves depend on.
    pub fn fingerprint(&self, cfg: &PlannerConfig) -> String {
        use sha2::{Digest, Sha256};
        let text = format!(
            "spot={:.6}x{:.6};lane={:.6};off={:.6};setback={:.6};veh={:.6}x{:.6};wb={:.6};amax={:.6};smax={:.6};v=[{:.6},{:.6}];{}",
            self.spot_width,
            self.spot_length,
            self.lane_width,
            self.lane_offset,
            self.start_setback,
            self.vehicle.width,
            self.vehicle.length,
            self.vehicle.wheelbase,
            self.vehicle.accel_max,
            self.vehicle.steer_max,
            self.vehicle.speed_min,
            self.vehicle.speed_max,
            cfg.fingerprint(),
        );
        let mut h = Sha256::new();
        h.update(text.as_bytes());
        let out = h.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn start_states_sit_on_the_correct_lane() {
        let geom = TemplateGeometry::new(2.7, 5.5, 7.0, VehicleParams::default());
        // Eastbound approach to a north spot: south half of the aisle below.
        let z = geom.start_state(ManeuverKey {
            start_side: StartSide::Left,
            orientation: AisleSide::North,
            final_heading: FinalHeading::Up,
        });
        assert!((z.y - (-6.25 - 1.75)).abs() < 1e-12);
        assert_eq!(z.heading, 0.0);
        // Westbound approach to a north spot: north half.
        let z = geom.start_state(ManeuverKey {
            start_side: StartSide::Right,
            orientation: AisleSide::North,
            final_heading: FinalHeading::Up,
        });
        assert!((z.y - (-6.25 + 1.75)).abs() < 1e-12);
        assert_eq!(z.heading, std::f64::consts::PI);
    }

    #[test]
    fn scene_has_clear_aisle() {
        let geom = TemplateGeometry::new(2.7, 5.5, 7.0, VehicleParams::default());
        for key in ManeuverKey::ALL {
            let obstacles = geom.obstacles(key);
            let z0 = geom.start_state(key);
            let body = z0.body(geom.vehicle.width, geom.vehicle.length).unwrap();
            for ob in &obstacles {
                assert!(
                    crate::geometry::signed_distance(&body, ob) > 0.3,
                    "start pose too close to scene obstacle for {key}"
                );
            }
        }
    }
}
