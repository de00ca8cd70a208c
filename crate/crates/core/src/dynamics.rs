//! Kinematic bicycle model, input limits and forward-Euler integration.
//!
//! The same discrete step is shared by the maneuver optimizer, the MPC
//! tracker and the simulator, so planned trajectories replay exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{body_polygon, wrap_angle, ConvexPolygon, Vec2};

/// Continuous vehicle state: position (m), heading (rad), speed (m/s).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VehicleState {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
    pub speed: f64,
}

impl VehicleState {
    pub fn new(x: f64, y: f64, heading: f64, speed: f64) -> Self {
        VehicleState {
            x,
            y,
            heading,
            speed,
        }
    }

    pub fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    pub fn heading_vector(&self) -> Vec2 {
        Vec2::new(self.heading.cos(), self.heading.sin())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.heading.is_finite() && self.speed.is_finite()
    }

    /// Vehicle body rectangle for the given dimensions.
    pub fn body(&self, width: f64, length: f64) -> Result<ConvexPolygon> {
        body_polygon(self.position(), self.heading, width, length)
    }
}

/// Acceleration (m/s^2) and steering angle (rad).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ControlInput {
    pub accel: f64,
    pub steer: f64,
}

impl ControlInput {
    pub fn new(accel: f64, steer: f64) -> Self {
        ControlInput { accel, steer }
    }
}

/// Geometric and actuation limits of a vehicle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VehicleParams {
    pub width: f64,
    pub length: f64,
    pub wheelbase: f64,
    pub accel_max: f64,
    pub steer_max: f64,
    pub speed_min: f64,
    pub speed_max: f64,
}

impl Default for VehicleParams {
    fn default() -> Self {
        VehicleParams {
            width: 1.8,
            length: 4.2,
            wheelbase: 2.5,
            accel_max: 10.0,
            steer_max: 40f64.to_radians(),
            speed_min: -3.0,
            speed_max: 15.0,
        }
    }
}

impl VehicleParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.wheelbase > 0.0 && self.wheelbase < self.length) {
            return Err(Error::InvalidInput(
                "wheelbase must be positive and shorter than the body".into(),
            ));
        }
        if !(self.accel_max > 0.0) {
            return Err(Error::InvalidInput("accel_max must be positive".into()));
        }
        if !(self.steer_max > 0.0 && self.steer_max < std::f64::consts::FRAC_PI_2) {
            return Err(Error::InvalidInput(
                "steer_max must lie in (0, pi/2)".into(),
            ));
        }
        if !(self.speed_min <= 0.0 && self.speed_max >= 0.0) {
            return Err(Error::InvalidInput(
                "speed range must contain zero".into(),
            ));
        }
        Ok(())
    }
}

/// Time derivative of the state under the kinematic bicycle model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateDerivative {
    pub dx: f64,
    pub dy: f64,
    pub dheading: f64,
    pub dspeed: f64,
}

/// Bicycle model: `(v cos psi, v sin psi, v/l_wb tan delta, a)`.
pub fn derivative(z: &VehicleState, u: &ControlInput, p: &VehicleParams) -> Result<StateDerivative> {
    if !z.is_finite() || !u.accel.is_finite() || !u.steer.is_finite() {
        return Err(Error::InvalidInput("non-finite state or input".into()));
    }
    if u.steer.abs() >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::InvalidInput(format!(
            "steer angle {} reaches the tangent singularity",
            u.steer
        )));
    }
    Ok(StateDerivative {
        dx: z.speed * z.heading.cos(),
        dy: z.speed * z.heading.sin(),
        dheading: z.speed / p.wheelbase * u.steer.tan(),
        dspeed: u.accel,
    })
}

/// Forward-Euler step with heading wrap and speed clamping.
pub fn step(z: &VehicleState, u: &ControlInput, dt: f64, p: &VehicleParams) -> Result<VehicleState> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidInput("dt must be positive".into()));
    }
    let d = derivative(z, u, p)?;
    Ok(VehicleState {
        x: z.x + d.dx * dt,
        y: z.y + d.dy * dt,
        heading: wrap_angle(z.heading + d.dheading * dt),
        speed: (z.speed + d.dspeed * dt).clamp(p.speed_min, p.speed_max),
    })
}

/// Componentwise saturation of the input to the actuation box.
pub fn clamp_input(u: &ControlInput, p: &VehicleParams) -> ControlInput {
    ControlInput {
        accel: u.accel.clamp(-p.accel_max, p.accel_max),
        steer: u.steer.clamp(-p.steer_max, p.steer_max),
    }
}

/// Rolls the model forward through a sequence of inputs.
pub fn rollout(
    z0: &VehicleState,
    inputs: &[ControlInput],
    dt: f64,
    p: &VehicleParams,
) -> Result<Vec<VehicleState>> {
    let mut states = Vec::with_capacity(inputs.len() + 1);
    states.push(*z0);
    let mut z = *z0;
    for u in inputs {
        z = step(&z, u, dt, p)?;
        states.push(z);
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> VehicleParams {
        VehicleParams::default()
    }

    #[test]
    fn straight_unit_speed() {
        let d = derivative(
            &VehicleState::new(0.0, 0.0, 0.0, 1.0),
            &ControlInput::new(0.0, 0.0),
            &params(),
        )
        .unwrap();
        assert_eq!((d.dx, d.dy, d.dheading, d.dspeed), (1.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn heading_north() {
        let d = derivative(
            &VehicleState::new(0.0, 0.0, std::f64::consts::FRAC_PI_2, 2.0),
            &ControlInput::new(1.0, 0.0),
            &params(),
        )
        .unwrap();
        assert!(d.dx.abs() < 1e-12);
        assert!((d.dy - 2.0).abs() < 1e-12);
        assert!(d.dheading.abs() < 1e-12);
        assert_eq!(d.dspeed, 1.0);
    }

    #[test]
    fn yaw_rate_from_steer() {
        let p = VehicleParams {
            wheelbase: 2.5,
            ..params()
        };
        let d = derivative(
            &VehicleState::new(0.0, 0.0, 0.0, 1.0),
            &ControlInput::new(0.0, 1f64.atan()),
            &p,
        )
        .unwrap();
        assert!((d.dheading - 0.4).abs() < 1e-12);
    }

    #[test]
    fn steer_singularity_rejected() {
        let r = derivative(
            &VehicleState::new(0.0, 0.0, 0.0, 1.0),
            &ControlInput::new(0.0, std::f64::consts::FRAC_PI_2),
            &params(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn step_straight() {
        let z = step(
            &VehicleState::new(0.0, 0.0, 0.0, 1.0),
            &ControlInput::new(0.0, 0.0),
            0.1,
            &params(),
        )
        .unwrap();
        assert_eq!(z, VehicleState::new(0.1, 0.0, 0.0, 1.0));
    }

    #[test]
    fn step_pure_acceleration() {
        let z = step(
            &VehicleState::new(0.0, 0.0, 0.0, 0.0),
            &ControlInput::new(2.0, 0.0),
            0.1,
            &params(),
        )
        .unwrap();
        assert_eq!(z, VehicleState::new(0.0, 0.0, 0.0, 0.2));
    }

    #[test]
    fn fine_step_reference_rollout() {
        // 10 s at dt = 0.1 with constant steering vs a dt = 1e-4 reference.
        let p = params();
        let u = ControlInput::new(0.0, 10f64.to_radians());
        let z0 = VehicleState::new(0.0, 0.0, 0.0, 0.5);
        let coarse = rollout(&z0, &vec![u; 100], 0.1, &p).unwrap();
        let fine = rollout(&z0, &vec![u; 100_000], 1e-4, &p).unwrap();
        let zc = coarse.last().unwrap();
        let zf = fine.last().unwrap();
        let err = zc.position().dist(zf.position());
        assert!(err < 1e-2, "position error {err}");
    }

    #[test]
    fn clamp_examples() {
        let p = params();
        let c = clamp_input(&ControlInput::new(20.0, 0.0), &p);
        assert_eq!(c, ControlInput::new(10.0, 0.0));
        let c = clamp_input(&ControlInput::new(0.0, 0.0), &p);
        assert_eq!(c, ControlInput::new(0.0, 0.0));
        let c = clamp_input(&ControlInput::new(-15.0, -1.0), &p);
        assert!((c.accel + 10.0).abs() < 1e-12);
        assert!((c.steer + 40f64.to_radians()).abs() < 1e-12);
        assert!((c.steer + 0.6981).abs() < 1e-4);
    }

    #[test]
    fn step_halving_is_first_order() {
        let p = params();
        let u = ControlInput::new(0.5, 0.2);
        let z0 = VehicleState::new(0.0, 0.0, 0.3, 2.0);
        let err_at = |dt: f64| {
            let full = step(&z0, &u, dt, &p).unwrap();
            let half = step(&step(&z0, &u, dt / 2.0, &p).unwrap(), &u, dt / 2.0, &p).unwrap();
            let dp = full.position().dist(half.position());
            let dh = (full.heading - half.heading).abs();
            dp + dh
        };
        let e1 = err_at(0.1);
        let e2 = err_at(0.05);
        let e3 = err_at(0.025);
        // Halving dt should quarter the defect (O(dt^2) local error).
        assert!(e1 / e2 > 3.0 && e1 / e2 < 5.0, "ratio {}", e1 / e2);
        assert!(e2 / e3 > 3.0 && e2 / e3 < 5.0, "ratio {}", e2 / e3);
    }

    #[test]
    fn zero_steer_keeps_heading_exact() {
        let p = params();
        let mut z = VehicleState::new(0.0, 0.0, 0.7, 3.0);
        for _ in 0..1000 {
            z = step(&z, &ControlInput::new(0.3, 0.0), 0.05, &p).unwrap();
            assert_eq!(z.heading, 0.7);
        }
    }

    #[test]
    fn zero_accel_keeps_speed_exact() {
        let p = params();
        let mut z = VehicleState::new(0.0, 0.0, 0.0, 3.0);
        for _ in 0..1000 {
            z = step(&z, &ControlInput::new(0.0, 0.2), 0.05, &p).unwrap();
            assert_eq!(z.speed, 3.0);
        }
    }

    #[test]
    fn constant_steer_traces_circle() {
        let p = params();
        let delta: f64 = 0.3;
        let radius = p.wheelbase / delta.tan();
        let z0 = VehicleState::new(0.0, 0.0, 0.0, 2.0);
        // Center of the turn is perpendicular-left of the start.
        let center = Vec2::new(0.0, radius);
        let dt = 0.01;
        let quarter_turn_time = (std::f64::consts::FRAC_PI_2 * radius / 2.0).abs();
        let steps = (quarter_turn_time / dt) as usize;
        let states = rollout(&z0, &vec![ControlInput::new(0.0, delta); steps], dt, &p).unwrap();
        for z in &states {
            let r = z.position().dist(center);
            assert!(
                (r - radius).abs() / radius < 0.01,
                "radius {r} vs expected {radius}"
            );
        }
    }
}
