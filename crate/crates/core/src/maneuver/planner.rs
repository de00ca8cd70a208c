//! Offline maneuver trajectory optimization.
//!
//! The solve is discretize-then-optimize: the decision variables are the
//! input sequence, states are generated by the exact forward-Euler rollout of
//! the bicycle model, so dynamic consistency of the result is exact by
//! construction. Obstacle clearance enters as a smooth penalty on signed
//! distance during descent and is hard-verified afterwards with the exact
//! signed distance and the dual separation certificate; failed verification
//! escalates the penalty weights and re-solves.
//!
//! The free final time is handled by solving over a small grid of candidate
//! horizons and keeping the cheapest feasible one. The descent itself is
//! projected gradient with Armijo backtracking, which keeps the recorded
//! cost log monotone.

use crate::dynamics::{rollout, step, ControlInput, VehicleParams, VehicleState};
use crate::error::{Error, Result};
use crate::geometry::{
    dual_certificate, signed_distance, to_halfspace, wrap_angle, ConvexPolygon,
};

/// Stage-cost weights, clearance target and iteration budget of the solver.
#[derive(Clone, Debug, PartialEq)]
pub struct PlannerConfig {
    pub weight_actuation: f64,
    pub weight_time: f64,
    /// Required clearance from every obstacle at every sample.
    pub d_min: f64,
    /// Gradient iterations per descent run.
    pub max_iterations: usize,
    /// Descent stops when the relative cost decrease falls below this.
    pub tolerance: f64,
    /// Sample period of the template.
    pub dt: f64,
    /// Candidate horizons for the free final time, seconds.
    pub horizons: Vec<f64>,
    /// Soft speed limit during maneuvers.
    pub maneuver_speed: f64,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        PlannerConfig {
            weight_actuation: 1.0,
            weight_time: 0.1,
            d_min: 0.05,
            max_iterations: 350,
            tolerance: 1e-7,
            dt: 0.1,
            horizons: vec![4.0, 6.0, 8.0, 10.0],
            maneuver_speed: 2.5,
        }
    }
}

impl PlannerConfig {
    pub(crate) fn fingerprint(&self) -> String {
        format!(
            "wact={:.6};wt={:.6};dmin={:.6};it={};tol={:.1e};dt={:.6};h={:?};vman={:.6}",
            self.weight_actuation,
            self.weight_time,
            self.d_min,
            self.max_iterations,
            self.tolerance,
            self.dt,
            self.horizons,
            self.maneuver_speed
        )
    }
}

/// A feasible planned trajectory with its cost and descent history.
#[derive(Clone, Debug)]
pub struct PlanResult {
    pub states: Vec<VehicleState>,
    pub inputs: Vec<ControlInput>,
    pub dt: f64,
    pub cost: f64,
    /// Accepted costs of the final descent run; non-increasing.
    pub descent_log: Vec<f64>,
}

impl PlanResult {
    pub fn duration(&self) -> f64 {
        self.inputs.len() as f64 * self.dt
    }

    /// Number of travel direction switches (speed sign changes).
    pub fn direction_switches(&self) -> usize {
        let mut switches = 0;
        let mut last_sign = 0.0f64;
        for z in &self.states {
            if z.speed.abs() < 0.05 {
                continue;
            }
            let sign = z.speed.signum();
            if last_sign != 0.0 && sign != last_sign {
                switches += 1;
            }
            last_sign = sign;
        }
        switches
    }
}

/// Endpoint tolerances every shipped template must satisfy.
pub const ENDPOINT_POS_TOL: f64 = 0.1;
pub const ENDPOINT_HEADING_TOL: f64 = 0.05;
pub const ENDPOINT_SPEED_TOL: f64 = 0.05;

/// Penalty weights; escalated when hard verification fails.
#[derive(Clone, Copy)]
struct Weights {
    endpoint_pos: f64,
    endpoint_heading: f64,
    endpoint_speed: f64,
    obstacle: f64,
    speed_bound: f64,
}

impl Default for Weights {
    fn default() -> Self {
        Weights {
            endpoint_pos: 1000.0,
            endpoint_heading: 1000.0,
            endpoint_speed: 200.0,
            obstacle: 500.0,
            speed_bound: 50.0,
        }
    }
}

/// Margin above `d_min` at which the obstacle penalty starts acting.
const PENALTY_MARGIN: f64 = 0.15;
const MAX_ESCALATIONS: usize = 5;

struct Problem<'a> {
    z0: VehicleState,
    z_goal: VehicleState,
    obstacles: &'a [ConvexPolygon],
    cfg: &'a PlannerConfig,
    params: &'a VehicleParams,
    weights: Weights,
}

impl Problem<'_> {
    fn body(&self, z: &VehicleState) -> ConvexPolygon {
        z.body(self.params.width, self.params.length)
            .expect("states stay finite during descent")
    }

    fn obstacle_penalty(&self, z: &VehicleState) -> f64 {
        if self.obstacles.is_empty() {
            return 0.0;
        }
        let body = self.body(z);
        let mut total = 0.0;
        for ob in self.obstacles {
            let d = signed_distance(&body, ob);
            let gap = self.cfg.d_min + PENALTY_MARGIN - d;
            if gap > 0.0 {
                total += self.weights.obstacle * gap * gap;
            }
        }
        total
    }

    /// Gradient of the obstacle penalty wrt (x, y, heading) by central
    /// differences on the signed distance.
    fn obstacle_penalty_grad(&self, z: &VehicleState) -> [f64; 3] {
        let mut grad = [0.0; 3];
        if self.obstacles.is_empty() {
            return grad;
        }
        let body = self.body(z);
        for ob in self.obstacles {
            let d = signed_distance(&body, ob);
            let gap = self.cfg.d_min + PENALTY_MARGIN - d;
            if gap <= 0.0 {
                continue;
            }
            let coeff = -2.0 * self.weights.obstacle * gap;
            let h = 1e-4;
            for (i, (dx, dy, dh)) in [(h, 0.0, 0.0), (0.0, h, 0.0), (0.0, 0.0, h)]
                .iter()
                .enumerate()
            {
                let plus = VehicleState {
                    x: z.x + dx,
                    y: z.y + dy,
                    heading: z.heading + dh,
                    speed: z.speed,
                };
                let minus = VehicleState {
                    x: z.x - dx,
                    y: z.y - dy,
                    heading: z.heading - dh,
                    speed: z.speed,
                };
                let dd =
                    (signed_distance(&self.body(&plus), ob) - signed_distance(&self.body(&minus), ob))
                        / (2.0 * h);
                grad[i] += coeff * dd;
            }
        }
        grad
    }

    fn speed_penalty(&self, v: f64) -> f64 {
        let over = (v.abs() - self.cfg.maneuver_speed).max(0.0);
        self.weights.speed_bound * over * over
    }

    fn speed_penalty_grad(&self, v: f64) -> f64 {
        let over = v.abs() - self.cfg.maneuver_speed;
        if over > 0.0 {
            2.0 * self.weights.speed_bound * over * v.signum()
        } else {
            0.0
        }
    }

    fn endpoint_cost(&self, z: &VehicleState) -> f64 {
        let dp = z.position() - self.z_goal.position();
        let dh = wrap_angle(z.heading - self.z_goal.heading);
        let dv = z.speed - self.z_goal.speed;
        self.weights.endpoint_pos * dp.norm_sq()
            + self.weights.endpoint_heading * dh * dh
            + self.weights.endpoint_speed * dv * dv
    }

    fn endpoint_grad(&self, z: &VehicleState) -> [f64; 4] {
        let dp = z.position() - self.z_goal.position();
        let dh = wrap_angle(z.heading - self.z_goal.heading);
        let dv = z.speed - self.z_goal.speed;
        [
            2.0 * self.weights.endpoint_pos * dp.x,
            2.0 * self.weights.endpoint_pos * dp.y,
            2.0 * self.weights.endpoint_heading * dh,
            2.0 * self.weights.endpoint_speed * dv,
        ]
    }

    fn total_cost(&self, states: &[VehicleState], inputs: &[ControlInput]) -> f64 {
        let dt = self.cfg.dt;
        let mut j = self.cfg.weight_time * inputs.len() as f64 * dt;
        for u in inputs {
            j += self.cfg.weight_actuation * (u.accel * u.accel + u.steer * u.steer) * dt;
        }
        for z in states.iter().skip(1) {
            j += self.obstacle_penalty(z) + self.speed_penalty(z.speed);
        }
        j += self.endpoint_cost(states.last().unwrap());
        j
    }

    /// Analytic gradient of the total cost wrt every input, via the discrete
    /// adjoint of the Euler rollout.
    fn gradient(&self, states: &[VehicleState], inputs: &[ControlInput]) -> Vec<[f64; 2]> {
        let n = inputs.len();
        let dt = self.cfg.dt;
        let wb = self.params.wheelbase;
        let mut grad = vec![[0.0; 2]; n];

        // Terminal costate.
        let z_n = &states[n];
        let mut lam = self.endpoint_grad(z_n);
        let og = self.obstacle_penalty_grad(z_n);
        lam[0] += og[0];
        lam[1] += og[1];
        lam[2] += og[2];
        lam[3] += self.speed_penalty_grad(z_n.speed);

        for k in (0..n).rev() {
            let z = &states[k];
            let u = &inputs[k];
            let (sin_h, cos_h) = z.heading.sin_cos();
            let tan_d = u.steer.tan();
            let sec2 = 1.0 + tan_d * tan_d;

            // Input gradient: running cost plus model sensitivity.
            grad[k][0] = 2.0 * self.cfg.weight_actuation * u.accel * dt + lam[3] * dt;
            grad[k][1] = 2.0 * self.cfg.weight_actuation * u.steer * dt
                + lam[2] * dt * z.speed * sec2 / wb;

            // Costate recursion: lam_k = dl/dz_k + A_k' lam_{k+1}.
            let mut prev = [0.0f64; 4];
            prev[0] = lam[0];
            prev[1] = lam[1];
            prev[2] = lam[2] + dt * (-z.speed * sin_h * lam[0] + z.speed * cos_h * lam[1]);
            prev[3] = lam[3] + dt * (cos_h * lam[0] + sin_h * lam[1] + tan_d / wb * lam[2]);
            if k > 0 {
                let og = self.obstacle_penalty_grad(z);
                prev[0] += og[0];
                prev[1] += og[1];
                prev[2] += og[2];
                prev[3] += self.speed_penalty_grad(z.speed);
            }
            lam = prev;
        }
        grad
    }

    fn project(&self, inputs: &mut [ControlInput]) {
        for u in inputs.iter_mut() {
            *u = crate::dynamics::clamp_input(u, self.params);
        }
    }

    /// Projected gradient descent with Armijo backtracking. Returns the
    /// accepted-cost log, which is non-increasing by construction.
    fn descend(&self, inputs: &mut Vec<ControlInput>) -> Result<Vec<f64>> {
        self.project(inputs);
        let mut states = rollout(&self.z0, inputs, self.cfg.dt, self.params)?;
        let mut cost = self.total_cost(&states, inputs);
        let mut log = vec![cost];
        let mut step_size = 2e-3;
        for _ in 0..self.cfg.max_iterations {
            let grad = self.gradient(&states, inputs);
            let mut accepted = false;
            let mut alpha = step_size;
            for _ in 0..25 {
                let mut trial: Vec<ControlInput> = inputs
                    .iter()
                    .zip(&grad)
                    .map(|(u, g)| ControlInput {
                        accel: u.accel - alpha * g[0],
                        steer: u.steer - alpha * g[1],
                    })
                    .collect();
                self.project(&mut trial);
                let trial_states = rollout(&self.z0, &trial, self.cfg.dt, self.params)?;
                let trial_cost = self.total_cost(&trial_states, &trial);
                if trial_cost < cost {
                    let improvement = cost - trial_cost;
                    *inputs = trial;
                    states = trial_states;
                    cost = trial_cost;
                    log.push(cost);
                    accepted = true;
                    step_size = (alpha * 1.5).min(0.05);
                    if improvement < self.cfg.tolerance * cost.abs().max(1.0) {
                        return Ok(log);
                    }
                    break;
                }
                alpha *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        Ok(log)
    }
}

/// Two-phase seed inputs: drive toward `v1` with steer `d1`, switch at
/// `split`, then drive toward `v2` with steer `d2`. When the phases reverse
/// direction the switch happens near standstill; the final phase brakes by
/// distance so the rollout comes to rest near the goal.
#[allow(clippy::too_many_arguments)]
fn seed_inputs(
    n: usize,
    split: f64,
    v1: f64,
    d1: f64,
    v2: f64,
    d2: f64,
    z0: &VehicleState,
    z_goal: &VehicleState,
    cfg: &PlannerConfig,
    params: &VehicleParams,
) -> Vec<ControlInput> {
    let switch = ((n as f64 * split) as usize).clamp(1, n.saturating_sub(1));
    let reverses = v1.signum() != v2.signum();
    let mut inputs = Vec::with_capacity(n);
    let mut z = *z0;
    for k in 0..n {
        let (v_target, steer) = if k < switch { (v1, d1) } else { (v2, d2) };
        let v_des = if k < switch && reverses {
            // Come to rest at the reversal point.
            let remaining = (switch - k) as f64 * cfg.dt;
            let v_brake = (2.0 * 3.0 * remaining).sqrt();
            v_target.signum() * v_target.abs().min(v_brake)
        } else {
            // Brake by distance so the seed ends at rest near the goal.
            let d_goal = z.position().dist(z_goal.position());
            let v_brake = (2.0 * 2.0 * d_goal).sqrt();
            v_target.signum() * v_target.abs().min(v_brake)
        };
        let accel = ((v_des - z.speed) * 3.0).clamp(-params.accel_max, params.accel_max);
        let u = ControlInput {
            accel,
            steer: steer.clamp(-params.steer_max, params.steer_max),
        };
        inputs.push(u);
        z = step(&z, &u, cfg.dt, params).expect("seed rollout stays finite");
    }
    inputs
}

/// Pursuit seed: steer toward the goal position (forward or in reverse) with
/// a distance-based speed profile.
fn pursuit_seed(
    n: usize,
    reverse: bool,
    gain: f64,
    z0: &VehicleState,
    z_goal: &VehicleState,
    cfg: &PlannerConfig,
    params: &VehicleParams,
) -> Vec<ControlInput> {
    let mut inputs = Vec::with_capacity(n);
    let mut z = *z0;
    for _ in 0..n {
        let to_goal = z_goal.position() - z.position();
        let d_goal = to_goal.norm();
        let v_mag = cfg.maneuver_speed.min((2.0 * 2.0 * d_goal).sqrt());
        let (v_des, steer) = if d_goal < 0.05 {
            (0.0, 0.0)
        } else if reverse {
            let err = wrap_angle(to_goal.angle() - z.heading - std::f64::consts::PI);
            (-v_mag, (-gain * err).clamp(-params.steer_max, params.steer_max))
        } else {
            let err = wrap_angle(to_goal.angle() - z.heading);
            (v_mag, (gain * err).clamp(-params.steer_max, params.steer_max))
        };
        let accel = ((v_des - z.speed) * 3.0).clamp(-params.accel_max, params.accel_max);
        let u = ControlInput { accel, steer };
        inputs.push(u);
        z = step(&z, &u, cfg.dt, params).expect("seed rollout stays finite");
    }
    inputs
}

fn verify(
    states: &[VehicleState],
    z_goal: &VehicleState,
    obstacles: &[ConvexPolygon],
    cfg: &PlannerConfig,
    params: &VehicleParams,
) -> (bool, f64, f64, f64, f64) {
    let z_end = states.last().unwrap();
    let pos_err = z_end.position().dist(z_goal.position());
    let head_err = wrap_angle(z_end.heading - z_goal.heading).abs();
    let speed_err = (z_end.speed - z_goal.speed).abs();
    let mut min_clear = f64::INFINITY;
    for z in states {
        let body = z.body(params.width, params.length).unwrap();
        for ob in obstacles {
            min_clear = min_clear.min(signed_distance(&body, ob));
        }
    }
    let ok = pos_err <= ENDPOINT_POS_TOL
        && head_err <= ENDPOINT_HEADING_TOL
        && speed_err <= ENDPOINT_SPEED_TOL
        && (obstacles.is_empty() || min_clear >= cfg.d_min - 1e-3);
    (ok, pos_err, head_err, speed_err, min_clear)
}

/// Hard feasibility check with the dual separation certificate, used after
/// the solve on top of the plain signed-distance sweep.
fn certify(
    states: &[VehicleState],
    obstacles: &[ConvexPolygon],
    cfg: &PlannerConfig,
    params: &VehicleParams,
) -> Result<bool> {
    let required = (cfg.d_min - 1e-3).max(0.0);
    let obstacle_forms: Vec<_> = obstacles
        .iter()
        .map(to_halfspace)
        .collect::<Result<Vec<_>>>()?;
    for z in states {
        let body = to_halfspace(&z.body(params.width, params.length)?)?;
        for form in &obstacle_forms {
            if dual_certificate(&body, form, required)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Solves the maneuver trajectory problem from `z0` to `z_goal` around the
/// given obstacles. Fails with residual diagnostics when no feasible
/// trajectory is found within the budget.
pub fn plan_maneuver(
    z0: &VehicleState,
    z_goal: &VehicleState,
    obstacles: &[ConvexPolygon],
    cfg: &PlannerConfig,
    params: &VehicleParams,
) -> Result<PlanResult> {
    params.validate()?;
    if !z0.is_finite() || !z_goal.is_finite() {
        return Err(Error::InvalidInput("non-finite endpoint state".into()));
    }

    // Degenerate request: already at the goal.
    if z0.position().dist(z_goal.position()) < 1e-9
        && wrap_angle(z0.heading - z_goal.heading).abs() < 1e-9
        && (z0.speed - z_goal.speed).abs() < 1e-9
    {
        return Ok(PlanResult {
            states: vec![*z0],
            inputs: vec![],
            dt: cfg.dt,
            cost: 0.0,
            descent_log: vec![0.0],
        });
    }

    let mut best: Option<PlanResult> = None;
    let mut best_diag = (f64::INFINITY, f64::INFINITY, f64::INFINITY, f64::INFINITY);

    for &horizon in &cfg.horizons {
        let n = (horizon / cfg.dt).round() as usize;
        let mut weights = Weights::default();
        let mut seed = best_seed(z0, z_goal, obstacles, cfg, params, n, &weights);

        for _escalation in 0..=MAX_ESCALATIONS {
            let problem = Problem {
                z0: *z0,
                z_goal: *z_goal,
                obstacles,
                cfg,
                params,
                weights,
            };
            let mut inputs = seed.clone();
            let log = problem.descend(&mut inputs)?;
            let states = rollout(z0, &inputs, cfg.dt, params)?;
            let (ok, pe, he, se, clear) = verify(&states, z_goal, obstacles, cfg, params);
            if ok && certify(&states, obstacles, cfg, params)? {
                let cost = running_cost(&inputs, cfg);
                if best.as_ref().is_none_or(|b| cost < b.cost) {
                    best = Some(PlanResult {
                        states,
                        inputs,
                        dt: cfg.dt,
                        cost,
                        descent_log: log,
                    });
                }
                break;
            }
            best_diag = (
                best_diag.0.min(pe),
                best_diag.1.min(he),
                best_diag.2.min(se),
                best_diag.3.min(if clear.is_finite() { -clear } else { 0.0 }),
            );
            // Escalate whichever penalties failed and restart from the
            // current iterate.
            if pe > ENDPOINT_POS_TOL || he > ENDPOINT_HEADING_TOL || se > ENDPOINT_SPEED_TOL {
                weights.endpoint_pos *= 10.0;
                weights.endpoint_heading *= 10.0;
                weights.endpoint_speed *= 10.0;
            }
            if obstacles.is_empty() || clear < cfg.d_min - 1e-3 {
                weights.obstacle *= 10.0;
            }
            seed = inputs;
        }
    }

    best.ok_or(Error::PlannerFailure {
        message: "no feasible maneuver within the iteration budget".into(),
        position_residual: best_diag.0,
        heading_residual: best_diag.1,
        speed_residual: best_diag.2,
        min_clearance: -best_diag.3,
    })
}

/// The reported cost: actuation plus elapsed time, penalties excluded.
fn running_cost(inputs: &[ControlInput], cfg: &PlannerConfig) -> f64 {
    let mut j = cfg.weight_time * inputs.len() as f64 * cfg.dt;
    for u in inputs {
        j += cfg.weight_actuation * (u.accel * u.accel + u.steer * u.steer) * cfg.dt;
    }
    j
}

/// Coarse deterministic sweep over the two-arc seed family; returns the
/// cheapest seed by penalty cost.
fn best_seed(
    z0: &VehicleState,
    z_goal: &VehicleState,
    obstacles: &[ConvexPolygon],
    cfg: &PlannerConfig,
    params: &VehicleParams,
    n: usize,
    weights: &Weights,
) -> Vec<ControlInput> {
    let problem = Problem {
        z0: *z0,
        z_goal: *z_goal,
        obstacles,
        cfg,
        params,
        weights: *weights,
    };
    let smax = params.steer_max;
    let steers = [-smax, -0.5 * smax, 0.0, 0.5 * smax, smax];
    let speed = cfg.maneuver_speed.min(2.0);
    let speed_pairs = [
        (speed, speed),
        (speed, -speed),
        (-speed, speed),
        (0.6 * speed, -0.6 * speed),
        (-0.6 * speed, 0.6 * speed),
    ];
    let splits = [0.3, 0.45, 0.6];
    let mut best_cost = f64::INFINITY;
    let mut best: Option<Vec<ControlInput>> = None;
    let mut consider = |inputs: Vec<ControlInput>| {
        let states = rollout(z0, &inputs, cfg.dt, params).expect("seed rollout stays finite");
        let cost = problem.total_cost(&states, &inputs);
        if cost < best_cost {
            best_cost = cost;
            best = Some(inputs);
        }
    };
    for reverse in [false, true] {
        for gain in [1.0, 2.0] {
            consider(pursuit_seed(n, reverse, gain, z0, z_goal, cfg, params));
        }
    }
    for &(v1, v2) in &speed_pairs {
        for &d1 in &steers {
            for &d2 in &steers {
                for &split in &splits {
                    consider(seed_inputs(
                        n, split, v1, d1, v2, d2, z0, z_goal, cfg, params,
                    ));
                }
            }
        }
    }
    best.unwrap_or_else(|| vec![ControlInput::default(); n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::VehicleParams;

    #[test]
    fn zero_length_request() {
        let z = VehicleState::new(1.0, 2.0, 0.3, 0.0);
        let r = plan_maneuver(&z, &z, &[], &PlannerConfig::default(), &VehicleParams::default())
            .unwrap();
        assert_eq!(r.cost, 0.0);
        assert_eq!(r.states.len(), 1);
        assert!(r.inputs.is_empty());
    }

    #[test]
    fn straight_reposition_keeps_wheels_straight() {
        let cfg = PlannerConfig::default();
        let params = VehicleParams::default();
        let z0 = VehicleState::new(0.0, 0.0, 0.0, 0.0);
        let zf = VehicleState::new(10.0, 0.0, 0.0, 0.0);
        let r = plan_maneuver(&z0, &zf, &[], &cfg, &params).unwrap();
        for u in &r.inputs {
            assert!(u.steer.abs() <= 1e-3, "steer {}", u.steer);
        }
        // Forward progress is monotone.
        for w in r.states.windows(2) {
            assert!(w[1].x >= w[0].x - 1e-9);
        }
        // Cost does not exceed a hand-built trapezoidal-profile bound.
        let hand = hand_profile_cost(&z0, &zf, &cfg, &params);
        assert!(r.cost <= hand * 1.05 + 1e-6, "cost {} vs bound {hand}", r.cost);
        // Descent log is monotone non-increasing.
        for w in r.descent_log.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
    }

    fn hand_profile_cost(
        z0: &VehicleState,
        zf: &VehicleState,
        cfg: &PlannerConfig,
        params: &VehicleParams,
    ) -> f64 {
        // Accelerate at 1 m/s^2 to 2.5 m/s, coast, brake: a feasible input
        // sequence reaching 10 m in 6 s; evaluate its running cost.
        let n = 60;
        let mut inputs = Vec::new();
        let mut z = *z0;
        for k in 0..n {
            let remaining = zf.x - z.x;
            let v_des = (2.0 * 1.0 * remaining.max(0.0)).sqrt().min(2.5);
            let a = ((v_des - z.speed) * 2.0).clamp(-2.0, 2.0);
            let u = ControlInput::new(a, 0.0);
            inputs.push(u);
            z = step(&z, &u, cfg.dt, params).unwrap();
            let _ = k;
        }
        running_cost(&inputs, cfg)
    }
}
