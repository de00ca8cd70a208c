use parklab_core::dynamics::{VehicleParams, VehicleState};
use parklab_core::maneuver::{plan_maneuver, PlannerConfig};

fn main() {
    let cfg = PlannerConfig::default();
    let params = VehicleParams::default();
    let z0 = VehicleState::new(0.0, 0.0, 0.0, 0.0);
    let zf = VehicleState::new(10.0, 0.0, 0.0, 0.0);
    let r = plan_maneuver(&z0, &zf, &[], &cfg, &params).unwrap();
    println!("cost {}  duration {}  log_len {}", r.cost, r.duration(), r.descent_log.len());
    let ze = r.states.last().unwrap();
    println!("end: {:?}", ze);
    for (k, u) in r.inputs.iter().enumerate() {
        if u.steer.abs() > 1e-3 {
            println!("k={k} a={:.4} steer={:.4} v={:.3}", u.accel, u.steer, r.states[k].speed);
        }
    }
}
