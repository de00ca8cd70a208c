//! Template cache: the eight maneuver solves are expensive, so generated
//! templates are cached to a JSON artifact keyed by a geometry fingerprint
//! and regenerated only when the geometry or planner configuration changes.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dynamics::VehicleParams;
use crate::error::{Error, Result};
use crate::maneuver::{
    plan_maneuver, ManeuverKey, ManeuverTemplate, PlannerConfig, TemplateGeometry,
};
use crate::maneuver::template::IntegrationSense;

/// All eight templates for one lot geometry.
#[derive(Clone, Debug)]
pub struct TemplateSet {
    pub geometry_hash: String,
    templates: BTreeMap<ManeuverKey, ManeuverTemplate>,
}

impl TemplateSet {
    pub fn get(&self, key: ManeuverKey) -> &ManeuverTemplate {
        &self.templates[&key]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ManeuverKey, &ManeuverTemplate)> {
        self.templates.iter()
    }
}

#[derive(Serialize, Deserialize)]
struct TemplateFile {
    dt: f64,
    duration: f64,
    key: String,
    sense: IntegrationSense,
    /// Rows of (x, y, heading, speed).
    states: Vec<[f64; 4]>,
    /// Rows of (accel, steer).
    inputs: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    geometry_hash: String,
    templates: Vec<TemplateFile>,
}

fn to_file(set: &TemplateSet) -> CacheFile {
    CacheFile {
        geometry_hash: set.geometry_hash.clone(),
        templates: set
            .templates
            .values()
            .map(|t| TemplateFile {
                dt: t.dt,
                duration: t.duration(),
                key: t.key.to_string(),
                sense: t.sense,
                states: t
                    .states
                    .iter()
                    .map(|z| [z.x, z.y, z.heading, z.speed])
                    .collect(),
                inputs: t.inputs.iter().map(|u| [u.accel, u.steer]).collect(),
            })
            .collect(),
    }
}

fn from_file(file: CacheFile) -> Result<TemplateSet> {
    let mut templates = BTreeMap::new();
    for tf in file.templates {
        let key: ManeuverKey = tf.key.parse()?;
        if tf.states.len() != tf.inputs.len() + 1 {
            return Err(Error::Parse(format!(
                "template {key} has inconsistent state/input lengths"
            )));
        }
        let template = ManeuverTemplate {
            key,
            states: tf
                .states
                .iter()
                .map(|r| crate::dynamics::VehicleState::new(r[0], r[1], r[2], r[3]))
                .collect(),
            inputs: tf
                .inputs
                .iter()
                .map(|r| crate::dynamics::ControlInput::new(r[0], r[1]))
                .collect(),
            dt: tf.dt,
            sense: tf.sense,
        };
        templates.insert(key, template);
    }
    for key in ManeuverKey::ALL {
        if !templates.contains_key(&key) {
            return Err(Error::Parse(format!("template cache is missing key {key}")));
        }
    }
    Ok(TemplateSet {
        geometry_hash: file.geometry_hash,
        templates,
    })
}

/// Runs the eight maneuver solves for the given geometry.
pub fn generate_template_set(
    geometry: &TemplateGeometry,
    cfg: &PlannerConfig,
    params: &VehicleParams,
) -> Result<TemplateSet> {
    let mut templates = BTreeMap::new();
    for key in ManeuverKey::ALL {
        let z0 = geometry.start_state(key);
        let zf = geometry.goal_state(key);
        let obstacles = geometry.obstacles(key);
        let plan = plan_maneuver(&z0, &zf, &obstacles, cfg, params).map_err(|e| match e {
            Error::PlannerFailure {
                message,
                position_residual,
                heading_residual,
                speed_residual,
                min_clearance,
            } => Error::PlannerFailure {
                message: format!("template {key}: {message}"),
                position_residual,
                heading_residual,
                speed_residual,
                min_clearance,
            },
            other => other,
        })?;
        templates.insert(
            key,
            ManeuverTemplate {
                key,
                states: plan.states,
                inputs: plan.inputs,
                dt: plan.dt,
                sense: IntegrationSense::Forward,
            },
        );
    }
    Ok(TemplateSet {
        geometry_hash: geometry.fingerprint(cfg),
        templates,
    })
}

/// Writes a template set to its JSON cache artifact.
pub fn write_template_set(set: &TemplateSet, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(&to_file(set))?;
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}

/// Returns the cached template set when the geometry hash matches, otherwise
/// regenerates and rewrites the cache. A corrupt cache is regenerated; the
/// returned flag is true when the cache was reused.
pub fn load_or_generate(
    path: &Path,
    geometry: &TemplateGeometry,
    cfg: &PlannerConfig,
    params: &VehicleParams,
) -> Result<(TemplateSet, bool)> {
    let expected = geometry.fingerprint(cfg);
    if let Ok(text) = std::fs::read_to_string(path) {
        if let Ok(file) = serde_json::from_str::<CacheFile>(&text) {
            if file.geometry_hash == expected {
                if let Ok(set) = from_file(file) {
                    return Ok((set, true));
                }
            }
        }
    }
    let set = generate_template_set(geometry, cfg, params)?;
    write_template_set(&set, path)?;
    Ok((set, false))
}
