//! Inverse-cube repulsion on trajectory waypoints and the resulting heading
//! adjustment.
//!
//! Every obstacle contributes `(p - o) / |p - o|^4`, i.e. a magnitude of
//! `|p - o|^-3` along the obstacle-to-waypoint direction. The waypoint that
//! feels the strongest total push decides the adjustment angle, which is then
//! clipped and applied as a rigid rotation of the whole trajectory about the
//! robot origin.

use std::fmt;
use std::str::FromStr;

use crate::config::CareConfig;
use crate::error::{CareError, Result};
use crate::geometry::{clip, Vec2};
use crate::projection::ObstacleMap;
use crate::trajectory::Trajectory;

/// Distances below this are clamped before cubing.
pub const MIN_DISTANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DirectionMode {
    /// Force points from the obstacle toward the waypoint.
    #[default]
    Repel,
    /// Literal sign with a leading `-1`: force points toward the obstacle.
    Attract,
}

impl fmt::Display for DirectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DirectionMode::Repel => "repel",
            DirectionMode::Attract => "attract",
        })
    }
}

impl FromStr for DirectionMode {
    type Err = CareError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "repel" => Ok(DirectionMode::Repel),
            "attract" => Ok(DirectionMode::Attract),
            other => Err(CareError::Config(format!(
                "direction_mode must be `repel` or `attract`, got `{other}`"
            ))),
        }
    }
}

/// Sum of inverse-cube contributions at `point` from `obstacles`. On a
/// coincident obstacle returns its index as the error.
pub fn force_from_points<I>(point: Vec2, obstacles: I, mode: DirectionMode) -> Result<Vec2, usize>
where
    I: IntoIterator<Item = Vec2>,
{
    let mut sum = Vec2::ZERO;
    for (m, o) in obstacles.into_iter().enumerate() {
        let diff = point - o;
        let d = diff.norm();
        if d == 0.0 {
            return Err(m);
        }
        let dc = d.max(MIN_DISTANCE);
        sum = sum + diff * (1.0 / (dc * dc * dc * d));
    }
    Ok(match mode {
        DirectionMode::Repel => sum,
        DirectionMode::Attract => -sum,
    })
}

pub fn repulsive_force(waypoint: Vec2, obstacles: &ObstacleMap, mode: DirectionMode) -> Result<Vec2> {
    force_from_points(waypoint, obstacles.positions(), mode).map_err(|obstacle| CareError::Singularity {
        waypoint: None,
        obstacle,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepulsiveResult {
    pub forces: Vec<Vec2>,
    /// Waypoint with the largest force magnitude; ties go to the smallest index.
    pub dominant_index: usize,
    pub theta_rep: f64,
    /// `theta_rep` clipped to `[-theta_clip, theta_clip]`.
    pub theta_rot: f64,
}

pub fn estimate_repulsive_direction(
    traj: &Trajectory,
    obstacles: &ObstacleMap,
    cfg: &CareConfig,
) -> Result<RepulsiveResult> {
    let forces = traj
        .waypoints()
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            force_from_points(p, obstacles.positions(), cfg.direction_mode).map_err(|obstacle| {
                CareError::Singularity {
                    waypoint: Some(k),
                    obstacle,
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut dominant_index = 0;
    let mut best = forces[0].norm();
    for (k, f) in forces.iter().enumerate().skip(1) {
        let mag = f.norm();
        if mag > best {
            best = mag;
            dominant_index = k;
        }
    }

    let f = forces[dominant_index];
    let theta_rep = if f == Vec2::ZERO { 0.0 } else { f.angle() };
    Ok(RepulsiveResult {
        forces,
        dominant_index,
        theta_rep,
        theta_rot: clip(theta_rep, -cfg.theta_clip, cfg.theta_clip),
    })
}

/// Rigid counter-clockwise rotation of every waypoint about the robot origin.
pub fn rotate_trajectory(traj: &Trajectory, theta_rot: f64) -> Trajectory {
    let rotated = traj.waypoints().iter().map(|p| p.rotate(theta_rot)).collect();
    Trajectory::new(rotated).expect("rotation preserves finiteness and length")
}
