//! One control step: obstacle map, repulsive adjustment, gated command.

use std::fmt::Write as _;

use crate::camera::{DepthFrame, PointCloud};
use crate::config::CareConfig;
use crate::error::{CareError, Result};
use crate::projection::{back_project, construct_obstacle_map, ObstacleMap};
use crate::repulsive::{estimate_repulsive_direction, rotate_trajectory, RepulsiveResult};
use crate::safety::{compute_desired_heading, gate_command, ControlCommand};
use crate::trajectory::Trajectory;

#[derive(Debug, Clone, Copy)]
pub enum Observation<'a> {
    Frame(&'a DepthFrame),
    Cloud(&'a PointCloud),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CareDecision {
    pub adjusted_trajectory: Trajectory,
    pub command: ControlCommand,
    pub obstacle_map: ObstacleMap,
    /// Absent on passthrough.
    pub repulsive: Option<RepulsiveResult>,
    /// True iff the obstacle map was empty; the trajectory is then untouched.
    pub passthrough: bool,
    pub dominant_index: usize,
    /// Absent when the dominant waypoint sits at the origin.
    pub theta_des: Option<f64>,
    /// The dominant waypoint was at the origin; `command` is a stop.
    pub degenerate: bool,
}

impl CareDecision {
    pub fn theta_rot(&self) -> f64 {
        self.repulsive.as_ref().map_or(0.0, |r| r.theta_rot)
    }
}

pub fn care_step(obs: Observation<'_>, traj: &Trajectory, cfg: &CareConfig) -> Result<CareDecision> {
    cfg.validate()?;
    let obstacle_map = match obs {
        Observation::Frame(frame) => construct_obstacle_map(&back_project(frame)?, cfg),
        Observation::Cloud(cloud) => construct_obstacle_map(cloud, cfg),
    };
    decide(obstacle_map, traj, cfg)
}

/// Runs the adjustment and gating stages on a precomputed obstacle map.
pub fn decide(obstacle_map: ObstacleMap, traj: &Trajectory, cfg: &CareConfig) -> Result<CareDecision> {
    let (adjusted_trajectory, repulsive, dominant_index) = if obstacle_map.is_empty() {
        (traj.clone(), None, 0)
    } else {
        let r = estimate_repulsive_direction(traj, &obstacle_map, cfg)?;
        let k = r.dominant_index;
        (rotate_trajectory(traj, r.theta_rot), Some(r), k)
    };

    let (command, theta_des, degenerate) =
        match compute_desired_heading(&adjusted_trajectory, dominant_index) {
            Ok(theta) => (gate_command(theta, &cfg.safety), Some(theta), false),
            Err(CareError::DegenerateHeading(_)) => (ControlCommand::STOP, None, true),
            Err(e) => return Err(e),
        };

    Ok(CareDecision {
        passthrough: obstacle_map.is_empty(),
        adjusted_trajectory,
        command,
        obstacle_map,
        repulsive,
        dominant_index,
        theta_des,
        degenerate,
    })
}

/// Comma-separated per-frame log:
/// `t,v,omega,theta_rep,theta_rot,theta_des,passthrough,n_obstacles`.
/// Absent angles are written as `NaN`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionLog {
    buf: String,
}

impl Default for DecisionLog {
    fn default() -> Self {
        DecisionLog {
            buf: format!("{}\n", Self::HEADER),
        }
    }
}

impl DecisionLog {
    pub const HEADER: &'static str = "t,v,omega,theta_rep,theta_rot,theta_des,passthrough,n_obstacles";

    pub fn push(&mut self, t: f64, d: &CareDecision) {
        let theta_rep = d.repulsive.as_ref().map_or(f64::NAN, |r| r.theta_rep);
        let _ = writeln!(
            self.buf,
            "{},{},{},{},{},{},{},{}",
            t,
            d.command.v,
            d.command.omega,
            theta_rep,
            d.theta_rot(),
            d.theta_des.unwrap_or(f64::NAN),
            d.passthrough,
            d.obstacle_map.len()
        );
    }

    pub fn as_str(&self) -> &str {
        &self.buf
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}
