//! Stub navigation policies producing robot-frame trajectories.

use std::fmt;
use std::str::FromStr;

use care_core::{gate_command, ControlCommand, SafetyParams, Trajectory, Vec2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Result, SimError};
use crate::robot::Pose;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PolicyKind {
    #[default]
    GoalSeeker,
    Wanderer,
}

impl PolicyKind {
    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::GoalSeeker => "goal_seeker",
            PolicyKind::Wanderer => "wanderer",
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyKind {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "goal_seeker" => Ok(PolicyKind::GoalSeeker),
            "wanderer" => Ok(PolicyKind::Wanderer),
            other => Err(SimError::InvalidExperiment(format!("unknown policy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StubPolicy {
    pub kind: PolicyKind,
    pub horizon: usize,
    /// Spacing between consecutive waypoints.
    pub step_len: f64,
}

impl StubPolicy {
    pub fn new(kind: PolicyKind) -> Self {
        StubPolicy {
            kind,
            horizon: 8,
            step_len: 0.25,
        }
    }

    /// Plans in the robot frame. `goal` is required by the goal seeker.
    pub fn plan(&self, pose: Pose, goal: Option<Vec2>, state: &mut PolicyState) -> Result<PolicyOutput> {
        match self.kind {
            PolicyKind::GoalSeeker => {
                let goal = goal.ok_or_else(|| {
                    SimError::InvalidExperiment("goal_seeker needs a goal".into())
                })?;
                Ok(self.seek(pose.to_local(goal)))
            }
            PolicyKind::Wanderer => Ok(self.wander(state)),
        }
    }

    /// Waypoints `step_len` apart along the ray to the goal; the line may run past it.
    fn seek(&self, local_goal: Vec2) -> PolicyOutput {
        let dist = local_goal.norm();
        if dist == 0.0 {
            let trajectory = Trajectory::new(vec![Vec2::ZERO; self.horizon]).expect("finite");
            return PolicyOutput {
                trajectory,
                degenerate: true,
            };
        }
        let unit = local_goal * (1.0 / dist);
        let waypoints = (1..=self.horizon)
            .map(|k| unit * (k as f64 * self.step_len))
            .collect();
        PolicyOutput {
            trajectory: Trajectory::new(waypoints).expect("finite"),
            degenerate: false,
        }
    }

    fn wander(&self, state: &mut PolicyState) -> PolicyOutput {
        let noise: f64 = state.rng.sample(StandardNormal);
        let kappa = WANDER_DECAY * state.curvature
            + WANDER_STD * (1.0 - WANDER_DECAY * WANDER_DECAY).sqrt() * noise;
        state.curvature = kappa.clamp(-WANDER_MAX_CURVATURE, WANDER_MAX_CURVATURE);
        let waypoints = (1..=self.horizon)
            .map(|k| arc_point(state.curvature, k as f64 * self.step_len))
            .collect();
        PolicyOutput {
            trajectory: Trajectory::new(waypoints).expect("finite"),
            degenerate: false,
        }
    }
}

const WANDER_DECAY: f64 = 0.97;
const WANDER_STD: f64 = 0.4;
const WANDER_MAX_CURVATURE: f64 = 1.0;

fn arc_point(kappa: f64, s: f64) -> Vec2 {
    if kappa.abs() < 1e-9 {
        Vec2::new(s, 0.0)
    } else {
        Vec2::new((kappa * s).sin() / kappa, (1.0 - (kappa * s).cos()) / kappa)
    }
}

#[derive(Debug, Clone)]
pub struct PolicyState {
    rng: ChaCha8Rng,
    curvature: f64,
}

impl PolicyState {
    pub fn new(seed: u64) -> Self {
        PolicyState {
            rng: ChaCha8Rng::seed_from_u64(seed),
            curvature: 0.0,
        }
    }

    pub fn curvature(&self) -> f64 {
        self.curvature
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyOutput {
    pub trajectory: Trajectory,
    /// Every waypoint sits at the robot origin.
    pub degenerate: bool,
}

/// Waypoint the unmodified controller tracks.
pub const BASELINE_TRACK_INDEX: usize = 1;

/// Gate parameters for the unmodified controller: same gains, turn in place
/// only when the target is behind the robot.
pub fn baseline_params() -> SafetyParams {
    SafetyParams {
        theta_thres: std::f64::consts::FRAC_PI_2,
        ..SafetyParams::default()
    }
}

/// Tracks a fixed waypoint of the raw trajectory without any obstacle input.
pub fn baseline_command(traj: &Trajectory, params: &SafetyParams) -> ControlCommand {
    let idx = BASELINE_TRACK_INDEX.min(traj.len() - 1);
    let target = traj.waypoints()[idx];
    if target == Vec2::ZERO {
        return ControlCommand::STOP;
    }
    gate_command(target.angle(), params)
}
