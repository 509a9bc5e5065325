//! Closed-loop episode: sense, plan, (optionally) adjust, act, integrate.

use std::fmt::Write as _;

use care_core::{care_step, CareConfig, ControlCommand, DecisionLog, Observation};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::camera::DepthCamera;
use crate::collision::in_collision;
use crate::error::Result;
use crate::policy::{baseline_command, baseline_params, PolicyState, StubPolicy};
use crate::robot::{step_kinematics, RobotState};
use crate::world::WorldModel;

#[derive(Debug, Clone, PartialEq)]
pub enum Controller {
    /// Track the raw policy output with no obstacle input.
    Baseline,
    Care(Box<CareConfig>),
}

impl Controller {
    pub fn is_care(&self) -> bool {
        matches!(self, Controller::Care(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeConfig {
    pub dt: f64,
    pub max_time: f64,
    /// Episode ends (successfully) once the path length reaches this value.
    pub max_distance: Option<f64>,
    pub stop_on_collision: bool,
    pub goal_radius: f64,
    pub camera: DepthCamera,
    pub record_logs: bool,
    /// Half-width of uniform depth noise; zero disables it.
    pub depth_jitter: f64,
}

impl EpisodeConfig {
    pub fn new(camera: DepthCamera) -> Self {
        EpisodeConfig {
            dt: 0.1,
            max_time: 300.0,
            max_distance: None,
            stop_on_collision: false,
            goal_radius: 0.3,
            camera,
            record_logs: false,
            depth_jitter: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeResult {
    /// Path length travelled before the first contact (whole path if none).
    pub distance_before_collision: f64,
    pub path_length: f64,
    /// Time at which the last goal was reached.
    pub completion_time: Option<f64>,
    /// Number of distinct contact intervals.
    pub collisions: usize,
    pub goals_reached: usize,
    pub arrived: bool,
    pub end_time: f64,
    /// One row per tick plus a final row holding the end pose with a zero command.
    pub trajectory_log: Option<String>,
    pub decision_log: Option<String>,
}

const SENSOR_STREAM: u64 = 0x5E50_A11C_E000_0001;

pub const TRAJECTORY_LOG_HEADER: &str = "t,x,y,heading,v,omega,collided";

pub fn run_episode(
    world: &WorldModel,
    mut robot: RobotState,
    policy: &StubPolicy,
    controller: &Controller,
    cfg: &EpisodeConfig,
    seed: u64,
) -> Result<EpisodeResult> {
    let mut state = PolicyState::new(seed);
    let mut sensor_rng = ChaCha8Rng::seed_from_u64(seed ^ SENSOR_STREAM);
    let baseline = baseline_params();
    let mut traj_log = cfg.record_logs.then(|| format!("{TRAJECTORY_LOG_HEADER}\n"));
    let mut decisions = (cfg.record_logs && controller.is_care()).then(DecisionLog::default);

    let mut path_length = 0.0;
    let mut distance_before_collision = None;
    let mut collisions = 0;
    let mut was_colliding = false;
    let mut goal_idx = 0;
    let mut completion_time = None;
    let mut arrived = false;
    let mut t = 0.0;

    for tick in 0u64.. {
        t = tick as f64 * cfg.dt;
        let pos = robot.pose.position;
        let colliding = in_collision(world, pos, robot.footprint_radius, t);
        if colliding && !was_colliding {
            collisions += 1;
            distance_before_collision.get_or_insert(path_length);
        }
        was_colliding = colliding;
        if colliding && cfg.stop_on_collision {
            break;
        }

        while goal_idx < world.goals.len() && (world.goals[goal_idx] - pos).norm() <= cfg.goal_radius {
            goal_idx += 1;
        }
        if !world.goals.is_empty() && goal_idx == world.goals.len() {
            arrived = true;
            completion_time = Some(t);
            break;
        }
        if cfg.max_distance.is_some_and(|d| path_length >= d) {
            arrived = true;
            break;
        }
        if t >= cfg.max_time {
            break;
        }

        let goal = world.goals.get(goal_idx).copied();
        let plan = policy.plan(robot.pose, goal, &mut state)?;
        let cmd = if plan.degenerate {
            ControlCommand::STOP
        } else {
            match controller {
                Controller::Baseline => baseline_command(&plan.trajectory, &baseline),
                Controller::Care(care) => {
                    let frame = cfg.camera.render_jittered(
                        world,
                        robot.pose,
                        t,
                        cfg.depth_jitter,
                        &mut sensor_rng,
                    );
                    match care_step(Observation::Frame(&frame), &plan.trajectory, care) {
                        Ok(d) => {
                            if let Some(log) = decisions.as_mut() {
                                log.push(t, &d);
                            }
                            d.command
                        }
                        Err(_) => ControlCommand::STOP,
                    }
                }
            }
        };

        if let Some(log) = traj_log.as_mut() {
            let p = robot.pose;
            let _ = writeln!(
                log,
                "{t},{},{},{},{},{},{}",
                p.position.x, p.position.y, p.heading, cmd.v, cmd.omega, colliding
            );
        }

        let next = step_kinematics(robot.pose, cmd, cfg.dt);
        path_length += (next.position - pos).norm();
        robot.pose = next;
    }

    if let Some(log) = traj_log.as_mut() {
        let p = robot.pose;
        let _ = writeln!(
            log,
            "{t},{},{},{},0,0,{was_colliding}",
            p.position.x, p.position.y, p.heading
        );
    }

    Ok(EpisodeResult {
        distance_before_collision: distance_before_collision.unwrap_or(path_length),
        path_length,
        completion_time,
        collisions,
        goals_reached: goal_idx,
        arrived,
        end_time: t,
        trajectory_log: traj_log,
        decision_log: decisions.map(DecisionLog::into_string),
    })
}
