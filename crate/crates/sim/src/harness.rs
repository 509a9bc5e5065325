//! Experiment protocols, trial scheduling and metric aggregation.

use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

use care_core::{CareConfig, Platform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::camera::DepthCamera;
use crate::episode::{run_episode, Controller, EpisodeConfig, EpisodeResult};
use crate::error::{Result, SimError};
use crate::policy::{PolicyKind, StubPolicy};
use crate::robot::{Pose, RobotState};
use crate::scenarios::{jitter_agents, random_free_pose};
use crate::world::WorldModel;

/// Rows rendered per column by the simulated camera.
pub const CAMERA_ROW_STRIDE: usize = 10;
/// Free space required around exploration start poses.
pub const START_CLEARANCE: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Exploration,
    GoalConditioned,
    DynamicObstacle,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Exploration => "exploration",
            Task::GoalConditioned => "goal_conditioned",
            Task::DynamicObstacle => "dynamic_obstacle",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        [Task::Exploration, Task::GoalConditioned, Task::DynamicObstacle]
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| SimError::InvalidExperiment(format!("unknown task {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Trials run on the rayon pool; identical to sequential without the
    /// `parallel` feature.
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub task: Task,
    pub platform: Platform,
    pub policy: StubPolicy,
    pub care_enabled: bool,
    pub trials: usize,
    pub seed: u64,
    pub max_distance_m: f64,
    pub max_time_s: f64,
    /// Defaults to the platform preset.
    pub care_config: Option<CareConfig>,
    pub record_logs: bool,
    /// Uniform depth noise half-width (m); off by default.
    pub depth_jitter: f64,
    pub execution: Execution,
}

impl ExperimentSpec {
    pub fn new(task: Task, platform: Platform, care_enabled: bool) -> Self {
        let kind = match task {
            Task::Exploration => PolicyKind::Wanderer,
            Task::GoalConditioned | Task::DynamicObstacle => PolicyKind::GoalSeeker,
        };
        let trials = match task {
            Task::Exploration => 20,
            Task::GoalConditioned => 1,
            Task::DynamicObstacle => 10,
        };
        ExperimentSpec {
            task,
            platform,
            policy: StubPolicy::new(kind),
            care_enabled,
            trials,
            seed: 0,
            max_distance_m: 30.0,
            max_time_s: 300.0,
            care_config: None,
            record_logs: false,
            depth_jitter: 0.0,
            execution: Execution::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(SimError::InvalidExperiment("trials must be >= 1".into()));
        }
        if !(self.max_distance_m > 0.0) || !(self.max_time_s > 0.0) {
            return Err(SimError::InvalidExperiment(
                "max_distance_m and max_time_s must be positive".into(),
            ));
        }
        if self.policy.horizon == 0 || !(self.policy.step_len > 0.0) {
            return Err(SimError::InvalidExperiment("policy needs K >= 1 and step_len > 0".into()));
        }
        let expected = match self.task {
            Task::Exploration => PolicyKind::Wanderer,
            _ => PolicyKind::GoalSeeker,
        };
        if self.policy.kind != expected {
            return Err(SimError::InvalidExperiment(format!(
                "{} runs the {} policy",
                self.task, expected
            )));
        }
        if !(self.depth_jitter >= 0.0 && self.depth_jitter.is_finite()) {
            return Err(SimError::InvalidExperiment("depth_jitter must be >= 0".into()));
        }
        if let Some(cfg) = &self.care_config {
            cfg.validate()?;
        }
        Ok(())
    }

    pub fn controller(&self) -> Controller {
        if self.care_enabled {
            let cfg = self
                .care_config
                .clone()
                .unwrap_or_else(|| CareConfig::for_platform(self.platform));
            Controller::Care(Box::new(cfg))
        } else {
            Controller::Baseline
        }
    }

    fn episode_config(&self) -> EpisodeConfig {
        let mut cfg = EpisodeConfig::new(DepthCamera::for_platform(self.platform, CAMERA_ROW_STRIDE));
        cfg.max_time = self.max_time_s;
        cfg.record_logs = self.record_logs;
        cfg.depth_jitter = self.depth_jitter;
        if self.task == Task::Exploration {
            cfg.max_distance = Some(self.max_distance_m);
            cfg.stop_on_collision = true;
        }
        cfg
    }

    fn arm(&self) -> &'static str {
        if self.care_enabled {
            "care"
        } else {
            "baseline"
        }
    }
}

/// Seed of trial `index`; independent of the arm.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs `f(0..n)` and returns the results in index order.
pub fn run_trials<T, F>(n: usize, execution: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match execution {
        Execution::Sequential => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        #[cfg(not(feature = "parallel"))]
        Execution::Parallel => (0..n).map(f).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub world: String,
    pub index: usize,
    pub seed: u64,
    pub start: Pose,
    pub result: EpisodeResult,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stat {
    pub mean: f64,
    /// Sample standard deviation; zero for a single value.
    pub std: f64,
}

impl Stat {
    pub fn of(values: &[f64]) -> Stat {
        let n = values.len();
        if n == 0 {
            return Stat {
                mean: f64::NAN,
                std: f64::NAN,
            };
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Stat { mean, std }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.3} ± {:.3}", self.mean, self.std)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub label: String,
    pub trials: usize,
    pub distance_before_collision: Stat,
    pub path_length: Stat,
    /// Over trials that reached their last goal; NaN when none did.
    pub completion_time: Stat,
    pub collision_count: f64,
    pub total_collisions: usize,
    pub collision_trials: usize,
    pub arrival_rate: f64,
}

impl MetricsReport {
    pub fn from_records(label: impl Into<String>, records: &[TrialRecord]) -> Self {
        let results: Vec<&EpisodeResult> = records.iter().map(|r| &r.result).collect();
        let n = results.len();
        let col = |f: fn(&EpisodeResult) -> f64| results.iter().map(|r| f(r)).collect::<Vec<_>>();
        let times: Vec<f64> = results.iter().filter_map(|r| r.completion_time).collect();
        let total_collisions = results.iter().map(|r| r.collisions).sum();
        MetricsReport {
            label: label.into(),
            trials: n,
            distance_before_collision: Stat::of(&col(|r| r.distance_before_collision)),
            path_length: Stat::of(&col(|r| r.path_length)),
            completion_time: Stat::of(&times),
            collision_count: total_collisions as f64 / n.max(1) as f64,
            total_collisions,
            collision_trials: results.iter().filter(|r| r.collisions > 0).count(),
            arrival_rate: results.iter().filter(|r| r.arrived).count() as f64 / n.max(1) as f64,
        }
    }

    /// Full-precision `key=value` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "label={}", self.label);
        let _ = writeln!(s, "trials={}", self.trials);
        for (k, v) in self.stats() {
            let _ = writeln!(s, "{k}_mean={}", v.mean);
            let _ = writeln!(s, "{k}_std={}", v.std);
        }
        let _ = writeln!(s, "collision_count={}", self.collision_count);
        let _ = writeln!(s, "total_collisions={}", self.total_collisions);
        let _ = writeln!(s, "collision_trials={}", self.collision_trials);
        let _ = writeln!(s, "arrival_rate={}", self.arrival_rate);
        s
    }

    /// `metric,mean,std` rows for plotting.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("label,metric,mean,std\n");
        for (k, v) in self.stats() {
            let _ = writeln!(s, "{},{k},{},{}", self.label, v.mean, v.std);
        }
        let _ = writeln!(s, "{},collision_count,{},0", self.label, self.collision_count);
        let _ = writeln!(s, "{},collision_trials,{},0", self.label, self.collision_trials);
        let _ = writeln!(s, "{},arrival_rate,{},0", self.label, self.arrival_rate);
        s
    }

    fn stats(&self) -> [(&'static str, Stat); 3] {
        [
            ("distance_before_collision", self.distance_before_collision),
            ("path_length", self.path_length),
            ("completion_time", self.completion_time),
        ]
    }
}

impl fmt::Display for MetricsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({} trials)", self.label, self.trials)?;
        writeln!(f, "  distance before collision  {} m", self.distance_before_collision)?;
        writeln!(f, "  path length                {} m", self.path_length)?;
        writeln!(f, "  completion time            {} s", self.completion_time)?;
        writeln!(
            f,
            "  collisions                 {:.3} per trial ({} total, {} trials)",
            self.collision_count, self.total_collisions, self.collision_trials
        )?;
        write!(f, "  arrival rate               {:.3}", self.arrival_rate)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub report: MetricsReport,
    pub records: Vec<TrialRecord>,
}

fn run_protocol<S>(spec: &ExperimentSpec, world: &WorldModel, setup: S) -> Result<Vec<TrialRecord>>
where
    S: Fn(&mut ChaCha8Rng) -> Result<(WorldModel, Pose)> + Sync + Send,
{
    spec.validate()?;
    world.validate()?;
    let controller = spec.controller();
    let ep = spec.episode_config();
    run_trials(spec.trials, spec.execution, |index| {
        let seed = trial_seed(spec.seed, index);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (trial_world, start) = setup(&mut rng)?;
        let robot = RobotState::new(spec.platform, start);
        let result = run_episode(&trial_world, robot, &spec.policy, &controller, &ep, rng.random())?;
        Ok(TrialRecord {
            world: world.name.clone(),
            index,
            seed,
            start,
            result,
        })
    })
    .into_iter()
    .collect()
}

fn label(spec: &ExperimentSpec, world: &str) -> String {
    format!("{}/{}/{}/{}", spec.task, world, spec.platform, spec.arm())
}

/// Wandering from random free start poses until first contact or the distance cap.
pub fn run_exploration(spec: &ExperimentSpec, world: &WorldModel) -> Result<ExperimentOutcome> {
    if spec.task != Task::Exploration {
        return Err(SimError::InvalidExperiment("run_exploration needs task = exploration".into()));
    }
    let radius = spec.platform.spec().footprint_radius();
    let records = run_protocol(spec, world, |rng| {
        let [x, y, h] = random_free_pose(world, radius, START_CLEARANCE, rng);
        Ok((world.clone(), Pose::new(x, y, h)))
    })?;
    Ok(ExperimentOutcome {
        report: MetricsReport::from_records(label(spec, &world.name), &records),
        records,
    })
}

fn start_pose(world: &WorldModel) -> Result<Pose> {
    world
        .start
        .map(|[x, y, h]| Pose::new(x, y, h))
        .ok_or_else(|| SimError::InvalidWorld(format!("world {:?} has no start pose", world.name)))
}

/// Visits the world's goals in order from its start pose (jittered per trial).
pub fn run_goal_conditioned(spec: &ExperimentSpec, world: &WorldModel) -> Result<ExperimentOutcome> {
    let records = goal_records(spec, world)?;
    Ok(ExperimentOutcome {
        report: MetricsReport::from_records(label(spec, &world.name), &records),
        records,
    })
}

fn goal_records(spec: &ExperimentSpec, world: &WorldModel) -> Result<Vec<TrialRecord>> {
    if spec.task != Task::GoalConditioned {
        return Err(SimError::InvalidExperiment(
            "run_goal_conditioned needs task = goal_conditioned".into(),
        ));
    }
    if world.goals.is_empty() {
        return Err(SimError::InvalidWorld(format!("world {:?} has no goals", world.name)));
    }
    let start = start_pose(world)?;
    run_protocol(spec, world, |rng| {
        let dy = rng.random_range(-0.1..0.1);
        let dh = rng.random_range(-0.2..0.2);
        let pose = Pose::new(start.position.x, start.position.y + dy, start.heading + dh);
        Ok((world.clone(), pose))
    })
}

/// Goal-conditioned runs over several worlds pooled into one report.
pub fn run_goal_suite(spec: &ExperimentSpec, worlds: &[WorldModel]) -> Result<ExperimentOutcome> {
    let mut records = Vec::new();
    for world in worlds {
        records.extend(goal_records(spec, world)?);
    }
    Ok(ExperimentOutcome {
        report: MetricsReport::from_records(label(spec, "suite"), &records),
        records,
    })
}

/// Fixed start, pedestrian schedule perturbed per trial.
pub fn run_dynamic(spec: &ExperimentSpec, world: &WorldModel) -> Result<ExperimentOutcome> {
    if spec.task != Task::DynamicObstacle {
        return Err(SimError::InvalidExperiment(
            "run_dynamic needs task = dynamic_obstacle".into(),
        ));
    }
    if world.goals.is_empty() {
        return Err(SimError::InvalidWorld(format!("world {:?} has no goals", world.name)));
    }
    let start = start_pose(world)?;
    let records = run_protocol(spec, world, |rng| Ok((jitter_agents(world, rng), start)))?;
    Ok(ExperimentOutcome {
        report: MetricsReport::from_records(label(spec, &world.name), &records),
        records,
    })
}

pub fn emit_plot_data(report: &MetricsReport, path: &Path) -> Result<()> {
    std::fs::write(path, report.to_csv()).map_err(|source| SimError::Write {
        path: path.to_path_buf(),
        source,
    })
}

