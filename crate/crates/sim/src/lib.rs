//! Deterministic 2-D simulator and experiment harness for the `care-core`
//! obstacle-avoidance module.
//!
//! Worlds are flat floors with convex prisms, cylinders and scripted
//! pedestrians. A raycast depth camera feeds the same frame type a real
//! sensor would, and the robot is a unicycle with a disc footprint.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod camera;
pub mod collision;
pub mod episode;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod policy;
pub mod robot;
pub mod scenarios;
pub mod world;

pub use camera::DepthCamera;
pub use episode::{run_episode, Controller, EpisodeConfig, EpisodeResult};
pub use error::{Result, SimError};
pub use policy::{PolicyKind, StubPolicy};
pub use robot::{Pose, RobotState};
pub use world::WorldModel;
pub use harness::{
    emit_plot_data, run_dynamic, run_exploration, run_goal_conditioned, run_goal_suite, Execution,
    ExperimentOutcome, ExperimentSpec, MetricsReport, Stat, Task, TrialRecord,
};
