//! Reactive collision avoidance for waypoint-producing navigation policies.
//!
//! A depth observation is reduced to a sparse top-down obstacle set (one
//! nearest point per lateral bin), the policy trajectory is rotated away from
//! the strongest inverse-cube repulsion, and the adjusted trajectory is turned
//! into a `(v, omega)` command that refuses to drive forward while the
//! required heading change is large.
//!
//! ```
//! use care_core::{care_step, CareConfig, Observation, PointCloud, Trajectory, Platform};
//!
//! let cfg = CareConfig::for_platform(Platform::Locobot);
//! let traj = Trajectory::new(vec![[0.25, 0.0].into(), [0.5, 0.0].into()]).unwrap();
//! let decision = care_step(Observation::Cloud(&PointCloud::default()), &traj, &cfg).unwrap();
//! assert!(decision.passthrough);
//! assert_eq!(decision.command.v, cfg.safety.v_fwd);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod camera;
pub mod config;
pub mod error;
pub mod geometry;
pub mod pipeline;
pub mod projection;
pub mod repulsive;
pub mod safety;
pub mod trajectory;

pub use camera::{CameraIntrinsics, CameraMount, DepthFrame, PointCloud};
pub use config::{CareConfig, Platform, PlatformSpec};
pub use error::{CareError, Result};
pub use geometry::{wrap_angle, Vec2};
pub use pipeline::{care_step, CareDecision, DecisionLog, Observation};
pub use projection::{back_project, construct_obstacle_map, Obstacle, ObstacleMap};
pub use repulsive::{
    estimate_repulsive_direction, repulsive_force, rotate_trajectory, DirectionMode,
    RepulsiveResult,
};
pub use safety::{compute_desired_heading, gate_command, ControlCommand, SafetyParams};
pub use trajectory::Trajectory;
