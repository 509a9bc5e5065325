//! Differential-drive pose and unicycle kinematics.

use care_core::{wrap_angle, ControlCommand, Platform, Vec2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub position: Vec2,
    /// World-frame heading in `(-pi, pi]`.
    pub heading: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, heading: f64) -> Self {
        Pose {
            position: Vec2::new(x, y),
            heading: wrap_angle(heading),
        }
    }

    pub fn forward(&self) -> Vec2 {
        Vec2::from_angle(self.heading)
    }

    /// World point expressed in the robot frame (x forward, y left).
    pub fn to_local(&self, world: Vec2) -> Vec2 {
        (world - self.position).rotate(-self.heading)
    }

    pub fn to_world(&self, local: Vec2) -> Vec2 {
        self.position + local.rotate(self.heading)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobotState {
    pub pose: Pose,
    pub footprint_radius: f64,
    pub platform: Platform,
}

impl RobotState {
    pub fn new(platform: Platform, pose: Pose) -> Self {
        RobotState {
            pose,
            footprint_radius: platform.spec().footprint_radius(),
            platform,
        }
    }
}

/// Integrates a constant command over `dt` along the exact arc.
pub fn step_kinematics(pose: Pose, cmd: ControlCommand, dt: f64) -> Pose {
    let h = pose.heading;
    let dh = cmd.omega * dt;
    // Chord of the arc: length 2 r sin(dh/2), direction h + dh/2.
    let half = dh / 2.0;
    let shrink = if half.abs() < 1e-9 { 1.0 } else { half.sin() / half };
    let delta = Vec2::from_angle(h + half) * (cmd.v * dt * shrink);
    Pose {
        position: pose.position + delta,
        heading: wrap_angle(h + dh),
    }
}
