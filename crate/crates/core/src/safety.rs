//! Heading-gated velocity commands.
//!
//! When the desired heading is more than `theta_thres` off the current one the
//! robot turns in place; otherwise it drives at `v_fwd` while turning. The turn
//! rate is proportional, `omega = clip(k_omega * theta_des, ±omega_max)`.

use std::f64::consts::{FRAC_PI_6, PI};

use crate::error::{CareError, Result};
use crate::geometry::clip;
use crate::trajectory::Trajectory;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ControlCommand {
    pub v: f64,
    pub omega: f64,
}

impl ControlCommand {
    pub const STOP: ControlCommand = ControlCommand { v: 0.0, omega: 0.0 };
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SafetyParams {
    pub theta_thres: f64,
    pub v_fwd: f64,
    pub v_max: f64,
    pub omega_max: f64,
    /// Proportional heading gain, 1/s.
    pub k_omega: f64,
}

impl Default for SafetyParams {
    fn default() -> Self {
        SafetyParams {
            theta_thres: FRAC_PI_6,
            v_fwd: 0.2,
            v_max: 0.2,
            omega_max: 0.8,
            k_omega: 2.0,
        }
    }
}

impl SafetyParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.theta_thres > 0.0 && self.theta_thres < PI) {
            return Err(CareError::Config(format!(
                "theta_thres must be in (0, pi), got {}",
                self.theta_thres
            )));
        }
        if !(self.v_fwd > 0.0 && self.v_fwd <= self.v_max) {
            return Err(CareError::Config(format!(
                "need 0 < v_fwd <= v_max, got v_fwd = {}, v_max = {}",
                self.v_fwd, self.v_max
            )));
        }
        if !(self.omega_max > 0.0 && self.k_omega > 0.0 && self.k_omega.is_finite()) {
            return Err(CareError::Config("omega_max and k_omega must be > 0".into()));
        }
        Ok(())
    }
}

/// Bearing of waypoint `dominant_index` in the robot frame, in `(-pi, pi]`.
pub fn compute_desired_heading(adjusted: &Trajectory, dominant_index: usize) -> Result<f64> {
    let p = adjusted.get(dominant_index).ok_or_else(|| {
        CareError::Structural(format!(
            "dominant index {dominant_index} out of range for {} waypoints",
            adjusted.len()
        ))
    })?;
    if p.x == 0.0 && p.y == 0.0 {
        return Err(CareError::DegenerateHeading(dominant_index));
    }
    let theta = p.y.atan2(p.x);
    // atan2 returns -pi for (-x, -0.0); fold onto the closed end.
    Ok(if theta == -PI { PI } else { theta })
}

pub fn gate_command(theta_des: f64, params: &SafetyParams) -> ControlCommand {
    let omega = clip(params.k_omega * theta_des, -params.omega_max, params.omega_max);
    if theta_des.abs() > params.theta_thres {
        ControlCommand { v: 0.0, omega }
    } else {
        ControlCommand {
            v: params.v_fwd,
            omega,
        }
    }
}
