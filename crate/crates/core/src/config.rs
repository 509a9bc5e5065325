//! Tunables for the avoidance pipeline and the per-platform presets.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::camera::{CameraIntrinsics, CameraMount};
use crate::error::{CareError, Result};
use crate::repulsive::DirectionMode;
use crate::safety::SafetyParams;

/// Robot platforms with measured camera geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Platform {
    #[default]
    Locobot,
    Turtlebot4,
    Robomaster,
}

impl Platform {
    pub const ALL: [Platform; 3] = [Platform::Locobot, Platform::Turtlebot4, Platform::Robomaster];

    pub fn spec(self) -> PlatformSpec {
        match self {
            Platform::Locobot => PlatformSpec {
                platform: self,
                tau_z: 1.0,
                depth_offset_m: 0.05,
                image_width: 320,
                image_height: 240,
                size_m: [0.341, 0.339, 0.350],
                camera_height_m: 0.340,
                camera_x_offset_m: 0.010,
                fov_deg: 170.0,
            },
            Platform::Turtlebot4 => PlatformSpec {
                platform: self,
                tau_z: 1.2,
                depth_offset_m: 0.2,
                image_width: 320,
                image_height: 200,
                size_m: [0.341, 0.339, 0.351],
                camera_height_m: 0.245,
                camera_x_offset_m: -0.060,
                fov_deg: 89.5,
            },
            Platform::Robomaster => PlatformSpec {
                platform: self,
                tau_z: 1.0,
                depth_offset_m: -0.1,
                image_width: 640,
                image_height: 360,
                size_m: [0.320, 0.240, 0.270],
                camera_height_m: 0.240,
                camera_x_offset_m: 0.070,
                fov_deg: 120.0,
            },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Platform::Locobot => "locobot",
            Platform::Turtlebot4 => "turtlebot4",
            Platform::Robomaster => "robomaster",
        }
    }
}

impl fmt::Display for Platform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Platform {
    type Err = CareError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "locobot" => Ok(Platform::Locobot),
            "turtlebot4" | "turtlebot" => Ok(Platform::Turtlebot4),
            "robomaster" | "robomaster_s1" => Ok(Platform::Robomaster),
            other => Err(CareError::Config(format!("unknown platform `{other}`"))),
        }
    }
}

/// Physical parameters of one platform. Lengths in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlatformSpec {
    pub platform: Platform,
    pub tau_z: f64,
    pub depth_offset_m: f64,
    pub image_width: usize,
    pub image_height: usize,
    /// Length, width, height.
    pub size_m: [f64; 3],
    pub camera_height_m: f64,
    pub camera_x_offset_m: f64,
    pub fov_deg: f64,
}

impl PlatformSpec {
    /// Disc radius enclosing the footprint: half the larger of length and width.
    pub fn footprint_radius(&self) -> f64 {
        self.size_m[0].max(self.size_m[1]) / 2.0
    }

    pub fn mount(&self) -> CameraMount {
        CameraMount {
            height_m: self.camera_height_m,
            x_offset_m: self.camera_x_offset_m,
            fov_deg: self.fov_deg,
            depth_offset_m: self.depth_offset_m,
        }
    }

    /// One bin per ten pixel columns.
    pub fn default_bin_count(&self) -> usize {
        self.image_width.div_ceil(10)
    }

    /// Pinhole intrinsics at the published resolution.
    pub fn intrinsics(&self) -> CameraIntrinsics {
        CameraIntrinsics::from_fov(self.image_width, self.image_height, self.fov_deg)
            .expect("platform presets are valid")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CareConfig {
    /// Maximum sensing range along the optical axis.
    pub tau_z: f64,
    /// Ceiling margin: points are kept only when `Y >= -epsilon`.
    pub epsilon: f64,
    pub bin_count: usize,
    pub theta_clip: f64,
    pub direction_mode: DirectionMode,
    pub safety: SafetyParams,
    pub mount: CameraMount,
}

impl Default for CareConfig {
    fn default() -> Self {
        CareConfig::for_platform(Platform::Locobot)
    }
}

const KEYS: [&str; 14] = [
    "tau_z",
    "epsilon",
    "bin_count",
    "theta_clip",
    "theta_thres",
    "direction_mode",
    "v_fwd",
    "v_max",
    "omega_max",
    "k_omega",
    "camera_height",
    "camera_x_offset",
    "fov_deg",
    "depth_offset",
];

impl CareConfig {
    pub fn for_platform(platform: Platform) -> Self {
        let spec = platform.spec();
        CareConfig {
            tau_z: spec.tau_z,
            epsilon: -0.05,
            bin_count: spec.default_bin_count(),
            theta_clip: PI / 4.0,
            direction_mode: DirectionMode::Repel,
            safety: SafetyParams::default(),
            mount: spec.mount(),
        }
    }

    pub fn theta_thres(&self) -> f64 {
        self.safety.theta_thres
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau_z > 0.0 && self.tau_z.is_finite()) {
            return Err(CareError::Config(format!("tau_z must be > 0, got {}", self.tau_z)));
        }
        if self.bin_count == 0 {
            return Err(CareError::Config("bin_count must be >= 1".into()));
        }
        if !(self.theta_clip > 0.0 && self.theta_clip <= PI) {
            return Err(CareError::Config(format!(
                "theta_clip must be in (0, pi], got {}",
                self.theta_clip
            )));
        }
        if !self.epsilon.is_finite() {
            return Err(CareError::Config("epsilon must be finite".into()));
        }
        self.safety.validate()?;
        self.mount.validate()
    }

    /// Applies `key = value` overrides on top of `self`. Blank lines and `#`
    /// comments are ignored; unknown or repeated keys are rejected.
    pub fn apply_overrides(mut self, text: &str) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CareError::parse(i + 1, "expected `key = value`"))?;
            let key = key.trim();
            let value = value.trim();
            if !KEYS.contains(&key) {
                return Err(CareError::parse(i + 1, format!("unknown key `{key}`")));
            }
            if !seen.insert(key.to_string()) {
                return Err(CareError::parse(i + 1, format!("duplicate key `{key}`")));
            }
            let num = || parse_scalar(value).ok_or_else(|| CareError::parse(i + 1, format!("bad value `{value}`")));
            match key {
                "tau_z" => self.tau_z = num()?,
                "epsilon" => self.epsilon = num()?,
                "bin_count" => {
                    self.bin_count = value
                        .parse()
                        .map_err(|_| CareError::parse(i + 1, format!("bad bin_count `{value}`")))?
                }
                "theta_clip" => self.theta_clip = num()?,
                "theta_thres" => self.safety.theta_thres = num()?,
                "direction_mode" => {
                    self.direction_mode = value.parse().map_err(|e: CareError| {
                        CareError::parse(i + 1, e.to_string())
                    })?
                }
                "v_fwd" => self.safety.v_fwd = num()?,
                "v_max" => self.safety.v_max = num()?,
                "omega_max" => self.safety.omega_max = num()?,
                "k_omega" => self.safety.k_omega = num()?,
                "camera_height" => self.mount.height_m = num()?,
                "camera_x_offset" => self.mount.x_offset_m = num()?,
                "fov_deg" => self.mount.fov_deg = num()?,
                "depth_offset" => self.mount.depth_offset_m = num()?,
                _ => unreachable!(),
            }
        }
        self.validate()?;
        Ok(self)
    }

    /// Serializes every key, in the same format `apply_overrides` reads.
    pub fn to_text(&self) -> String {
        format!(
            "tau_z = {}\nepsilon = {}\nbin_count = {}\ntheta_clip = {}\ntheta_thres = {}\n\
             direction_mode = {}\nv_fwd = {}\nv_max = {}\nomega_max = {}\nk_omega = {}\n\
             camera_height = {}\ncamera_x_offset = {}\nfov_deg = {}\ndepth_offset = {}\n",
            self.tau_z,
            self.epsilon,
            self.bin_count,
            self.theta_clip,
            self.safety.theta_thres,
            self.direction_mode,
            self.safety.v_fwd,
            self.safety.v_max,
            self.safety.omega_max,
            self.safety.k_omega,
            self.mount.height_m,
            self.mount.x_offset_m,
            self.mount.fov_deg,
            self.mount.depth_offset_m,
        )
    }
}

/// A float, or `pi`, `pi/<n>`, `<n>*pi` for angles.
fn parse_scalar(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return v.is_finite().then_some(v);
    }
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (sign, body) = match compact.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, compact.as_str()),
    };
    if body == "pi" {
        return Some(sign * PI);
    }
    if let Some(den) = body.strip_prefix("pi/") {
        return den.parse::<f64>().ok().filter(|d| *d != 0.0).map(|d| sign * PI / d);
    }
    if let Some(num) = body.strip_suffix("*pi") {
        return num.parse::<f64>().ok().map(|n| sign * n * PI);
    }
    None
}
