//! Pinhole camera geometry, depth frames and point clouds, plus their plain
//! text file formats (`DF1` and `PC1`).

use std::fmt::Write as _;

use crate::error::{CareError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraIntrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub width: usize,
    pub height: usize,
}

impl CameraIntrinsics {
    pub fn new(fx: f64, fy: f64, cx: f64, cy: f64, width: usize, height: usize) -> Result<Self> {
        let k = CameraIntrinsics {
            fx,
            fy,
            cx,
            cy,
            width,
            height,
        };
        k.validate()?;
        Ok(k)
    }

    /// Square-pixel pinhole whose horizontal field of view spans the full
    /// image width, principal point at `(width / 2, height / 2)`.
    pub fn from_fov(width: usize, height: usize, fov_deg: f64) -> Result<Self> {
        if !(fov_deg > 0.0 && fov_deg < 180.0) {
            return Err(CareError::Structural(format!(
                "pinhole field of view must be in (0, 180) degrees, got {fov_deg}"
            )));
        }
        let cx = width as f64 / 2.0;
        let fx = cx / (fov_deg.to_radians() / 2.0).tan();
        Self::new(fx, fx, cx, height as f64 / 2.0, width, height)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.fx.is_finite()
            && self.fy.is_finite()
            && self.fx > 0.0
            && self.fy > 0.0
            && self.cx >= 0.0
            && self.cx < self.width as f64
            && self.cy >= 0.0
            && self.cy < self.height as f64;
        if ok {
            Ok(())
        } else {
            Err(CareError::Structural(format!("invalid intrinsics {self:?}")))
        }
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }
}

/// Where the camera sits on the robot and how its depth is corrected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraMount {
    /// Height of the optical center above the ground.
    pub height_m: f64,
    /// Forward offset of the camera from the robot center (negative = behind).
    pub x_offset_m: f64,
    /// Horizontal field of view.
    pub fov_deg: f64,
    /// Subtracted from every depth before masking.
    pub depth_offset_m: f64,
}

impl CameraMount {
    pub fn validate(&self) -> Result<()> {
        let ok = self.height_m > 0.0
            && self.fov_deg > 0.0
            && self.fov_deg <= 180.0
            && self.x_offset_m.is_finite()
            && self.depth_offset_m.is_finite();
        if ok {
            Ok(())
        } else {
            Err(CareError::Config(format!("invalid camera mount {self:?}")))
        }
    }

    pub fn half_fov_rad(&self) -> f64 {
        self.fov_deg.to_radians() / 2.0
    }
}

/// Row-major depth image in meters. A depth of exactly `0.0` marks an
/// invalid pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthFrame {
    pub depths: Vec<f64>,
    pub intrinsics: CameraIntrinsics,
    pub mount: CameraMount,
}

impl DepthFrame {
    pub const INVALID: f64 = 0.0;

    pub fn new(depths: Vec<f64>, intrinsics: CameraIntrinsics, mount: CameraMount) -> Result<Self> {
        let frame = DepthFrame {
            depths,
            intrinsics,
            mount,
        };
        frame.validate()?;
        Ok(frame)
    }

    pub fn validate(&self) -> Result<()> {
        self.intrinsics.validate()?;
        if self.depths.len() != self.intrinsics.pixel_count() {
            return Err(CareError::Structural(format!(
                "depth grid has {} values, intrinsics expect {}x{}",
                self.depths.len(),
                self.intrinsics.width,
                self.intrinsics.height
            )));
        }
        if let Some(i) = self.depths.iter().position(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(CareError::Structural(format!(
                "pixel {i} has invalid depth {}",
                self.depths[i]
            )));
        }
        Ok(())
    }

    pub fn depth(&self, u: usize, v: usize) -> f64 {
        self.depths[v * self.intrinsics.width + u]
    }

    /// Parses the `DF1` format: a header `DF1 <width> <height> <fx> <fy> <cx> <cy>`
    /// followed by `width * height` whitespace-separated depths, row-major.
    /// The mount is not part of the file.
    pub fn parse(text: &str, mount: CameraMount) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| CareError::parse(1, "empty depth frame file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 7 || fields[0] != "DF1" {
            return Err(CareError::parse(
                hline + 1,
                "expected header `DF1 <width> <height> <fx> <fy> <cx> <cy>`",
            ));
        }
        let width: usize = parse_num(fields[1], hline)?;
        let height: usize = parse_num(fields[2], hline)?;
        let fx: f64 = parse_num(fields[3], hline)?;
        let fy: f64 = parse_num(fields[4], hline)?;
        let cx: f64 = parse_num(fields[5], hline)?;
        let cy: f64 = parse_num(fields[6], hline)?;
        let intrinsics = CameraIntrinsics::new(fx, fy, cx, cy, width, height)?;

        let mut depths = Vec::with_capacity(width * height);
        for (i, line) in lines {
            for tok in line.split_whitespace() {
                depths.push(parse_num::<f64>(tok, i)?);
            }
        }
        DepthFrame::new(depths, intrinsics, mount)
    }

    pub fn to_text(&self) -> String {
        let k = &self.intrinsics;
        let mut out = format!(
            "DF1 {} {} {} {} {} {}\n",
            k.width, k.height, k.fx, k.fy, k.cx, k.cy
        );
        for row in self.depths.chunks(k.width.max(1)) {
            let line: Vec<String> = row.iter().map(|d| d.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Camera-frame points: X right, Y down, Z forward (meters).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointCloud {
    pub points: Vec<[f64; 3]>,
}

impl PointCloud {
    pub fn new(points: Vec<[f64; 3]>) -> Result<Self> {
        if let Some(i) = points.iter().position(|p| p.iter().any(|c| !c.is_finite())) {
            return Err(CareError::Structural(format!(
                "point {i} has a non-finite coordinate"
            )));
        }
        Ok(PointCloud { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Parses the `PC1` format: header `PC1 <count>` then `count` lines of `x y z`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| CareError::parse(1, "empty point cloud file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 || fields[0] != "PC1" {
            return Err(CareError::parse(hline + 1, "expected header `PC1 <count>`"));
        }
        let count: usize = parse_num(fields[1], hline)?;
        let mut points = Vec::with_capacity(count);
        for (i, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(CareError::parse(i + 1, "expected `x y z`"));
            }
            points.push([
                parse_num(toks[0], i)?,
                parse_num(toks[1], i)?,
                parse_num(toks[2], i)?,
            ]);
        }
        if points.len() != count {
            return Err(CareError::Structural(format!(
                "header declares {count} points, found {}",
                points.len()
            )));
        }
        PointCloud::new(points)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("PC1 {}\n", self.points.len());
        for [x, y, z] in &self.points {
            let _ = writeln!(out, "{x} {y} {z}");
        }
        out
    }
}

pub(crate) fn parse_num<T: std::str::FromStr>(tok: &str, line_idx: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| CareError::parse(line_idx + 1, format!("cannot parse `{tok}`")))
}
