//! Depth frame to top-down obstacle set.
//!
//! The camera frame is X right, Y down, Z forward. Surviving points are binned
//! by X into `bin_count` equal bins spanning `±tan(fov / 2) * tau_z`, and each
//! bin contributes its nearest point (smallest corrected Z; ties go to the
//! lowest point index). Entries are reported in the robot frame, x forward and
//! y left, with `x = Z + camera_x_offset` and `y = -X`.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::camera::{DepthFrame, PointCloud};
use crate::config::CareConfig;
use crate::error::Result;
use crate::geometry::Vec2;

/// Clouds at least this large are binned on the rayon pool.
pub const PARALLEL_MIN_POINTS: usize = 16 * 1024;

#[cfg(feature = "parallel")]
const CHUNK: usize = 4096;

/// Back-projects every valid pixel through the pinhole model.
pub fn back_project(frame: &DepthFrame) -> Result<PointCloud> {
    frame.validate()?;
    #[cfg(feature = "parallel")]
    {
        if frame.depths.len() >= PARALLEL_MIN_POINTS {
            return Ok(back_project_parallel(frame));
        }
    }
    Ok(back_project_sequential(frame))
}

fn project_row(frame: &DepthFrame, v: usize, out: &mut Vec<[f64; 3]>) {
    let k = &frame.intrinsics;
    let row = &frame.depths[v * k.width..(v + 1) * k.width];
    let vy = v as f64 - k.cy;
    for (u, &d) in row.iter().enumerate() {
        if d == DepthFrame::INVALID {
            continue;
        }
        out.push([(u as f64 - k.cx) * d / k.fx, vy * d / k.fy, d]);
    }
}

/// Single-threaded back-projection. Assumes a validated frame.
pub fn back_project_sequential(frame: &DepthFrame) -> PointCloud {
    let mut points = Vec::with_capacity(frame.depths.len());
    for v in 0..frame.intrinsics.height {
        project_row(frame, v, &mut points);
    }
    PointCloud { points }
}

/// Row-parallel back-projection; output order matches the sequential path.
#[cfg(feature = "parallel")]
pub fn back_project_parallel(frame: &DepthFrame) -> PointCloud {
    let rows: Vec<Vec<[f64; 3]>> = (0..frame.intrinsics.height)
        .into_par_iter()
        .map(|v| {
            let mut row = Vec::with_capacity(frame.intrinsics.width);
            project_row(frame, v, &mut row);
            row
        })
        .collect();
    PointCloud {
        points: rows.into_iter().flatten().collect(),
    }
}

/// Shifts every point's Z by `-depth_offset`.
pub fn apply_depth_offset(cloud: &PointCloud, depth_offset: f64) -> PointCloud {
    PointCloud {
        points: cloud
            .points
            .iter()
            .map(|&[x, y, z]| [x, y, z - depth_offset])
            .collect(),
    }
}

/// Range and ceiling mask on an already offset-corrected point.
pub fn passes_mask(point: [f64; 3], tau_z: f64, epsilon: f64) -> bool {
    let [_, y, z] = point;
    z > 0.0 && z <= tau_z && y >= -epsilon
}

pub fn apply_mask(cloud: &PointCloud, tau_z: f64, epsilon: f64) -> PointCloud {
    PointCloud {
        points: cloud
            .points
            .iter()
            .copied()
            .filter(|p| passes_mask(*p, tau_z, epsilon))
            .collect(),
    }
}

/// Half-width of the binned X interval.
pub fn bin_half_range(cfg: &CareConfig) -> f64 {
    cfg.mount.half_fov_rad().tan() * cfg.tau_z
}

/// Bin of a camera-frame X coordinate, or `None` outside `[-half, half]`.
pub fn bin_index(x: f64, half_range: f64, bin_count: usize) -> Option<usize> {
    if !(x.abs() <= half_range) {
        return None;
    }
    let t = (x + half_range) / (2.0 * half_range);
    let idx = (t * bin_count as f64).floor() as usize;
    Some(idx.min(bin_count - 1))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Obstacle {
    pub bin: usize,
    /// Camera-frame lateral coordinate X.
    pub x_cam: f64,
    /// Offset-corrected depth Z, in `(0, tau_z]`.
    pub z: f64,
    /// Robot-frame position.
    pub position: Vec2,
    /// Index of the source point in the input cloud.
    pub source_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObstacleMap {
    /// At most one entry per bin, ordered by bin.
    pub obstacles: Vec<Obstacle>,
    pub bin_count: usize,
    pub sensing_range: f64,
    pub half_range: f64,
}

impl ObstacleMap {
    pub fn empty(cfg: &CareConfig) -> Self {
        ObstacleMap {
            obstacles: Vec::new(),
            bin_count: cfg.bin_count,
            sensing_range: cfg.tau_z,
            half_range: bin_half_range(cfg),
        }
    }

    pub fn len(&self) -> usize {
        self.obstacles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.obstacles.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = Vec2> + '_ {
        self.obstacles.iter().map(|o| o.position)
    }

    /// Builds a map straight from robot-frame points, bypassing the camera.
    /// Useful for planners fed by other range sources.
    pub fn from_positions(positions: &[Vec2], cfg: &CareConfig) -> Self {
        let mut map = ObstacleMap::empty(cfg);
        map.obstacles = positions
            .iter()
            .enumerate()
            .map(|(i, &p)| Obstacle {
                bin: i,
                x_cam: -p.y,
                z: p.x - cfg.mount.x_offset_m,
                position: p,
                source_index: i,
            })
            .collect();
        map.bin_count = map.bin_count.max(positions.len());
        map
    }
}

/// Best candidate per bin as `(z, point index)`.
type Bins = Vec<Option<(f64, usize)>>;

#[inline]
fn offer(bins: &mut Bins, bin: usize, z: f64, index: usize) {
    match bins[bin] {
        Some((bz, bi)) if (bz, bi) <= (z, index) => {}
        _ => bins[bin] = Some((z, index)),
    }
}

fn scan(points: &[[f64; 3]], base: usize, cfg: &CareConfig, half: f64, bins: &mut Bins) {
    let offset = cfg.mount.depth_offset_m;
    for (i, &[x, y, z]) in points.iter().enumerate() {
        let z = z - offset;
        if !passes_mask([x, y, z], cfg.tau_z, cfg.epsilon) {
            continue;
        }
        if let Some(bin) = bin_index(x, half, cfg.bin_count) {
            offer(bins, bin, z, base + i);
        }
    }
}

fn finish(cloud: &PointCloud, cfg: &CareConfig, half: f64, bins: Bins) -> ObstacleMap {
    let obstacles = bins
        .into_iter()
        .enumerate()
        .filter_map(|(bin, best)| {
            best.map(|(z, index)| {
                let x_cam = cloud.points[index][0];
                Obstacle {
                    bin,
                    x_cam,
                    z,
                    position: Vec2::new(z + cfg.mount.x_offset_m, -x_cam),
                    source_index: index,
                }
            })
        })
        .collect();
    ObstacleMap {
        obstacles,
        bin_count: cfg.bin_count,
        sensing_range: cfg.tau_z,
        half_range: half,
    }
}

/// Depth-offset correction, masking, binning and per-bin nearest selection.
/// Empty or fully masked input yields an empty map.
pub fn construct_obstacle_map(cloud: &PointCloud, cfg: &CareConfig) -> ObstacleMap {
    #[cfg(feature = "parallel")]
    {
        if cloud.len() >= PARALLEL_MIN_POINTS {
            return construct_obstacle_map_parallel(cloud, cfg);
        }
    }
    construct_obstacle_map_sequential(cloud, cfg)
}

pub fn construct_obstacle_map_sequential(cloud: &PointCloud, cfg: &CareConfig) -> ObstacleMap {
    let half = bin_half_range(cfg);
    let mut bins = vec![None; cfg.bin_count];
    scan(&cloud.points, 0, cfg, half, &mut bins);
    finish(cloud, cfg, half, bins)
}

/// Chunked fold/reduce over the rayon pool. The per-bin merge is a total
/// order on `(z, index)`, so the result is identical to the sequential scan.
#[cfg(feature = "parallel")]
pub fn construct_obstacle_map_parallel(cloud: &PointCloud, cfg: &CareConfig) -> ObstacleMap {
    let half = bin_half_range(cfg);
    let m = cfg.bin_count;
    let bins = cloud
        .points
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(c, chunk)| {
            let mut bins = vec![None; m];
            scan(chunk, c * CHUNK, cfg, half, &mut bins);
            bins
        })
        .reduce(
            || vec![None; m],
            |mut a, b| {
                for (bin, cand) in b.into_iter().enumerate() {
                    if let Some((z, i)) = cand {
                        offer(&mut a, bin, z, i);
                    }
                }
                a
            },
        );
    finish(cloud, cfg, half, bins)
}
