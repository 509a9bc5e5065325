//! Raycast depth camera.
//!
//! Obstacles are treated as vertical prisms taller than the camera, so each
//! pixel column carries a single depth and the floor never returns a hit.

use care_core::{CameraIntrinsics, CameraMount, DepthFrame, Platform, Vec2};
use rand::Rng;

use crate::geometry::{ray_circle, ray_segment};
use crate::robot::Pose;
use crate::world::WorldModel;

#[derive(Debug, Clone, PartialEq)]
pub struct DepthCamera {
    pub intrinsics: CameraIntrinsics,
    pub mount: CameraMount,
    /// Returns beyond this optical-axis depth are reported invalid.
    pub far_limit: f64,
}

impl DepthCamera {
    /// Full published width; only every `row_stride`-th row is rendered.
    pub fn for_platform(platform: Platform, row_stride: usize) -> Self {
        let spec = platform.spec();
        let full = spec.intrinsics();
        let stride = row_stride.max(1);
        let height = spec.image_height.div_ceil(stride);
        let intrinsics = CameraIntrinsics::new(
            full.fx,
            full.fy / stride as f64,
            full.cx,
            height as f64 / 2.0,
            full.width,
            height,
        )
        .expect("strided intrinsics are valid");
        DepthCamera {
            intrinsics,
            mount: spec.mount(),
            far_limit: 5.0,
        }
    }

    /// Distance along the optical axis to the first surface in each column.
    pub fn column_depths(&self, world: &WorldModel, pose: Pose, t: f64) -> Vec<f64> {
        let k = &self.intrinsics;
        let origin = pose.to_world(Vec2::new(self.mount.x_offset_m, 0.0));
        let agents: Vec<_> = world.agents.iter().filter_map(|a| a.circle_at(t)).collect();
        (0..k.width)
            .map(|u| {
                let a = (u as f64 - k.cx) / k.fx;
                let scale = (1.0 + a * a).sqrt();
                let dir = Vec2::new(1.0 / scale, -a / scale).rotate(pose.heading);
                let hit = first_hit(world, &agents, origin, dir);
                let z = hit / scale;
                if z > self.far_limit {
                    DepthFrame::INVALID
                } else {
                    z
                }
            })
            .collect()
    }

    pub fn render(&self, world: &WorldModel, pose: Pose, t: f64) -> DepthFrame {
        self.frame_from_columns(self.column_depths(world, pose, t))
    }

    /// Like [`render`](Self::render) with every valid return perturbed by
    /// uniform noise in `[-jitter, jitter]`.
    pub fn render_jittered(
        &self,
        world: &WorldModel,
        pose: Pose,
        t: f64,
        jitter: f64,
        rng: &mut impl Rng,
    ) -> DepthFrame {
        let mut columns = self.column_depths(world, pose, t);
        if jitter > 0.0 {
            for d in columns.iter_mut().filter(|d| **d != DepthFrame::INVALID) {
                *d = (*d + rng.random_range(-jitter..=jitter)).max(f64::MIN_POSITIVE);
            }
        }
        self.frame_from_columns(columns)
    }

    fn frame_from_columns(&self, columns: Vec<f64>) -> DepthFrame {
        let k = &self.intrinsics;
        let mut depths = Vec::with_capacity(k.pixel_count());
        for _ in 0..k.height {
            depths.extend_from_slice(&columns);
        }
        DepthFrame::new(depths, *k, self.mount).expect("rendered frame is consistent")
    }
}

fn first_hit(world: &WorldModel, agents: &[crate::world::Circle], origin: Vec2, dir: Vec2) -> f64 {
    let mut best = f64::INFINITY;
    let corners = world.bounds.corners();
    for i in 0..4 {
        if let Some(t) = ray_segment(origin, dir, corners[i], corners[(i + 1) % 4]) {
            best = best.min(t);
        }
    }
    for poly in &world.polygons {
        for (a, b) in poly.edges() {
            if let Some(t) = ray_segment(origin, dir, a, b) {
                best = best.min(t);
            }
        }
    }
    for c in world.circles.iter().chain(agents) {
        if let Some(t) = ray_circle(origin, dir, c.center, c.radius) {
            best = best.min(t);
        }
    }
    best
}
