//! Footprint-disc collision checks.

use care_core::Vec2;

use crate::geometry::{point_in_convex, point_segment_distance, CONTACT_TOLERANCE};
use crate::world::WorldModel;

/// Smallest gap between a disc and anything solid at time `t`; negative on overlap.
pub fn clearance(world: &WorldModel, center: Vec2, radius: f64, t: f64) -> f64 {
    let mut gap = world.bounds.clearance(center) - radius;
    for poly in &world.polygons {
        let d = if point_in_convex(center, poly.vertices()) {
            -radius
        } else {
            poly.edges()
                .map(|(a, b)| point_segment_distance(center, a, b))
                .fold(f64::INFINITY, f64::min)
                - radius
        };
        gap = gap.min(d);
    }
    for c in &world.circles {
        gap = gap.min((center - c.center).norm() - c.radius - radius);
    }
    for agent in &world.agents {
        if let Some(c) = agent.circle_at(t) {
            gap = gap.min((center - c.center).norm() - c.radius - radius);
        }
    }
    gap
}

/// True when the disc touches or overlaps a wall, obstacle or active agent.
pub fn in_collision(world: &WorldModel, center: Vec2, radius: f64, t: f64) -> bool {
    clearance(world, center, radius, t) <= CONTACT_TOLERANCE
}
