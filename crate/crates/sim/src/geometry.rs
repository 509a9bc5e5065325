//! Ray and disc queries against the primitive shapes of the world.

use care_core::Vec2;

/// Contacts within this distance count as touching.
pub const CONTACT_TOLERANCE: f64 = 1e-9;

/// Distance along a unit ray `origin + t * dir` to segment `a-b`.
pub fn ray_segment(origin: Vec2, dir: Vec2, a: Vec2, b: Vec2) -> Option<f64> {
    let edge = b - a;
    let denom = dir.cross(edge);
    if denom == 0.0 {
        return None;
    }
    let rel = a - origin;
    let t = rel.cross(edge) / denom;
    let s = rel.cross(dir) / denom;
    (t >= 0.0 && (0.0..=1.0).contains(&s)).then_some(t)
}

/// Distance along a unit ray to the first crossing of a circle boundary.
pub fn ray_circle(origin: Vec2, dir: Vec2, center: Vec2, radius: f64) -> Option<f64> {
    let rel = origin - center;
    let b = rel.dot(dir);
    let c = rel.norm_squared() - radius * radius;
    let disc = b * b - c;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let near = -b - sq;
    if near >= 0.0 {
        return Some(near);
    }
    let far = -b + sq;
    (far >= 0.0).then_some(far)
}

pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    let t = if len2 == 0.0 {
        0.0
    } else {
        ((p - a).dot(ab) / len2).clamp(0.0, 1.0)
    };
    (p - (a + ab * t)).norm()
}

/// Inside test for a counter-clockwise convex polygon (boundary counts).
pub fn point_in_convex(p: Vec2, vertices: &[Vec2]) -> bool {
    let n = vertices.len();
    (0..n).all(|i| {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        (b - a).cross(p - a) >= 0.0
    })
}

/// Signed area, positive for counter-clockwise vertex order.
pub fn signed_area(vertices: &[Vec2]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| vertices[i].cross(vertices[(i + 1) % n]))
        .sum::<f64>()
        / 2.0
}

pub fn is_convex(vertices: &[Vec2]) -> bool {
    let n = vertices.len();
    if n < 3 {
        return false;
    }
    let sign = signed_area(vertices).signum();
    if sign == 0.0 {
        return false;
    }
    (0..n).all(|i| {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let c = vertices[(i + 2) % n];
        (b - a).cross(c - b) * sign >= 0.0
    })
}
