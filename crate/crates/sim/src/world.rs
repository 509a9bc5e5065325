//! Static and scripted-dynamic world description plus its TOML file format.
//!
//! ```toml
//! name = "example"
//! rng_seed = 7
//! start = [0.5, 1.2, 0.0]      # x, y, heading
//! goals = [[4.0, 1.2], [8.0, 1.2]]
//!
//! [bounds]
//! min = [0.0, 0.0]
//! max = [24.0, 2.4]
//!
//! [[polygons]]
//! vertices = [[2.0, 1.0], [2.3, 1.0], [2.3, 1.3], [2.0, 1.3]]
//!
//! [[circles]]
//! center = [5.0, 0.6]
//! radius = 0.15
//!
//! [[agents]]
//! radius = 0.2
//! schedule = [[6.0, 1.2, 0.0], [3.5, 1.2, 5.0]]   # x, y, arrival time
//! ```
//!
//! The bounds rectangle is a solid wall. Agents exist from the first
//! schedule time onward and hold their final position after the last one.

use std::path::Path;

use care_core::Vec2;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::geometry::{is_convex, signed_area};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min: Vec2,
    pub max: Vec2,
}

impl Bounds {
    pub fn new(min: Vec2, max: Vec2) -> Self {
        Bounds { min, max }
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn corners(&self) -> [Vec2; 4] {
        [
            self.min,
            Vec2::new(self.max.x, self.min.y),
            self.max,
            Vec2::new(self.min.x, self.max.y),
        ]
    }

    /// Distance from an interior point to the nearest wall (negative outside).
    pub fn clearance(&self, p: Vec2) -> f64 {
        (p.x - self.min.x)
            .min(self.max.x - p.x)
            .min(p.y - self.min.y)
            .min(self.max.y - p.y)
    }
}

/// Convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

impl Polygon {
    /// Accepts either winding; stores counter-clockwise.
    pub fn new(mut vertices: Vec<Vec2>) -> Result<Self> {
        if !is_convex(&vertices) {
            return Err(SimError::InvalidWorld(format!(
                "polygon {vertices:?} is not a non-degenerate convex polygon"
            )));
        }
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        Ok(Polygon { vertices })
    }

    /// Axis-aligned box of size `w x h` centered at `center`, rotated by `yaw`.
    pub fn rect(center: Vec2, w: f64, h: f64, yaw: f64) -> Self {
        let (hw, hh) = (w / 2.0, h / 2.0);
        let vertices = [(-hw, -hh), (hw, -hh), (hw, hh), (-hw, hh)]
            .into_iter()
            .map(|(x, y)| center + Vec2::new(x, y).rotate(yaw))
            .collect();
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn translated(&self, by: Vec2) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&v| v + by).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Vec2,
    pub radius: f64,
}

/// Disc-shaped mover following a piecewise-linear `(position, time)` schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicAgent {
    pub radius: f64,
    schedule: Vec<(Vec2, f64)>,
}

impl DynamicAgent {
    pub fn new(radius: f64, schedule: Vec<(Vec2, f64)>) -> Result<Self> {
        if !(radius > 0.0) || schedule.is_empty() {
            return Err(SimError::InvalidWorld(
                "agent needs a positive radius and at least one schedule point".into(),
            ));
        }
        if schedule.windows(2).any(|w| !(w[1].1 > w[0].1)) {
            return Err(SimError::InvalidWorld(
                "agent schedule times must be strictly increasing".into(),
            ));
        }
        Ok(DynamicAgent { radius, schedule })
    }

    pub fn schedule(&self) -> &[(Vec2, f64)] {
        &self.schedule
    }

    /// Position at time `t`, or `None` before the agent appears.
    pub fn position_at(&self, t: f64) -> Option<Vec2> {
        let (first, t0) = self.schedule[0];
        if t < t0 {
            return None;
        }
        for w in self.schedule.windows(2) {
            let ((a, ta), (b, tb)) = (w[0], w[1]);
            if t <= tb {
                let s = (t - ta) / (tb - ta);
                return Some(a + (b - a) * s);
            }
        }
        Some(self.schedule.last().map_or(first, |s| s.0))
    }

    pub fn circle_at(&self, t: f64) -> Option<Circle> {
        self.position_at(t).map(|center| Circle {
            center,
            radius: self.radius,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorldModel {
    pub name: String,
    pub bounds: Bounds,
    pub polygons: Vec<Polygon>,
    pub circles: Vec<Circle>,
    pub agents: Vec<DynamicAgent>,
    pub rng_seed: u64,
    /// Optional start pose `(x, y, heading)`.
    pub start: Option<[f64; 3]>,
    pub goals: Vec<Vec2>,
}

impl WorldModel {
    pub fn empty(name: impl Into<String>, bounds: Bounds) -> Self {
        WorldModel {
            name: name.into(),
            bounds,
            polygons: Vec::new(),
            circles: Vec::new(),
            agents: Vec::new(),
            rng_seed: 0,
            start: None,
            goals: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let b = &self.bounds;
        if !(b.max.x > b.min.x && b.max.y > b.min.y) {
            return Err(SimError::InvalidWorld("bounds must have positive extent".into()));
        }
        for (i, poly) in self.polygons.iter().enumerate() {
            if !poly.vertices().iter().all(|&v| b.contains(v)) {
                return Err(SimError::InvalidWorld(format!("polygon {i} leaves the bounds")));
            }
        }
        for (i, c) in self.circles.iter().enumerate() {
            if !(c.radius > 0.0) || b.clearance(c.center) < c.radius {
                return Err(SimError::InvalidWorld(format!("circle {i} leaves the bounds")));
            }
        }
        for (i, a) in self.agents.iter().enumerate() {
            if !a.schedule().iter().all(|(p, _)| b.contains(*p)) {
                return Err(SimError::InvalidWorld(format!("agent {i} leaves the bounds")));
            }
        }
        if let Some([x, y, h]) = self.start {
            if !(b.contains(Vec2::new(x, y)) && h.is_finite()) {
                return Err(SimError::InvalidWorld("start pose outside bounds".into()));
            }
        }
        if !self.goals.iter().all(|g| b.contains(*g)) {
            return Err(SimError::InvalidWorld("goal outside bounds".into()));
        }
        Ok(())
    }

    /// Static obstacle count, excluding the boundary walls.
    pub fn static_obstacle_count(&self) -> usize {
        self.polygons.len() + self.circles.len()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: WorldFile = toml::from_str(text).map_err(|e| SimError::WorldFormat(e.to_string()))?;
        file.into_model()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| SimError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&WorldFile::from_model(self)).expect("world serializes")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_toml()).map_err(|source| SimError::Write {
            path: path.to_path_buf(),
            source,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WorldFile {
    #[serde(default)]
    name: String,
    #[serde(default)]
    rng_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    start: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    goals: Vec<[f64; 2]>,
    bounds: BoundsFile,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    polygons: Vec<PolygonFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    circles: Vec<CircleFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    agents: Vec<AgentFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundsFile {
    min: [f64; 2],
    max: [f64; 2],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonFile {
    vertices: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircleFile {
    center: [f64; 2],
    radius: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AgentFile {
    radius: f64,
    schedule: Vec<[f64; 3]>,
}

impl WorldFile {
    fn into_model(self) -> Result<WorldModel> {
        let polygons = self
            .polygons
            .into_iter()
            .map(|p| Polygon::new(p.vertices.into_iter().map(Vec2::from).collect()))
            .collect::<Result<Vec<_>>>()?;
        let agents = self
            .agents
            .into_iter()
            .map(|a| {
                DynamicAgent::new(
                    a.radius,
                    a.schedule
                        .into_iter()
                        .map(|[x, y, t]| (Vec2::new(x, y), t))
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let world = WorldModel {
            name: self.name,
            bounds: Bounds::new(self.bounds.min.into(), self.bounds.max.into()),
            polygons,
            circles: self
                .circles
                .into_iter()
                .map(|c| Circle {
                    center: c.center.into(),
                    radius: c.radius,
                })
                .collect(),
            agents,
            rng_seed: self.rng_seed,
            start: self.start,
            goals: self.goals.into_iter().map(Vec2::from).collect(),
        };
        world.validate()?;
        Ok(world)
    }

    fn from_model(w: &WorldModel) -> Self {
        let arr = |v: Vec2| [v.x, v.y];
        WorldFile {
            name: w.name.clone(),
            rng_seed: w.rng_seed,
            start: w.start,
            goals: w.goals.iter().copied().map(arr).collect(),
            bounds: BoundsFile {
                min: arr(w.bounds.min),
                max: arr(w.bounds.max),
            },
            polygons: w
                .polygons
                .iter()
                .map(|p| PolygonFile {
                    vertices: p.vertices().iter().copied().map(arr).collect(),
                })
                .collect(),
            circles: w
                .circles
                .iter()
                .map(|c| CircleFile {
                    center: arr(c.center),
                    radius: c.radius,
                })
                .collect(),
            agents: w
                .agents
                .iter()
                .map(|a| AgentFile {
                    radius: a.radius,
                    schedule: a.schedule().iter().map(|(p, t)| [p.x, p.y, *t]).collect(),
                })
                .collect(),
        }
    }
}
