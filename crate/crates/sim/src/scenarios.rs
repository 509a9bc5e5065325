//! Generators for the bundled worlds: the cluttered exploration room, the
//! goal-conditioned corridor instances and the dynamic-obstacle corridors.

use std::collections::VecDeque;
use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use care_core::Vec2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::collision::clearance;
use crate::error::{Result, SimError};
use crate::world::{Bounds, DynamicAgent, Polygon, WorldModel};

pub const BOX_SIZE: f64 = 0.3;
pub const EXPLORATION_SIZE: (f64, f64) = (3.5, 2.8);
pub const EXPLORATION_BOXES: usize = 10;
/// Minimum center distance between exploration boxes.
pub const EXPLORATION_SPACING: f64 = 0.8;
/// Layout seed of the bundled exploration room.
pub const EXPLORATION_SEED: u64 = 7;
pub const CORRIDOR_SIZE: (f64, f64) = (24.0, 2.4);
pub const CORRIDOR_INSTANCES: usize = 10;
pub const CORRIDOR_BOXES: usize = 15;
pub const CORRIDOR_GOAL_XS: [f64; 6] = [4.0, 8.0, 12.0, 16.0, 20.0, 23.5];
pub const DYNAMIC_SIZE: (f64, f64) = (8.0, 2.4);
pub const AGENT_RADIUS: f64 = 0.2;

/// Clearance used when checking that a robot disc can get through.
const PASSAGE_RADIUS: f64 = 0.2;

fn rect_bounds(w: f64, h: f64) -> Bounds {
    Bounds::new(Vec2::ZERO, Vec2::new(w, h))
}

/// 3.5 m x 2.8 m room with ten randomly placed boxes.
pub fn exploration_world(seed: u64) -> WorldModel {
    let (w, h) = EXPLORATION_SIZE;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut world = WorldModel::empty(format!("exploration_{seed}"), rect_bounds(w, h));
    world.rng_seed = seed;
    let mut centers: Vec<Vec2> = Vec::new();
    let mut attempts = 0;
    while centers.len() < EXPLORATION_BOXES {
        attempts += 1;
        if attempts > 5000 {
            centers.clear();
            world.polygons.clear();
            attempts = 0;
        }
        let c = Vec2::new(rng.random_range(0.22..w - 0.22), rng.random_range(0.22..h - 0.22));
        if centers.iter().all(|&o| (o - c).norm() >= EXPLORATION_SPACING) {
            centers.push(c);
            let yaw = rng.random_range(0.0..FRAC_PI_2);
            world.polygons.push(Polygon::rect(c, BOX_SIZE, BOX_SIZE, yaw));
        }
    }
    world
}

/// Uniformly drawn pose with at least `margin` of free space around a disc of `radius`.
pub fn random_free_pose(world: &WorldModel, radius: f64, margin: f64, rng: &mut impl Rng) -> [f64; 3] {
    let b = world.bounds;
    loop {
        let p = Vec2::new(
            rng.random_range(b.min.x..b.max.x),
            rng.random_range(b.min.y..b.max.y),
        );
        let heading = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        if clearance(world, p, radius, 0.0) >= margin {
            return [p.x, p.y, heading];
        }
    }
}

pub fn corridor_goals() -> Vec<Vec2> {
    CORRIDOR_GOAL_XS
        .iter()
        .map(|&x| Vec2::new(x, CORRIDOR_SIZE.1 / 2.0))
        .collect()
}

/// Empty 24 m corridor with the standard start and goal sequence.
pub fn empty_corridor() -> WorldModel {
    let (w, h) = CORRIDOR_SIZE;
    let mut world = WorldModel::empty("corridor_empty", rect_bounds(w, h));
    world.start = Some([0.5, h / 2.0, 0.0]);
    world.goals = corridor_goals();
    world
}

/// Corridor instance `index`: fifteen boxes in four to six clusters.
pub fn corridor_instance(index: usize) -> WorldModel {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0_221D + index as u64);
    loop {
        if let Some(mut world) = try_corridor(&mut rng) {
            world.name = format!("corridor_{index:02}");
            world.rng_seed = index as u64;
            return world;
        }
    }
}

fn try_corridor(rng: &mut ChaCha8Rng) -> Option<WorldModel> {
    let (w, h) = CORRIDOR_SIZE;
    let mut world = empty_corridor();
    let goals = world.goals.clone();
    let clusters = rng.random_range(4..=6usize);
    let (lo, hi) = (2.0, 22.5);
    let seg = (hi - lo) / clusters as f64;
    let mut centers = Vec::new();
    for c in 0..clusters {
        let cx = lo + seg * (c as f64 + 0.5) + rng.random_range(-0.3..0.3) * seg;
        let cy = rng.random_range(0.6..h - 0.6);
        let count = CORRIDOR_BOXES / clusters + usize::from(c < CORRIDOR_BOXES % clusters);
        for _ in 0..count {
            let mut placed = false;
            for _ in 0..200 {
                let p = Vec2::new(cx + rng.random_range(-0.7..0.7), cy + rng.random_range(-0.6..0.6));
                let yaw = rng.random_range(0.0..FRAC_PI_2);
                let poly = Polygon::rect(p, BOX_SIZE, BOX_SIZE, yaw);
                let inside = poly
                    .vertices()
                    .iter()
                    .all(|&v| v.x > 1.5 && v.x < w - 0.02 && v.y > 0.02 && v.y < h - 0.02);
                let clear_goals = goals.iter().all(|&g| (g - p).norm() >= 0.6);
                let apart = centers.iter().all(|&o: &Vec2| (o - p).norm() >= 0.45);
                if inside && clear_goals && apart {
                    centers.push(p);
                    world.polygons.push(poly);
                    placed = true;
                    break;
                }
            }
            if !placed {
                return None;
            }
        }
    }
    let start = world.start.map(|[x, y, _]| Vec2::new(x, y))?;
    goals
        .iter()
        .all(|&g| passable(&world, start, g, PASSAGE_RADIUS))
        .then_some(world)
}

/// Grid search for a collision-free route for a disc of `radius` at time 0.
pub fn passable(world: &WorldModel, from: Vec2, to: Vec2, radius: f64) -> bool {
    const CELL: f64 = 0.05;
    let b = world.bounds;
    let nx = ((b.max.x - b.min.x) / CELL).ceil() as usize;
    let ny = ((b.max.y - b.min.y) / CELL).ceil() as usize;
    let center = |i: usize, j: usize| b.min + Vec2::new((i as f64 + 0.5) * CELL, (j as f64 + 0.5) * CELL);
    let cell_of = |p: Vec2| {
        let i = (((p.x - b.min.x) / CELL) as usize).min(nx - 1);
        let j = (((p.y - b.min.y) / CELL) as usize).min(ny - 1);
        (i, j)
    };
    let free = |i: usize, j: usize| clearance(world, center(i, j), radius, 0.0) > 0.0;
    let (s, g) = (cell_of(from), cell_of(to));
    if !free(s.0, s.1) || !free(g.0, g.1) {
        return false;
    }
    let mut seen = vec![false; nx * ny];
    let mut queue = VecDeque::from([s]);
    seen[s.1 * nx + s.0] = true;
    while let Some((i, j)) = queue.pop_front() {
        if (i, j) == g {
            return true;
        }
        let neighbors = [
            (i.wrapping_sub(1), j),
            (i + 1, j),
            (i, j.wrapping_sub(1)),
            (i, j + 1),
        ];
        for (a, c) in neighbors {
            if a < nx && c < ny && !seen[c * nx + a] && free(a, c) {
                seen[c * nx + a] = true;
                queue.push_back((a, c));
            }
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DynamicScenario {
    SideAppear,
    BehindOvertake,
    FrontApproach,
}

impl DynamicScenario {
    pub const ALL: [DynamicScenario; 3] = [
        DynamicScenario::SideAppear,
        DynamicScenario::BehindOvertake,
        DynamicScenario::FrontApproach,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DynamicScenario::SideAppear => "side_appear",
            DynamicScenario::BehindOvertake => "behind_overtake",
            DynamicScenario::FrontApproach => "front_approach",
        }
    }
}

impl fmt::Display for DynamicScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DynamicScenario {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        DynamicScenario::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| SimError::InvalidExperiment(format!("unknown scenario {s:?}")))
    }
}

/// 8 m corridor with one scripted pedestrian.
pub fn dynamic_world(scenario: DynamicScenario) -> WorldModel {
    let (w, h) = DYNAMIC_SIZE;
    let mid = h / 2.0;
    let mut world = WorldModel::empty(scenario.name(), rect_bounds(w, h));
    world.start = Some([1.0, mid, 0.0]);
    world.goals = vec![Vec2::new(7.5, mid)];
    let p = Vec2::new;
    let schedule = match scenario {
        DynamicScenario::FrontApproach => vec![(p(7.0, mid), 0.0), (p(3.5, mid), 7.0)],
        DynamicScenario::BehindOvertake => vec![
            (p(0.3, 1.95), 0.0),
            (p(3.5, 1.95), 4.0),
            (p(3.7, mid), 5.5),
        ],
        DynamicScenario::SideAppear => vec![(p(4.0, 0.25), 9.0), (p(4.0, mid), 11.0)],
    };
    world
        .agents
        .push(DynamicAgent::new(AGENT_RADIUS, schedule).expect("scripted schedule is valid"));
    world
}

/// Per-trial variation of a dynamic world: the pedestrian's timing and
/// path shift slightly, the robot start does not.
pub fn jitter_agents(world: &WorldModel, rng: &mut impl Rng) -> WorldModel {
    let mut out = world.clone();
    out.agents = world
        .agents
        .iter()
        .map(|a| {
            let dt = rng.random_range(-0.5..0.5);
            let dx = rng.random_range(-0.1..0.1);
            let dy = rng.random_range(-0.05..0.05);
            let schedule = a
                .schedule()
                .iter()
                .map(|&(q, t)| {
                    let q = q + Vec2::new(dx, dy);
                    let q = Vec2::new(
                        q.x.clamp(world.bounds.min.x, world.bounds.max.x),
                        q.y.clamp(world.bounds.min.y, world.bounds.max.y),
                    );
                    (q, t + dt)
                })
                .collect();
            DynamicAgent::new(a.radius, schedule).expect("shift preserves ordering")
        })
        .collect();
    out
}
