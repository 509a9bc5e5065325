//! Random inputs, brute-force oracles and seeded invariant checks shared by the
//! test targets. Every check draws its own inputs from the given RNG and
//! returns a description of the first violation.
#![allow(dead_code, clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;

use care_core::pipeline::decide;
use care_core::projection::{apply_mask, bin_half_range};
use care_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;
pub type Property = (&'static str, fn(&mut ChaCha8Rng) -> Check);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

// ---------------------------------------------------------------- inputs

pub fn random_config(rng: &mut ChaCha8Rng) -> CareConfig {
    let platform = Platform::ALL[rng.random_range(0..3)];
    let mut cfg = CareConfig::for_platform(platform);
    if rng.random_bool(0.5) {
        cfg.tau_z = rng.random_range(0.3..2.5);
        cfg.bin_count = rng.random_range(1..=80);
        cfg.mount.fov_deg = rng.random_range(30.0..175.0);
        cfg.mount.depth_offset_m = rng.random_range(-0.2..0.2);
        cfg.mount.x_offset_m = rng.random_range(-0.1..0.1);
    }
    cfg
}

/// Points spread a little beyond every mask boundary. Some depths are
/// quantized so that equal-Z ties occur.
pub fn random_cloud(rng: &mut ChaCha8Rng, cfg: &CareConfig, max_points: usize) -> PointCloud {
    let n = rng.random_range(0..=max_points);
    let half = bin_half_range(cfg) * 1.3;
    let zmax = (cfg.tau_z + cfg.mount.depth_offset_m) * 1.4 + 0.1;
    let quantize = rng.random_bool(0.3);
    let points = (0..n)
        .map(|_| {
            let mut z = rng.random_range(-0.1..zmax);
            if quantize {
                z = (z * 20.0).round() / 20.0;
            }
            [rng.random_range(-half..half), rng.random_range(-0.4..0.6), z]
        })
        .collect();
    PointCloud::new(points).unwrap()
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, extent: f64) -> Vec<Vec2> {
    (0..n)
        .map(|_| Vec2::new(rng.random_range(-extent..extent), rng.random_range(-extent..extent)))
        .collect()
}

/// Obstacles kept at least `gap` away from every waypoint.
pub fn random_obstacles(rng: &mut ChaCha8Rng, n: usize, waypoints: &[Vec2], gap: f64) -> Vec<Vec2> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let o = Vec2::new(rng.random_range(-2.0..3.0), rng.random_range(-2.0..2.0));
        if waypoints.iter().all(|p| (*p - o).norm() >= gap) {
            out.push(o);
        }
    }
    out
}

pub fn random_trajectory(rng: &mut ChaCha8Rng, max_k: usize) -> Trajectory {
    let k = rng.random_range(1..=max_k);
    Trajectory::new(random_points(rng, k, 2.5)).unwrap()
}

/// Forward-going line of `k` waypoints at bearing `heading`.
pub fn line_trajectory(k: usize, step: f64, heading: f64) -> Trajectory {
    Trajectory::new((1..=k).map(|i| Vec2::from_angle(heading) * (step * i as f64)).collect()).unwrap()
}

pub fn obstacle_map(positions: &[Vec2]) -> ObstacleMap {
    ObstacleMap::from_positions(positions, &CareConfig::default())
}

// ---------------------------------------------------------------- oracles

/// Direct summation of `(p - o) / |p - o|^4`.
pub fn oracle_force(p: Vec2, obstacles: &[Vec2]) -> Vec2 {
    let (mut fx, mut fy) = (0.0, 0.0);
    for o in obstacles {
        let (dx, dy) = (p.x - o.x, p.y - o.y);
        let d2 = dx * dx + dy * dy;
        fx += dx / (d2 * d2);
        fy += dy / (d2 * d2);
    }
    Vec2::new(fx, fy)
}

/// Exhaustive argmax of force magnitude, first index on ties.
pub fn oracle_argmax(forces: &[Vec2]) -> usize {
    let mags: Vec<f64> = forces.iter().map(|f| f.x.hypot(f.y)).collect();
    let best = mags.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    mags.iter().position(|&m| m == best).unwrap()
}

pub fn rel_close(a: Vec2, b: Vec2, tol: f64) -> bool {
    let scale = a.norm().max(b.norm()).max(f64::MIN_POSITIVE);
    (a - b).norm() <= tol * scale
}

/// Expected map entry: (bin, z, source index, robot-frame position).
pub type OracleEntry = (usize, f64, usize, Vec2);

/// Linear scan per bin over every point.
pub fn oracle_map(cloud: &PointCloud, cfg: &CareConfig) -> Vec<OracleEntry> {
    let half = (cfg.mount.fov_deg.to_radians() / 2.0).tan() * cfg.tau_z;
    let m = cfg.bin_count;
    let bin_of = |x: f64| -> Option<usize> {
        if x < -half || x > half {
            return None;
        }
        let b = ((x + half) / (2.0 * half) * m as f64).floor() as usize;
        Some(b.min(m - 1))
    };
    let mut out = Vec::new();
    for bin in 0..m {
        let mut best: Option<(f64, usize)> = None;
        for (i, p) in cloud.points.iter().enumerate() {
            let z = p[2] - cfg.mount.depth_offset_m;
            let keep = z > 0.0 && z <= cfg.tau_z && p[1] >= -cfg.epsilon;
            if !keep || bin_of(p[0]) != Some(bin) {
                continue;
            }
            if best.is_none_or(|(bz, _)| z < bz) {
                best = Some((z, i));
            }
        }
        if let Some((z, i)) = best {
            let x_cam = cloud.points[i][0];
            out.push((bin, z, i, Vec2::new(z + cfg.mount.x_offset_m, -x_cam)));
        }
    }
    out
}

pub fn map_entries(map: &ObstacleMap) -> Vec<OracleEntry> {
    map.obstacles
        .iter()
        .map(|o| (o.bin, o.z, o.source_index, o.position))
        .collect()
}

// ---------------------------------------------------------------- projection

pub fn check_mask_idempotent(rng: &mut ChaCha8Rng) -> Check {
    let cfg = random_config(rng);
    let cloud = random_cloud(rng, &cfg, 2000);
    let once = apply_mask(&cloud, cfg.tau_z, cfg.epsilon);
    let twice = apply_mask(&once, cfg.tau_z, cfg.epsilon);
    ensure!(once == twice, "mask not idempotent on {} points", cloud.len());
    Ok(())
}

pub fn check_map_matches_oracle(rng: &mut ChaCha8Rng, max_points: usize) -> Check {
    let cfg = random_config(rng);
    let cloud = random_cloud(rng, &cfg, max_points);
    let got = map_entries(&construct_obstacle_map(&cloud, &cfg));
    let want = oracle_map(&cloud, &cfg);
    ensure!(got == want, "map differs from oracle ({} points, M = {})", cloud.len(), cfg.bin_count);
    Ok(())
}

/// Bin edges move with tau_z, so an entry is compared against whichever
/// bin of the wider map now holds its X.
pub fn check_tau_monotone(rng: &mut ChaCha8Rng) -> Check {
    let cfg = random_config(rng);
    let cloud = random_cloud(rng, &cfg, 2000);
    let mut wide = cfg.clone();
    wide.tau_z = cfg.tau_z * rng.random_range(1.0..2.0);
    let small = construct_obstacle_map(&cloud, &cfg);
    let large = construct_obstacle_map(&cloud, &wide);
    let half = bin_half_range(&wide);
    for o in &small.obstacles {
        let bin = projection::bin_index(o.x_cam, half, wide.bin_count)
            .ok_or_else(|| format!("entry X = {} left the widened range", o.x_cam))?;
        let hit = large.obstacles.iter().find(|e| e.bin == bin);
        ensure!(
            hit.is_some_and(|e| e.z <= o.z),
            "entry at X = {}, z = {} lost or moved farther when tau_z grew",
            o.x_cam,
            o.z
        );
    }
    Ok(())
}

pub fn check_entries_in_range(rng: &mut ChaCha8Rng) -> Check {
    let cfg = random_config(rng);
    let cloud = random_cloud(rng, &cfg, 2000);
    let map = construct_obstacle_map(&cloud, &cfg);
    let half = bin_half_range(&cfg);
    ensure!(map.len() <= cfg.bin_count, "{} entries for {} bins", map.len(), cfg.bin_count);
    for w in map.obstacles.windows(2) {
        ensure!(w[0].bin < w[1].bin, "bins not strictly increasing");
    }
    for o in &map.obstacles {
        ensure!(o.z > 0.0 && o.z <= cfg.tau_z, "z = {} outside (0, {}]", o.z, cfg.tau_z);
        ensure!(o.x_cam.abs() <= half, "X = {} outside ±{half}", o.x_cam);
    }
    Ok(())
}

/// A fronto-parallel wall renders every pixel at the same depth.
pub fn check_frontal_wall(rng: &mut ChaCha8Rng) -> Check {
    let mut cfg = random_config(rng);
    cfg.mount.depth_offset_m = 0.0;
    cfg.epsilon = 100.0;
    let d = rng.random_range(0.05..cfg.tau_z);
    let (w, h) = (rng.random_range(2..120), rng.random_range(2..60));
    let k = CameraIntrinsics::from_fov(w, h, cfg.mount.fov_deg).unwrap();
    let frame = DepthFrame::new(vec![d; w * h], k, cfg.mount).unwrap();
    let map = construct_obstacle_map(&back_project(&frame).unwrap(), &cfg);
    ensure!(!map.is_empty(), "wall at {d} produced no entries");
    for o in &map.obstacles {
        ensure!((o.z - d).abs() <= 1e-12, "wall entry z = {} for d = {d}", o.z);
    }
    Ok(())
}

// ---------------------------------------------------------------- repulsive

/// Returns the check and the obstacle count used.
pub fn check_force_oracle(rng: &mut ChaCha8Rng, max_obstacles: usize) -> Check {
    let traj = random_trajectory(rng, 8);
    let n = rng.random_range(0..=max_obstacles);
    let obstacles = random_obstacles(rng, n, traj.waypoints(), 1e-3);
    let map = obstacle_map(&obstacles);
    let cfg = CareConfig::default();
    let r = estimate_repulsive_direction(&traj, &map, &cfg).map_err(|e| e.to_string())?;
    let forces: Vec<Vec2> = traj.waypoints().iter().map(|&p| oracle_force(p, &obstacles)).collect();
    for (k, (got, want)) in r.forces.iter().zip(&forces).enumerate() {
        ensure!(rel_close(*got, *want, 1e-12), "waypoint {k}: force {got:?} vs oracle {want:?}");
    }
    let k = oracle_argmax(&forces);
    ensure!(r.dominant_index == k, "k* = {} but oracle argmax = {k}", r.dominant_index);
    Ok(())
}

pub fn check_force_decreases(rng: &mut ChaCha8Rng) -> Check {
    let dir = Vec2::from_angle(rng.random_range(-PI..PI));
    let d1 = rng.random_range(1e-3..5.0);
    let d2 = d1 * rng.random_range(1.000_001..4.0);
    let p = Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let f = |d: f64| repulsive_force(p, &obstacle_map(&[p + dir * d]), DirectionMode::Repel).unwrap();
    let (m1, m2) = (f(d1).norm(), f(d2).norm());
    ensure!(m1 > m2, "|F({d1})| = {m1} not above |F({d2})| = {m2}");
    let expect = d1.powi(-3);
    ensure!((m1 - expect).abs() <= 1e-9 * expect, "|F({d1})| = {m1}, expected {expect}");
    Ok(())
}

/// Appending one obstacle adds its force exactly; arbitrary splits agree to
/// rounding because the summation order differs.
pub fn check_superposition(rng: &mut ChaCha8Rng) -> Check {
    let p = Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let n = rng.random_range(0..20);
    let all = random_obstacles(rng, n + 1, &[p], 1e-2);
    let mode = DirectionMode::Repel;
    let force = |o: &[Vec2]| repulsive_force(p, &obstacle_map(o), mode).unwrap();
    let (a, b) = all.split_at(n);
    ensure!(force(&all) == force(a) + force(b), "single-obstacle superposition not exact");
    let cut = rng.random_range(0..=all.len());
    let (a, b) = all.split_at(cut);
    let bound = all.iter().map(|o| force(std::slice::from_ref(o)).norm()).sum::<f64>();
    ensure!(
        (force(&all) - (force(a) + force(b))).norm() <= 1e-13 * bound,
        "superposition off by more than rounding"
    );
    Ok(())
}

pub fn check_rotation_equivariance(rng: &mut ChaCha8Rng) -> Check {
    let p = Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let n = rng.random_range(1..16);
    let obstacles = random_obstacles(rng, n, &[p], 0.05);
    let phi = rng.random_range(-PI..PI);
    let f = repulsive_force(p, &obstacle_map(&obstacles), DirectionMode::Repel).unwrap();
    let rotated: Vec<Vec2> = obstacles.iter().map(|o| o.rotate(phi)).collect();
    let g = repulsive_force(p.rotate(phi), &obstacle_map(&rotated), DirectionMode::Repel).unwrap();
    ensure!(rel_close(g, f.rotate(phi), 1e-9), "rotated force {g:?} vs {:?}", f.rotate(phi));
    Ok(())
}

/// Scaling every position by a power of two scales each force by an exact
/// power of two, so k* cannot move.
pub fn check_argmax_scale_invariant(rng: &mut ChaCha8Rng) -> Check {
    let traj = random_trajectory(rng, 8);
    let n = rng.random_range(1..24);
    let obstacles = random_obstacles(rng, n, traj.waypoints(), 1e-2);
    let s = 2f64.powi(rng.random_range(-4..=4));
    let cfg = CareConfig::default();
    let k0 = estimate_repulsive_direction(&traj, &obstacle_map(&obstacles), &cfg)
        .unwrap()
        .dominant_index;
    let scaled_traj = Trajectory::new(traj.waypoints().iter().map(|p| *p * s).collect()).unwrap();
    let scaled: Vec<Vec2> = obstacles.iter().map(|o| *o * s).collect();
    let k1 = estimate_repulsive_direction(&scaled_traj, &obstacle_map(&scaled), &cfg)
        .unwrap()
        .dominant_index;
    ensure!(k0 == k1, "k* moved from {k0} to {k1} under scale {s}");
    Ok(())
}

pub fn check_clip_properties(rng: &mut ChaCha8Rng) -> Check {
    let traj = random_trajectory(rng, 8);
    let n = rng.random_range(0..24);
    let obstacles = random_obstacles(rng, n, traj.waypoints(), 1e-3);
    let mut cfg = CareConfig::default();
    if rng.random_bool(0.5) {
        cfg.theta_clip = rng.random_range(0.01..PI);
    }
    let c = cfg.theta_clip;
    let r = estimate_repulsive_direction(&traj, &obstacle_map(&obstacles), &cfg).unwrap();
    ensure!(r.theta_rot.abs() <= c, "|theta_rot| = {} > {c}", r.theta_rot.abs());
    ensure!(r.theta_rot == r.theta_rep.clamp(-c, c), "theta_rot is not clip(theta_rep)");
    let again = r.theta_rot.clamp(-c, c);
    ensure!(again == r.theta_rot, "clip not idempotent");
    let mags: Vec<f64> = r.forces.iter().map(|f| f.norm()).collect();
    ensure!(
        mags.iter().all(|&m| m <= mags[r.dominant_index]),
        "dominant waypoint does not attain the maximum"
    );
    Ok(())
}

pub fn check_modes_opposite(rng: &mut ChaCha8Rng) -> Check {
    let traj = random_trajectory(rng, 8);
    let n = rng.random_range(1..24);
    let obstacles = random_obstacles(rng, n, traj.waypoints(), 1e-3);
    let map = obstacle_map(&obstacles);
    let mut cfg = CareConfig::default();
    let repel = estimate_repulsive_direction(&traj, &map, &cfg).unwrap();
    cfg.direction_mode = DirectionMode::Attract;
    let attract = estimate_repulsive_direction(&traj, &map, &cfg).unwrap();
    for (a, b) in repel.forces.iter().zip(&attract.forces) {
        ensure!(*a == -*b, "forces {a:?} and {b:?} are not exact negations");
    }
    ensure!(repel.dominant_index == attract.dominant_index, "modes disagree on k*");
    let diff = wrap_angle(repel.theta_rep - attract.theta_rep - PI);
    ensure!(diff.abs() <= 1e-12, "theta_rep differ by {} rad, not pi", repel.theta_rep - attract.theta_rep);
    Ok(())
}

pub fn check_rotation_preserves_norms(rng: &mut ChaCha8Rng) -> Check {
    let traj = random_trajectory(rng, 16);
    let theta = rng.random_range(-PI..=PI);
    let out = rotate_trajectory(&traj, theta);
    ensure!(out.len() == traj.len(), "length changed");
    for (p, q) in traj.waypoints().iter().zip(out.waypoints()) {
        ensure!((p.norm() - q.norm()).abs() <= 1e-12 * p.norm().max(1.0), "norm changed: {p:?} -> {q:?}");
    }
    Ok(())
}

// ---------------------------------------------------------------- safety

pub fn random_params(rng: &mut ChaCha8Rng) -> SafetyParams {
    if rng.random_bool(0.5) {
        return SafetyParams::default();
    }
    let v_max = rng.random_range(0.05..2.0);
    SafetyParams {
        theta_thres: rng.random_range(0.01..3.1),
        v_fwd: v_max * rng.random_range(0.01..=1.0),
        v_max,
        omega_max: rng.random_range(0.1..4.0),
        k_omega: rng.random_range(0.1..10.0),
    }
}

pub fn check_gate_properties(rng: &mut ChaCha8Rng) -> Check {
    let p = random_params(rng);
    let theta = rng.random_range(-PI..=PI);
    let c = gate_command(theta, &p);
    let rotate = c.v == 0.0 && theta.abs() > p.theta_thres;
    let forward = c.v == p.v_fwd && theta.abs() <= p.theta_thres;
    ensure!(rotate != forward, "theta {theta} maps to neither or both branches: {c:?}");
    ensure!(c.v >= 0.0 && c.v <= p.v_max, "v = {} outside [0, {}]", c.v, p.v_max);
    ensure!(c.omega.abs() <= p.omega_max, "|omega| = {} > {}", c.omega.abs(), p.omega_max);
    if theta != 0.0 {
        ensure!(c.omega.signum() == theta.signum(), "omega {} vs theta {theta}", c.omega);
    }
    Ok(())
}

// ---------------------------------------------------------------- pipeline

fn random_scene(rng: &mut ChaCha8Rng) -> (Trajectory, PointCloud, CareConfig) {
    let cfg = random_config(rng);
    let traj = random_trajectory(rng, 8);
    let cloud = random_cloud(rng, &cfg, 500);
    (traj, cloud, cfg)
}

/// Skips scenes where a waypoint lands exactly on an obstacle.
fn step(cloud: &PointCloud, traj: &Trajectory, cfg: &CareConfig) -> Option<CareDecision> {
    care_step(Observation::Cloud(cloud), traj, cfg).ok()
}

pub fn check_pipeline_deterministic(rng: &mut ChaCha8Rng) -> Check {
    let (traj, cloud, cfg) = random_scene(rng);
    ensure!(step(&cloud, &traj, &cfg) == step(&cloud, &traj, &cfg), "two runs differ");
    Ok(())
}

pub fn check_passthrough_exact(rng: &mut ChaCha8Rng) -> Check {
    let cfg = random_config(rng);
    let traj = random_trajectory(rng, 16);
    // Everything beyond the sensing range.
    let far: Vec<[f64; 3]> = (0..rng.random_range(0..50))
        .map(|_| [rng.random_range(-1.0..1.0), 0.2, cfg.tau_z + cfg.mount.depth_offset_m + 0.5])
        .collect();
    let d = step(&PointCloud::new(far).unwrap(), &traj, &cfg).ok_or("care_step failed")?;
    ensure!(d.passthrough && d.repulsive.is_none(), "not a passthrough");
    ensure!(d.adjusted_trajectory.waypoints() == traj.waypoints(), "trajectory modified");
    Ok(())
}

pub fn check_bounded_deviation(rng: &mut ChaCha8Rng) -> Check {
    let (traj, cloud, cfg) = random_scene(rng);
    let Some(d) = step(&cloud, &traj, &cfg) else { return Ok(()) };
    let k = d.dominant_index;
    let (p, q) = (traj.waypoints()[k], d.adjusted_trajectory.waypoints()[k]);
    if p == Vec2::ZERO {
        return Ok(());
    }
    let angle = wrap_angle(q.angle() - p.angle()).abs();
    ensure!(angle <= cfg.theta_clip + 1e-12, "deviation {angle} > theta_clip {}", cfg.theta_clip);
    Ok(())
}

fn min_distance(traj: &Trajectory, o: Vec2) -> f64 {
    traj.waypoints().iter().map(|p| (*p - o).norm()).fold(f64::INFINITY, f64::min)
}

/// Straight-ahead trajectory and one obstacle in front of its dominant
/// waypoint: the adjusted trajectory keeps at least the original clearance.
pub fn check_clearance_improves(rng: &mut ChaCha8Rng) -> Check {
    let cfg = CareConfig::default();
    let traj = line_trajectory(rng.random_range(1..=8), rng.random_range(0.05..0.3), 0.0);
    loop {
        let o = Vec2::new(rng.random_range(0.0..cfg.tau_z), rng.random_range(-0.8..0.8));
        if o.y.abs() < 1e-3 || o.norm() > cfg.tau_z {
            continue;
        }
        let map = obstacle_map(&[o]);
        let d = decide(map, &traj, &cfg).map_err(|e| e.to_string())?;
        if o.x <= traj.waypoints()[d.dominant_index].x {
            continue;
        }
        let (before, after) = (min_distance(&traj, o), min_distance(&d.adjusted_trajectory, o));
        ensure!(d.theta_rot() != 0.0, "no rotation for obstacle {o:?}");
        ensure!(after >= before, "clearance fell from {before} to {after} for obstacle {o:?}");
        return Ok(());
    }
}

pub fn check_stage_composition(rng: &mut ChaCha8Rng) -> Check {
    let (traj, cloud, cfg) = random_scene(rng);
    let Some(d) = step(&cloud, &traj, &cfg) else { return Ok(()) };
    let map = construct_obstacle_map(&cloud, &cfg);
    ensure!(map == d.obstacle_map, "obstacle map differs");
    let (adjusted, k) = if map.is_empty() {
        (traj.clone(), 0)
    } else {
        let r = estimate_repulsive_direction(&traj, &map, &cfg).unwrap();
        ensure!(Some(&r) == d.repulsive.as_ref(), "repulsive stage differs");
        (rotate_trajectory(&traj, r.theta_rot), r.dominant_index)
    };
    ensure!(adjusted == d.adjusted_trajectory, "adjusted trajectory differs");
    match compute_desired_heading(&adjusted, k) {
        Ok(theta) => {
            ensure!(d.theta_des == Some(theta), "theta_des differs");
            ensure!(d.command == gate_command(theta, &cfg.safety), "command differs");
        }
        Err(_) => ensure!(d.degenerate && d.command == ControlCommand::STOP, "degenerate case differs"),
    }
    Ok(())
}

/// Named seeded checks for the depth, planner, gate and pipeline modules.
pub fn invariant_suite() -> Vec<Property> {
    vec![
        ("mask idempotence", check_mask_idempotent),
        ("binning oracle equivalence", |r| check_map_matches_oracle(r, 10_000)),
        ("tau_z monotonicity", check_tau_monotone),
        ("entries within range", check_entries_in_range),
        ("frontal wall depth", check_frontal_wall),
        ("force decreases with distance", check_force_decreases),
        ("force superposition", check_superposition),
        ("force rotation equivariance", check_rotation_equivariance),
        ("argmax scale invariance", check_argmax_scale_invariant),
        ("clip bound and idempotence", check_clip_properties),
        ("direction modes opposite", check_modes_opposite),
        ("rotation preserves norms", check_rotation_preserves_norms),
        ("gate branches, limits, signs", check_gate_properties),
        ("pipeline determinism", check_pipeline_deterministic),
        ("passthrough exactness", check_passthrough_exact),
        ("bounded deviation", check_bounded_deviation),
        ("clearance improvement", check_clearance_improves),
        ("stage composition", check_stage_composition),
    ]
}
