use std::fmt::Write as _;

use crate::camera::parse_num;
use crate::error::{CareError, Result};
use crate::geometry::Vec2;

/// Waypoints in the robot frame (x forward, y left), nearest first.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    waypoints: Vec<Vec2>,
}

impl Trajectory {
    pub fn new(waypoints: Vec<Vec2>) -> Result<Self> {
        if waypoints.is_empty() {
            return Err(CareError::Structural("trajectory needs at least one waypoint".into()));
        }
        if let Some(i) = waypoints.iter().position(|p| !p.is_finite()) {
            return Err(CareError::Structural(format!("waypoint {i} is not finite")));
        }
        Ok(Trajectory { waypoints })
    }

    pub fn waypoints(&self) -> &[Vec2] {
        &self.waypoints
    }

    pub fn len(&self) -> usize {
        self.waypoints.len()
    }

    /// Always false; a trajectory holds at least one waypoint.
    pub fn is_empty(&self) -> bool {
        self.waypoints.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<Vec2> {
        self.waypoints.get(index).copied()
    }

    /// Parses `TJ1 <K>` followed by K lines of `x y`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| CareError::parse(1, "empty trajectory file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 || fields[0] != "TJ1" {
            return Err(CareError::parse(hline + 1, "expected header `TJ1 <K>`"));
        }
        let count: usize = parse_num(fields[1], hline)?;
        let mut waypoints = Vec::with_capacity(count);
        for (i, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(CareError::parse(i + 1, "expected `x y`"));
            }
            waypoints.push(Vec2::new(parse_num(toks[0], i)?, parse_num(toks[1], i)?));
        }
        if waypoints.len() != count {
            return Err(CareError::Structural(format!(
                "header declares {count} waypoints, found {}",
                waypoints.len()
            )));
        }
        Trajectory::new(waypoints)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("TJ1 {}\n", self.waypoints.len());
        for p in &self.waypoints {
            let _ = writeln!(out, "{} {}", p.x, p.y);
        }
        out
    }
}
