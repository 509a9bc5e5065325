use thiserror::Error;

pub type Result<T, E = CareError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CareError {
    /// Malformed or inconsistent input data (dimensions, non-finite values, ...).
    #[error("invalid input: {0}")]
    Structural(String),

    /// A queried point sits exactly on an obstacle. `waypoint` is set when the
    /// query came from a trajectory.
    #[error("waypoint {} coincides with obstacle {obstacle}", waypoint.map_or("?".to_string(), |w| w.to_string()))]
    Singularity {
        waypoint: Option<usize>,
        obstacle: usize,
    },

    #[error("waypoint {0} lies at the robot origin; heading is undefined")]
    DegenerateHeading(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl CareError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        CareError::Parse {
            line,
            message: message.into(),
        }
    }
}
