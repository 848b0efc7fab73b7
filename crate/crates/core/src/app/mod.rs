//! Batch operations behind the CLI: grid sweeps, transition-boundary
//! extraction, quasi-static path execution, measurement validation, and the
//! CSV/JSON/SVG emitters. All angles cross this layer in degrees.

pub mod boundaries;
pub mod emit;
pub mod path;
pub mod sweep;
pub mod validate;

use crate::fsm::FsmError;
use crate::model::ModelError;
use crate::statics::{ContactSolution, StaticsError};
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

pub use boundaries::{boundaries, BoundaryLines};
pub use path::{parse_waypoints, run_path, PathSample, PathTrace};
pub use sweep::{sweep, SweepRecord, SweepResult};
pub use validate::{synthesize_dataset, validate, RecordOutcome, SkippedRow, ValidationReport};

#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Statics(#[from] StaticsError),
    #[error(transparent)]
    Fsm(#[from] FsmError),
    #[error("step {step}° does not divide 180° evenly")]
    BadStep { step: f64 },
    #[error("waypoint line {line}: {reason}")]
    BadWaypoint { line: usize, reason: String },
    #[error("dataset unusable: {reason}")]
    BadDataset { reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Radians to degrees with the arc-end sentinels mapped exactly.
pub(crate) fn rad_to_deg_exact(rad: f64) -> f64 {
    if rad == 0.0 {
        0.0
    } else if rad == PI {
        180.0
    } else {
        rad.to_degrees()
    }
}

/// The two contact angles in degrees. A degenerate solution still knows its
/// pinned angle (it is structural to the state); only the free one is NaN.
pub(crate) fn phi_slots_deg(s: &ContactSolution) -> (f64, f64) {
    match s.angles {
        Some(a) => (rad_to_deg_exact(a.phi1), rad_to_deg_exact(a.phi2)),
        None => {
            let (link, end) = s.state.pinned();
            match link {
                crate::model::Link::L1 => (end.angle_deg(), f64::NAN),
                crate::model::Link::L2 => (f64::NAN, end.angle_deg()),
            }
        }
    }
}

/// A fully expanded per-state solution record, used by the `equilibrium`
/// command in both JSON and CSV form. Undefined quantities are `NaN`
/// (rendered `null` in JSON).
#[derive(Clone, Debug, Serialize)]
pub struct SolutionRecord {
    pub state: u8,
    pub pivot: String,
    pub theta1_deg: f64,
    pub theta2_deg: f64,
    pub phi1_deg: f64,
    pub phi2_deg: f64,
    pub z_b: Option<[f64; 3]>,
    #[serde(rename = "n1_N")]
    pub n1: f64,
    #[serde(rename = "n2_N")]
    pub n2: f64,
    /// 0 = interior, 1 = transition boundary, 2 = degenerate.
    pub degenerate: u8,
    pub valid: bool,
}

impl SolutionRecord {
    pub fn from_solution(s: &ContactSolution) -> Self {
        let (phi1_deg, phi2_deg) = phi_slots_deg(s);
        let (n1, n2) = match s.forces {
            Some(f) => (f.n1, f.n2),
            None => (f64::NAN, f64::NAN),
        };
        SolutionRecord {
            state: s.state.id(),
            pivot: s.pivot_label(),
            theta1_deg: s.config.theta1_deg(),
            theta2_deg: s.config.theta2_deg(),
            phi1_deg,
            phi2_deg,
            z_b: s.normal.map(|n| [n.z_b.x, n.z_b.y, n.z_b.z]),
            n1,
            n2,
            degenerate: s.kind.as_int(),
            valid: s.is_valid(),
        }
    }
}
