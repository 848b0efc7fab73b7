//! Full-grid equilibrium sweep over the mass-angle square.

use super::AppError;
use crate::fsm::ALL_STATES;
use crate::model::{MassConfig, RobotParams};
use crate::statics::solve_all;
use rayon::prelude::*;
use serde::Serialize;

/// One (cell, state) record. Undefined angles and forces are `NaN`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SweepRecord {
    pub theta1_deg: f64,
    pub theta2_deg: f64,
    pub state: u8,
    pub phi1_deg: f64,
    pub phi2_deg: f64,
    #[serde(rename = "n1_N")]
    pub n1: f64,
    #[serde(rename = "n2_N")]
    pub n2: f64,
    /// 0 = interior, 1 = transition boundary, 2 = degenerate.
    pub degenerate: u8,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub step_deg: f64,
    /// Grid values along each axis, 0° through 180° inclusive.
    pub thetas_deg: Vec<f64>,
    /// θ1-major, then θ2, then state 1..4.
    pub records: Vec<SweepRecord>,
}

/// Grid axis for a step that divides 180° evenly.
pub(crate) fn grid_values(step_deg: f64) -> Result<Vec<f64>, AppError> {
    if !(step_deg > 0.0) || !step_deg.is_finite() {
        return Err(AppError::BadStep { step: step_deg });
    }
    let n = (180.0 / step_deg).round();
    if n < 1.0 || n * step_deg != 180.0 {
        return Err(AppError::BadStep { step: step_deg });
    }
    Ok((0..=n as usize).map(|i| i as f64 * step_deg).collect())
}

/// Evaluates all four state solutions on the full grid. Cells are solved in
/// parallel; record order is deterministic (θ1-major, θ2, state).
pub fn sweep(params: &RobotParams, step_deg: f64) -> Result<SweepResult, AppError> {
    let thetas = grid_values(step_deg)?;
    let records: Result<Vec<Vec<SweepRecord>>, AppError> = thetas
        .par_iter()
        .map(|&t1| {
            let mut rows = Vec::with_capacity(thetas.len() * 4);
            for &t2 in &thetas {
                let config = MassConfig::from_degrees(t1, t2)?;
                for (state, solution) in ALL_STATES.iter().zip(solve_all(params, &config)?) {
                    let (phi1_deg, phi2_deg) = super::phi_slots_deg(&solution);
                    let (n1, n2) = match solution.forces {
                        Some(f) => (f.n1, f.n2),
                        None => (f64::NAN, f64::NAN),
                    };
                    rows.push(SweepRecord {
                        theta1_deg: t1,
                        theta2_deg: t2,
                        state: state.id(),
                        phi1_deg,
                        phi2_deg,
                        n1,
                        n2,
                        degenerate: solution.kind.as_int(),
                    });
                }
            }
            Ok(rows)
        })
        .collect();
    Ok(SweepResult {
        step_deg,
        thetas_deg: thetas,
        records: records?.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn coarse_grid_has_expected_shape() {
        let result = sweep(&RobotParams::default(), 45.0).unwrap();
        assert_eq!(result.thetas_deg, vec![0.0, 45.0, 90.0, 135.0, 180.0]);
        assert_eq!(result.records.len(), 5 * 5 * 4);
    }

    #[test]
    fn step_five_row_count() {
        let result = sweep(&RobotParams::default(), 5.0).unwrap();
        assert_eq!(result.records.len(), 37 * 37 * 4);
    }

    #[test]
    fn bad_steps_are_rejected() {
        assert!(sweep(&RobotParams::default(), 7.0).is_err());
        assert!(sweep(&RobotParams::default(), 0.0).is_err());
        assert!(sweep(&RobotParams::default(), -5.0).is_err());
        assert!(grid_values(2.5).is_ok());
    }

    #[test]
    fn cell_values_match_the_solver() {
        let result = sweep(&RobotParams::default(), 45.0).unwrap();
        let cell: Vec<&SweepRecord> = result
            .records
            .iter()
            .filter(|r| r.theta1_deg == 45.0 && r.theta2_deg == 90.0)
            .collect();
        assert_eq!(cell.len(), 4);
        assert_relative_eq!(cell[0].phi1_deg, 157.5, epsilon = 1e-9);
        assert_relative_eq!(cell[1].phi1_deg, 157.5, epsilon = 1e-9);
        assert_relative_eq!(cell[2].phi2_deg, 90.0, epsilon = 1e-9);
        assert_relative_eq!(cell[3].phi2_deg, 90.0, epsilon = 1e-9);
        // pinned angles are exact sentinels
        assert_eq!(cell[0].phi2_deg, 0.0);
        assert_eq!(cell[1].phi2_deg, 180.0);
        assert_eq!(cell[2].phi1_deg, 0.0);
        assert_eq!(cell[3].phi1_deg, 180.0);
    }

    #[test]
    fn diagonal_cells_are_flagged() {
        let result = sweep(&RobotParams::default(), 45.0).unwrap();
        for r in &result.records {
            let on_main = r.theta1_deg == r.theta2_deg;
            let on_anti = r.theta2_deg == 180.0 - r.theta1_deg;
            if r.state <= 2 {
                assert_eq!(
                    r.degenerate != 0,
                    on_main || on_anti,
                    "cell ({}, {}) state {}",
                    r.theta1_deg,
                    r.theta2_deg,
                    r.state
                );
            }
            if r.theta1_deg == 90.0 && r.theta2_deg == 90.0 {
                assert_eq!(r.degenerate, 2);
                assert!(r.phi1_deg.is_nan() || r.phi2_deg.is_nan());
            }
        }
    }

    #[test]
    fn record_order_is_theta1_major() {
        let result = sweep(&RobotParams::default(), 90.0).unwrap();
        let keys: Vec<(f64, f64, u8)> = result
            .records
            .iter()
            .map(|r| (r.theta1_deg, r.theta2_deg, r.state))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(keys, sorted);
    }
}
