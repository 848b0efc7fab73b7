//! Measurement validation: mean absolute error between measured and
//! model-predicted free contact angles.

use super::{rad_to_deg_exact, AppError};
use crate::fsm::HybridState;
use crate::model::{MassConfig, RobotParams};
use crate::statics::solve_equilibrium;
use serde::Serialize;

pub const DATASET_HEADER: &str = "theta1_deg,theta2_deg,state,phi1_meas_deg,phi2_meas_deg";

#[derive(Clone, Debug, Serialize)]
pub struct RecordOutcome {
    pub line: usize,
    pub state: u8,
    pub theta1_deg: f64,
    pub theta2_deg: f64,
    pub measured_deg: f64,
    pub predicted_deg: f64,
    pub abs_error_deg: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedRow {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub rows_used: usize,
    pub mae_deg: f64,
    pub outcomes: Vec<RecordOutcome>,
    pub skipped: Vec<SkippedRow>,
}

/// Parses and scores a measurement CSV
/// (`theta1_deg,theta2_deg,state,phi1_meas_deg,phi2_meas_deg`). Malformed
/// rows are reported by line number and skipped; per-record absolute errors
/// are taken on the free angle of the recorded state, directly on
/// [0°, 180°] without wrapping. Errors out only when no row is usable.
pub fn validate(params: &RobotParams, text: &str) -> Result<ValidationReport, AppError> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, raw)) => {
                let content = raw.split('#').next().unwrap_or("").trim();
                if !content.is_empty() {
                    break content.to_string();
                }
            }
            None => {
                return Err(AppError::BadDataset {
                    reason: "empty dataset".into(),
                })
            }
        }
    };
    if header.replace(' ', "") != DATASET_HEADER {
        return Err(AppError::BadDataset {
            reason: format!("expected header {DATASET_HEADER:?}, got {header:?}"),
        });
    }

    let mut outcomes = Vec::new();
    let mut skipped = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match score_row(params, line, content) {
            Ok(outcome) => outcomes.push(outcome),
            Err(reason) => skipped.push(SkippedRow { line, reason }),
        }
    }
    if outcomes.is_empty() {
        return Err(AppError::BadDataset {
            reason: format!("no usable rows ({} skipped)", skipped.len()),
        });
    }
    let mae_deg = outcomes.iter().map(|o| o.abs_error_deg).sum::<f64>() / outcomes.len() as f64;
    Ok(ValidationReport {
        rows_used: outcomes.len(),
        mae_deg,
        outcomes,
        skipped,
    })
}

fn score_row(params: &RobotParams, line: usize, content: &str) -> Result<RecordOutcome, String> {
    let fields: Vec<&str> = content.split(',').map(str::trim).collect();
    if fields.len() != 5 {
        return Err(format!("expected 5 fields, got {}", fields.len()));
    }
    let num = |i: usize| -> Result<f64, String> {
        fields[i]
            .parse::<f64>()
            .map_err(|_| format!("cannot parse field {} ({:?})", i + 1, fields[i]))
    };
    let theta1 = num(0)?;
    let theta2 = num(1)?;
    let state_id: u8 = fields[2]
        .parse()
        .map_err(|_| format!("cannot parse state {:?}", fields[2]))?;
    let state = HybridState::from_id(state_id).map_err(|e| e.to_string())?;
    let phi_meas = [num(3)?, num(4)?];
    for &phi in &phi_meas {
        if !(0.0..=180.0).contains(&phi) {
            return Err(format!("measured angle {phi}° outside [0°, 180°]"));
        }
    }
    let config = MassConfig::from_degrees(theta1, theta2).map_err(|e| e.to_string())?;
    let solution = solve_equilibrium(params, state, &config).map_err(|e| e.to_string())?;
    let predicted = solution
        .free_angle_rad()
        .ok_or_else(|| "degenerate configuration, no model prediction".to_string())?;
    let predicted_deg = rad_to_deg_exact(predicted);
    let measured_deg = match state.rolling_link() {
        crate::model::Link::L1 => phi_meas[0],
        crate::model::Link::L2 => phi_meas[1],
    };
    Ok(RecordOutcome {
        line,
        state: state_id,
        theta1_deg: theta1,
        theta2_deg: theta2,
        measured_deg,
        predicted_deg,
        abs_error_deg: (measured_deg - predicted_deg).abs(),
    })
}

/// Builds a measurement dataset straight from the model, each row's free
/// angle perturbed by `U(−noise_deg, +noise_deg)` (seeded). Values are
/// written with round-trip precision, so a zero-noise dataset reproduces the
/// model bit-exactly. Rows are drawn away from boundaries so the noise never
/// needs clamping.
pub fn synthesize_dataset(
    params: &RobotParams,
    rows: usize,
    seed: u64,
    noise_deg: f64,
) -> String {
    use crate::fsm::ALL_STATES;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::from(DATASET_HEADER);
    out.push('\n');
    let mut written = 0;
    while written < rows {
        let t1: f64 = rng.gen_range(1.0..179.0);
        let t2: f64 = rng.gen_range(1.0..179.0);
        let state = ALL_STATES[rng.gen_range(0..4)];
        let config = MassConfig::from_degrees(t1, t2).expect("in range");
        let solution = solve_equilibrium(params, state, &config).expect("default shape");
        let free = match solution.free_angle_rad() {
            Some(phi) => phi.to_degrees(),
            None => continue,
        };
        if !(noise_deg + 1.0..179.0 - noise_deg).contains(&free) {
            continue;
        }
        let noise = if noise_deg > 0.0 {
            rng.gen_range(-noise_deg..noise_deg)
        } else {
            0.0
        };
        let angles = solution.angles.expect("non-degenerate");
        let (m1, m2) = match state.rolling_link() {
            crate::model::Link::L1 => (free + noise, rad_to_deg_exact(angles.phi2)),
            crate::model::Link::L2 => (rad_to_deg_exact(angles.phi1), free + noise),
        };
        out.push_str(&format!("{t1},{t2},{},{m1},{m2}\n", state.id()));
        written += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthesize(params: &RobotParams, rows: usize, seed: u64, noise_deg: f64) -> String {
        synthesize_dataset(params, rows, seed, noise_deg)
    }

    #[test]
    fn self_consistent_dataset_has_exactly_zero_mae() {
        let params = RobotParams::default();
        let data = synthesize(&params, 50, 7, 0.0);
        let report = validate(&params, &data).unwrap();
        assert_eq!(report.rows_used, 50);
        assert_eq!(report.mae_deg, 0.0);
        assert!(report.skipped.is_empty());
    }

    #[test]
    fn uniform_noise_lands_near_its_expectation() {
        let params = RobotParams::default();
        let data = synthesize(&params, 300, 11, 5.0);
        let report = validate(&params, &data).unwrap();
        assert_eq!(report.rows_used, 300);
        assert!(
            (2.0..3.0).contains(&report.mae_deg),
            "mae {}",
            report.mae_deg
        );
    }

    #[test]
    fn malformed_rows_are_skipped_with_line_numbers() {
        let params = RobotParams::default();
        let data = format!(
            "{DATASET_HEADER}\n45,90,1,150,0\nnot,a,row\n45,90,9,10,0\n45,90,2,181,0\n30,60,3,0,72\n"
        );
        let report = validate(&params, &data).unwrap();
        assert_eq!(report.rows_used, 2);
        assert_eq!(report.skipped.len(), 3);
        let lines: Vec<usize> = report.skipped.iter().map(|s| s.line).collect();
        assert_eq!(lines, vec![3, 4, 5]);
    }

    #[test]
    fn degenerate_rows_are_skipped() {
        let params = RobotParams::default();
        let data = format!("{DATASET_HEADER}\n90,90,1,10,0\n45,90,1,157.5,0\n");
        let report = validate(&params, &data).unwrap();
        assert_eq!(report.rows_used, 1);
        assert_eq!(report.skipped.len(), 1);
        assert!(report.skipped[0].reason.contains("degenerate"));
        assert!(report.mae_deg < 1e-6);
    }

    #[test]
    fn unusable_dataset_errors() {
        let params = RobotParams::default();
        assert!(validate(&params, "").is_err());
        assert!(validate(&params, "wrong,header\n").is_err());
        let only_bad = format!("{DATASET_HEADER}\nnot,a,row,at,all\n");
        assert!(validate(&params, &only_bad).is_err());
    }
}
