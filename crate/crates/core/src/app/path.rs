//! Quasi-static path execution with hybrid transitions.
//!
//! The commanded mass angles are interpolated linearly between waypoints and
//! the robot is assumed settled at the closed-form equilibrium of the
//! current state at every sample. A transition fires when the free contact
//! angle reaches a link edge, i.e. when the state's boundary function
//! (`sin θ₁ − sin θ₂` up to sign) crosses zero; crossings between samples
//! are refined by bisection to 1e-6 rad and an extra sample is inserted at
//! the crossing point. The freed angle's departure direction is the sign
//! demanded by the guard, and the trace records every fired event.

use super::{rad_to_deg_exact, AppError};
use crate::fsm::{next_state, ArcEnd, HybridState, TransitionEvent};
use crate::model::{MassConfig, RobotParams};
use crate::statics::{boundary_function, solve_equilibrium, EquilibriumAngle, SolutionKind};
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

/// Bisection tolerance on the mass angles at a crossing: 1e-6 rad.
const CROSSING_TOL_DEG: f64 = 1e-6 * 180.0 / std::f64::consts::PI;

#[derive(Clone, Debug, Serialize)]
pub struct PathSample {
    pub index: usize,
    pub theta1_deg: f64,
    pub theta2_deg: f64,
    pub state: u8,
    pub phi1_deg: f64,
    pub phi2_deg: f64,
    pub z_b: Option<[f64; 3]>,
    /// The transition fired at this sample, if any.
    pub event: Option<TransitionEvent>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PathTrace {
    pub samples: Vec<PathSample>,
    pub transitions: Vec<TransitionEvent>,
    /// Diagnostic when the trace stopped early (degenerate cell en route).
    pub truncated: Option<String>,
}

/// Parses waypoint lines `theta1_deg theta2_deg` (whitespace separated,
/// `#` comments).
pub fn parse_waypoints(text: &str) -> Result<Vec<(f64, f64)>, AppError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(AppError::BadWaypoint {
                line,
                reason: format!("expected `theta1_deg theta2_deg`, got {content:?}"),
            });
        }
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|_| AppError::BadWaypoint {
                line,
                reason: format!("cannot parse angle {s:?}"),
            })
        };
        out.push((parse(fields[0])?, parse(fields[1])?));
    }
    if out.is_empty() {
        return Err(AppError::BadWaypoint {
            line: 0,
            reason: "no waypoints".into(),
        });
    }
    Ok(out)
}

fn lerp(a: (f64, f64), b: (f64, f64), t: f64) -> (f64, f64) {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

/// Expands waypoints into samples no further than `step_deg` apart in either
/// angle, hitting each waypoint exactly.
fn expand(waypoints: &[(f64, f64)], step_deg: f64) -> Vec<(f64, f64)> {
    let mut out = vec![waypoints[0]];
    for pair in waypoints.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let span = (b.0 - a.0).abs().max((b.1 - a.1).abs());
        let n = (span / step_deg).ceil().max(1.0) as usize;
        for k in 1..=n {
            out.push(if k == n {
                b
            } else {
                lerp(a, b, k as f64 / n as f64)
            });
        }
    }
    out
}

struct Executor<'a> {
    params: &'a RobotParams,
    state: HybridState,
    samples: Vec<PathSample>,
    transitions: Vec<TransitionEvent>,
    truncated: Option<String>,
    /// Boundary-function value at the last recorded sample (0.0 right after
    /// a transition).
    prev_num: f64,
    prev_cfg: (f64, f64),
    /// Free angle at the last recorded sample, when interior.
    prev_phi: Option<f64>,
    /// Arc end the freed angle sits on right after a transition.
    entered_end: Option<ArcEnd>,
}

impl Executor<'_> {
    /// Solves and records one sample; returns false when the trace truncates.
    fn record(
        &mut self,
        cfg: (f64, f64),
        event: Option<TransitionEvent>,
    ) -> Result<bool, AppError> {
        let config = MassConfig::from_degrees(cfg.0, cfg.1)?;
        let solution = solve_equilibrium(self.params, self.state, &config)?;
        if solution.kind == SolutionKind::Degenerate {
            self.truncated = Some(format!(
                "degenerate configuration (θ1={}°, θ2={}°) in state {}",
                cfg.0,
                cfg.1,
                self.state.id()
            ));
            return Ok(false);
        }
        if let Some(e) = event {
            self.transitions.push(e);
        }
        let angles = solution.angles.expect("non-degenerate solution has angles");
        self.samples.push(PathSample {
            index: self.samples.len(),
            theta1_deg: cfg.0,
            theta2_deg: cfg.1,
            state: self.state.id(),
            phi1_deg: rad_to_deg_exact(angles.phi1),
            phi2_deg: rad_to_deg_exact(angles.phi2),
            z_b: solution.normal.map(|n| [n.z_b.x, n.z_b.y, n.z_b.z]),
            event,
        });
        self.prev_cfg = cfg;
        self.prev_num = boundary_function(self.state, &config);
        self.prev_phi = match solution.kind {
            SolutionKind::Interior => solution.free_angle_rad(),
            _ => None,
        };
        Ok(true)
    }

    /// Fires the transition out of the current state through `hit`; the
    /// freed angle's sign is the guard sign by construction.
    fn fire(&mut self, hit: ArcEnd) -> Result<TransitionEvent, AppError> {
        let direction = self.state.exit_rate_sign();
        let to = next_state(self.state, hit, direction)?;
        let event = TransitionEvent::new(self.state, to, self.state.rolling_link(), hit, direction);
        self.entered_end = Some(self.state.pinned().1);
        self.state = to;
        Ok(event)
    }

    /// Which edge the free angle is approaching, from the last interior φ.
    fn approach_edge(&self) -> ArcEnd {
        match self.prev_phi {
            Some(phi) if phi >= FRAC_PI_2 => ArcEnd::B,
            _ => ArcEnd::A,
        }
    }

    fn step_to(&mut self, cfg: (f64, f64)) -> Result<bool, AppError> {
        let config = MassConfig::from_degrees(cfg.0, cfg.1)?;
        let num = boundary_function(self.state, &config);

        if self.prev_num != 0.0 && num != 0.0 && (self.prev_num > 0.0) != (num > 0.0) {
            // strict crossing inside the segment: bisect, insert a sample at
            // the crossing, then continue to the segment end
            let crossing = self.bisect(self.prev_cfg, cfg)?;
            let event = self.fire(self.approach_edge())?;
            if !self.record(crossing, Some(event))? {
                return Ok(false);
            }
            self.prev_num = 0.0;
            return self.step_to(cfg);
        }

        if num == 0.0 && self.prev_num != 0.0 {
            if crate::statics::equilibrium_angle(self.state, &config).is_degenerate() {
                // not a boundary but the indifferent-balance point
                return self.record(cfg, None);
            }
            // landed exactly on the boundary: transition at this sample
            let event = self.fire(self.approach_edge())?;
            let recorded = self.record(cfg, Some(event))?;
            self.prev_num = 0.0;
            return Ok(recorded);
        }

        if self.prev_num == 0.0 && num != 0.0 {
            // leaving a boundary: if the free angle would reappear on the far
            // side of the end it sat on, the robot tips through that end
            if let Some(end) = self.entered_end {
                if let EquilibriumAngle::Interior(phi) = crate::statics::equilibrium_angle(
                    self.state,
                    &config,
                ) {
                    if (phi - end.angle_rad()).abs() > FRAC_PI_2 {
                        let event = self.fire(end)?;
                        let recorded = self.record(cfg, Some(event))?;
                        self.prev_num = 0.0;
                        return Ok(recorded);
                    }
                }
            }
            self.entered_end = None;
        }

        self.record(cfg, None)
    }

    /// Bisects the zero of the boundary function along the segment to
    /// 1e-6 rad in the mass angles.
    fn bisect(&self, a: (f64, f64), b: (f64, f64)) -> Result<(f64, f64), AppError> {
        let num_at = |t: f64| -> Result<f64, AppError> {
            let p = lerp(a, b, t);
            let config = MassConfig::from_degrees(p.0, p.1)?;
            Ok(boundary_function(self.state, &config))
        };
        let mut lo = 0.0;
        let mut hi = 1.0;
        let f_lo = num_at(lo)?;
        let span = (b.0 - a.0).abs().max((b.1 - a.1).abs());
        while span * (hi - lo) > CROSSING_TOL_DEG {
            let mid = 0.5 * (lo + hi);
            let f_mid = num_at(mid)?;
            if f_mid == 0.0 {
                return Ok(lerp(a, b, mid));
            }
            if (f_mid > 0.0) == (f_lo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lerp(a, b, 0.5 * (lo + hi)))
    }
}

/// Executes a quasi-static waypoint path from `start_state`, sampling every
/// `step_deg` at most. The trace truncates with a diagnostic if a degenerate
/// cell is reached.
pub fn run_path(
    params: &RobotParams,
    waypoints: &[(f64, f64)],
    start_state: HybridState,
    step_deg: f64,
) -> Result<PathTrace, AppError> {
    if !(step_deg > 0.0) || !step_deg.is_finite() {
        return Err(AppError::BadStep { step: step_deg });
    }
    if waypoints.is_empty() {
        return Err(AppError::BadWaypoint {
            line: 0,
            reason: "no waypoints".into(),
        });
    }
    let samples = expand(waypoints, step_deg);
    let mut exec = Executor {
        params,
        state: start_state,
        samples: Vec::with_capacity(samples.len()),
        transitions: Vec::new(),
        truncated: None,
        prev_num: f64::NAN,
        prev_cfg: samples[0],
        prev_phi: None,
        entered_end: None,
    };
    // NaN prev_num makes the first record a plain solve
    if exec.record(samples[0], None)? {
        for &cfg in &samples[1..] {
            if !exec.step_to(cfg)? {
                break;
            }
        }
    }
    Ok(PathTrace {
        samples: exec.samples,
        transitions: exec.transitions,
        truncated: exec.truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsm::is_legal_transition;

    fn desk() -> RobotParams {
        RobotParams::default()
    }

    #[test]
    fn vertical_path_crossing_main_diagonal_fires_one_to_three() {
        // θ1 = 30° held, θ2 rising through the boundary θ2 = θ1
        let trace = run_path(&desk(), &[(30.0, 10.0), (30.0, 40.0)], HybridState::S1, 1.0)
            .unwrap();
        assert!(trace.truncated.is_none());
        assert_eq!(trace.transitions.len(), 1);
        let e = trace.transitions[0];
        assert_eq!((e.from, e.to), (1, 3));
        // fired where θ2 crosses 30°
        let event_sample = trace.samples.iter().find(|s| s.event.is_some()).unwrap();
        assert!((event_sample.theta2_deg - 30.0).abs() < 1e-4);
        // before: state 1, after: state 3
        assert!(trace.samples.iter().all(|s| s.state == 1 || s.state == 3));
        assert_eq!(trace.samples.last().unwrap().state, 3);
    }

    #[test]
    fn vertical_path_crossing_anti_diagonal_fires_one_to_four() {
        // θ1 = 30°, θ2 rising through θ2 = 150° = 180° − θ1
        let trace = run_path(&desk(), &[(30.0, 40.0), (30.0, 160.0)], HybridState::S1, 1.0)
            .unwrap();
        assert_eq!(trace.transitions.len(), 1);
        let e = trace.transitions[0];
        assert_eq!((e.from, e.to), (1, 4));
        let event_sample = trace.samples.iter().find(|s| s.event.is_some()).unwrap();
        assert!((event_sample.theta2_deg - 150.0).abs() < 1e-4);
        assert_eq!(trace.samples.last().unwrap().state, 4);
    }

    #[test]
    fn path_ending_exactly_on_the_boundary_fires() {
        let trace = run_path(&desk(), &[(30.0, 10.0), (30.0, 30.0)], HybridState::S1, 1.0)
            .unwrap();
        assert_eq!(trace.transitions.len(), 1);
        assert_eq!((trace.transitions[0].from, trace.transitions[0].to), (1, 3));
        let last = trace.samples.last().unwrap();
        assert_eq!(last.state, 3);
        assert_eq!(last.theta2_deg, 30.0);
    }

    #[test]
    fn constant_waypoints_produce_a_constant_trace() {
        let trace = run_path(&desk(), &[(40.0, 70.0), (40.0, 70.0)], HybridState::S2, 1.0)
            .unwrap();
        assert!(trace.transitions.is_empty());
        assert!(trace.samples.iter().all(|s| s.state == 2));
        assert!(trace
            .samples
            .windows(2)
            .all(|w| w[0].phi1_deg == w[1].phi1_deg));
    }

    #[test]
    fn pinned_angle_stays_at_its_sentinel_between_transitions() {
        let trace = run_path(&desk(), &[(30.0, 10.0), (30.0, 40.0)], HybridState::S1, 1.0)
            .unwrap();
        for s in &trace.samples {
            match s.state {
                1 => assert_eq!(s.phi2_deg, 0.0),
                3 => assert_eq!(s.phi1_deg, 0.0),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn all_events_are_legal_and_samples_respect_the_step() {
        let trace = run_path(
            &desk(),
            &[(20.0, 5.0), (20.0, 170.0), (100.0, 170.0)],
            HybridState::S1,
            2.5,
        )
        .unwrap();
        for e in &trace.transitions {
            assert!(is_legal_transition(
                crate::fsm::HybridState::from_id(e.from).unwrap(),
                crate::fsm::HybridState::from_id(e.to).unwrap()
            ));
        }
        for w in trace.samples.windows(2) {
            let d1 = (w[1].theta1_deg - w[0].theta1_deg).abs();
            let d2 = (w[1].theta2_deg - w[0].theta2_deg).abs();
            assert!(d1 <= 2.5 + 1e-9 && d2 <= 2.5 + 1e-9);
        }
    }

    #[test]
    fn degenerate_cell_truncates_with_diagnostic() {
        let trace = run_path(&desk(), &[(90.0, 10.0), (90.0, 170.0)], HybridState::S1, 5.0)
            .unwrap();
        assert!(trace.truncated.is_some(), "path through (90°, 90°)");
        let last = trace.samples.last().unwrap();
        assert!(last.theta2_deg < 90.0);
    }

    #[test]
    fn waypoint_parsing() {
        let wps = parse_waypoints("# a path\n30 10\n30.5 40 # inline\n").unwrap();
        assert_eq!(wps, vec![(30.0, 10.0), (30.5, 40.0)]);
        assert!(parse_waypoints("30\n").is_err());
        assert!(parse_waypoints("a b\n").is_err());
        assert!(parse_waypoints("").is_err());
    }
}
