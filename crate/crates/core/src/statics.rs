//! Closed-form static equilibrium per hybrid state.
//!
//! Setting the wrench about the body origin to zero yields, per state, a
//! tangent formula for the free contact angle and closed-form reaction
//! forces:
//!
//! - states 1–2 (rolling link 1): `tan φ₁ = (sin θ₁ − sin θ₂)/cos θ₁`
//! - states 3–4 (rolling link 2): `tan φ₂ = (sin θ₂ − sin θ₁)/cos θ₂`
//!
//! `tan` is a bijection from (0, π) onto ℝ, so the interior solution is
//! unique; a vanishing numerator puts the equilibrium exactly on a link edge
//! (the transition boundary), and a vanishing numerator *and* denominator is
//! the indifferent-balance degeneracy at θ₁ = θ₂ = 90°.
//!
//! The printed reaction-force expressions sum to the negative total weight;
//! they are exposed negated, as nonnegative upward normal-force magnitudes
//! `n_i`, so that `n₁ + n₂ = 2(M + m)g`.
//!
//! [`wrench_residual`] is the independent check: it reassembles the
//! free-body wrench from raw geometry (mass positions, centers of mass,
//! contact points, surface normal) without touching the closed forms. The
//! in-plane contact-force pair of the free-body diagram is statically
//! indeterminate, so the residual keeps exactly the determinate directions:
//! the force balance along the surface normal and the moment components
//! along the contact line `u = (q₁ − q₂)/|q₁ − q₂|` and along the normal
//! itself. At an equilibrium both vanish; perturbing the contact angle or
//! breaking the force sum drives them away from zero.
//!
//! The equilibrium numerator/denominator are evaluated in the degree domain
//! with quadrant folding so the boundary loci {θ₂ = θ₁} ∪ {θ₂ = 180° − θ₁}
//! are detected bit-exactly (sin 135° folds to sin 45° before any radian
//! conversion).

use crate::contact::{normal_case1, normal_case2, SurfaceNormal};
use crate::fsm::{ArcEnd, HybridState};
use crate::geometry::{rotation_between, Transform3, Vec3};
use crate::model::{ContactAngles, Link, MassConfig, RobotParams};
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StaticsError {
    #[error("closed-form statics assumes the default orthogonal inter-link transform")]
    NonDefaultShape,
    #[error("configuration (θ1={theta1_deg}°, θ2={theta2_deg}°) is degenerate for state {state}")]
    Degenerate {
        state: u8,
        theta1_deg: f64,
        theta2_deg: f64,
    },
    #[error("solution has no surface normal (boundary or degenerate configuration)")]
    MissingNormal,
}

/// Sine in the degree domain with exact fold about 90°, so that
/// `sin_deg(d) == sin_deg(180 − d)` bitwise whenever `180 − d` is exact.
fn sin_deg(d: f64) -> f64 {
    let folded = if d > 90.0 { 180.0 - d } else { d };
    folded.to_radians().sin()
}

/// Cosine in the degree domain; exactly zero at 90° and exactly antisymmetric
/// about it.
fn cos_deg(d: f64) -> f64 {
    if d == 90.0 {
        0.0
    } else if d > 90.0 {
        -(180.0 - d).to_radians().cos()
    } else {
        d.to_radians().cos()
    }
}

/// Numerator of the state's tangent formula (`sin θ₁ − sin θ₂` for states
/// 1–2, `sin θ₂ − sin θ₁` for 3–4). Zero exactly on the transition
/// boundary; its sign tells which side of the boundary the configuration
/// lies on, which the path executor uses for crossing detection.
pub fn boundary_function(state: HybridState, config: &MassConfig) -> f64 {
    let s1 = sin_deg(config.theta1_deg());
    let s2 = sin_deg(config.theta2_deg());
    match state.rolling_link() {
        Link::L1 => s1 - s2,
        Link::L2 => s2 - s1,
    }
}

fn tan_parts(state: HybridState, config: &MassConfig) -> (f64, f64) {
    let num = boundary_function(state, config);
    let den = match state.rolling_link() {
        Link::L1 => cos_deg(config.theta1_deg()),
        Link::L2 => cos_deg(config.theta2_deg()),
    };
    (num, den)
}

/// Outcome of the closed-form contact-angle solve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum EquilibriumAngle {
    /// Unique solution in the open interval (radians).
    Interior(f64),
    /// The equilibrium sits exactly on a link edge (transition boundary).
    /// Reported as the edge continuous with the interior solution on the
    /// denominator's side; the physical edge depends on the approach
    /// direction.
    Boundary(ArcEnd),
    /// Numerator and denominator both vanish (θ₁ = θ₂ = 90°): an
    /// indifferent balance set with no unique contact angle.
    Degenerate,
}

impl EquilibriumAngle {
    pub fn free_angle_rad(&self) -> Option<f64> {
        match self {
            EquilibriumAngle::Interior(phi) => Some(*phi),
            EquilibriumAngle::Boundary(end) => Some(end.angle_rad()),
            EquilibriumAngle::Degenerate => None,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, EquilibriumAngle::Degenerate)
    }
}

/// Free contact angle of `state` at the given mass configuration, via the
/// π-periodic branch map `φ = atan2(num, den) mod π` onto (0, π).
pub fn equilibrium_angle(state: HybridState, config: &MassConfig) -> EquilibriumAngle {
    let (num, den) = tan_parts(state, config);
    if num == 0.0 {
        if den == 0.0 {
            return EquilibriumAngle::Degenerate;
        }
        return EquilibriumAngle::Boundary(if den > 0.0 { ArcEnd::A } else { ArcEnd::B });
    }
    let mut phi = num.atan2(den);
    if phi < 0.0 {
        phi += PI;
    }
    EquilibriumAngle::Interior(phi)
}

/// Upward normal-force magnitudes at the two contacts (N).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReactionForces {
    pub n1: f64,
    pub n2: f64,
}

/// Reaction forces for `state` at free contact angle `phi` (rad).
///
/// Evaluates the per-state closed forms term by term and negates, so callers
/// see nonnegative-at-equilibrium upward magnitudes with
/// `n1 + n2 = 2(M + m)g`.
pub fn reaction_forces(
    params: &RobotParams,
    state: HybridState,
    config: &MassConfig,
    phi: f64,
) -> ReactionForces {
    let shift_w = params.shift_mass * params.g;
    let link_w = params.link_mass * params.g;
    let t1 = config.theta1_rad();
    let t2 = config.theta2_rad();
    let bracket1 = match state {
        HybridState::S1 => {
            -1.0 + (phi + t2).cos() / 2.0 - t2.cos() + (phi - t1).cos() - (phi - t2).cos() / 2.0
        }
        HybridState::S2 => {
            -1.0 + (phi + t2).cos() / 2.0 + t2.cos() + (phi - t1).cos() - (phi - t2).cos() / 2.0
        }
        HybridState::S3 | HybridState::S4 => {
            -1.0 - (phi + t1).cos() / 2.0 + t1.cos() - (phi - t2).cos() + (phi - t1).cos() / 2.0
        }
    };
    // The second bracket mirrors the first with every configuration term
    // negated, so the pair sums to -2 exactly.
    let bracket2 = -2.0 - bracket1;
    ReactionForces {
        n1: -(shift_w * bracket1 - link_w),
        n2: -(shift_w * bracket2 - link_w),
    }
}

/// How the solve ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SolutionKind {
    Interior,
    Boundary,
    Degenerate,
}

impl SolutionKind {
    /// Stable integer encoding used in CSV output.
    pub fn as_int(self) -> u8 {
        match self {
            SolutionKind::Interior => 0,
            SolutionKind::Boundary => 1,
            SolutionKind::Degenerate => 2,
        }
    }
}

/// A per-state static solution. Degenerate configurations are flagged, not
/// errors; boundary configurations carry angles and forces but no surface
/// normal (the contact sits on both arc ends at once).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ContactSolution {
    pub state: HybridState,
    pub config: MassConfig,
    pub kind: SolutionKind,
    pub angles: Option<ContactAngles>,
    pub normal: Option<SurfaceNormal>,
    pub forces: Option<ReactionForces>,
}

impl ContactSolution {
    /// Both normal forces nonnegative. Reported, never enforced: invalid
    /// solutions are still returned for callers to filter.
    pub fn is_valid(&self) -> bool {
        self.forces
            .map(|f| f.n1 >= 0.0 && f.n2 >= 0.0)
            .unwrap_or(false)
    }

    pub fn is_degenerate(&self) -> bool {
        self.kind == SolutionKind::Degenerate
    }

    /// The rolling link's contact angle (rad), if defined.
    pub fn free_angle_rad(&self) -> Option<f64> {
        self.angles.map(|a| a.phi(self.state.rolling_link()))
    }

    /// The endpoint label the state pivots about (`A2`, `B2`, `A1`, `B1`).
    pub fn pivot_label(&self) -> String {
        self.state.pivot().to_string()
    }
}

fn assemble_angles(state: HybridState, free: f64) -> ContactAngles {
    let (pinned_link, end) = state.pinned();
    match pinned_link {
        Link::L2 => ContactAngles {
            phi1: free,
            phi2: end.angle_rad(),
        },
        Link::L1 => ContactAngles {
            phi1: end.angle_rad(),
            phi2: free,
        },
    }
}

/// Closed-form equilibrium for one state: contact angle, surface normal
/// (Case 1 for states 1–2, Case 2 for states 3–4), reaction forces,
/// validity.
///
/// Errors only for non-default robot shapes; degeneracy is a flagged result.
pub fn solve_equilibrium(
    params: &RobotParams,
    state: HybridState,
    config: &MassConfig,
) -> Result<ContactSolution, StaticsError> {
    if !params.has_default_t12() {
        return Err(StaticsError::NonDefaultShape);
    }
    let (_, pinned_end) = state.pinned();
    let solution = match equilibrium_angle(state, config) {
        EquilibriumAngle::Degenerate => ContactSolution {
            state,
            config: *config,
            kind: SolutionKind::Degenerate,
            angles: None,
            normal: None,
            forces: None,
        },
        EquilibriumAngle::Boundary(edge) => {
            let free = edge.angle_rad();
            ContactSolution {
                state,
                config: *config,
                kind: SolutionKind::Boundary,
                angles: Some(assemble_angles(state, free)),
                normal: None,
                forces: Some(reaction_forces(params, state, config, free)),
            }
        }
        EquilibriumAngle::Interior(free) => {
            let normal = match state.rolling_link() {
                Link::L1 => normal_case1(free, pinned_end),
                Link::L2 => normal_case2(pinned_end, free),
            }
            .expect("interior angle is strictly inside (0, π)");
            ContactSolution {
                state,
                config: *config,
                kind: SolutionKind::Interior,
                angles: Some(assemble_angles(state, free)),
                normal: Some(normal),
                forces: Some(reaction_forces(params, state, config, free)),
            }
        }
    };
    Ok(solution)
}

/// All four state solutions for one mass configuration.
pub fn solve_all(
    params: &RobotParams,
    config: &MassConfig,
) -> Result<[ContactSolution; 4], StaticsError> {
    Ok([
        solve_equilibrium(params, HybridState::S1, config)?,
        solve_equilibrium(params, HybridState::S2, config)?,
        solve_equilibrium(params, HybridState::S3, config)?,
        solve_equilibrium(params, HybridState::S4, config)?,
    ])
}

/// Force and moment about the body origin (N, N·m).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Wrench {
    pub force: Vec3,
    pub moment: Vec3,
}

impl Wrench {
    pub fn norm(&self) -> f64 {
        (self.force.norm_squared() + self.moment.norm_squared()).sqrt()
    }
}

/// The state's surface normal evaluated without the interior-angle guard;
/// identical to the Case-1/Case-2 closed forms wherever those are defined.
fn state_normal(state: HybridState, phi: f64) -> Vec3 {
    let (_, pinned_end) = state.pinned();
    let pc = match pinned_end {
        ArcEnd::A => 1.0,
        ArcEnd::B => -1.0,
    };
    match state.rolling_link() {
        Link::L1 => -FRAC_1_SQRT_2 * Vec3::new(phi.cos(), phi.sin(), pc),
        Link::L2 => FRAC_1_SQRT_2 * Vec3::new(-pc, phi.sin(), -phi.cos()),
    }
}

/// Independent free-body wrench residual for a candidate `(phi, n1, n2)`.
///
/// Assembles gravity on the shifting masses and link centers of mass plus
/// the contact reactions from raw geometry, then keeps the statically
/// determinate projections: force along the surface normal, moment along the
/// contact line and along the normal. Near zero exactly when the candidate
/// is the equilibrium; the in-plane contact forces the free-body diagram
/// cannot determine never enter.
pub fn wrench_residual(
    params: &RobotParams,
    state: HybridState,
    config: &MassConfig,
    phi: f64,
    n1: f64,
    n2: f64,
) -> Wrench {
    let z = state_normal(state, phi);
    let angles = assemble_angles(state, phi);
    let q1 = params.contact_point(Link::L1, angles.phi1);
    let q2 = params.contact_point(Link::L2, angles.phi2);
    let p1 = params.mass_position(Link::L1, config.theta1_rad());
    let p2 = params.mass_position(Link::L2, config.theta2_rad());
    let c1 = params.link_com(Link::L1);
    let c2 = params.link_com(Link::L2);
    let shift_w = params.shift_mass * params.g;
    let link_w = params.link_mass * params.g;

    let moment_full = shift_w * p1.cross(&z)
        + shift_w * p2.cross(&z)
        + link_w * c1.cross(&z)
        + link_w * c2.cross(&z)
        - n1 * q1.cross(&z)
        - n2 * q2.cross(&z);
    let u = (q1 - q2).normalize();
    let moment = moment_full.dot(&u) * u + moment_full.dot(&z) * z;
    let force = (n1 + n2 - params.total_weight()) * z;
    Wrench { force, moment }
}

/// World pose of a solved configuration: rotation taking the body-frame
/// normal onto the world up-axis (yaw-free representative), planar position
/// free, height fixed at `r/√2`.
pub fn pose(
    params: &RobotParams,
    solution: &ContactSolution,
    xy: (f64, f64),
) -> Result<Transform3, StaticsError> {
    let normal = solution.normal.ok_or(StaticsError::MissingNormal)?;
    let z_s = Vec3::new(0.0, 0.0, 1.0);
    let rotation = rotation_between(&normal.z_b, &z_s);
    let translation = Vec3::new(xy.0, xy.1, params.r * FRAC_1_SQRT_2);
    Ok(Transform3::new(rotation, translation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact;
    use crate::fsm::ALL_STATES;
    use approx::assert_relative_eq;
    use std::f64::consts::SQRT_2;

    fn desk() -> RobotParams {
        RobotParams::default()
    }

    fn cfg(t1: f64, t2: f64) -> MassConfig {
        MassConfig::from_degrees(t1, t2).unwrap()
    }

    #[test]
    fn contact_angle_examples() {
        // tan φ1 = (sin45 − sin90)/cos45 → 157.5°
        match equilibrium_angle(HybridState::S1, &cfg(45.0, 90.0)) {
            EquilibriumAngle::Interior(phi) => {
                assert_relative_eq!(phi.to_degrees(), 157.5, epsilon = 1e-12)
            }
            other => panic!("expected interior, got {other:?}"),
        }
        // state 3: numerator positive, denominator exactly zero → 90°
        match equilibrium_angle(HybridState::S3, &cfg(45.0, 90.0)) {
            EquilibriumAngle::Interior(phi) => {
                assert_relative_eq!(phi.to_degrees(), 90.0, epsilon = 1e-12)
            }
            other => panic!("expected interior, got {other:?}"),
        }
    }

    #[test]
    fn equal_thetas_hit_the_boundary_sentinel() {
        for t in [10.0, 30.0, 77.5, 150.0] {
            match equilibrium_angle(HybridState::S1, &cfg(t, t)) {
                EquilibriumAngle::Boundary(end) => {
                    let expected = if t < 90.0 { ArcEnd::A } else { ArcEnd::B };
                    assert_eq!(end, expected, "θ = {t}");
                }
                other => panic!("expected boundary at θ1=θ2={t}, got {other:?}"),
            }
        }
    }

    #[test]
    fn mirror_diagonal_hits_the_boundary_exactly() {
        // sin θ2 must equal sin θ1 bitwise on θ2 = 180° − θ1
        for t in [5.0, 37.5, 45.0, 89.0] {
            let config = cfg(t, 180.0 - t);
            assert!(
                matches!(
                    equilibrium_angle(HybridState::S1, &config),
                    EquilibriumAngle::Boundary(_)
                ),
                "θ1={t}, θ2={}",
                180.0 - t
            );
        }
    }

    #[test]
    fn ninety_ninety_is_degenerate_for_all_states() {
        for state in ALL_STATES {
            assert!(equilibrium_angle(state, &cfg(90.0, 90.0)).is_degenerate());
        }
        // 90° in one slot only is not degenerate
        assert!(!equilibrium_angle(HybridState::S1, &cfg(90.0, 30.0)).is_degenerate());
        assert!(!equilibrium_angle(HybridState::S3, &cfg(30.0, 90.0)).is_degenerate());
    }

    #[test]
    fn state_pairs_share_the_same_angle() {
        for i in 0..=12 {
            for j in 0..=12 {
                let config = cfg(i as f64 * 15.0, j as f64 * 15.0);
                assert_eq!(
                    equilibrium_angle(HybridState::S1, &config),
                    equilibrium_angle(HybridState::S2, &config)
                );
                assert_eq!(
                    equilibrium_angle(HybridState::S3, &config),
                    equilibrium_angle(HybridState::S4, &config)
                );
            }
        }
    }

    #[test]
    fn symmetric_vertical_config_splits_load_evenly() {
        // (θ1, θ2) = (90°, 0°), M = m = 1 kg: both brackets collapse to -1,
        // so each contact carries (M + m)g = 19.62 N.
        let params = RobotParams::new(1.0, 1.0, 1.0, 9.81).unwrap();
        let config = cfg(90.0, 0.0);
        let phi = equilibrium_angle(HybridState::S1, &config)
            .free_angle_rad()
            .unwrap();
        assert_relative_eq!(phi.to_degrees(), 90.0, epsilon = 1e-12);
        let f = reaction_forces(&params, HybridState::S1, &config, phi);
        assert_relative_eq!(f.n1, 19.62, epsilon = 1e-12);
        assert_relative_eq!(f.n2, 19.62, epsilon = 1e-12);
    }

    #[test]
    fn state3_forces_match_term_by_term_evaluation() {
        let params = desk();
        let config = cfg(45.0, 90.0);
        let phi = equilibrium_angle(HybridState::S3, &config)
            .free_angle_rad()
            .unwrap();
        let f = reaction_forces(&params, HybridState::S3, &config, phi);
        let shift_w = params.shift_mass * params.g;
        let link_w = params.link_mass * params.g;
        assert_relative_eq!(f.n1, (2.0 - SQRT_2) * shift_w + link_w, epsilon = 1e-12);
        assert_relative_eq!(f.n2, SQRT_2 * shift_w + link_w, epsilon = 1e-12);
        assert_relative_eq!(f.n1, 6.681893, epsilon = 1e-6);
        assert_relative_eq!(f.n2, 10.152067, epsilon = 1e-6);
    }

    #[test]
    fn forces_always_sum_to_total_weight() {
        let params = desk();
        let scale = params.total_weight();
        for i in 0..19 {
            for j in 0..19 {
                let config = cfg(5.0 + i as f64 * 9.4, 5.0 + j as f64 * 9.4);
                for state in ALL_STATES {
                    if let Some(phi) = equilibrium_angle(state, &config).free_angle_rad() {
                        let f = reaction_forces(&params, state, &config, phi);
                        assert_relative_eq!(f.n1 + f.n2, scale, epsilon = 1e-9 * scale);
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_vanishes_at_closed_form_and_detects_perturbation() {
        let params = desk();
        let scale = params.shift_mass * params.g * params.r;
        let config = cfg(45.0, 90.0);
        for state in ALL_STATES {
            let phi = equilibrium_angle(state, &config).free_angle_rad().unwrap();
            let f = reaction_forces(&params, state, &config, phi);
            let residual = wrench_residual(&params, state, &config, phi, f.n1, f.n2);
            assert!(
                residual.norm() < 1e-9 * scale,
                "state {state:?}: {}",
                residual.norm()
            );
            let perturbed =
                wrench_residual(&params, state, &config, phi + 5f64.to_radians(), f.n1, f.n2);
            assert!(
                perturbed.norm() > 1e-3 * scale,
                "state {state:?}: {}",
                perturbed.norm()
            );
        }
    }

    #[test]
    fn oracle_detects_broken_force_sum() {
        let params = desk();
        let config = cfg(45.0, 90.0);
        let phi = equilibrium_angle(HybridState::S1, &config)
            .free_angle_rad()
            .unwrap();
        let f = reaction_forces(&params, HybridState::S1, &config, phi);
        let residual = wrench_residual(&params, HybridState::S1, &config, phi, f.n1 + 1.0, f.n2);
        assert!(residual.norm() > 0.5);
    }

    #[test]
    fn oracle_zero_for_massless_robot() {
        let params = RobotParams::new(0.2015, 0.0, 0.0, 9.81).unwrap();
        let config = cfg(45.0, 90.0);
        let residual = wrench_residual(&params, HybridState::S1, &config, 1.234, 0.0, 0.0);
        assert_eq!(residual.norm(), 0.0);
    }

    #[test]
    fn state_normal_matches_contact_module() {
        for state in ALL_STATES {
            let (_, end) = state.pinned();
            for i in 1..20 {
                let phi = i as f64 * PI / 20.0;
                let from_contact = match state.rolling_link() {
                    Link::L1 => contact::normal_case1(phi, end).unwrap().z_b,
                    Link::L2 => contact::normal_case2(end, phi).unwrap().z_b,
                };
                assert_eq!(state_normal(state, phi), from_contact);
            }
        }
    }

    #[test]
    fn solve_all_four_solutions_and_pivots() {
        let params = desk();
        let solutions = solve_all(&params, &cfg(45.0, 90.0)).unwrap();
        let pivots: Vec<String> = solutions.iter().map(|s| s.pivot_label()).collect();
        assert_eq!(pivots, ["A2", "B2", "A1", "B1"]);
        for s in &solutions[..2] {
            assert_relative_eq!(
                s.free_angle_rad().unwrap().to_degrees(),
                157.5,
                epsilon = 1e-12
            );
        }
        for s in &solutions[2..] {
            assert_relative_eq!(
                s.free_angle_rad().unwrap().to_degrees(),
                90.0,
                epsilon = 1e-12
            );
        }
        // (90°, 0°): state-1 normal is -(1/√2)(0, 1, 1)
        let s = solve_equilibrium(&params, HybridState::S1, &cfg(90.0, 0.0)).unwrap();
        assert_relative_eq!(
            s.normal.unwrap().z_b,
            -FRAC_1_SQRT_2 * Vec3::new(0.0, 1.0, 1.0),
            epsilon = 1e-12
        );
    }

    #[test]
    fn validity_is_reported_not_enforced() {
        // the prototype's near-1:1 mass ratio keeps every equilibrium
        // physical; a heavy shifting mass produces lifting contacts
        let heavy = RobotParams::new(0.2015, 0.431, 5.0, 9.81).unwrap();
        let mut seen_invalid = false;
        for i in 1..36 {
            for j in 1..36 {
                let config = cfg(i as f64 * 5.0, j as f64 * 5.0);
                for s in solve_all(&heavy, &config).unwrap() {
                    if let Some(f) = s.forces {
                        assert_eq!(s.is_valid(), f.n1 >= 0.0 && f.n2 >= 0.0);
                        seen_invalid |= !s.is_valid();
                    }
                }
            }
        }
        assert!(
            seen_invalid,
            "heavy-shift grid should contain lifting contacts"
        );
        // all four desk-prototype solutions stay valid at the example config
        for s in solve_all(&desk(), &cfg(45.0, 90.0)).unwrap() {
            assert!(s.is_valid());
        }
    }

    #[test]
    fn pose_puts_contacts_on_the_ground() {
        let params = desk();
        let solution = solve_equilibrium(&params, HybridState::S1, &cfg(45.0, 90.0)).unwrap();
        let t = pose(&params, &solution, (0.3, -0.2)).unwrap();
        assert_relative_eq!(t.translation.z, params.r * FRAC_1_SQRT_2, epsilon = 1e-15);
        let z_s = Vec3::new(0.0, 0.0, 1.0);
        assert_relative_eq!(
            t.rotation.apply(&solution.normal.unwrap().z_b),
            z_s,
            epsilon = 1e-9
        );
        let angles = solution.angles.unwrap();
        let q1 = params.contact_point(Link::L1, angles.phi1);
        let q2 = params.contact_point(Link::L2, angles.phi2);
        assert!(t.apply_point(&q1).z.abs() < 1e-9);
        assert!(t.apply_point(&q2).z.abs() < 1e-9);
    }

    #[test]
    fn pose_requires_a_normal() {
        let params = desk();
        let degenerate = solve_equilibrium(&params, HybridState::S1, &cfg(90.0, 90.0)).unwrap();
        assert!(degenerate.is_degenerate());
        assert!(pose(&params, &degenerate, (0.0, 0.0)).is_err());
    }

    #[test]
    fn non_default_shape_is_rejected() {
        let skewed = RobotParams::default().with_t12(Transform3::new(
            crate::geometry::Rotation3::identity(),
            Vec3::new(0.0, 0.0, 0.1),
        ));
        assert!(matches!(
            solve_equilibrium(&skewed, HybridState::S1, &cfg(45.0, 90.0)),
            Err(StaticsError::NonDefaultShape)
        ));
    }

    #[test]
    fn boundary_solution_has_forces_but_no_normal() {
        let params = desk();
        let s = solve_equilibrium(&params, HybridState::S1, &cfg(30.0, 30.0)).unwrap();
        assert_eq!(s.kind, SolutionKind::Boundary);
        assert!(s.normal.is_none());
        assert!(s.forces.is_some());
        assert_eq!(s.free_angle_rad(), Some(0.0));
    }
}
