//! Holonomic surface-contact constraint.
//!
//! Both contact points and every defined arc tangent must lie in the ground
//! plane; equivalently `[(q₁−q₂)ᵀ; t₁ᵀ; t₂ᵀ]·z_b = 0` where `z_b` is the
//! surface normal seen from the body. Tangents are undefined at arc ends,
//! which splits the constraint into three cases:
//!
//! - Case 1 (`t₂` undefined, φ₂ pinned at an end): closed form
//!   `z_b = −(1/√2)(cos φ₁, sin φ₁, cos φ₂)`.
//! - Case 2 (`t₁` undefined, φ₁ pinned): closed form
//!   `z_b = (1/√2)(−cos φ₁, sin φ₂, −cos φ₂)`.
//! - Case 3 (both tangents defined): requires
//!   `(q₁−q₂)ᵀ(t₁×t₂) = −r³(sin φ₁ + sin φ₂) = 0`, which is strictly
//!   negative on the open square — no interior–interior contact exists.
//!
//! Signs are fixed by the requirement that the body origin sits above the
//! ground: `−z_bᵀq₁ = −z_bᵀq₂ = r/√2 > 0`.

use crate::fsm::ArcEnd;
use crate::geometry::Vec3;
use crate::model::{Link, RobotParams};
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ContactError {
    #[error("degenerate configuration: free angle {link} is at an arc end ({phi_deg}°), both tangents undefined")]
    DegenerateCorner { link: Link, phi_deg: f64 },
    #[error("free contact angle {phi} rad outside [0, π]")]
    AngleOutOfRange { phi: f64 },
}

/// Which tangent is undefined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ContactCase {
    /// `t₂` undefined: φ₂ pinned at an arc end, link 1 rolling.
    Case1,
    /// `t₁` undefined: φ₁ pinned at an arc end, link 2 rolling.
    Case2,
}

/// Unit surface normal expressed in the body frame.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurfaceNormal {
    pub z_b: Vec3,
    pub case: ContactCase,
}

fn check_free_angle(phi: f64, link: Link) -> Result<(), ContactError> {
    if !phi.is_finite() || !(0.0..=PI).contains(&phi) {
        return Err(ContactError::AngleOutOfRange { phi });
    }
    if phi == 0.0 || phi == PI {
        return Err(ContactError::DegenerateCorner {
            link,
            phi_deg: phi.to_degrees(),
        });
    }
    Ok(())
}

/// Case-1 surface normal: φ₂ pinned at `phi2`, φ₁ free in (0, π).
pub fn normal_case1(phi1: f64, phi2: ArcEnd) -> Result<SurfaceNormal, ContactError> {
    check_free_angle(phi1, Link::L1)?;
    let c2 = match phi2 {
        ArcEnd::A => 1.0,
        ArcEnd::B => -1.0,
    };
    let z_b = -FRAC_1_SQRT_2 * Vec3::new(phi1.cos(), phi1.sin(), c2);
    Ok(SurfaceNormal {
        z_b,
        case: ContactCase::Case1,
    })
}

/// Case-2 surface normal: φ₁ pinned at `phi1`, φ₂ free in (0, π).
pub fn normal_case2(phi1: ArcEnd, phi2: f64) -> Result<SurfaceNormal, ContactError> {
    check_free_angle(phi2, Link::L2)?;
    let c1 = match phi1 {
        ArcEnd::A => 1.0,
        ArcEnd::B => -1.0,
    };
    let z_b = FRAC_1_SQRT_2 * Vec3::new(-c1, phi2.sin(), -phi2.cos());
    Ok(SurfaceNormal {
        z_b,
        case: ContactCase::Case2,
    })
}

/// Case-3 coplanarity residual `(q₁−q₂)ᵀ(t₁×t₂) = −r³(sin φ₁ + sin φ₂)`,
/// strictly negative for φ₁, φ₂ in the open interval — certifying that a
/// contact with both tangents defined cannot exist.
pub fn case3_residual(phi1: f64, phi2: f64, r: f64) -> f64 {
    -r.powi(3) * (phi1.sin() + phi2.sin())
}

/// The three holonomic constraint rows
/// `[(q₁−q₂)ᵀ z_b, t₁ᵀ z_b, t₂ᵀ z_b]` evaluated with analytic tangents
/// everywhere (interpretation at arc ends is the caller's concern).
pub fn holonomic_residuals(params: &RobotParams, phi1: f64, phi2: f64, z_b: &Vec3) -> Vec3 {
    let q1 = params.contact_point(Link::L1, phi1);
    let q2 = params.contact_point(Link::L2, phi2);
    let t1 = params.tangent(Link::L1, phi1);
    let t2 = params.tangent(Link::L2, phi2);
    Vec3::new((q1 - q2).dot(z_b), t1.dot(z_b), t2.dot(z_b))
}

impl SurfaceNormal {
    /// Contact height `−z_bᵀ q_i` of the given link, which equals `r/√2` for
    /// every valid Case-1/Case-2 normal.
    pub fn contact_height(&self, params: &RobotParams, link: Link, phi: f64) -> f64 {
        -self.z_b.dot(&params.contact_point(link, phi))
    }
}
