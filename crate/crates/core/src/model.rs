//! Robot parameterization: two semicircular links of radius `r` joined at
//! coincident arc centers, a point mass sliding along each link, and the
//! inter-link transform `t12` mapping link-2 coordinates into the body frame
//! (which coincides with link 1's frame).
//!
//! In each link's own frame a point at angle `α` sits at `r(cos α, sin α, 0)`;
//! link-2 quantities are mapped through `t12`. With the default orthogonal
//! `t12` this gives `p₂ = r(0, −sin θ₂, cos θ₂)` in the body frame.

use crate::geometry::{Mat3, Rotation3, Transform3, Vec3};
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid parameter {name}: {value} ({reason})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("angle {value_deg}° out of range [0°, 180°]")]
    AngleOutOfRange { value_deg: f64 },
    #[error("config line {line}: {reason}")]
    BadConfigLine { line: usize, reason: String },
    #[error("cannot read config file: {0}")]
    Io(#[from] std::io::Error),
}

/// One of the two curved links.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Link {
    L1,
    L2,
}

impl Link {
    pub fn other(self) -> Link {
        match self {
            Link::L1 => Link::L2,
            Link::L2 => Link::L1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Link::L1 => 1,
            Link::L2 => 2,
        }
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Internal-mass angles, the control input. Stored in degrees on [0°, 180°].
///
/// Degrees are authoritative here so that the mirror-symmetric transition
/// loci {θ2 = θ1} and {θ2 = 180° − θ1} are detected bit-exactly by the
/// statics layer; radians are derived at the kinematics boundary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MassConfig {
    theta1_deg: f64,
    theta2_deg: f64,
}

impl MassConfig {
    pub fn from_degrees(theta1_deg: f64, theta2_deg: f64) -> Result<Self, ModelError> {
        for &value_deg in &[theta1_deg, theta2_deg] {
            if !value_deg.is_finite() || !(0.0..=180.0).contains(&value_deg) {
                return Err(ModelError::AngleOutOfRange { value_deg });
            }
        }
        Ok(Self {
            theta1_deg,
            theta2_deg,
        })
    }

    pub fn from_radians(theta1: f64, theta2: f64) -> Result<Self, ModelError> {
        Self::from_degrees(theta1.to_degrees(), theta2.to_degrees())
    }

    pub fn theta1_deg(&self) -> f64 {
        self.theta1_deg
    }

    pub fn theta2_deg(&self) -> f64 {
        self.theta2_deg
    }

    pub fn theta_deg(&self, link: Link) -> f64 {
        match link {
            Link::L1 => self.theta1_deg,
            Link::L2 => self.theta2_deg,
        }
    }

    pub fn theta1_rad(&self) -> f64 {
        self.theta1_deg.to_radians()
    }

    pub fn theta2_rad(&self) -> f64 {
        self.theta2_deg.to_radians()
    }
}

/// Ground-contact angles in radians, each on [0, π]. In any hybrid state
/// exactly one of the two is pinned to an arc end.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContactAngles {
    pub phi1: f64,
    pub phi2: f64,
}

impl ContactAngles {
    pub fn new(phi1: f64, phi2: f64) -> Result<Self, ModelError> {
        for &phi in &[phi1, phi2] {
            if !phi.is_finite() || !(0.0..=PI).contains(&phi) {
                return Err(ModelError::AngleOutOfRange {
                    value_deg: phi.to_degrees(),
                });
            }
        }
        Ok(Self { phi1, phi2 })
    }

    pub fn phi(&self, link: Link) -> f64 {
        match link {
            Link::L1 => self.phi1,
            Link::L2 => self.phi2,
        }
    }
}

/// Physical robot parameters.
///
/// `t12` defaults to the orthogonal inter-link transform (rotation
/// `[[0,0,1],[0,−1,0],[1,0,0]]`, zero offset). Other shapes are accepted by
/// the kinematics here but rejected by the closed-form statics solver, which
/// assumes the default shape.
#[derive(Clone, Copy, Debug)]
pub struct RobotParams {
    /// Arc radius (m).
    pub r: f64,
    /// Mass of each curved link (kg), `m1 = m2`.
    pub link_mass: f64,
    /// Each internal shifting mass (kg), `M1 = M2`.
    pub shift_mass: f64,
    /// Gravitational acceleration (m/s²).
    pub g: f64,
    /// Inter-link transform: link-2 coordinates into the body frame.
    pub t12: Transform3,
}

/// Prototype defaults: 403 mm arc diameter, 431 g links, 427 g shifting
/// masses.
pub const DEFAULT_R: f64 = 0.2015;
pub const DEFAULT_LINK_MASS: f64 = 0.431;
pub const DEFAULT_SHIFT_MASS: f64 = 0.427;
pub const DEFAULT_G: f64 = 9.81;

impl Default for RobotParams {
    fn default() -> Self {
        Self {
            r: DEFAULT_R,
            link_mass: DEFAULT_LINK_MASS,
            shift_mass: DEFAULT_SHIFT_MASS,
            g: DEFAULT_G,
            t12: default_t12(),
        }
    }
}

/// The orthogonal inter-link transform: `R_12 = [[0,0,1],[0,−1,0],[1,0,0]]`,
/// zero displacement.
pub fn default_t12() -> Transform3 {
    let rot = Mat3::new(0.0, 0.0, 1.0, 0.0, -1.0, 0.0, 1.0, 0.0, 0.0);
    Transform3::new(Rotation3::from_matrix_unchecked(rot), Vec3::zeros())
}

impl RobotParams {
    pub fn new(r: f64, link_mass: f64, shift_mass: f64, g: f64) -> Result<Self, ModelError> {
        let check = |name: &'static str, value: f64, positive: bool| {
            let bad = !value.is_finite() || if positive { value <= 0.0 } else { value < 0.0 };
            if bad {
                Err(ModelError::InvalidParameter {
                    name,
                    value,
                    reason: if positive {
                        "must be finite and > 0"
                    } else {
                        "must be finite and >= 0"
                    },
                })
            } else {
                Ok(())
            }
        };
        check("r_m", r, true)?;
        check("link_mass_kg", link_mass, false)?;
        check("shift_mass_kg", shift_mass, false)?;
        check("g", g, true)?;
        Ok(Self {
            r,
            link_mass,
            shift_mass,
            g,
            t12: default_t12(),
        })
    }

    pub fn with_t12(mut self, t12: Transform3) -> Self {
        self.t12 = t12;
        self
    }

    /// True when `t12` is the default orthogonal shape (within 1e-12
    /// elementwise), the assumption baked into the closed-form statics.
    pub fn has_default_t12(&self) -> bool {
        let d = default_t12();
        (self.t12.rotation.matrix() - d.rotation.matrix()).norm() <= 1e-12
            && self.t12.translation.norm() <= 1e-12
    }

    /// Weight of the whole robot, `2(M + m)g` (N).
    pub fn total_weight(&self) -> f64 {
        2.0 * (self.shift_mass + self.link_mass) * self.g
    }

    /// Position of the shifting mass on `link` at angle `theta` (rad),
    /// expressed in the body frame.
    pub fn mass_position(&self, link: Link, theta: f64) -> Vec3 {
        self.arc_point(link, theta)
    }

    /// Ground-contact point of `link` at angle `phi` (rad), body frame.
    pub fn contact_point(&self, link: Link, phi: f64) -> Vec3 {
        self.arc_point(link, phi)
    }

    /// Arc tangent `∂q/∂φ` at angle `phi` (rad), body frame. The analytic
    /// derivative is returned for every `phi`; whether the tangent is
    /// physically defined at the arc ends is the caller's concern.
    pub fn tangent(&self, link: Link, phi: f64) -> Vec3 {
        let t_local = self.r * Vec3::new(-phi.sin(), phi.cos(), 0.0);
        match link {
            Link::L1 => t_local,
            Link::L2 => self.t12.apply_vector(&t_local),
        }
    }

    /// Center of mass of `link`, body frame: `(0, 2r/π, 0)` in the link's own
    /// frame, mapped through `t12` for link 2.
    pub fn link_com(&self, link: Link) -> Vec3 {
        let com_local = Vec3::new(0.0, 2.0 * self.r / PI, 0.0);
        match link {
            Link::L1 => com_local,
            Link::L2 => self.t12.apply_point(&com_local),
        }
    }

    fn arc_point(&self, link: Link, angle: f64) -> Vec3 {
        let p_local = self.r * Vec3::new(angle.cos(), angle.sin(), 0.0);
        match link {
            Link::L1 => p_local,
            Link::L2 => self.t12.apply_point(&p_local),
        }
    }

    /// Parses a plain-text key/value config. Recognized keys: `r_m`,
    /// `link_mass_kg`, `shift_mass_kg`, `g`; missing keys keep their
    /// defaults. Lines may use `key value` or `key = value`; `#` starts a
    /// comment.
    pub fn from_config_str(text: &str) -> Result<Self, ModelError> {
        let mut r = DEFAULT_R;
        let mut link_mass = DEFAULT_LINK_MASS;
        let mut shift_mass = DEFAULT_SHIFT_MASS;
        let mut g = DEFAULT_G;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut parts = content.splitn(2, |c: char| c == '=' || c.is_whitespace());
            let key = parts.next().unwrap_or("").trim();
            let value_str = parts.next().unwrap_or("").trim_start_matches('=').trim();
            let value: f64 = value_str
                .parse()
                .map_err(|_| ModelError::BadConfigLine {
                    line,
                    reason: format!("cannot parse value {value_str:?} for key {key:?}"),
                })?;
            match key {
                "r_m" => r = value,
                "link_mass_kg" => link_mass = value,
                "shift_mass_kg" => shift_mass = value,
                "g" => g = value,
                other => {
                    return Err(ModelError::BadConfigLine {
                        line,
                        reason: format!("unknown key {other:?}"),
                    })
                }
            }
        }
        Self::new(r, link_mass, shift_mass, g)
    }

    pub fn from_config_file(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        Self::from_config_str(&std::fs::read_to_string(path)?)
    }
}
