//! Minimal 3-D rigid-body math used by the rest of the crate.
//!
//! Rotations are stored as explicit 3×3 matrices (the invariants we verify
//! are matrix invariants), transforms as rotation + translation acting on
//! points as `v¹ = o + R v²`, and screws as `ξ = [ω; v]` with the usual
//! closed-form SE(3) exponential.

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;
use thiserror::Error;

/// 3-vector of `f64`; meters for positions, dimensionless for directions.
pub type Vec3 = Vector3<f64>;
/// 3×3 matrix of `f64`.
pub type Mat3 = Matrix3<f64>;

/// Orthonormality / determinant tolerance for accepting a rotation matrix.
pub const ROTATION_TOL: f64 = 1e-10;
/// Below this angular norm the screw exponential switches to its series form.
pub const SMALL_ANGLE: f64 = 1e-8;
/// Cross products smaller than this are treated as a degenerate rotation axis.
pub const DEGENERATE_AXIS_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("matrix is not a rotation: |RᵀR − I| = {ortho_err:.3e}, det = {det:.12}")]
    NotARotation { ortho_err: f64, det: f64 },
}

/// Rotation in SO(3), stored as a 3×3 matrix with `RᵀR = I` and `det R = +1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation3 {
    mat: Mat3,
}

impl Serialize for Rotation3 {
    /// Serializes as three rows of three.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: [[f64; 3]; 3] = [
            [self.mat.m11, self.mat.m12, self.mat.m13],
            [self.mat.m21, self.mat.m22, self.mat.m23],
            [self.mat.m31, self.mat.m32, self.mat.m33],
        ];
        rows.serialize(serializer)
    }
}

impl Rotation3 {
    pub fn identity() -> Self {
        Self {
            mat: Mat3::identity(),
        }
    }

    /// Accepts `mat` as a rotation after checking orthonormality and
    /// determinant within [`ROTATION_TOL`].
    pub fn from_matrix(mat: Mat3) -> Result<Self, GeometryError> {
        let ortho_err = (mat.transpose() * mat - Mat3::identity()).norm();
        let det = mat.determinant();
        if ortho_err > ROTATION_TOL || (det - 1.0).abs() > ROTATION_TOL {
            return Err(GeometryError::NotARotation { ortho_err, det });
        }
        Ok(Self { mat })
    }

    /// Wraps a matrix that is a rotation by construction (closed-form
    /// Rodrigues output, products of rotations). Debug builds still check.
    pub fn from_matrix_unchecked(mat: Mat3) -> Self {
        debug_assert!(
            (mat.transpose() * mat - Mat3::identity()).norm() <= 1e-9,
            "from_matrix_unchecked received a non-rotation"
        );
        Self { mat }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.mat
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        self.mat * v
    }

    pub fn inverse(&self) -> Self {
        Self {
            mat: self.mat.transpose(),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            mat: self.mat * other.mat,
        }
    }

    /// Geodesic angle to `other`: the rotation angle of `self⁻¹·other`.
    pub fn angle_to(&self, other: &Self) -> f64 {
        let relative = self.mat.transpose() * other.mat;
        let c = (relative.trace() - 1.0) / 2.0;
        c.clamp(-1.0, 1.0).acos()
    }

    /// Frobenius distance of `RᵀR` from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        (self.mat.transpose() * self.mat - Mat3::identity()).norm()
    }

    pub fn determinant(&self) -> f64 {
        self.mat.determinant()
    }
}

impl std::ops::Mul for Rotation3 {
    type Output = Rotation3;
    fn mul(self, rhs: Rotation3) -> Rotation3 {
        self.compose(&rhs)
    }
}

/// Rigid transform in SE(3): `v¹ = translation + rotation · v²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Transform3 {
    pub rotation: Rotation3,
    pub translation: Vec3,
}

impl Transform3 {
    pub fn identity() -> Self {
        Self {
            rotation: Rotation3::identity(),
            translation: Vec3::zeros(),
        }
    }

    pub fn new(rotation: Rotation3, translation: Vec3) -> Self {
        Self {
            rotation,
            translation,
        }
    }

    /// Acts on a point (rotate, then translate).
    pub fn apply_point(&self, p: &Vec3) -> Vec3 {
        self.rotation.apply(p) + self.translation
    }

    /// Acts on a free vector (rotate only).
    pub fn apply_vector(&self, v: &Vec3) -> Vec3 {
        self.rotation.apply(v)
    }

    pub fn inverse(&self) -> Self {
        let rot_inv = self.rotation.inverse();
        let trans_inv = -rot_inv.apply(&self.translation);
        Self {
            rotation: rot_inv,
            translation: trans_inv,
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            rotation: self.rotation.compose(&other.rotation),
            translation: self.rotation.apply(&other.translation) + self.translation,
        }
    }
}

impl std::ops::Mul for Transform3 {
    type Output = Transform3;
    fn mul(self, rhs: Transform3) -> Transform3 {
        self.compose(&rhs)
    }
}

/// Screw (twist) 6-vector `ξ = [ω; v]`: angular part in radians, linear in
/// meters. The zero screw exponentiates to the identity transform.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Screw {
    pub angular: Vec3,
    pub linear: Vec3,
}

impl Screw {
    pub fn new(angular: Vec3, linear: Vec3) -> Self {
        Self { angular, linear }
    }

    pub fn zero() -> Self {
        Self {
            angular: Vec3::zeros(),
            linear: Vec3::zeros(),
        }
    }

    pub fn from_slice(x: &[f64; 6]) -> Self {
        Self {
            angular: Vec3::new(x[0], x[1], x[2]),
            linear: Vec3::new(x[3], x[4], x[5]),
        }
    }

    pub fn to_array(&self) -> [f64; 6] {
        [
            self.angular.x,
            self.angular.y,
            self.angular.z,
            self.linear.x,
            self.linear.y,
            self.linear.z,
        ]
    }
}

impl std::ops::Neg for Screw {
    type Output = Screw;
    fn neg(self) -> Screw {
        Screw {
            angular: -self.angular,
            linear: -self.linear,
        }
    }
}

/// Hat operator: maps `w ∈ ℝ³` to the skew-symmetric matrix with
/// `hat3(w)·u = w × u`.
pub fn hat3(w: &Vec3) -> Mat3 {
    Mat3::new(0.0, -w.z, w.y, w.z, 0.0, -w.x, -w.y, w.x, 0.0)
}

/// Closed-form exponential of a screw.
///
/// The rotation part is Rodrigues on `ω`; the translation part is `V(θ)·v`
/// with `V = I + (1−cosθ)/θ² Ŵ + (θ−sinθ)/θ³ Ŵ²`. Below [`SMALL_ANGLE`] both
/// factors use their series limits, so the map is smooth through ω = 0.
pub fn exp_screw(xi: &Screw) -> Transform3 {
    let w = xi.angular;
    let theta = w.norm();
    let w_hat = hat3(&w);
    let w_hat2 = w_hat * w_hat;
    let (rot, v_mat) = if theta < SMALL_ANGLE {
        let rot = Mat3::identity() + w_hat + w_hat2 / 2.0;
        let v_mat = Mat3::identity() + w_hat / 2.0 + w_hat2 / 6.0;
        (rot, v_mat)
    } else {
        let t2 = theta * theta;
        let a = theta.sin() / theta;
        // 2·sin²(θ/2)/θ² is (1−cosθ)/θ² without the cancellation near zero
        let half_sin = (theta / 2.0).sin();
        let b = 2.0 * half_sin * half_sin / t2;
        let c = (theta - theta.sin()) / (t2 * theta);
        let rot = Mat3::identity() + a * w_hat + b * w_hat2;
        let v_mat = Mat3::identity() + b * w_hat + c * w_hat2;
        (rot, v_mat)
    };
    Transform3 {
        rotation: Rotation3::from_matrix_unchecked(rot),
        translation: v_mat * xi.linear,
    }
}

/// Rotation taking the unit vector `z_b` onto the unit vector `z_s` by the
/// Rodrigues formula with axis `u = (z_b × z_s)/|z_b × z_s|` and angle
/// `θ = atan2(|z_b × z_s|, z_bᵀz_s)`.
///
/// Degenerate axis (`|z_b × z_s| < 1e-12`): returns the identity for parallel
/// inputs and a 180° rotation about the x-axis for antipodal ones. The choice
/// of the antipodal axis is free because any yaw about the target is.
///
/// Both inputs must be unit norm within 1e-9.
pub fn rotation_between(z_b: &Vec3, z_s: &Vec3) -> Rotation3 {
    debug_assert!((z_b.norm() - 1.0).abs() < 1e-9, "z_b must be unit");
    debug_assert!((z_s.norm() - 1.0).abs() < 1e-9, "z_s must be unit");
    let cross = z_b.cross(z_s);
    let sin_theta = cross.norm();
    let cos_theta = z_b.dot(z_s);
    if sin_theta < DEGENERATE_AXIS_TOL {
        if cos_theta > 0.0 {
            return Rotation3::identity();
        }
        // Antipodal: 180° about x.
        return Rotation3::from_matrix_unchecked(Mat3::new(
            1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0,
        ));
    }
    let axis = cross / sin_theta;
    let theta = sin_theta.atan2(cos_theta);
    let a_hat = hat3(&axis);
    let mat = Mat3::identity() + theta.sin() * a_hat + (1.0 - theta.cos()) * (a_hat * a_hat);
    Rotation3::from_matrix_unchecked(mat)
}
