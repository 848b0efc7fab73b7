//! Statics and hybrid-kinematics engine for a rolling tensegrity robot made of
//! two orthogonal semicircular links, held by a 12-cable net and steered by a
//! shifting mass inside each link.
//!
//! The crate is organized bottom-up:
//!
//! - [`geometry`] — minimal rigid-body math: vectors, rotations, homogeneous
//!   transforms, the hat operator, the screw exponential, and axis-angle
//!   rotation construction.
//! - [`model`] — robot parameterization: arc geometry, shifting-mass and
//!   contact-point positions, tangents, link centers of mass.
//! - [`contact`] — the holonomic surface-contact constraint: closed-form
//!   body-frame surface normals for the two feasible contact cases and the
//!   coplanarity residual certifying the third case infeasible.
//! - [`fsm`] — the four-state hybrid automaton (pivot endpoint + rolling
//!   link) with its guarded transition graph.
//! - [`statics`] — closed-form static equilibria per hybrid state, reaction
//!   forces, pose reconstruction, and an independent wrench-residual oracle.
//! - [`formfind`] — cable-net definition and form-finding by spring-energy
//!   minimization over a 6-dof screw.
//! - [`routing`] — Euler-circuit tendon routing and routing validation.
//! - [`app`] — batch operations behind the CLI: grid sweeps, transition
//!   boundaries, quasi-static path execution, measurement validation, and
//!   CSV/JSON/SVG emission.

pub mod app;
pub mod contact;
pub mod formfind;
pub mod fsm;
pub mod geometry;
pub mod model;
pub mod routing;
pub mod statics;

pub use contact::{ContactCase, ContactError, SurfaceNormal};
pub use fsm::{ArcEnd, Endpoint, FsmError, HybridState, RateSign, TransitionEvent};
pub use geometry::{exp_screw, hat3, rotation_between, Mat3, Rotation3, Screw, Transform3, Vec3};
pub use model::{ContactAngles, Link, MassConfig, ModelError, RobotParams};
pub use statics::{
    solve_all, solve_equilibrium, ContactSolution, EquilibriumAngle, ReactionForces, SolutionKind,
    StaticsError, Wrench,
};
