//! Four-state hybrid automaton.
//!
//! Each state pins one ground-contact angle at an arc end (the pivot) while
//! the other link rolls. The transition graph is bipartite between
//! {1, 2} (rolling link 1) and {3, 4} (rolling link 2): the edge the rolling
//! angle hits becomes the next state's pinned angle, and the guard requires
//! the previously pinned angle to un-pin in its only available direction
//! (away from 0° upward, away from 180° downward).

use crate::model::Link;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FsmError {
    #[error("no state has id {0}; valid ids are 1-4")]
    UnknownStateId(u8),
    #[error("illegal guard: from state {from} with {link} hitting {end}, the freed angle must be {required}, got {got}")]
    IllegalGuard {
        from: u8,
        link: Link,
        end: ArcEnd,
        required: RateSign,
        got: RateSign,
    },
}

/// Arc end label: `A` is the endpoint at angle 0, `B` at angle 180°.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ArcEnd {
    A,
    B,
}

impl ArcEnd {
    pub fn angle_rad(self) -> f64 {
        match self {
            ArcEnd::A => 0.0,
            ArcEnd::B => PI,
        }
    }

    pub fn angle_deg(self) -> f64 {
        match self {
            ArcEnd::A => 0.0,
            ArcEnd::B => 180.0,
        }
    }
}

impl fmt::Display for ArcEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcEnd::A => write!(f, "A"),
            ArcEnd::B => write!(f, "B"),
        }
    }
}

/// A named link endpoint, e.g. `A2` = the 0° end of link 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Endpoint {
    pub link: Link,
    pub end: ArcEnd,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.end, self.link)
    }
}

/// Sign of an angle rate at a transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RateSign {
    Increasing,
    Decreasing,
}

impl RateSign {
    pub fn as_i8(self) -> i8 {
        match self {
            RateSign::Increasing => 1,
            RateSign::Decreasing => -1,
        }
    }
}

impl fmt::Display for RateSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RateSign::Increasing => write!(f, "+"),
            RateSign::Decreasing => write!(f, "-"),
        }
    }
}

/// One of the four hybrid states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HybridState {
    /// φ2 = 0°, pivot A2, rolling along L1.
    S1,
    /// φ2 = 180°, pivot B2, rolling along L1.
    S2,
    /// φ1 = 0°, pivot A1, rolling along L2.
    S3,
    /// φ1 = 180°, pivot B1, rolling along L2.
    S4,
}

pub const ALL_STATES: [HybridState; 4] = [
    HybridState::S1,
    HybridState::S2,
    HybridState::S3,
    HybridState::S4,
];

impl HybridState {
    pub fn id(self) -> u8 {
        match self {
            HybridState::S1 => 1,
            HybridState::S2 => 2,
            HybridState::S3 => 3,
            HybridState::S4 => 4,
        }
    }

    pub fn from_id(id: u8) -> Result<Self, FsmError> {
        match id {
            1 => Ok(HybridState::S1),
            2 => Ok(HybridState::S2),
            3 => Ok(HybridState::S3),
            4 => Ok(HybridState::S4),
            other => Err(FsmError::UnknownStateId(other)),
        }
    }

    /// The pinned contact angle: which link and which arc end.
    pub fn pinned(self) -> (Link, ArcEnd) {
        match self {
            HybridState::S1 => (Link::L2, ArcEnd::A),
            HybridState::S2 => (Link::L2, ArcEnd::B),
            HybridState::S3 => (Link::L1, ArcEnd::A),
            HybridState::S4 => (Link::L1, ArcEnd::B),
        }
    }

    /// The endpoint the robot pivots about.
    pub fn pivot(self) -> Endpoint {
        let (link, end) = self.pinned();
        Endpoint { link, end }
    }

    /// The link whose contact angle is free (rolling).
    pub fn rolling_link(self) -> Link {
        self.pinned().0.other()
    }

    /// The state that pins `link` at `end`.
    pub fn pinning(link: Link, end: ArcEnd) -> Self {
        match (link, end) {
            (Link::L2, ArcEnd::A) => HybridState::S1,
            (Link::L2, ArcEnd::B) => HybridState::S2,
            (Link::L1, ArcEnd::A) => HybridState::S3,
            (Link::L1, ArcEnd::B) => HybridState::S4,
        }
    }

    /// Rate-sign guard for any transition out of this state: the freed angle
    /// leaves 0° upward and 180° downward.
    pub fn exit_rate_sign(self) -> RateSign {
        match self.pinned().1 {
            ArcEnd::A => RateSign::Increasing,
            ArcEnd::B => RateSign::Decreasing,
        }
    }

    /// States reachable in one transition (the opposite rolling pair).
    pub fn reachable(self) -> [HybridState; 2] {
        match self.rolling_link() {
            Link::L1 => [HybridState::S3, HybridState::S4],
            Link::L2 => [HybridState::S1, HybridState::S2],
        }
    }
}

impl fmt::Display for HybridState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// True when `from → to` is an edge of the transition graph.
pub fn is_legal_transition(from: HybridState, to: HybridState) -> bool {
    from.reachable().contains(&to)
}

/// Fires a transition: the rolling link's angle has hit the arc end
/// `roll_hit`, and the previously pinned angle starts moving with sign
/// `freed_rate`. Returns the state pinning the edge just hit.
///
/// Errors when `freed_rate` violates the guard (the freed angle can only
/// leave 0° upward and 180° downward).
pub fn next_state(
    current: HybridState,
    roll_hit: ArcEnd,
    freed_rate: RateSign,
) -> Result<HybridState, FsmError> {
    let required = current.exit_rate_sign();
    if freed_rate != required {
        return Err(FsmError::IllegalGuard {
            from: current.id(),
            link: current.rolling_link(),
            end: roll_hit,
            required,
            got: freed_rate,
        });
    }
    Ok(HybridState::pinning(current.rolling_link(), roll_hit))
}

/// A fired transition, for path traces.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TransitionEvent {
    pub from: u8,
    pub to: u8,
    /// Which link's angle hit which arc end.
    pub boundary_link: Link,
    pub boundary_end: ArcEnd,
    /// Sign of the freed angle's rate just after the transition.
    pub direction: i8,
}

impl TransitionEvent {
    pub fn new(
        from: HybridState,
        to: HybridState,
        boundary_link: Link,
        boundary_end: ArcEnd,
        direction: RateSign,
    ) -> Self {
        debug_assert!(is_legal_transition(from, to));
        Self {
            from: from.id(),
            to: to.id(),
            boundary_link,
            boundary_end,
            direction: direction.as_i8(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_definitions() {
        assert_eq!(HybridState::S1.pivot().to_string(), "A2");
        assert_eq!(HybridState::S2.pivot().to_string(), "B2");
        assert_eq!(HybridState::S3.pivot().to_string(), "A1");
        assert_eq!(HybridState::S4.pivot().to_string(), "B1");
        assert_eq!(HybridState::S1.rolling_link(), Link::L1);
        assert_eq!(HybridState::S4.rolling_link(), Link::L2);
        assert_eq!(HybridState::S2.pinned(), (Link::L2, ArcEnd::B));
    }

    #[test]
    fn guarded_transitions_from_state_one() {
        let s3 = next_state(HybridState::S1, ArcEnd::A, RateSign::Increasing).unwrap();
        assert_eq!(s3, HybridState::S3);
        let s4 = next_state(HybridState::S1, ArcEnd::B, RateSign::Increasing).unwrap();
        assert_eq!(s4, HybridState::S4);
        assert!(next_state(HybridState::S1, ArcEnd::A, RateSign::Decreasing).is_err());
    }

    #[test]
    fn guarded_transitions_from_rolling_link_two() {
        let s2 = next_state(HybridState::S3, ArcEnd::B, RateSign::Increasing).unwrap();
        assert_eq!(s2, HybridState::S2);
        let s1 = next_state(HybridState::S4, ArcEnd::A, RateSign::Decreasing).unwrap();
        assert_eq!(s1, HybridState::S1);
        assert!(next_state(HybridState::S4, ArcEnd::A, RateSign::Increasing).is_err());
    }

    #[test]
    fn next_state_pins_the_edge_just_hit() {
        for s in ALL_STATES {
            for end in [ArcEnd::A, ArcEnd::B] {
                let to = next_state(s, end, s.exit_rate_sign()).unwrap();
                assert_eq!(to.pinned(), (s.rolling_link(), end));
                assert_ne!(to.rolling_link(), s.rolling_link());
            }
        }
    }

    #[test]
    fn reachability_sets() {
        assert_eq!(
            HybridState::S1.reachable(),
            [HybridState::S3, HybridState::S4]
        );
        assert_eq!(
            HybridState::S2.reachable(),
            [HybridState::S3, HybridState::S4]
        );
        assert_eq!(
            HybridState::S4.reachable(),
            [HybridState::S1, HybridState::S2]
        );
    }

    #[test]
    fn graph_is_bipartite_with_eight_edges() {
        let mut edges = 0;
        for from in ALL_STATES {
            for to in ALL_STATES {
                if is_legal_transition(from, to) {
                    edges += 1;
                    assert_ne!(from.rolling_link(), to.rolling_link());
                    assert_ne!(from, to);
                }
            }
        }
        assert_eq!(edges, 8);
        assert!(!is_legal_transition(HybridState::S1, HybridState::S2));
        assert!(!is_legal_transition(HybridState::S3, HybridState::S4));
    }

    #[test]
    fn rolling_cycle_walkthrough() {
        // 1 -> 3 -> 2 -> 4 -> 1, each via a legal guard
        let s = HybridState::S1;
        let s = next_state(s, ArcEnd::A, RateSign::Increasing).unwrap();
        assert_eq!(s, HybridState::S3);
        let s = next_state(s, ArcEnd::B, RateSign::Increasing).unwrap();
        assert_eq!(s, HybridState::S2);
        let s = next_state(s, ArcEnd::B, RateSign::Decreasing).unwrap();
        assert_eq!(s, HybridState::S4);
        let s = next_state(s, ArcEnd::A, RateSign::Decreasing).unwrap();
        assert_eq!(s, HybridState::S1);
    }

    #[test]
    fn ids_round_trip() {
        for s in ALL_STATES {
            assert_eq!(HybridState::from_id(s.id()).unwrap(), s);
        }
        assert!(HybridState::from_id(0).is_err());
        assert!(HybridState::from_id(5).is_err());
    }
}
