//! Transition-boundary extraction from a sweep: the loci where a state's
//! free contact angle sits exactly on a link edge. For every state these are
//! the two diagonals {θ2 = θ1} and {θ2 = 180° − θ1}.

use super::sweep::SweepResult;
use serde::Serialize;

/// Boundary polylines of one state, split by diagonal branch: branch 0 is
/// {θ2 = θ1}, branch 1 is {θ2 = 180° − θ1}. The crossing cell (90°, 90°)
/// belongs to both.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryLines {
    pub state: u8,
    pub branches: [Vec<(f64, f64)>; 2],
}

/// Collects the flagged cells of a sweep into per-state boundary polylines,
/// ordered by θ1 within each branch.
pub fn boundaries(sweep: &SweepResult) -> Vec<BoundaryLines> {
    let mut out: Vec<BoundaryLines> = (1..=4)
        .map(|state| BoundaryLines {
            state,
            branches: [Vec::new(), Vec::new()],
        })
        .collect();
    for r in &sweep.records {
        if r.degenerate == 0 {
            continue;
        }
        let lines = &mut out[(r.state - 1) as usize];
        let on_main = r.theta1_deg == r.theta2_deg;
        let on_anti = r.theta2_deg == 180.0 - r.theta1_deg;
        if on_main {
            lines.branches[0].push((r.theta1_deg, r.theta2_deg));
        }
        if on_anti {
            lines.branches[1].push((r.theta1_deg, r.theta2_deg));
        }
        if !on_main && !on_anti {
            // flagged off the analytic loci: keep it visible on the nearer branch
            let d_main = (r.theta2_deg - r.theta1_deg).abs();
            let d_anti = (r.theta2_deg - (180.0 - r.theta1_deg)).abs();
            let branch = usize::from(d_anti < d_main);
            lines.branches[branch].push((r.theta1_deg, r.theta2_deg));
        }
    }
    out
}
