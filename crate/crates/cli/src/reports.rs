//! CLI-facing report shapes for the form-finding and routing commands.

use serde::Serialize;
use tenseroll_core::app::emit::fmt_f64;
use tenseroll_core::app::ValidationReport;
use tenseroll_core::formfind::{cable_lengths_at, CableNet, FormFindResult, INCH};
use tenseroll_core::geometry::Transform3;
use tenseroll_core::routing::{RoutingPath, RoutingReport};

#[derive(Serialize)]
pub struct FormFindReport {
    pub converged: bool,
    #[serde(rename = "energy_J")]
    pub energy: f64,
    pub grad_norm: f64,
    pub best_restart: usize,
    pub evals: usize,
    pub xi: tenseroll_core::geometry::Screw,
    pub transform: Transform3,
    /// Geodesic angle between the recovered rotation and the orthogonal
    /// reference shape (rad).
    pub rotation_deviation_rad: f64,
    pub translation_norm_m: f64,
    pub cable_lengths_m: Vec<f64>,
    pub cable_lengths_in: Vec<f64>,
}

impl FormFindReport {
    pub fn new(net: &CableNet, result: &FormFindResult, reference: &Transform3) -> Self {
        let lengths = cable_lengths_at(&result.transform, net);
        FormFindReport {
            converged: result.converged,
            energy: result.energy,
            grad_norm: result.grad_norm,
            best_restart: result.best_restart,
            evals: result.evals,
            xi: result.xi,
            transform: result.transform,
            rotation_deviation_rad: result
                .transform
                .rotation
                .angle_to(&reference.rotation),
            translation_norm_m: result.transform.translation.norm(),
            cable_lengths_in: lengths.iter().map(|l| l / INCH).collect(),
            cable_lengths_m: lengths,
        }
    }
}

#[derive(Serialize)]
pub struct RouteReport {
    pub circuit: String,
    pub vertices: Vec<String>,
    pub edge_count: usize,
    pub pass: bool,
    pub report: RoutingReport,
}

impl RouteReport {
    pub fn new(path: &RoutingPath, report: &RoutingReport) -> Self {
        RouteReport {
            circuit: path.to_string(),
            vertices: path.vertices.iter().map(|v| v.to_string()).collect(),
            edge_count: path.vertices.len().saturating_sub(1),
            pass: report.pass,
            report: report.clone(),
        }
    }
}

pub fn route_csv(path: &RoutingPath) -> String {
    let mut out = String::from("position,vertex\n");
    for (i, v) in path.vertices.iter().enumerate() {
        out.push_str(&format!("{i},{v}\n"));
    }
    out
}

pub fn validation_csv(report: &ValidationReport) -> String {
    let mut out = String::from(
        "line,state,theta1_deg,theta2_deg,measured_deg,predicted_deg,abs_error_deg\n",
    );
    for o in &report.outcomes {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            o.line,
            o.state,
            fmt_f64(o.theta1_deg),
            fmt_f64(o.theta2_deg),
            fmt_f64(o.measured_deg),
            fmt_f64(o.predicted_deg),
            fmt_f64(o.abs_error_deg)
        ));
    }
    out.push_str(&format!(
        "# rows_used={} mae_deg={} skipped={}\n",
        report.rows_used,
        fmt_f64(report.mae_deg),
        report.skipped.len()
    ));
    out
}
