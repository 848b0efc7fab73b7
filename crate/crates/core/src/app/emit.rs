//! CSV, JSON and SVG emission. CSV numbers carry six decimal places (NaN
//! spelled out), JSON goes through serde (non-finite floats become null),
//! and the SVG plots contain exactly one shape element per data record.

use super::boundaries::BoundaryLines;
use super::path::PathTrace;
use super::sweep::SweepResult;
use super::SolutionRecord;
use serde::Serialize;

/// Fixed six-decimal rendering used for every CSV number.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        format!("{v:.6}")
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

pub const SWEEP_CSV_HEADER: &str =
    "theta1_deg,theta2_deg,state,phi1_deg,phi2_deg,n1_N,n2_N,degenerate";

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::with_capacity(result.records.len() * 64);
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in &result.records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt_f64(r.theta1_deg),
            fmt_f64(r.theta2_deg),
            r.state,
            fmt_f64(r.phi1_deg),
            fmt_f64(r.phi2_deg),
            fmt_f64(r.n1),
            fmt_f64(r.n2),
            r.degenerate
        ));
    }
    out
}

pub fn boundaries_csv(lines: &[BoundaryLines]) -> String {
    let mut out = String::from("state,branch,theta1_deg,theta2_deg\n");
    for state_lines in lines {
        for (branch, points) in state_lines.branches.iter().enumerate() {
            for &(t1, t2) in points {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    state_lines.state,
                    branch,
                    fmt_f64(t1),
                    fmt_f64(t2)
                ));
            }
        }
    }
    out
}

pub const PATH_CSV_HEADER: &str =
    "index,theta1_deg,theta2_deg,state,phi1_deg,phi2_deg,zb_x,zb_y,zb_z,event";

pub fn path_csv(trace: &PathTrace) -> String {
    let mut out = String::from(PATH_CSV_HEADER);
    out.push('\n');
    for s in &trace.samples {
        let (zx, zy, zz) = match s.z_b {
            Some(z) => (fmt_f64(z[0]), fmt_f64(z[1]), fmt_f64(z[2])),
            None => ("NaN".into(), "NaN".into(), "NaN".into()),
        };
        let event = match &s.event {
            Some(e) => format!("{}>{}", e.from, e.to),
            None => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            s.index,
            fmt_f64(s.theta1_deg),
            fmt_f64(s.theta2_deg),
            s.state,
            fmt_f64(s.phi1_deg),
            fmt_f64(s.phi2_deg),
            zx,
            zy,
            zz,
            event
        ));
    }
    out
}

pub const SOLUTIONS_CSV_HEADER: &str =
    "state,pivot,theta1_deg,theta2_deg,phi1_deg,phi2_deg,zb_x,zb_y,zb_z,n1_N,n2_N,degenerate,valid";

pub fn solutions_csv(records: &[SolutionRecord]) -> String {
    let mut out = String::from(SOLUTIONS_CSV_HEADER);
    out.push('\n');
    for r in records {
        let (zx, zy, zz) = match r.z_b {
            Some(z) => (fmt_f64(z[0]), fmt_f64(z[1]), fmt_f64(z[2])),
            None => ("NaN".into(), "NaN".into(), "NaN".into()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.state,
            r.pivot,
            fmt_f64(r.theta1_deg),
            fmt_f64(r.theta2_deg),
            fmt_f64(r.phi1_deg),
            fmt_f64(r.phi2_deg),
            zx,
            zy,
            zz,
            fmt_f64(r.n1),
            fmt_f64(r.n2),
            r.degenerate,
            r.valid
        ));
    }
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Two-stop color ramp over the free angle; grey for undefined cells.
fn phi_color(phi_deg: f64) -> String {
    if phi_deg.is_nan() {
        return "#9e9e9e".into();
    }
    let t = (phi_deg / 180.0).clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        lerp(24.0, 253.0),
        lerp(42.0, 187.0),
        lerp(120.0, 45.0)
    )
}

fn state_color(state: u8) -> &'static str {
    match state {
        1 => "#1f77b4",
        2 => "#2ca02c",
        3 => "#ff7f0e",
        _ => "#9467bd",
    }
}

const PANEL: f64 = 240.0;
const MARGIN: f64 = 42.0;

/// Heatmap of the rolling link's contact angle over the mass-angle square,
/// one panel per state, with the transition boundaries overlaid. Exactly one
/// `<rect>` per sweep record.
pub fn sweep_svg(result: &SweepResult, boundaries: &[BoundaryLines]) -> String {
    let n = result.thetas_deg.len();
    let cell = PANEL / n as f64;
    let width = 2.0 * PANEL + 3.0 * MARGIN;
    let height = 2.0 * PANEL + 3.0 * MARGIN + 16.0;
    let panel_origin = |state: u8| -> (f64, f64) {
        let col = ((state - 1) % 2) as f64;
        let row = ((state - 1) / 2) as f64;
        (
            MARGIN + col * (PANEL + MARGIN),
            MARGIN + row * (PANEL + MARGIN + 16.0),
        )
    };
    let mut svg = String::new();
    svg.push_str(&format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str(&format!(
        "<title>{}</title>\n",
        xml_escape(&format!(
            "equilibrium contact angles, step {}°",
            result.step_deg
        ))
    ));
    for r in &result.records {
        let (ox, oy) = panel_origin(r.state);
        let i = (r.theta1_deg / result.step_deg).round();
        let j = (r.theta2_deg / result.step_deg).round();
        let x = ox + i * cell;
        let y = oy + PANEL - (j + 1.0) * cell;
        let free = match r.state {
            1 | 2 => r.phi1_deg,
            _ => r.phi2_deg,
        };
        svg.push_str(&format!(
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{cell:.2}\" height=\"{cell:.2}\" fill=\"{}\"/>\n",
            phi_color(free)
        ));
    }
    for lines in boundaries {
        let (ox, oy) = panel_origin(lines.state);
        for points in &lines.branches {
            if points.is_empty() {
                continue;
            }
            let coords: Vec<String> = points
                .iter()
                .map(|&(t1, t2)| {
                    let x = ox + (t1 / result.step_deg + 0.5) * cell;
                    let y = oy + PANEL - (t2 / result.step_deg + 0.5) * cell;
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"4 3\"/>\n",
                coords.join(" ")
            ));
        }
    }
    for state in 1..=4u8 {
        let (ox, oy) = panel_origin(state);
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" font-family=\"sans-serif\">state {state}</text>\n",
            ox,
            oy + PANEL + 13.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Path trace in the mass-angle plane: one `<circle>` per sample, colored by
/// state, boundary diagonals dashed.
pub fn path_svg(trace: &PathTrace) -> String {
    let size = 2.0 * PANEL;
    let width = size + 2.0 * MARGIN;
    let height = size + 2.0 * MARGIN;
    let map = |t1: f64, t2: f64| -> (f64, f64) {
        (
            MARGIN + t1 / 180.0 * size,
            MARGIN + size - t2 / 180.0 * size,
        )
    };
    let mut svg = String::new();
    svg.push_str(&format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str("<title>quasi-static path</title>\n");
    // boundary diagonals
    let (x0, y0) = map(0.0, 0.0);
    let (x1, y1) = map(180.0, 180.0);
    svg.push_str(&format!(
        "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y1:.2}\" stroke=\"#d62728\" stroke-dasharray=\"4 3\"/>\n"
    ));
    let (x0, y0) = map(0.0, 180.0);
    let (x1, y1) = map(180.0, 0.0);
    svg.push_str(&format!(
        "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y1:.2}\" stroke=\"#d62728\" stroke-dasharray=\"4 3\"/>\n"
    ));
    for s in &trace.samples {
        let (cx, cy) = map(s.theta1_deg, s.theta2_deg);
        svg.push_str(&format!(
            "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"3\" fill=\"{}\"/>\n",
            state_color(s.state)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
