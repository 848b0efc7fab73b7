//! Tendon routing: a single cable is threaded through the net so that every
//! cable segment is traversed exactly once, i.e. an Euler circuit of the
//! connection multigraph. Hierholzer's algorithm constructs one; the
//! validator checks an arbitrary walk against a net.

use crate::formfind::CableNet;
use crate::formfind::VertexId;
use crate::model::Link;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RoutingError {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("no Euler circuit: odd-degree vertices {0:?}")]
    OddDegreeVertices(Vec<String>),
    #[error("no Euler circuit: graph is disconnected")]
    Disconnected,
}

/// An ordered tendon walk over net vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoutingPath {
    pub vertices: Vec<VertexId>,
}

impl RoutingPath {
    /// Parses a whitespace- or `->`-separated vertex sequence like
    /// `A1 -> C2 -> B1`.
    pub fn parse(text: &str) -> Option<Self> {
        let vertices: Option<Vec<VertexId>> = text
            .split(|c: char| c.is_whitespace() || c == '-' || c == '>')
            .filter(|t| !t.is_empty())
            .map(VertexId::parse)
            .collect();
        let vertices = vertices?;
        if vertices.is_empty() {
            return None;
        }
        Some(Self { vertices })
    }
}

impl fmt::Display for RoutingPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", labels.join(" -> "))
    }
}

/// Hierholzer's algorithm on an undirected multigraph given as an edge list.
/// Starts at the lowest-index vertex with nonzero degree; deterministic for
/// a fixed edge order. The circuit revisits the start, so the result has
/// `edges.len() + 1` entries.
pub fn euler_circuit_on_edges(
    vertex_count: usize,
    edges: &[(usize, usize)],
) -> Result<Vec<usize>, RoutingError> {
    if edges.is_empty() {
        return Err(RoutingError::EmptyGraph);
    }
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertex_count];
    for (id, &(a, b)) in edges.iter().enumerate() {
        adjacency[a].push((b, id));
        adjacency[b].push((a, id));
    }
    let odd: Vec<String> = (0..vertex_count)
        .filter(|&v| adjacency[v].len() % 2 == 1)
        .map(|v| format!("v{v}"))
        .collect();
    if !odd.is_empty() {
        return Err(RoutingError::OddDegreeVertices(odd));
    }
    let start = (0..vertex_count)
        .find(|&v| !adjacency[v].is_empty())
        .expect("nonempty edge list has an incident vertex");

    let mut cursor = vec![0usize; vertex_count];
    let mut used = vec![false; edges.len()];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(edges.len() + 1);
    while let Some(&v) = stack.last() {
        while cursor[v] < adjacency[v].len() && used[adjacency[v][cursor[v]].1] {
            cursor[v] += 1;
        }
        if cursor[v] == adjacency[v].len() {
            circuit.push(v);
            stack.pop();
        } else {
            let (next, id) = adjacency[v][cursor[v]];
            used[id] = true;
            stack.push(next);
        }
    }
    if circuit.len() != edges.len() + 1 {
        return Err(RoutingError::Disconnected);
    }
    circuit.reverse();
    Ok(circuit)
}

/// Euler circuit of a cable net, starting at `A1` when it has cables (the
/// lowest vertex in the canonical A1..D2 order otherwise).
pub fn euler_circuit(net: &CableNet) -> Result<RoutingPath, RoutingError> {
    let edges: Vec<(usize, usize)> = net
        .edges
        .iter()
        .map(|e| {
            (
                CableNet::vertex_index(VertexId {
                    link: Link::L1,
                    anchor: e.link1_anchor,
                }),
                CableNet::vertex_index(VertexId {
                    link: Link::L2,
                    anchor: e.link2_anchor,
                }),
            )
        })
        .collect();
    let labels = CableNet::vertices();
    let circuit = euler_circuit_on_edges(8, &edges).map_err(|e| match e {
        RoutingError::OddDegreeVertices(odd) => RoutingError::OddDegreeVertices(
            odd.iter()
                .map(|s| labels[s[1..].parse::<usize>().unwrap()].to_string())
                .collect(),
        ),
        other => other,
    })?;
    Ok(RoutingPath {
        vertices: circuit.into_iter().map(|v| labels[v]).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RoutingViolation {
    /// The walk does not return to its starting vertex.
    NotClosed { first: String, last: String },
    /// Consecutive vertices are not joined by any cable of the net.
    NotAnEdge {
        position: usize,
        from: String,
        to: String,
    },
    /// A cable is traversed more often than the net contains it.
    EdgeOverused { from: String, to: String, used: usize, available: usize },
    /// A cable is never traversed.
    EdgeMissing { from: String, to: String, missing: usize },
    /// Vertex count does not match one-more-than-the-edge-count.
    WrongLength { expected: usize, actual: usize },
}

/// Validation outcome; `pass` is true exactly when no violation was found.
#[derive(Clone, Debug, Serialize)]
pub struct RoutingReport {
    pub pass: bool,
    pub violations: Vec<RoutingViolation>,
}

/// Checks that `path` is a closed walk over `net` using every cable exactly
/// once. All violations are collected, none abort the check.
pub fn validate_routing(path: &RoutingPath, net: &CableNet) -> RoutingReport {
    let mut violations = Vec::new();
    let expected_len = net.edges.len() + 1;
    if path.vertices.len() != expected_len {
        violations.push(RoutingViolation::WrongLength {
            expected: expected_len,
            actual: path.vertices.len(),
        });
    }
    if let (Some(first), Some(last)) = (path.vertices.first(), path.vertices.last()) {
        if first != last {
            violations.push(RoutingViolation::NotClosed {
                first: first.to_string(),
                last: last.to_string(),
            });
        }
    }

    // multiset of available cables keyed by (link1 anchor, link2 anchor)
    let mut available: HashMap<(u8, u8), usize> = HashMap::new();
    for e in &net.edges {
        *available
            .entry((e.link1_anchor.index() as u8, e.link2_anchor.index() as u8))
            .or_insert(0) += 1;
    }
    let mut used: HashMap<(u8, u8), usize> = HashMap::new();
    for (position, pair) in path.vertices.windows(2).enumerate() {
        let (a, b) = (pair[0], pair[1]);
        if a.link == b.link {
            violations.push(RoutingViolation::NotAnEdge {
                position,
                from: a.to_string(),
                to: b.to_string(),
            });
            continue;
        }
        let key = if a.link == Link::L1 {
            (a.anchor.index() as u8, b.anchor.index() as u8)
        } else {
            (b.anchor.index() as u8, a.anchor.index() as u8)
        };
        match available.get(&key) {
            None => violations.push(RoutingViolation::NotAnEdge {
                position,
                from: a.to_string(),
                to: b.to_string(),
            }),
            Some(&avail) => {
                let count = used.entry(key).or_insert(0);
                *count += 1;
                if *count == avail + 1 {
                    // report once, at the first excess traversal
                    violations.push(RoutingViolation::EdgeOverused {
                        from: a.to_string(),
                        to: b.to_string(),
                        used: *count,
                        available: avail,
                    });
                }
            }
        }
    }
    for (&key, &avail) in &available {
        let u = used.get(&key).copied().unwrap_or(0);
        if u < avail {
            let from = VertexId {
                link: Link::L1,
                anchor: crate::formfind::ALL_ANCHORS[key.0 as usize],
            };
            let to = VertexId {
                link: Link::L2,
                anchor: crate::formfind::ALL_ANCHORS[key.1 as usize],
            };
            violations.push(RoutingViolation::EdgeMissing {
                from: from.to_string(),
                to: to.to_string(),
                missing: avail - u,
            });
        }
    }
    violations.sort_by_key(|v| format!("{v:?}"));
    RoutingReport {
        pass: violations.is_empty(),
        violations,
    }
}
