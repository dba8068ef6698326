//! Structural predicates on supergrid graphs: linear convexity,
//! connectivity, 2-connectivity and local connectivity.
//!
//! Conventions for degenerate inputs: the empty graph is connected but not
//! 2-connected, and empty or single-vertex neighborhoods count as connected.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::grid::{Point, SupergridGraph};

/// The four families of lattice lines that carry supergrid edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineDirection {
    Horizontal,
    Vertical,
    /// Up-left to down-right.
    Diagonal,
    /// Up-right to down-left.
    Antidiagonal,
}

impl LineDirection {
    pub const ALL: [LineDirection; 4] = [
        LineDirection::Horizontal,
        LineDirection::Vertical,
        LineDirection::Diagonal,
        LineDirection::Antidiagonal,
    ];

    /// Unit step along the line, in increasing run parameter.
    pub const fn step(self) -> (i32, i32) {
        match self {
            LineDirection::Horizontal => (1, 0),
            LineDirection::Vertical => (0, 1),
            LineDirection::Diagonal => (1, 1),
            LineDirection::Antidiagonal => (1, -1),
        }
    }

    pub fn key(self, p: Point) -> LineKey {
        let index = match self {
            LineDirection::Horizontal => p.y,
            LineDirection::Vertical => p.x,
            LineDirection::Diagonal => p.y - p.x,
            LineDirection::Antidiagonal => p.y + p.x,
        };
        LineKey {
            direction: self,
            index,
        }
    }

    /// Position of `p` along its line of this direction.
    pub fn parameter(self, p: Point) -> i32 {
        match self {
            LineDirection::Vertical => p.y,
            _ => p.x,
        }
    }
}

/// Identifies one lattice line: its direction plus the coordinate
/// combination that is constant along it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineKey {
    pub direction: LineDirection,
    pub index: i32,
}

/// Two consecutive graph vertices on one line with at least one lattice
/// point missing between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineGap {
    pub line: LineKey,
    pub first: Point,
    pub second: Point,
    /// The lattice point right after `first` on the line; not a vertex.
    pub missing: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    Connected,
    TwoConnected,
    LinearConvex,
    LocallyConnected,
}

impl Predicate {
    pub const ALL: [Predicate; 4] = [
        Predicate::Connected,
        Predicate::TwoConnected,
        Predicate::LinearConvex,
        Predicate::LocallyConnected,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Predicate::Connected => "connected",
            Predicate::TwoConnected => "two_connected",
            Predicate::LinearConvex => "linear_convex",
            Predicate::LocallyConnected => "locally_connected",
        }
    }

    pub fn holds(self, g: &SupergridGraph) -> bool {
        match self {
            Predicate::Connected => is_connected(g),
            Predicate::TwoConnected => is_two_connected(g),
            Predicate::LinearConvex => is_linear_convex(g),
            Predicate::LocallyConnected => is_locally_connected(g),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown predicate `{s}`"))
    }
}

/// First gap found by bucketing vertices per line and scanning each sorted
/// bucket. Lines are visited in (direction, index) order.
pub fn linear_convexity_violation(g: &SupergridGraph) -> Option<LineGap> {
    for dir in LineDirection::ALL {
        let mut lines: BTreeMap<i32, Vec<Point>> = BTreeMap::new();
        for &v in g.vertices() {
            lines.entry(dir.key(v).index).or_default().push(v);
        }
        for (index, mut run) in lines {
            run.sort_unstable_by_key(|p| dir.parameter(*p));
            for pair in run.windows(2) {
                if dir.parameter(pair[1]) - dir.parameter(pair[0]) > 1 {
                    let (dx, dy) = dir.step();
                    return Some(LineGap {
                        line: LineKey {
                            direction: dir,
                            index,
                        },
                        first: pair[0],
                        second: pair[1],
                        missing: pair[0].translate(dx, dy),
                    });
                }
            }
        }
    }
    None
}

pub fn is_linear_convex(g: &SupergridGraph) -> bool {
    linear_convexity_violation(g).is_none()
}

fn reachable_count(adj: &[Vec<usize>], start: usize, skip: Option<usize>) -> usize {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    if let Some(s) = skip {
        seen[s] = true;
    }
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &n in &adj[v] {
            if !seen[n] {
                seen[n] = true;
                count += 1;
                queue.push_back(n);
            }
        }
    }
    count
}

pub fn is_connected(g: &SupergridGraph) -> bool {
    if g.len() <= 1 {
        return true;
    }
    reachable_count(&g.adjacency_lists(), 0, None) == g.len()
}

/// Articulation vertices in row-major order (iterative lowpoint DFS).
pub fn articulation_points(g: &SupergridGraph) -> Vec<Point> {
    let adj = g.adjacency_lists();
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor slot)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(frame) = stack.last_mut() {
            let (v, parent, slot) = *frame;
            if slot < adj[v].len() {
                frame.2 += 1;
                let w = adj[v][slot];
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }

    g.vertices()
        .iter()
        .zip(is_cut)
        .filter_map(|(p, cut)| cut.then_some(*p))
        .collect()
}

pub fn is_two_connected(g: &SupergridGraph) -> bool {
    g.len() >= 3 && is_connected(g) && articulation_points(g).is_empty()
}

/// Whether the subgraph induced by the neighbors of `v` is connected.
pub fn is_vertex_locally_connected(g: &SupergridGraph, v: Point) -> bool {
    let hood: Vec<Point> = g.neighbors_unchecked(v).collect();
    if hood.len() <= 1 {
        return true;
    }
    // At most eight points: plain flood fill over the slice.
    let mut seen = vec![false; hood.len()];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in 0..hood.len() {
            if !seen[j] && crate::grid::adjacent(hood[i], hood[j]) {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == hood.len()
}

/// First vertex (row-major) whose neighborhood is disconnected.
pub fn local_connectivity_violation(g: &SupergridGraph) -> Option<Point> {
    g.vertices()
        .iter()
        .copied()
        .find(|v| !is_vertex_locally_connected(g, *v))
}

pub fn is_locally_connected(g: &SupergridGraph) -> bool {
    local_connectivity_violation(g).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalWitness {
    pub vertex: Point,
    pub neighborhood: Vec<Point>,
}

/// Witnesses for every failing predicate that has one.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationWitness {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub connected: Option<Point>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub two_connected: Option<Point>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub linear_convex: Option<LineGap>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub locally_connected: Option<LocalWitness>,
}

impl ViolationWitness {
    fn is_empty(&self) -> bool {
        self.connected.is_none()
            && self.two_connected.is_none()
            && self.linear_convex.is_none()
            && self.locally_connected.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub vertex_count: usize,
    pub connected: bool,
    pub two_connected: bool,
    pub linear_convex: bool,
    pub locally_connected: bool,
    pub violation_witness: Option<ViolationWitness>,
}

pub fn classify(g: &SupergridGraph) -> ClassificationReport {
    let connected = is_connected(g);
    let cut = if connected {
        articulation_points(g).first().copied()
    } else {
        None
    };
    let two_connected = connected && g.len() >= 3 && cut.is_none();
    let gap = linear_convexity_violation(g);
    let local = local_connectivity_violation(g);

    let witness = ViolationWitness {
        // a vertex unreachable from the first one
        connected: if connected {
            None
        } else {
            let adj = g.adjacency_lists();
            let mut seen = vec![false; adj.len()];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen.iter().position(|s| !s).map(|i| g.vertices()[i])
        },
        two_connected: cut,
        linear_convex: gap,
        locally_connected: local.map(|vertex| LocalWitness {
            vertex,
            neighborhood: g.neighbors_unchecked(vertex).collect(),
        }),
    };

    ClassificationReport {
        vertex_count: g.len(),
        connected,
        two_connected,
        linear_convex: gap.is_none(),
        locally_connected: local.is_none(),
        violation_witness: (!witness.is_empty()).then_some(witness),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{block, graph_of};

    fn p(x: i32, y: i32) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn block_is_linear_convex() {
        assert!(is_linear_convex(&block(2, 2)));
        assert!(is_linear_convex(&graph_of(&[])));
        assert!(is_linear_convex(&graph_of(&[(4, 4)])));
    }

    #[test]
    fn horizontal_gap_is_reported() {
        let gap = linear_convexity_violation(&graph_of(&[(0, 0), (2, 0), (1, 1)])).unwrap();
        assert_eq!(
            gap.line,
            LineKey {
                direction: LineDirection::Horizontal,
                index: 0
            }
        );
        assert_eq!(
            (gap.first, gap.second, gap.missing),
            (p(0, 0), p(2, 0), p(1, 0))
        );
    }

    #[test]
    fn antidiagonal_gap_is_reported() {
        // (0,2) and (2,0) share y+x = 2; (1,1) is missing.
        let gap = linear_convexity_violation(&graph_of(&[(0, 2), (2, 0)])).unwrap();
        assert_eq!(gap.line.direction, LineDirection::Antidiagonal);
        assert_eq!(gap.missing, p(1, 1));
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_connected(&graph_of(&[(0, 0), (1, 1)])));
        assert!(!is_connected(&graph_of(&[(0, 0), (2, 2)])));
        assert!(is_connected(&graph_of(&[])));
    }

    #[test]
    fn two_connectivity_examples() {
        assert!(is_two_connected(&block(2, 2)));
        let path = graph_of(&[(0, 0), (1, 0), (2, 0)]);
        assert!(!is_two_connected(&path));
        assert_eq!(articulation_points(&path), vec![p(1, 0)]);
        assert!(!is_two_connected(&graph_of(&[(0, 0), (1, 0)])));
        assert!(!is_two_connected(&graph_of(&[])));
    }

    #[test]
    fn bowtie_has_one_articulation_point() {
        let g = graph_of(&[(0, 0), (0, 1), (1, 1), (2, 1), (2, 2)]);
        // (1,1) joins two triangles; (0,0)-(0,1)-(1,1) and (1,1)-(2,1)-(2,2)
        assert_eq!(articulation_points(&g), vec![p(1, 1)]);
    }

    #[test]
    fn local_connectivity_examples() {
        assert!(is_locally_connected(&block(2, 2)));
        let path = graph_of(&[(0, 0), (1, 0), (2, 0)]);
        assert_eq!(local_connectivity_violation(&path), Some(p(1, 0)));
        assert!(is_locally_connected(&block(3, 3)));
    }

    #[test]
    fn classify_block() {
        let r = classify(&block(2, 2));
        assert_eq!(
            r,
            ClassificationReport {
                vertex_count: 4,
                connected: true,
                two_connected: true,
                linear_convex: true,
                locally_connected: true,
                violation_witness: None,
            }
        );
    }

    #[test]
    fn classify_empty_uses_conventions() {
        let r = classify(&graph_of(&[]));
        assert_eq!(
            (
                r.vertex_count,
                r.connected,
                r.two_connected,
                r.linear_convex,
                r.locally_connected
            ),
            (0, true, false, true, true)
        );
        assert!(r.violation_witness.is_none());
    }

    #[test]
    fn classify_gap_graph() {
        let r = classify(&graph_of(&[(0, 0), (2, 0), (1, 1)]));
        assert!(!r.linear_convex);
        let w = r.violation_witness.unwrap();
        assert_eq!(w.linear_convex.unwrap().missing, p(1, 0));
    }

    #[test]
    fn classify_disconnected_names_unreachable_vertex() {
        let r = classify(&graph_of(&[(0, 0), (3, 0)]));
        assert!(!r.connected && !r.two_connected);
        assert_eq!(r.violation_witness.unwrap().connected, Some(p(3, 0)));
    }

    #[test]
    fn predicate_names_round_trip() {
        for pr in Predicate::ALL {
            assert_eq!(pr.name().parse::<Predicate>().unwrap(), pr);
        }
        assert!("planar".parse::<Predicate>().is_err());
    }
}
