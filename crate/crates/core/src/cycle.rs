//! Simple paths and cycles over a supergrid graph, and the four merge
//! observations used as building blocks by the extension engine:
//! vertex insertion, cycle/path concatenation, concatenation of two
//! disjoint cycles across a pair of parallel edges, and concatenation of
//! two cycles through a shared vertex.
//!
//! When several edges qualify for a merge, the first one in traversal
//! order from `verts[0]` is used.

use std::collections::HashSet;

use thiserror::Error;

use crate::grid::{adjacent, Point, SupergridGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("vertex {0} is not in the graph")]
    NotInGraph(Point),
    #[error("a cycle needs at least 3 vertices, got {0}")]
    TooShort(usize),
    #[error("a path needs at least one vertex")]
    EmptyPath,
    #[error("vertex {0} appears more than once")]
    RepeatedVertex(Point),
    #[error("consecutive vertices {0} and {1} are not adjacent")]
    NotAdjacent(Point, Point),
    #[error("vertex {0} is already on the cycle")]
    AlreadyOnCycle(Point),
    #[error("operands share vertex {0}")]
    Overlap(Point),
    #[error("no cycle edge has both ends adjacent to {0}")]
    NoInsertionEdge(Point),
    #[error("no cycle edge can host the path ends")]
    NoConcatenationEdge,
    #[error("no pair of cycle edges bridges the two cycles")]
    NoBridgeEdges,
    #[error("cycles must share exactly one vertex, they share {0}")]
    NoSharedVertex(usize),
    #[error("no pair of edges at the shared vertex has adjacent far ends")]
    NoPivotEdge,
}

fn check_simple(verts: &[Point]) -> Result<(), CycleError> {
    let mut seen = HashSet::with_capacity(verts.len());
    for v in verts {
        if !seen.insert(*v) {
            return Err(CycleError::RepeatedVertex(*v));
        }
    }
    for w in verts.windows(2) {
        if !adjacent(w[0], w[1]) {
            return Err(CycleError::NotAdjacent(w[0], w[1]));
        }
    }
    Ok(())
}

fn check_members(g: &SupergridGraph, verts: &[Point]) -> Result<(), CycleError> {
    match verts.iter().find(|v| !g.contains(**v)) {
        Some(v) => Err(CycleError::NotInGraph(*v)),
        None => Ok(()),
    }
}

/// A simple path: distinct vertices, consecutive ones adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathSeq {
    verts: Vec<Point>,
}

impl PathSeq {
    pub fn new(verts: Vec<Point>) -> Result<Self, CycleError> {
        if verts.is_empty() {
            return Err(CycleError::EmptyPath);
        }
        check_simple(&verts)?;
        Ok(PathSeq { verts })
    }

    pub fn verts(&self) -> &[Point] {
        &self.verts
    }

    pub fn start(&self) -> Point {
        self.verts[0]
    }

    pub fn end(&self) -> Point {
        *self.verts.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn reverse_path(p: &PathSeq) -> PathSeq {
    let mut verts = p.verts.clone();
    verts.reverse();
    PathSeq { verts }
}

/// A vertex sequence read as a closed tour. Construct with [`Cycle::new`]
/// to enforce the simple-cycle invariants, or [`Cycle::from_unchecked`] to
/// hold arbitrary input for later validation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    verts: Vec<Point>,
}

impl Cycle {
    pub fn new(verts: Vec<Point>) -> Result<Self, CycleError> {
        if verts.len() < 3 {
            return Err(CycleError::TooShort(verts.len()));
        }
        check_simple(&verts)?;
        let (first, last) = (verts[0], verts[verts.len() - 1]);
        if !adjacent(first, last) {
            return Err(CycleError::NotAdjacent(last, first));
        }
        Ok(Cycle { verts })
    }

    pub fn from_unchecked(verts: Vec<Point>) -> Self {
        Cycle { verts }
    }

    /// Build and check against a host graph.
    pub fn in_graph(g: &SupergridGraph, verts: Vec<Point>) -> Result<Self, CycleError> {
        let c = Cycle::new(verts)?;
        check_members(g, &c.verts)?;
        Ok(c)
    }

    pub fn verts(&self) -> &[Point] {
        &self.verts
    }

    pub fn into_verts(self) -> Vec<Point> {
        self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.verts.contains(&p)
    }

    pub fn position(&self, p: Point) -> Option<usize> {
        self.verts.iter().position(|v| *v == p)
    }

    /// Cycle edges `(verts[i], verts[i+1])` in traversal order, closing edge last.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.verts.len();
        (0..n).map(move |i| (self.verts[i], self.verts[(i + 1) % n]))
    }

    /// Same cycle read from `verts[start]` onward.
    pub fn rotated(&self, start: usize) -> Cycle {
        let mut verts = self.verts.clone();
        verts.rotate_left(start);
        Cycle { verts }
    }

    /// Same cycle traversed backwards, keeping `verts[0]` first.
    pub fn reversed(&self) -> Cycle {
        let mut verts = self.verts.clone();
        verts[1..].reverse();
        Cycle { verts }
    }

    /// Representative of the rotation/reversal class: smallest vertex first,
    /// then the smaller of its two cycle neighbors.
    pub fn canonical(&self) -> Cycle {
        if self.verts.is_empty() {
            return self.clone();
        }
        let (start, _) = self
            .verts
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .unwrap();
        let c = self.rotated(start);
        if c.verts.len() > 2 && c.verts[c.verts.len() - 1] < c.verts[1] {
            c.reversed()
        } else {
            c
        }
    }

    pub fn equivalent(&self, other: &Cycle) -> bool {
        self.canonical() == other.canonical()
    }
}

/// True iff `c` is a simple cycle of at least 3 vertices, all in `g`.
pub fn validate_cycle(g: &SupergridGraph, c: &Cycle) -> bool {
    Cycle::in_graph(g, c.verts.clone()).is_ok()
}

fn require_valid(g: &SupergridGraph, c: &Cycle) -> Result<(), CycleError> {
    Cycle::in_graph(g, c.verts.clone()).map(|_| ())
}

/// Splice `x` into the first cycle edge whose ends are both adjacent to it.
pub fn insert_vertex(g: &SupergridGraph, c: &Cycle, x: Point) -> Result<Cycle, CycleError> {
    require_valid(g, c)?;
    if !g.contains(x) {
        return Err(CycleError::NotInGraph(x));
    }
    if c.contains(x) {
        return Err(CycleError::AlreadyOnCycle(x));
    }
    let i = c
        .edges()
        .position(|(u, v)| adjacent(u, x) && adjacent(v, x))
        .ok_or(CycleError::NoInsertionEdge(x))?;
    let mut verts = c.verts.clone();
    verts.insert(i + 1, x);
    Cycle::in_graph(g, verts)
}

/// Splice path `p` into the first cycle edge `(u, v)` with `u ~ start(p)`
/// and `v ~ end(p)`, trying `p` forward before `rev(p)` on each edge.
pub fn concat_cycle_path(g: &SupergridGraph, c: &Cycle, p: &PathSeq) -> Result<Cycle, CycleError> {
    require_valid(g, c)?;
    check_members(g, p.verts())?;
    if let Some(v) = p.verts().iter().find(|v| c.contains(**v)) {
        return Err(CycleError::Overlap(*v));
    }
    for (i, (u, v)) in c.edges().enumerate() {
        let piece = if adjacent(u, p.start()) && adjacent(v, p.end()) {
            p.verts().to_vec()
        } else if adjacent(u, p.end()) && adjacent(v, p.start()) {
            reverse_path(p).verts
        } else {
            continue;
        };
        let mut verts = c.verts[..=i].to_vec();
        verts.extend(piece);
        verts.extend_from_slice(&c.verts[i + 1..]);
        return Cycle::in_graph(g, verts);
    }
    Err(CycleError::NoConcatenationEdge)
}

/// Walk `c` starting at index `from`, stepping forward or backward, for all
/// `len` vertices.
fn walk(c: &[Point], from: usize, forward: bool) -> impl Iterator<Item = Point> + '_ {
    let n = c.len();
    (0..n).map(move |s| {
        let i = if forward {
            (from + s) % n
        } else {
            (from + n - s) % n
        };
        c[i]
    })
}

/// Orientations of every cycle edge, in traversal order:
/// `(index_of_a, index_of_b)` with `b` the next or previous vertex.
fn oriented_edges(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| [(i, (i + 1) % n), ((i + 1) % n, i)])
}

/// Join disjoint cycles through edges `(u1, v1)` of `c1` and `(u2, v2)` of
/// `c2` with `u1 ~ u2` and `v1 ~ v2`: drop both edges and reconnect.
pub fn concat_cycles_edges(
    g: &SupergridGraph,
    c1: &Cycle,
    c2: &Cycle,
) -> Result<Cycle, CycleError> {
    require_valid(g, c1)?;
    require_valid(g, c2)?;
    if let Some(v) = c2.verts.iter().find(|v| c1.contains(**v)) {
        return Err(CycleError::Overlap(*v));
    }
    let (a, b) = (&c1.verts, &c2.verts);
    for (iu1, iv1) in oriented_edges(a.len()) {
        for (iu2, iv2) in oriented_edges(b.len()) {
            if !(adjacent(a[iu1], b[iu2]) && adjacent(a[iv1], b[iv2])) {
                continue;
            }
            // c1 from v1 away from u1, ending at u1; then c2 from u2 away
            // from v2, ending at v2; closing edge v2 -> v1.
            let fwd1 = (iv1 + 1) % a.len() != iu1;
            let fwd2 = (iu2 + 1) % b.len() != iv2;
            let mut verts: Vec<Point> = walk(a, iv1, fwd1).collect();
            verts.extend(walk(b, iu2, fwd2));
            return Cycle::in_graph(g, verts);
        }
    }
    Err(CycleError::NoBridgeEdges)
}

/// Join two cycles sharing exactly one vertex `v` through edges `(u, v)` of
/// `c1` and `(w, v)` of `c2` with `u ~ w`.
pub fn concat_cycles_shared_vertex(
    g: &SupergridGraph,
    c1: &Cycle,
    c2: &Cycle,
) -> Result<Cycle, CycleError> {
    require_valid(g, c1)?;
    require_valid(g, c2)?;
    let shared: Vec<Point> = c1
        .verts
        .iter()
        .copied()
        .filter(|v| c2.contains(*v))
        .collect();
    if shared.len() != 1 {
        return Err(CycleError::NoSharedVertex(shared.len()));
    }
    let v = shared[0];
    let (a, b) = (&c1.verts, &c2.verts);
    let iv1 = c1.position(v).unwrap();
    let iv2 = c2.position(v).unwrap();
    let (n1, n2) = (a.len(), b.len());
    // neighbors of v along each cycle, in traversal order of the incident edges
    let around1 = [(iv1 + n1 - 1) % n1, (iv1 + 1) % n1];
    let around2 = [(iv2 + n2 - 1) % n2, (iv2 + 1) % n2];
    for iu in around1 {
        for iw in around2 {
            if !adjacent(a[iu], b[iw]) {
                continue;
            }
            // c1 from v away from u, ending at u; then c2 from w away from
            // v, stopping before v comes round again.
            let fwd1 = (iv1 + 1) % n1 != iu;
            let fwd2 = (iw + 1) % n2 != iv2;
            let mut verts: Vec<Point> = walk(a, iv1, fwd1).collect();
            verts.extend(walk(b, iw, fwd2).take(n2 - 1));
            return Cycle::in_graph(g, verts);
        }
    }
    Err(CycleError::NoPivotEdge)
}
