//! Lattice points, the eight supergrid directions and finite vertex-induced
//! subgraphs of the infinite supergrid.
//!
//! Adjacency is never stored. Two distinct points are adjacent when both
//! coordinate differences are at most one (king moves), so every query is a
//! membership test on an offset point.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported absolute coordinate. Offsets and symmetry images of
/// points inside this range never overflow `i32`.
pub const COORD_LIMIT: i32 = 1 << 30;

/// Integer lattice point. The y axis grows downward.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const fn new(x: i32, y: i32) -> Self {
        Point { x, y }
    }

    pub fn step(self, dir: Direction) -> Point {
        let (dx, dy) = dir.offset();
        Point::new(self.x + dx, self.y + dy)
    }

    pub fn translate(self, dx: i32, dy: i32) -> Point {
        Point::new(self.x + dx, self.y + dy)
    }

    /// The direction leading from `self` to `other`, if they are adjacent.
    pub fn direction_to(self, other: Point) -> Option<Direction> {
        Direction::ALL.into_iter().find(|d| self.step(*d) == other)
    }
}

// Row-major: y first, then x.
impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i32, i32)> for Point {
    fn from((x, y): (i32, i32)) -> Self {
        Point::new(x, y)
    }
}

impl From<Point> for (i32, i32) {
    fn from(p: Point) -> Self {
        (p.x, p.y)
    }
}

/// True iff `u` and `v` are distinct and differ by at most one in each
/// coordinate.
#[inline]
pub fn adjacent(u: Point, v: Point) -> bool {
    u != v && (u.x - v.x).abs() <= 1 && (u.y - v.y).abs() <= 1
}

/// The eight neighbor directions, in the fixed order used everywhere a
/// neighbor list is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    UpLeft,
    Up,
    UpRight,
    Left,
    Right,
    DownLeft,
    Down,
    DownRight,
}

impl Direction {
    pub const ALL: [Direction; 8] = [
        Direction::UpLeft,
        Direction::Up,
        Direction::UpRight,
        Direction::Left,
        Direction::Right,
        Direction::DownLeft,
        Direction::Down,
        Direction::DownRight,
    ];

    pub const fn offset(self) -> (i32, i32) {
        match self {
            Direction::UpLeft => (-1, -1),
            Direction::Up => (0, -1),
            Direction::UpRight => (1, -1),
            Direction::Left => (-1, 0),
            Direction::Right => (1, 0),
            Direction::DownLeft => (-1, 1),
            Direction::Down => (0, 1),
            Direction::DownRight => (1, 1),
        }
    }

    pub const fn opposite(self) -> Direction {
        match self {
            Direction::UpLeft => Direction::DownRight,
            Direction::Up => Direction::Down,
            Direction::UpRight => Direction::DownLeft,
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
            Direction::DownLeft => Direction::UpRight,
            Direction::Down => Direction::Up,
            Direction::DownRight => Direction::UpLeft,
        }
    }

    pub const fn label(self) -> &'static str {
        match self {
            Direction::UpLeft => "UL",
            Direction::Up => "U",
            Direction::UpRight => "UR",
            Direction::Left => "L",
            Direction::Right => "R",
            Direction::DownLeft => "DL",
            Direction::Down => "D",
            Direction::DownRight => "DR",
        }
    }
}

/// One of the eight symmetries of the square, acting on lattice points about
/// the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Identity,
    Rotate90,
    Rotate180,
    Rotate270,
    FlipX,
    FlipY,
    Transpose,
    AntiTranspose,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Rotate90,
        Symmetry::Rotate180,
        Symmetry::Rotate270,
        Symmetry::FlipX,
        Symmetry::FlipY,
        Symmetry::Transpose,
        Symmetry::AntiTranspose,
    ];

    pub fn apply(self, p: Point) -> Point {
        let Point { x, y } = p;
        match self {
            Symmetry::Identity => Point::new(x, y),
            Symmetry::Rotate90 => Point::new(-y, x),
            Symmetry::Rotate180 => Point::new(-x, -y),
            Symmetry::Rotate270 => Point::new(y, -x),
            Symmetry::FlipX => Point::new(-x, y),
            Symmetry::FlipY => Point::new(x, -y),
            Symmetry::Transpose => Point::new(y, x),
            Symmetry::AntiTranspose => Point::new(-y, -x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("vertex {0} is not in the graph")]
    VertexNotInGraph(Point),
}

/// Inclusive bounding box of a non-empty vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundingBox {
    pub min_x: i32,
    pub min_y: i32,
    pub max_x: i32,
    pub max_y: i32,
}

impl BoundingBox {
    pub fn width(&self) -> i32 {
        self.max_x - self.min_x + 1
    }

    pub fn height(&self) -> i32 {
        self.max_y - self.min_y + 1
    }
}

/// A finite vertex-induced subgraph of the infinite supergrid.
///
/// Vertices are kept sorted in row-major order; `index_of` gives the
/// position of a vertex in that order, which algorithms use as a dense id.
#[derive(Clone, Default)]
pub struct SupergridGraph {
    vertices: Vec<Point>,
    index: HashMap<Point, usize>,
    bounds: Option<BoundingBox>,
}

impl SupergridGraph {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_points<I>(points: I) -> Self
    where
        I: IntoIterator<Item = Point>,
    {
        let mut vertices: Vec<Point> = points.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        let index = vertices.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let bounds = vertices.first().map(|first| {
            vertices.iter().fold(
                BoundingBox {
                    min_x: first.x,
                    min_y: first.y,
                    max_x: first.x,
                    max_y: first.y,
                },
                |b, p| BoundingBox {
                    min_x: b.min_x.min(p.x),
                    min_y: b.min_y.min(p.y),
                    max_x: b.max_x.max(p.x),
                    max_y: b.max_y.max(p.y),
                },
            )
        });
        SupergridGraph {
            vertices,
            index,
            bounds,
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        self.index.contains_key(&p)
    }

    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn bounds(&self) -> Option<BoundingBox> {
        self.bounds
    }

    /// Neighbors of `v` in direction order UL, U, UR, L, R, DL, D, DR.
    pub fn neighbors(&self, v: Point) -> Result<Vec<Point>, GridError> {
        if !self.contains(v) {
            return Err(GridError::VertexNotInGraph(v));
        }
        Ok(self.neighbors_unchecked(v).collect())
    }

    /// Neighbors of any lattice point, member or not.
    pub fn neighbors_unchecked(&self, v: Point) -> impl Iterator<Item = Point> + '_ {
        Direction::ALL
            .into_iter()
            .map(move |d| v.step(d))
            .filter(move |p| self.contains(*p))
    }

    pub fn degree(&self, v: Point) -> Result<usize, GridError> {
        if !self.contains(v) {
            return Err(GridError::VertexNotInGraph(v));
        }
        Ok(self.neighbors_unchecked(v).count())
    }

    /// The subgraph induced by the neighbors of `v`.
    pub fn induced_neighborhood(&self, v: Point) -> Result<SupergridGraph, GridError> {
        self.neighbors(v).map(SupergridGraph::from_points)
    }

    /// The subgraph induced by the given vertices (non-members are ignored).
    pub fn induced(&self, keep: impl IntoIterator<Item = Point>) -> SupergridGraph {
        SupergridGraph::from_points(keep.into_iter().filter(|p| self.contains(*p)))
    }

    pub fn translated(&self, dx: i32, dy: i32) -> SupergridGraph {
        SupergridGraph::from_points(self.vertices.iter().map(|p| p.translate(dx, dy)))
    }

    pub fn transformed(&self, sym: Symmetry) -> SupergridGraph {
        SupergridGraph::from_points(self.vertices.iter().map(|p| sym.apply(*p)))
    }

    /// Translate so the bounding box corner sits at the origin.
    pub fn normalized(&self) -> SupergridGraph {
        match self.bounds {
            Some(b) => self.translated(-b.min_x, -b.min_y),
            None => SupergridGraph::empty(),
        }
    }

    /// Adjacency lists over dense vertex ids, for traversal-heavy algorithms.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        self.vertices
            .iter()
            .map(|v| {
                self.neighbors_unchecked(*v)
                    .map(|n| self.index[&n])
                    .collect()
            })
            .collect()
    }
}

impl PartialEq for SupergridGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for SupergridGraph {}

impl std::hash::Hash for SupergridGraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
    }
}

impl fmt::Debug for SupergridGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices.iter()).finish()
    }
}

impl FromIterator<Point> for SupergridGraph {
    fn from_iter<T: IntoIterator<Item = Point>>(iter: T) -> Self {
        SupergridGraph::from_points(iter)
    }
}

/// Shorthand used heavily in tests: build a graph from coordinate pairs.
pub fn graph_of(coords: &[(i32, i32)]) -> SupergridGraph {
    SupergridGraph::from_points(coords.iter().map(|&c| Point::from(c)))
}

/// The full `width` x `height` block anchored at the origin.
pub fn block(width: i32, height: i32) -> SupergridGraph {
    SupergridGraph::from_points((0..height).flat_map(|y| (0..width).map(move |x| Point::new(x, y))))
}
