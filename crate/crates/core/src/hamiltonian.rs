//! Constructive Hamiltonian cycles for 2-connected linear-convex supergrid
//! graphs.
//!
//! Start from a triangle at the smallest vertex and grow the cycle by one
//! vertex per step. Each step runs a prioritized cascade:
//!
//! | rule              | pivots                     | construction                                   |
//! |-------------------|----------------------------|------------------------------------------------|
//! | `DIRECT_INSERT`   | edge `(u1, u2)`            | splice `x` into an edge whose ends both see it |
//! | `CLAIM1_REWIRE`   | `z ~ x`, optional `y`      | bypass, shared-vertex merge, segment reversal, pivot reassembly |
//! | `CLAIM2_REWIRE`   | `z !~ x`, substitute or `y`| substitution of `z`, then pivot reassembly      |
//! | `FALLBACK_SEARCH` | none                       | insertion after at most two segment reversals  |
//!
//! For the rewiring rules `x` is a frontier vertex adjacent to cycle vertex
//! `u1`, and `u2`, `uk` are the cycle neighbors of `u1`. The pivot `z` is
//! taken from `{L(u1), R(u1)} - {u2, uk}` (or the vertical pair `U`/`D` when
//! the figure is rotated), preferring a `z` adjacent to `x`. The cycle is
//! oriented so that `z ~ u2`. A pivot reassembly cuts the cycle at `u1`,
//! `z` and optionally `y` into singleton pivots plus the subpaths between
//! them, then reconnects those pieces together with `x` into one cycle.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{is_linear_convex, is_two_connected, Predicate};
use crate::cycle::{concat_cycles_shared_vertex, validate_cycle, Cycle, CycleError};
use crate::grid::{adjacent, Direction, Point, SupergridGraph};

pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExtensionRule {
    DirectInsert,
    Claim1Rewire,
    Claim2Rewire,
    FallbackSearch,
}

impl ExtensionRule {
    pub const ALL: [ExtensionRule; 4] = [
        ExtensionRule::DirectInsert,
        ExtensionRule::Claim1Rewire,
        ExtensionRule::Claim2Rewire,
        ExtensionRule::FallbackSearch,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            ExtensionRule::DirectInsert => "DIRECT_INSERT",
            ExtensionRule::Claim1Rewire => "CLAIM1_REWIRE",
            ExtensionRule::Claim2Rewire => "CLAIM2_REWIRE",
            ExtensionRule::FallbackSearch => "FALLBACK_SEARCH",
        }
    }
}

impl fmt::Display for ExtensionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which splice produced the extended cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// `x` spliced into one cycle edge.
    Insertion,
    /// `u1 -> x -> z -> u2..u(j-1) -> u(j+1)..uk`, needs `u(j-1) ~ u(j+1)`.
    Bypass,
    /// Triangle `u1 x z` merged with `u2 z u4..uk` at `z`, needs `u2 ~ uk`.
    SharedVertexMerge,
    /// `u1 -> x -> z -> u(j-1)..u2 -> u(j+1)..uk`, needs `u2 ~ u(j+1)`.
    SegmentReversal,
    /// Reconnection of the pieces cut at the pivots.
    PivotReassembly,
    /// Bounded search over segment reversals.
    ReversalSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionStep {
    pub cycle_length_before: usize,
    pub attached_vertex: Point,
    pub rule: ExtensionRule,
    pub anchor_u1: Point,
    pub pivot_z: Option<Point>,
    pub pivot_y: Option<Point>,
    /// Replacement pivot adjacent to `x` used when `z !~ x`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub substitute_z: Option<Point>,
    pub construction: Construction,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleCounts {
    pub direct_insert: u64,
    pub claim1_rewire: u64,
    pub claim2_rewire: u64,
    pub fallback_search: u64,
}

impl RuleCounts {
    pub fn record(&mut self, rule: ExtensionRule) {
        *self.get_mut(rule) += 1;
    }

    pub fn get(&self, rule: ExtensionRule) -> u64 {
        match rule {
            ExtensionRule::DirectInsert => self.direct_insert,
            ExtensionRule::Claim1Rewire => self.claim1_rewire,
            ExtensionRule::Claim2Rewire => self.claim2_rewire,
            ExtensionRule::FallbackSearch => self.fallback_search,
        }
    }

    fn get_mut(&mut self, rule: ExtensionRule) -> &mut u64 {
        match rule {
            ExtensionRule::DirectInsert => &mut self.direct_insert,
            ExtensionRule::Claim1Rewire => &mut self.claim1_rewire,
            ExtensionRule::Claim2Rewire => &mut self.claim2_rewire,
            ExtensionRule::FallbackSearch => &mut self.fallback_search,
        }
    }

    pub fn merge(&mut self, other: &RuleCounts) {
        for rule in ExtensionRule::ALL {
            *self.get_mut(rule) += other.get(rule);
        }
    }

    pub fn total(&self) -> u64 {
        ExtensionRule::ALL.iter().map(|r| self.get(*r)).sum()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionTrace {
    pub steps: Vec<ExtensionStep>,
}

impl ExtensionTrace {
    pub fn rule_counts(&self) -> RuleCounts {
        let mut counts = RuleCounts::default();
        for s in &self.steps {
            counts.record(s.rule);
        }
        counts
    }
}

/// A cycle that no rule could extend; a potential counterexample when the
/// graph is 2-connected and linear-convex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StuckWitness {
    pub graph: Vec<Point>,
    pub cycle: Vec<Point>,
    pub frontier: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HamResult {
    Cycle { cycle: Cycle, trace: ExtensionTrace },
    NoCycleExists(Predicate),
    ExtensionFailed(StuckWitness),
}

impl HamResult {
    pub fn cycle(&self) -> Option<&Cycle> {
        match self {
            HamResult::Cycle { cycle, .. } => Some(cycle),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamError {
    #[error("precondition violated: graph is not {0}")]
    PreconditionViolated(Predicate),
    #[error("cycle already covers every vertex")]
    AlreadyHamiltonian,
    #[error("no vertex outside the cycle is adjacent to it")]
    NoFrontier,
    #[error("extension stuck at frontier vertex {}", .0.frontier)]
    ExtensionStuck(StuckWitness),
    #[error("invalid cycle: {0}")]
    InvalidCycle(#[from] CycleError),
    #[error("graph has {size} vertices, brute force bound is {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrontierOrder {
    /// Smallest frontier vertex first.
    #[default]
    Ascending,
    /// Largest frontier vertex first.
    Descending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionConfig {
    pub frontier_order: FrontierOrder,
    pub allow_fallback: bool,
}

impl Default for ExtensionConfig {
    fn default() -> Self {
        ExtensionConfig {
            frontier_order: FrontierOrder::Ascending,
            allow_fallback: true,
        }
    }
}

/// Triangle on the smallest vertex `u` and the first adjacent pair of its
/// neighbors in direction order.
pub fn seed_cycle(g: &SupergridGraph) -> Result<Cycle, HamError> {
    if !is_two_connected(g) {
        return Err(HamError::PreconditionViolated(Predicate::TwoConnected));
    }
    if !is_linear_convex(g) {
        return Err(HamError::PreconditionViolated(Predicate::LinearConvex));
    }
    let u = g.vertices()[0];
    triangle_at(g, u).ok_or(HamError::PreconditionViolated(Predicate::LocallyConnected))
}

fn triangle_at(g: &SupergridGraph, u: Point) -> Option<Cycle> {
    let hood: Vec<Point> = g.neighbors_unchecked(u).collect();
    for (i, v) in hood.iter().enumerate() {
        for w in &hood[i + 1..] {
            if adjacent(*v, *w) {
                return Some(Cycle::from_unchecked(vec![u, *v, *w]));
            }
        }
    }
    None
}

/// Any short cycle in a 2-connected graph: a triangle if one exists at some
/// vertex, else the smallest vertex closed through a shortest detour.
fn permissive_seed(g: &SupergridGraph) -> Option<Cycle> {
    if let Some(c) = g.vertices().iter().find_map(|u| triangle_at(g, *u)) {
        return Some(c);
    }
    let u = g.vertices()[0];
    let hood: Vec<Point> = g.neighbors_unchecked(u).collect();
    let (start, targets) = hood.split_first()?;
    let targets: HashSet<Point> = targets.iter().copied().collect();
    // BFS from the first neighbor to any other neighbor, avoiding u
    let mut parent = std::collections::HashMap::new();
    parent.insert(*start, *start);
    let mut queue = VecDeque::from([*start]);
    while let Some(v) = queue.pop_front() {
        if targets.contains(&v) {
            let mut path = vec![v];
            let mut cur = v;
            while cur != *start {
                cur = parent[&cur];
                path.push(cur);
            }
            path.push(u);
            return Cycle::new(path).ok();
        }
        for w in g.neighbors_unchecked(v) {
            if w != u && !parent.contains_key(&w) {
                parent.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Grow `c` by one vertex using the default configuration.
pub fn extend_cycle(g: &SupergridGraph, c: &Cycle) -> Result<(Cycle, ExtensionStep), HamError> {
    extend_cycle_with(g, c, &ExtensionConfig::default())
}

pub fn extend_cycle_with(
    g: &SupergridGraph,
    c: &Cycle,
    config: &ExtensionConfig,
) -> Result<(Cycle, ExtensionStep), HamError> {
    Cycle::in_graph(g, c.verts().to_vec())?;
    if c.len() >= g.len() {
        return Err(HamError::AlreadyHamiltonian);
    }
    let on_cycle: HashSet<Point> = c.verts().iter().copied().collect();
    let mut frontier: Vec<Point> = g
        .vertices()
        .iter()
        .copied()
        .filter(|v| {
            !on_cycle.contains(v) && g.neighbors_unchecked(*v).any(|n| on_cycle.contains(&n))
        })
        .collect();
    if config.frontier_order == FrontierOrder::Descending {
        frontier.reverse();
    }
    if frontier.is_empty() {
        return Err(HamError::NoFrontier);
    }

    let engine = Engine {
        g,
        on_cycle: &on_cycle,
    };

    for &x in &frontier {
        if let Some(found) = engine.direct_insert(c, x) {
            return Ok(found);
        }
    }
    for &x in &frontier {
        for (i1, u1) in c.verts().iter().enumerate() {
            if !adjacent(*u1, x) {
                continue;
            }
            if let Some(found) = engine.rewire(c, x, i1) {
                return Ok(found);
            }
        }
    }
    if config.allow_fallback {
        for &x in &frontier {
            if let Some(found) = engine.fallback(c, x) {
                return Ok(found);
            }
        }
    }
    Err(HamError::ExtensionStuck(StuckWitness {
        graph: g.vertices().to_vec(),
        cycle: c.verts().to_vec(),
        frontier: frontier[0],
    }))
}

struct Engine<'a> {
    g: &'a SupergridGraph,
    on_cycle: &'a HashSet<Point>,
}

/// Result of one rewiring attempt before it is wrapped into a step.
struct Splice {
    verts: Vec<Point>,
    construction: Construction,
    pivot_y: Option<Point>,
}

impl Engine<'_> {
    #[allow(clippy::too_many_arguments)]
    fn step(
        &self,
        c: &Cycle,
        x: Point,
        rule: ExtensionRule,
        u1: Point,
        z: Option<Point>,
        substitute_z: Option<Point>,
        splice: Splice,
    ) -> Option<(Cycle, ExtensionStep)> {
        let next = Cycle::in_graph(self.g, splice.verts).ok()?;
        debug_assert_eq!(next.len(), c.len() + 1);
        Some((
            next,
            ExtensionStep {
                cycle_length_before: c.len(),
                attached_vertex: x,
                rule,
                anchor_u1: u1,
                pivot_z: z,
                pivot_y: splice.pivot_y,
                substitute_z,
                construction: splice.construction,
            },
        ))
    }

    fn direct_insert(&self, c: &Cycle, x: Point) -> Option<(Cycle, ExtensionStep)> {
        let i = c
            .edges()
            .position(|(u, v)| adjacent(u, x) && adjacent(v, x))?;
        let mut verts = c.verts().to_vec();
        verts.insert(i + 1, x);
        self.step(
            c,
            x,
            ExtensionRule::DirectInsert,
            c.verts()[i],
            None,
            None,
            Splice {
                verts,
                construction: Construction::Insertion,
                pivot_y: None,
            },
        )
    }

    /// Pivot candidates for `u1`: the horizontal pair first, then the
    /// vertical pair, each ordered so that members adjacent to `x` come
    /// first (left/up before right/down among equals). Within a pair, a
    /// member not adjacent to `x` is only offered when no member is.
    fn pivot_candidates(&self, x: Point, u1: Point, u2: Point, uk: Point) -> Vec<Point> {
        let frames = [
            [Direction::Left, Direction::Right],
            [Direction::Up, Direction::Down],
        ];
        let mut out = Vec::new();
        for frame in frames {
            let members: Vec<Point> = frame
                .iter()
                .map(|d| u1.step(*d))
                .filter(|p| *p != u2 && *p != uk && *p != x && self.g.contains(*p))
                .collect();
            let near: Vec<Point> = members
                .iter()
                .copied()
                .filter(|p| adjacent(*p, x))
                .collect();
            if near.is_empty() {
                out.extend(members);
            } else {
                out.extend(near);
            }
        }
        out
    }

    fn rewire(&self, c: &Cycle, x: Point, i1: usize) -> Option<(Cycle, ExtensionStep)> {
        let base = c.rotated(i1);
        let u = base.verts();
        let k = u.len();
        let (u1, u2, uk) = (u[0], u[1], u[k - 1]);

        for z in self.pivot_candidates(x, u1, u2, uk) {
            if !self.on_cycle.contains(&z) {
                continue;
            }
            let Some(oriented) = orient_towards(&base, z) else {
                continue;
            };
            if adjacent(z, x) {
                if let Some(s) = self.claim1(&oriented, x, z) {
                    return self.step(c, x, ExtensionRule::Claim1Rewire, u1, Some(z), None, s);
                }
            } else if let Some((s, sub)) = self.claim2(&oriented, x, z) {
                return self.step(c, x, ExtensionRule::Claim2Rewire, u1, Some(z), sub, s);
            }
        }
        None
    }

    /// Constructions for a pivot `z ~ x`, `z ~ u2`, on a cycle starting at `u1`.
    fn claim1(&self, cyc: &Cycle, x: Point, z: Point) -> Option<Splice> {
        let u = cyc.verts();
        let k = u.len();
        let j = cyc.position(z)?;
        debug_assert!(j >= 2 && j < k - 1);

        if adjacent(u[j - 1], u[j + 1]) {
            let mut verts = vec![u[0], x, z];
            verts.extend_from_slice(&u[1..j]);
            verts.extend_from_slice(&u[j + 1..]);
            return Some(Splice {
                verts,
                construction: Construction::Bypass,
                pivot_y: None,
            });
        }

        if j == 2 && adjacent(u[1], u[k - 1]) {
            let tri = Cycle::from_unchecked(vec![u[0], x, z]);
            let mut rest = vec![u[1]];
            rest.extend_from_slice(&u[2..]);
            let rest = Cycle::from_unchecked(rest);
            if let Ok(merged) = concat_cycles_shared_vertex(self.g, &tri, &rest) {
                return Some(Splice {
                    verts: merged.into_verts(),
                    construction: Construction::SharedVertexMerge,
                    pivot_y: None,
                });
            }
        }

        if adjacent(u[1], u[j + 1]) {
            let mut verts = vec![u[0], x, z];
            verts.extend(u[1..j].iter().rev());
            verts.extend_from_slice(&u[j + 1..]);
            return Some(Splice {
                verts,
                construction: Construction::SegmentReversal,
                pivot_y: None,
            });
        }

        if let Some(verts) = reassemble(u, x, &[0, j]) {
            return Some(Splice {
                verts,
                construction: Construction::PivotReassembly,
                pivot_y: None,
            });
        }

        // second pivot y: a common neighbor of z and x on the cycle, then
        // any other cycle neighbor of x
        let mut ys: Vec<Point> = self
            .g
            .neighbors_unchecked(z)
            .filter(|y| *y != u[0] && adjacent(*y, x) && self.on_cycle.contains(y))
            .collect();
        for y in self.g.neighbors_unchecked(x) {
            if y != u[0] && y != z && self.on_cycle.contains(&y) && !ys.contains(&y) {
                ys.push(y);
            }
        }
        self.reassemble_with_pivots(cyc, x, &[0, j], &ys)
    }

    /// Constructions for a pivot `z !~ x` with `z ~ u2`.
    fn claim2(&self, cyc: &Cycle, x: Point, z: Point) -> Option<(Splice, Option<Point>)> {
        let u = cyc.verts();
        let k = u.len();
        let (u1, u2, uk) = (u[0], u[1], u[k - 1]);

        // replace z by a common neighbor of u1 and x that still sees u2 or uk
        let subs: Vec<Point> = self
            .g
            .neighbors_unchecked(u1)
            .filter(|w| *w != u2 && *w != uk && adjacent(*w, x) && self.on_cycle.contains(w))
            .collect();
        for w in subs {
            if let Some(oriented) = orient_towards(cyc, w) {
                if let Some(s) = self.claim1(&oriented, x, w) {
                    return Some((s, Some(w)));
                }
            }
        }

        let j = cyc.position(z)?;
        // y adjacent to u1, x and z first, then any cycle neighbor of x
        let mut ys: Vec<Point> = self
            .g
            .neighbors_unchecked(u1)
            .filter(|y| adjacent(*y, x) && adjacent(*y, z) && self.on_cycle.contains(y))
            .collect();
        for y in self.g.neighbors_unchecked(x) {
            if y != u1 && y != z && self.on_cycle.contains(&y) && !ys.contains(&y) {
                ys.push(y);
            }
        }
        if let Some(verts) = reassemble(u, x, &[0, j]) {
            return Some((
                Splice {
                    verts,
                    construction: Construction::PivotReassembly,
                    pivot_y: None,
                },
                None,
            ));
        }
        self.reassemble_with_pivots(cyc, x, &[0, j], &ys)
            .map(|s| (s, None))
    }

    fn reassemble_with_pivots(
        &self,
        cyc: &Cycle,
        x: Point,
        cuts: &[usize],
        ys: &[Point],
    ) -> Option<Splice> {
        for &y in ys {
            let t = cyc.position(y)?;
            if cuts.contains(&t) {
                continue;
            }
            let mut all = cuts.to_vec();
            all.push(t);
            if let Some(verts) = reassemble(cyc.verts(), x, &all) {
                return Some(Splice {
                    verts,
                    construction: Construction::PivotReassembly,
                    pivot_y: Some(y),
                });
            }
        }
        None
    }

    fn fallback(&self, c: &Cycle, x: Point) -> Option<(Cycle, ExtensionStep)> {
        let verts = reversal_search(c.verts(), x)?;
        let u1 = c.verts().iter().copied().find(|v| adjacent(*v, x))?;
        self.step(
            c,
            x,
            ExtensionRule::FallbackSearch,
            u1,
            None,
            None,
            Splice {
                verts,
                construction: Construction::ReversalSearch,
                pivot_y: None,
            },
        )
    }
}

/// Orient a cycle starting at `u1` so that `z` is adjacent to `u2`,
/// reversing it when only `uk` sees `z`. `None` when neither does.
fn orient_towards(c: &Cycle, z: Point) -> Option<Cycle> {
    let u = c.verts();
    let k = u.len();
    if z == u[1] || z == u[k - 1] {
        return None;
    }
    if adjacent(z, u[1]) {
        Some(c.clone())
    } else if adjacent(z, u[k - 1]) {
        Some(c.reversed())
    } else {
        None
    }
}

/// Cut `cycle` at the given positions into singleton pivots and the
/// subpaths between them, then search for an ordering and orientation of
/// those pieces that, closed through `x`, forms a cycle.
fn reassemble(cycle: &[Point], x: Point, cuts: &[usize]) -> Option<Vec<Point>> {
    let k = cycle.len();
    let mut cuts = cuts.to_vec();
    cuts.sort_unstable();
    cuts.dedup();
    let first = *cuts.first()?;
    let mut pieces: Vec<Vec<Point>> = Vec::new();
    for (i, &c) in cuts.iter().enumerate() {
        pieces.push(vec![cycle[c]]);
        let next = cuts.get(i + 1).copied().unwrap_or(k + first);
        if next > c + 1 {
            pieces.push((c + 1..next).map(|t| cycle[t % k]).collect());
        }
    }
    let mut order = Vec::with_capacity(pieces.len());
    let mut used = vec![false; pieces.len()];
    if !arrange(&pieces, x, x, &mut used, &mut order) {
        return None;
    }
    let mut verts = vec![x];
    for (idx, forward) in order {
        let piece = &pieces[idx];
        if forward {
            verts.extend_from_slice(piece);
        } else {
            verts.extend(piece.iter().rev());
        }
    }
    Some(verts)
}

fn arrange(
    pieces: &[Vec<Point>],
    x: Point,
    end: Point,
    used: &mut [bool],
    order: &mut Vec<(usize, bool)>,
) -> bool {
    if order.len() == pieces.len() {
        return adjacent(end, x);
    }
    for i in 0..pieces.len() {
        if used[i] {
            continue;
        }
        let piece = &pieces[i];
        let orientations: &[bool] = if piece.len() == 1 {
            &[true]
        } else {
            &[true, false]
        };
        for &forward in orientations {
            let (first, last) = if forward {
                (piece[0], piece[piece.len() - 1])
            } else {
                (piece[piece.len() - 1], piece[0])
            };
            if !adjacent(end, first) {
                continue;
            }
            used[i] = true;
            order.push((i, forward));
            if arrange(pieces, x, last, used, order) {
                return true;
            }
            order.pop();
            used[i] = false;
        }
    }
    false
}

/// Insert `x` into `cycle` after at most two segment reversals. Edges of a
/// sequence are `(s[e], s[e+1 mod n])`.
fn reversal_search(cycle: &[Point], x: Point) -> Option<Vec<Point>> {
    if let Some(v) = insert_after_one_reversal(cycle, x) {
        return Some(v);
    }
    let n = cycle.len();
    for a in 0..n {
        for b in a + 1..n {
            if a == 0 && b == n - 1 {
                continue;
            }
            let mut s = cycle.to_vec();
            s[a..=b].reverse();
            if let Some(v) = insert_after_one_reversal(&s, x) {
                return Some(v);
            }
        }
    }
    None
}

fn insert_after_one_reversal(s: &[Point], x: Point) -> Option<Vec<Point>> {
    let n = s.len();
    let ok = |e: usize| adjacent(s[e], s[(e + 1) % n]);
    let fits = |p: Point, q: Point| adjacent(p, x) && adjacent(q, x);
    let bad: Vec<usize> = (0..n).filter(|e| !ok(*e)).collect();
    if bad.len() > 3 {
        return None;
    }
    let fitting: Vec<usize> = (0..n).filter(|e| fits(s[*e], s[(e + 1) % n])).collect();

    let splice = |s: &[Point], e: usize| {
        let mut v = s.to_vec();
        v.insert(e + 1, x);
        v
    };

    // no reversal
    if bad.len() <= 1 {
        if let Some(&e) = fitting.iter().find(|e| bad.iter().all(|b| b == *e)) {
            return Some(splice(s, e));
        }
    }

    for a in 0..n {
        for b in a..n {
            if a == 0 && b == n - 1 {
                continue;
            }
            // reversing s[a..=b] replaces edges e1=(s[a-1],s[a]) and
            // e2=(s[b],s[b+1]) by (s[a-1],s[b]) and (s[a],s[b+1])
            let e1 = (a + n - 1) % n;
            let e2 = b;
            let (pa, pb) = (s[e1], s[b]);
            let (qa, qb) = (s[a], s[(b + 1) % n]);
            let remaining: Vec<usize> = bad
                .iter()
                .copied()
                .filter(|e| *e != e1 && *e != e2)
                .collect();
            let new1_ok = adjacent(pa, pb);
            let new2_ok = adjacent(qa, qb);
            let mut broken = remaining.len() + usize::from(!new1_ok) + usize::from(!new2_ok);
            if broken > 1 {
                continue;
            }
            // where can x go: a new edge or an untouched original one
            let target = if !new1_ok {
                fits(pa, pb).then_some(1)
            } else if !new2_ok {
                fits(qa, qb).then_some(2)
            } else if let Some(&e) = remaining.first() {
                fits(s[e], s[(e + 1) % n]).then_some(0)
            } else if fits(pa, pb) {
                Some(1)
            } else if fits(qa, qb) {
                Some(2)
            } else {
                fitting.iter().any(|e| *e != e1 && *e != e2).then_some(0)
            };
            let Some(target) = target else { continue };
            broken = broken.saturating_sub(1);
            debug_assert_eq!(broken, 0);

            let mut r = s.to_vec();
            r[a..=b].reverse();
            let pos = match target {
                1 => e1,
                2 => b,
                _ => {
                    let e = remaining.first().copied().unwrap_or_else(|| {
                        *fitting.iter().find(|e| **e != e1 && **e != e2).unwrap()
                    });
                    e
                }
            };
            // edge positions outside [a-1, b] are unchanged by the reversal
            return Some(splice(&r, pos));
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Strict,
    Permissive,
}

/// Build a Hamiltonian cycle by seeding and repeated extension. Strict mode
/// requires a 2-connected linear-convex graph; permissive mode only needs
/// 2-connectivity and may report a stuck extension.
pub fn find_hamiltonian_cycle(g: &SupergridGraph, strict: bool) -> HamResult {
    let mode = if strict {
        Mode::Strict
    } else {
        Mode::Permissive
    };
    find_hamiltonian_cycle_with(g, mode, &ExtensionConfig::default())
}

pub fn find_hamiltonian_cycle_with(
    g: &SupergridGraph,
    mode: Mode,
    config: &ExtensionConfig,
) -> HamResult {
    let seed = match mode {
        Mode::Strict => match seed_cycle(g) {
            Ok(c) => c,
            Err(HamError::PreconditionViolated(p)) => return HamResult::NoCycleExists(p),
            Err(e) => unreachable!("seed_cycle only fails on preconditions: {e}"),
        },
        Mode::Permissive => {
            if !is_two_connected(g) {
                return HamResult::NoCycleExists(Predicate::TwoConnected);
            }
            match permissive_seed(g) {
                Some(c) => c,
                None => return HamResult::NoCycleExists(Predicate::TwoConnected),
            }
        }
    };

    let mut cycle = seed;
    let mut trace = ExtensionTrace::default();
    while cycle.len() < g.len() {
        match extend_cycle_with(g, &cycle, config) {
            Ok((next, step)) => {
                assert_eq!(next.len(), cycle.len() + 1, "extension must add one vertex");
                assert!(
                    validate_cycle(g, &next),
                    "extension produced an invalid cycle"
                );
                trace.steps.push(step);
                cycle = next;
            }
            Err(HamError::ExtensionStuck(w)) => return HamResult::ExtensionFailed(w),
            Err(e) => unreachable!("extension of a valid cycle in a connected graph: {e}"),
        }
    }
    HamResult::Cycle { cycle, trace }
}

/// Exhaustive backtracking from the smallest vertex with degree and
/// connectivity pruning on the unvisited set.
pub fn brute_force_hamiltonian(g: &SupergridGraph) -> Result<Option<Cycle>, HamError> {
    brute_force_hamiltonian_bounded(g, DEFAULT_BRUTE_FORCE_BOUND)
}

pub fn brute_force_hamiltonian_bounded(
    g: &SupergridGraph,
    bound: usize,
) -> Result<Option<Cycle>, HamError> {
    let n = g.len();
    if n > bound || n > 64 {
        return Err(HamError::SizeBoundExceeded {
            size: n,
            bound: bound.min(64),
        });
    }
    if n < 3 {
        return Ok(None);
    }
    let nbr: Vec<u64> = g
        .adjacency_lists()
        .iter()
        .map(|ns| ns.iter().fold(0u64, |m, i| m | (1 << i)))
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = Backtrack {
        nbr: &nbr,
        full,
        path: vec![0],
    };
    if search.run(1) {
        let verts = search.path.iter().map(|i| g.vertices()[*i]).collect();
        Ok(Some(Cycle::from_unchecked(verts)))
    } else {
        Ok(None)
    }
}

struct Backtrack<'a> {
    nbr: &'a [u64],
    full: u64,
    path: Vec<usize>,
}

impl Backtrack<'_> {
    fn run(&mut self, visited: u64) -> bool {
        let cur = *self.path.last().unwrap();
        let start = self.path[0];
        let open = self.full & !visited;
        if open == 0 {
            return self.path.len() >= 3 && self.nbr[cur] & (1 << start) != 0;
        }
        if !self.viable(open, cur, start) {
            return false;
        }
        let mut cand = self.nbr[cur] & open;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.path.push(w);
            if self.run(visited | (1 << w)) {
                return true;
            }
            self.path.pop();
        }
        false
    }

    /// Every open vertex needs two possible tour neighbors among the open
    /// vertices and the two path ends, and the open set must stay connected.
    fn viable(&self, open: u64, cur: usize, start: usize) -> bool {
        let ends = (1u64 << cur) | (1u64 << start);
        let mut rest = open;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let avail = self.nbr[v] & (open | ends);
            // with both ends equal (single-vertex path) a vertex may still
            // need two distinct neighbors
            if avail.count_ones() < 2 {
                return false;
            }
        }
        let seed = open & open.wrapping_neg();
        let mut reach = seed;
        let mut frontier = seed;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.nbr[v] & open & !reach;
            reach |= fresh;
            frontier |= fresh;
        }
        reach == open
    }
}
