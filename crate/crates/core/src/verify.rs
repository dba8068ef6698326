//! Exhaustive verification suites over every subset of a cell box.
//!
//! Each suite counts how many instances it examined and how many broke the
//! property under test, keeping the first offending graph for diagnosis.

use serde::Serialize;

use crate::classify::{
    is_linear_convex, is_locally_connected, is_two_connected, is_vertex_locally_connected,
};
use crate::cycle::validate_cycle;
use crate::enumerate::{enumerate_graphs, EnumError, EnumSpec};
use crate::grid::{Direction, Point, SupergridGraph};
use crate::hamiltonian::{
    brute_force_hamiltonian_bounded, find_hamiltonian_cycle_with, ExtensionConfig, HamResult, Mode,
    RuleCounts,
};

/// Graphs up to this size are compared against the brute-force oracle.
pub const ORACLE_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub checked: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<Vec<Point>>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn record(&mut self, g: &SupergridGraph, ok: bool) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(g.vertices().to_vec());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Outcome counts of the constructive solver over one box.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct HamiltonianStats {
    pub suite: SuiteResult,
    pub extension_failed: u64,
    pub rule_counts: RuleCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub width: u32,
    pub height: u32,
    pub subsets: u64,
    pub local_connectivity: SuiteResult,
    pub immediate_vertex: SuiteResult,
    pub high_degree: SuiteResult,
    pub hamiltonian: HamiltonianStats,
    pub oracle: SuiteResult,
}

impl VerifyReport {
    pub fn suites(&self) -> [&SuiteResult; 5] {
        [
            &self.local_connectivity,
            &self.immediate_vertex,
            &self.high_degree,
            &self.hamiltonian.suite,
            &self.oracle,
        ]
    }

    pub fn total_violations(&self) -> u64 {
        self.suites().iter().map(|s| s.violations).sum()
    }
}

fn all_subsets(width: u32, height: u32) -> Result<impl Iterator<Item = SupergridGraph>, EnumError> {
    enumerate_graphs(&EnumSpec::new(width, height))
}

/// 2-connected and linear-convex implies locally connected.
pub fn local_connectivity_suite(width: u32, height: u32) -> Result<SuiteResult, EnumError> {
    let mut res = SuiteResult::new("local_connectivity");
    for g in all_subsets(width, height)? {
        if is_two_connected(&g) && is_linear_convex(&g) {
            res.record(&g, is_locally_connected(&g));
        }
    }
    Ok(res)
}

/// The four diagonal pairs whose presence forces the straight neighbor
/// between them into a linear-convex graph.
pub const FORCED_NEIGHBORS: [(Direction, Direction, Direction); 4] = [
    (Direction::UpLeft, Direction::UpRight, Direction::Up),
    (Direction::UpLeft, Direction::DownLeft, Direction::Left),
    (Direction::UpRight, Direction::DownRight, Direction::Right),
    (Direction::DownLeft, Direction::DownRight, Direction::Down),
];

/// Whether `v` satisfies every forced-neighbor implication in `g`.
pub fn forced_neighbors_present(g: &SupergridGraph, v: Point) -> bool {
    FORCED_NEIGHBORS.iter().all(|(a, b, mid)| {
        !(g.contains(v.step(*a)) && g.contains(v.step(*b))) || g.contains(v.step(*mid))
    })
}

/// One check per vertex of every linear-convex subset.
pub fn immediate_vertex_suite(width: u32, height: u32) -> Result<SuiteResult, EnumError> {
    let mut res = SuiteResult::new("immediate_vertex");
    for g in all_subsets(width, height)? {
        if !is_linear_convex(&g) {
            continue;
        }
        for v in g.vertices() {
            res.record(&g, forced_neighbors_present(&g, *v));
        }
    }
    Ok(res)
}

/// A vertex of degree 7 or 8 always has a connected neighborhood, with no
/// assumption on the graph.
pub fn high_degree_suite(width: u32, height: u32) -> Result<SuiteResult, EnumError> {
    let mut res = SuiteResult::new("high_degree");
    for g in all_subsets(width, height)? {
        for v in g.vertices() {
            if g.degree(*v).unwrap_or(0) >= 7 {
                res.record(&g, is_vertex_locally_connected(&g, *v));
            }
        }
    }
    Ok(res)
}

/// Strict-mode solver over every 2-connected linear-convex subset.
pub fn hamiltonian_suite(
    width: u32,
    height: u32,
    config: &ExtensionConfig,
) -> Result<HamiltonianStats, EnumError> {
    let mut stats = HamiltonianStats {
        suite: SuiteResult::new("hamiltonian"),
        ..Default::default()
    };
    for g in all_subsets(width, height)? {
        if !(is_two_connected(&g) && is_linear_convex(&g)) {
            continue;
        }
        let ok = match find_hamiltonian_cycle_with(&g, Mode::Strict, config) {
            HamResult::Cycle { cycle, trace } => {
                stats.rule_counts.merge(&trace.rule_counts());
                cycle.len() == g.len() && validate_cycle(&g, &cycle)
            }
            HamResult::ExtensionFailed(_) => {
                stats.extension_failed += 1;
                false
            }
            HamResult::NoCycleExists(_) => false,
        };
        stats.suite.record(&g, ok);
    }
    Ok(stats)
}

/// Agreement with brute force on every subset of at most
/// [`ORACLE_MAX_VERTICES`] vertices: solver success implies the oracle finds
/// a cycle, and the oracle never finds one in a graph that is not
/// 2-connected.
pub fn oracle_suite(width: u32, height: u32) -> Result<SuiteResult, EnumError> {
    let mut res = SuiteResult::new("oracle");
    for g in all_subsets(width, height)? {
        if g.len() > ORACLE_MAX_VERTICES {
            continue;
        }
        let oracle =
            brute_force_hamiltonian_bounded(&g, ORACLE_MAX_VERTICES).expect("size checked above");
        let ok = if is_two_connected(&g) {
            if is_linear_convex(&g) {
                let solved =
                    find_hamiltonian_cycle_with(&g, Mode::Strict, &ExtensionConfig::default())
                        .cycle()
                        .is_some();
                !solved || oracle.is_some()
            } else {
                true
            }
        } else {
            oracle.is_none()
        };
        res.record(&g, ok);
    }
    Ok(res)
}

/// Run every suite on the `width x height` box.
pub fn verify_box(width: u32, height: u32) -> Result<VerifyReport, EnumError> {
    let spec = EnumSpec::new(width, height);
    let subsets = spec.mask_range().end;
    Ok(VerifyReport {
        width,
        height,
        subsets,
        local_connectivity: local_connectivity_suite(width, height)?,
        immediate_vertex: immediate_vertex_suite(width, height)?,
        high_degree: high_degree_suite(width, height)?,
        hamiltonian: hamiltonian_suite(width, height, &ExtensionConfig::default())?,
        oracle: oracle_suite(width, height)?,
    })
}
