mod common;

use common::*;
use supergrid::cycle::{concat_cycles_edges, concat_cycles_shared_vertex, CycleError};
use supergrid::grid::graph_of;
use supergrid::{Cycle, Point};

fn cyc(coords: &[(i32, i32)]) -> Cycle {
    Cycle::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
}

/// Whether some pair of edges, one per cycle, with some orientation, has
/// both cross pairs adjacent.
fn bridge_exists(a: &[(i32, i32)], b: &[(i32, i32)]) -> bool {
    let edges = |c: &[(i32, i32)]| -> Vec<((i32, i32), (i32, i32))> {
        (0..c.len()).map(|i| (c[i], c[(i + 1) % c.len()])).collect()
    };
    edges(a).iter().any(|&(u1, v1)| {
        edges(b)
            .iter()
            .any(|&(u2, v2)| (king(u1, u2) && king(v1, v2)) || (king(u1, v2) && king(v1, u2)))
    })
}

#[test]
fn adjacent_triangles_follow_the_edge_pair_oracle() {
    let a = [(0, 0), (1, 0), (0, 1)];
    let b = [(2, 0), (3, 0), (2, 1)];
    let g = graph_of(&[(0, 0), (1, 0), (0, 1), (2, 0), (3, 0), (2, 1)]);
    let result = concat_cycles_edges(&g, &cyc(&a), &cyc(&b));
    if bridge_exists(&a, &b) {
        let c = result.unwrap();
        let all: Cells = a.iter().chain(&b).copied().collect();
        assert!(is_valid_cycle(&all, c.verts()) && covers_exactly(c.verts(), &all));
    } else {
        assert_eq!(result, Err(CycleError::NoBridgeEdges));
    }
}

#[test]
fn bridge_oracle_agrees_on_small_triangle_pairs() {
    // every pair of disjoint triangles inside a 4x3 box
    let cells: Vec<(i32, i32)> = (0..3).flat_map(|y| (0..4).map(move |x| (x, y))).collect();
    let mut triangles = Vec::new();
    for (i, &p) in cells.iter().enumerate() {
        for (j, &q) in cells.iter().enumerate().skip(i + 1) {
            for &r in &cells[j + 1..] {
                if king(p, q) && king(q, r) && king(p, r) {
                    triangles.push([p, q, r]);
                }
            }
        }
    }
    let g = graph_of(&cells);
    let mut both = 0;
    for a in &triangles {
        for b in &triangles {
            if a.iter().any(|p| b.contains(p)) {
                continue;
            }
            let result = concat_cycles_edges(&g, &cyc(a), &cyc(b));
            assert_eq!(result.is_ok(), bridge_exists(a, b), "{a:?} {b:?}");
            both += result.is_ok() as u32;
        }
    }
    assert!(both > 0);
}

#[test]
fn shared_vertex_without_adjacent_pair() {
    // all (u, w) candidates around the shared vertex (1,1) are far apart
    let c1 = [(0, 0), (1, 0), (1, 1)];
    let c2 = [(1, 1), (2, 2), (1, 2)];
    let around_1 = [(1, 0), (0, 0)];
    let around_2 = [(2, 2), (1, 2)];
    let any_pair = around_1
        .iter()
        .any(|u| around_2.iter().any(|w| king(*u, *w)));
    let g = graph_of(&[(0, 0), (1, 0), (1, 1), (2, 2), (1, 2)]);
    let result = concat_cycles_shared_vertex(&g, &cyc(&c1), &cyc(&c2));
    if any_pair {
        assert!(result.is_ok());
    } else {
        assert_eq!(result, Err(CycleError::NoPivotEdge));
    }
}
