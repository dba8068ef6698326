//! Deliberately naive reference implementations used as test oracles. They
//! share no code with the library beyond the `Point` type.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use supergrid::Point;

pub type Cells = BTreeSet<(i32, i32)>;

pub fn cells_of(points: &[Point]) -> Cells {
    points.iter().map(|p| (p.x, p.y)).collect()
}

/// Subset of a `width x height` box selected by a row-major bitmask.
pub fn cells_from_mask(mask: u64, width: u32, height: u32) -> Cells {
    let mut out = Cells::new();
    for y in 0..height {
        for x in 0..width {
            if mask >> (y * width + x) & 1 == 1 {
                out.insert((x as i32, y as i32));
            }
        }
    }
    out
}

pub fn king(a: (i32, i32), b: (i32, i32)) -> bool {
    a != b && (a.0 - b.0).abs() <= 1 && (a.1 - b.1).abs() <= 1
}

fn reachable(cells: &Cells, start: (i32, i32)) -> usize {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in cells {
            if king(v, *w) && seen.insert(*w) {
                queue.push_back(*w);
            }
        }
    }
    seen.len()
}

pub fn naive_connected(cells: &Cells) -> bool {
    match cells.iter().next() {
        None => true,
        Some(s) => reachable(cells, *s) == cells.len(),
    }
}

/// At least three vertices and connected after deleting any single vertex.
pub fn naive_two_connected(cells: &Cells) -> bool {
    cells.len() >= 3
        && naive_connected(cells)
        && cells.iter().all(|v| {
            let mut rest = cells.clone();
            rest.remove(v);
            naive_connected(&rest)
        })
}

/// Every lattice point between two same-line vertices is present.
pub fn naive_linear_convex(cells: &Cells) -> bool {
    for a in cells {
        for b in cells {
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let on_line = dx == 0 || dy == 0 || dx.abs() == dy.abs();
            if a >= b || !on_line {
                continue;
            }
            let steps = dx.abs().max(dy.abs());
            for s in 1..steps {
                let p = (a.0 + dx / steps * s, a.1 + dy / steps * s);
                if !cells.contains(&p) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn neighborhood(cells: &Cells, v: (i32, i32)) -> Cells {
    cells.iter().copied().filter(|w| king(v, *w)).collect()
}

pub fn naive_locally_connected(cells: &Cells) -> bool {
    cells
        .iter()
        .all(|v| naive_connected(&neighborhood(cells, *v)))
}

/// Two internally vertex-disjoint paths between every pair of vertices,
/// found by explicit search: enumerate simple u-v paths and, for each,
/// look for a second u-v route avoiding its interior (and, when the first
/// path is the direct edge, not using that edge).
pub fn naive_disjoint_paths(cells: &Cells) -> bool {
    if cells.len() < 3 {
        return false;
    }
    let all: Vec<_> = cells.iter().copied().collect();
    all.iter().enumerate().all(|(i, &u)| {
        all[i + 1..].iter().all(|&v| {
            let mut stack = vec![u];
            first_path_with_partner(cells, v, &mut stack)
        })
    })
}

fn first_path_with_partner(cells: &Cells, target: (i32, i32), stack: &mut Vec<(i32, i32)>) -> bool {
    let cur = *stack.last().unwrap();
    if cur == target {
        return has_partner(cells, stack);
    }
    for w in cells {
        if king(cur, *w) && !stack.contains(w) {
            stack.push(*w);
            let found = first_path_with_partner(cells, target, stack);
            stack.pop();
            if found {
                return true;
            }
        }
    }
    false
}

fn has_partner(cells: &Cells, path: &[(i32, i32)]) -> bool {
    let (u, v) = (path[0], path[path.len() - 1]);
    let interior: BTreeSet<_> = path[1..path.len() - 1].iter().copied().collect();
    let direct_taken = path.len() == 2;
    let mut seen = BTreeSet::from([u]);
    let mut queue = VecDeque::from([u]);
    while let Some(a) = queue.pop_front() {
        for b in cells {
            if !king(a, *b) || interior.contains(b) || seen.contains(b) {
                continue;
            }
            if direct_taken && a == u && *b == v {
                continue;
            }
            if *b == v {
                return true;
            }
            seen.insert(*b);
            queue.push_back(*b);
        }
    }
    false
}

pub fn is_valid_cycle(cells: &Cells, cycle: &[Point]) -> bool {
    let verts: Vec<(i32, i32)> = cycle.iter().map(|p| (p.x, p.y)).collect();
    let distinct: BTreeSet<_> = verts.iter().collect();
    verts.len() >= 3
        && distinct.len() == verts.len()
        && verts.iter().all(|v| cells.contains(v))
        && (0..verts.len()).all(|i| king(verts[i], verts[(i + 1) % verts.len()]))
}

pub fn covers_exactly(cycle: &[Point], expected: &Cells) -> bool {
    cycle.len() == expected.len() && cells_of(cycle) == *expected
}
