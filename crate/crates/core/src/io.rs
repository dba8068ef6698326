//! Text formats: lattice documents, cycle listings, SVG traces, JSON
//! reports, JSONL traces and CSV summaries.
//!
//! A lattice document is a block of rows over `#` (vertex) and `.` (empty);
//! row index is y and column index is x. Lines starting with `;` are
//! comments and do not occupy a row.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::cycle::{Cycle, CycleError};
use crate::enumerate::EnumerationSummary;
use crate::grid::{Point, SupergridGraph};
use crate::hamiltonian::ExtensionTrace;

#[derive(Debug, Error)]
pub enum IoError {
    /// Zero-based position in the raw text, comment lines included.
    #[error("invalid character at line {line}, column {column}")]
    InvalidCharacter { line: usize, column: usize },
    #[error("line {line}: expected \"x,y\", found {content:?}")]
    InvalidCycleLine { line: usize, content: String },
    #[error("invalid cycle: {0}")]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub fn parse_lattice(text: &str) -> Result<SupergridGraph, IoError> {
    let mut points = Vec::new();
    let mut y = 0;
    for (line, row) in text.lines().enumerate() {
        if row.starts_with(';') {
            continue;
        }
        for (column, ch) in row.chars().enumerate() {
            match ch {
                '#' => points.push(Point::new(column as i32, y)),
                '.' => {}
                // tolerate CRLF line endings
                '\r' if column + 1 == row.chars().count() => {}
                _ => return Err(IoError::InvalidCharacter { line, column }),
            }
        }
        y += 1;
    }
    Ok(SupergridGraph::from_points(points))
}

/// Canonical document for a graph with non-negative coordinates: rows
/// `0..=max_y`, each `max_x + 1` wide, newline-terminated. The empty graph
/// renders as the empty string. Graphs reaching into negative coordinates
/// are first shifted so their minimum corner lies at the origin.
pub fn render_lattice(g: &SupergridGraph) -> String {
    let Some(b) = g.bounds() else {
        return String::new();
    };
    let g = if b.min_x < 0 || b.min_y < 0 {
        g.normalized()
    } else {
        g.clone()
    };
    let b = g.bounds().unwrap();
    let mut out = String::with_capacity(((b.max_x + 2) * (b.max_y + 1)) as usize);
    for y in 0..=b.max_y {
        for x in 0..=b.max_x {
            out.push(if g.contains(Point::new(x, y)) {
                '#'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}

pub fn write_cycle(c: &Cycle) -> String {
    let mut out = String::new();
    for p in c.verts() {
        writeln!(out, "{},{}", p.x, p.y).unwrap();
    }
    out
}

/// Inverse of [`write_cycle`]. Blank lines are ignored; the result must be
/// a simple closed cycle.
pub fn parse_cycle(text: &str) -> Result<Cycle, IoError> {
    let mut verts = Vec::new();
    for (line, raw) in text.lines().enumerate() {
        let row = raw.trim();
        if row.is_empty() {
            continue;
        }
        let bad = || IoError::InvalidCycleLine {
            line,
            content: raw.to_string(),
        };
        let (x, y) = row.split_once(',').ok_or_else(bad)?;
        let x = x.trim().parse().map_err(|_| bad())?;
        let y = y.trim().parse().map_err(|_| bad())?;
        verts.push(Point::new(x, y));
    }
    Ok(Cycle::new(verts)?)
}

/// Sewing-trace drawing: one closed polygon through the scaled vertices in
/// traversal order, plus a circle marker per vertex. The y axis points down
/// as in lattice coordinates. A margin of one cell keeps markers in view.
pub fn export_svg(c: &Cycle, cell_size: u32) -> String {
    let cell = cell_size.max(1) as i64;
    let scaled: Vec<(i64, i64)> = c
        .verts()
        .iter()
        .map(|p| (p.x as i64 * cell, p.y as i64 * cell))
        .collect();
    let min_x = scaled.iter().map(|p| p.0).min().unwrap_or(0);
    let min_y = scaled.iter().map(|p| p.1).min().unwrap_or(0);
    let max_x = scaled.iter().map(|p| p.0).max().unwrap_or(0);
    let max_y = scaled.iter().map(|p| p.1).max().unwrap_or(0);
    let radius = (cell as f64 / 5.0).max(0.5);

    let points: Vec<String> = scaled.iter().map(|(x, y)| format!("{x},{y}")).collect();
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        min_x - cell,
        min_y - cell,
        max_x - min_x + 2 * cell,
        max_y - min_y + 2 * cell
    )
    .unwrap();
    writeln!(
        out,
        r#"  <polygon points="{}" fill="none" stroke="black"/>"#,
        points.join(" ")
    )
    .unwrap();
    for (x, y) in &scaled {
        writeln!(out, r#"  <circle cx="{x}" cy="{y}" r="{radius}"/>"#).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// One JSON object per extension step, newline-terminated.
pub fn trace_to_jsonl(trace: &ExtensionTrace) -> Result<String, IoError> {
    let mut out = String::new();
    for step in &trace.steps {
        out.push_str(&serde_json::to_string(step)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, IoError> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub const SUMMARY_HEADER: [&str; 11] = [
    "box",
    "total",
    "connected",
    "two_connected",
    "linear_convex",
    "locally_connected",
    "hamiltonian_found",
    "direct_insert",
    "claim1_rewire",
    "claim2_rewire",
    "fallback_search",
];

pub fn summary_to_csv(rows: &[EnumerationSummary]) -> Result<String, IoError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SUMMARY_HEADER)?;
    for s in rows {
        let r = &s.rule_counts;
        w.write_record([
            s.box_label(),
            s.total.to_string(),
            s.connected.to_string(),
            s.two_connected.to_string(),
            s.linear_convex.to_string(),
            s.locally_connected.to_string(),
            s.hamiltonian_found.to_string(),
            r.direct_insert.to_string(),
            r.claim1_rewire.to_string(),
            r.claim2_rewire.to_string(),
            r.fallback_search.to_string(),
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| IoError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
