//! Command-line surface.
//!
//! Exit codes are a stable contract:
//!
//! | code | meaning                                                  |
//! |------|----------------------------------------------------------|
//! | 0    | success (a cycle was produced, or the command completed)  |
//! | 1    | usage, I/O or parse error                                |
//! | 2    | no cycle: a precondition failed, or the oracle found none |
//! | 3    | extension failed; the stuck witness is printed as JSON    |
//! | 4    | `verify` found violations                                |

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::classify::{classify, Predicate};
use crate::cycle::{validate_cycle, Cycle};
use crate::enumerate::{enumerate_graphs, summarize, EnumSpec};
use crate::grid::SupergridGraph;
use crate::hamiltonian::{
    brute_force_hamiltonian_bounded, find_hamiltonian_cycle, ExtensionTrace, HamResult,
    DEFAULT_BRUTE_FORCE_BOUND,
};
use crate::io::{
    export_svg, parse_cycle, parse_lattice, render_lattice, summary_to_csv, to_json,
    trace_to_jsonl, write_cycle,
};
use crate::verify::verify_box;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_CYCLE: i32 = 2;
pub const EXIT_EXTENSION_FAILED: i32 = 3;
pub const EXIT_VIOLATIONS: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "supergrid",
    version,
    about = "Supergrid graph classification and Hamiltonian cycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the classification report of a lattice file as JSON.
    Classify { file: PathBuf },
    /// Construct a Hamiltonian cycle and print it, one "x,y" per line.
    Hamcycle {
        file: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
        /// Write the extension trace as JSON lines.
        #[arg(long, value_name = "OUT")]
        trace: Option<PathBuf>,
    },
    /// Exhaustive backtracking search for a Hamiltonian cycle.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_BOUND)]
        bound: usize,
    },
    /// Enumerate all subsets of a box meeting the requirements.
    Enumerate {
        #[arg(long = "box", value_name = "WxH", value_parser = parse_box)]
        bbox: (u32, u32),
        /// Comma-separated predicates, e.g. two_connected,linear_convex.
        #[arg(long, value_delimiter = ',')]
        require: Vec<Predicate>,
        #[arg(long, default_value_t = 0)]
        min_vertices: usize,
        /// Keep one representative per symmetry class.
        #[arg(long)]
        dedup: bool,
        /// Write the enumeration summary as CSV.
        #[arg(long, value_name = "OUT")]
        csv: Option<PathBuf>,
        /// Print every graph as a lattice document.
        #[arg(long)]
        list: bool,
    },
    /// Export the Hamiltonian cycle of a lattice file as an SVG trace.
    Trace {
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        svg: PathBuf,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        cell: u32,
        /// Draw this cycle listing (checked against the lattice) instead of
        /// constructing one.
        #[arg(long, value_name = "LISTING")]
        cycle: Option<PathBuf>,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Run every exhaustive verification suite over a box.
    Verify {
        #[arg(long = "box", value_name = "WxH", value_parser = parse_box)]
        bbox: (u32, u32),
        /// Print the full report as JSON instead of the text summary.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct ModeArgs {
    /// Require a 2-connected linear-convex graph (default).
    #[arg(long, conflicts_with = "permissive")]
    strict: bool,
    /// Only require 2-connectivity; extension may get stuck.
    #[arg(long)]
    permissive: bool,
}

impl ModeArgs {
    fn strict(&self) -> bool {
        !self.permissive
    }
}

fn parse_box(s: &str) -> Result<(u32, u32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let w: u32 = w.parse().map_err(|_| format!("bad width in {s:?}"))?;
    let h: u32 = h.parse().map_err(|_| format!("bad height in {s:?}"))?;
    if w == 0 || h == 0 {
        return Err(format!("box dimensions must be positive, got {s:?}"));
    }
    Ok((w, h))
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn load_graph(path: &Path) -> Result<SupergridGraph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_lattice(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_cycle(path: &Path, g: &SupergridGraph) -> Result<Cycle, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let cycle = parse_cycle(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if !validate_cycle(g, &cycle) {
        return Err(usage(format!(
            "{}: cycle leaves the lattice graph",
            path.display()
        )));
    }
    Ok(cycle)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| usage(format!("cannot write output: {e}")))
}

/// Solve and report according to the exit-code contract; on success hands
/// back the cycle and trace.
fn solve(
    g: &SupergridGraph,
    strict: bool,
    out: &mut dyn Write,
) -> Result<(Cycle, ExtensionTrace), Failure> {
    match find_hamiltonian_cycle(g, strict) {
        HamResult::Cycle { cycle, trace } => Ok((cycle, trace)),
        HamResult::NoCycleExists(p) => Err(Failure {
            code: EXIT_NO_CYCLE,
            message: format!("no Hamiltonian cycle constructed: graph is not {p}"),
        }),
        HamResult::ExtensionFailed(w) => {
            let json = to_json(&w).map_err(|e| usage(e.to_string()))?;
            emit(out, &format!("{json}\n"))?;
            Err(Failure {
                code: EXIT_EXTENSION_FAILED,
                message: format!("extension stuck at frontier vertex {}", w.frontier),
            })
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Classify { file } => {
            let g = load_graph(&file)?;
            let json = to_json(&classify(&g)).map_err(|e| usage(e.to_string()))?;
            emit(out, &format!("{json}\n"))?;
        }
        Command::Hamcycle { file, mode, trace } => {
            let g = load_graph(&file)?;
            let (cycle, steps) = solve(&g, mode.strict(), out)?;
            if let Some(path) = trace {
                let jsonl = trace_to_jsonl(&steps).map_err(|e| usage(e.to_string()))?;
                write_file(&path, &jsonl)?;
            }
            emit(out, &write_cycle(&cycle))?;
        }
        Command::Oracle { file, bound } => {
            let g = load_graph(&file)?;
            match brute_force_hamiltonian_bounded(&g, bound) {
                Ok(Some(cycle)) => emit(out, &write_cycle(&cycle))?,
                Ok(None) => {
                    emit(out, "none\n")?;
                    return Ok(EXIT_NO_CYCLE);
                }
                Err(e) => return Err(usage(e.to_string())),
            }
        }
        Command::Enumerate {
            bbox: (width, height),
            require,
            min_vertices,
            dedup,
            csv,
            list,
        } => {
            let spec = EnumSpec::new(width, height)
                .min_vertices(min_vertices)
                .require(&require)
                .dedup(dedup);
            let mut count = 0u64;
            for g in enumerate_graphs(&spec).map_err(|e| usage(e.to_string()))? {
                count += 1;
                if list {
                    emit(out, &format!("{}\n", render_lattice(&g)))?;
                }
            }
            emit(out, &format!("graphs: {count}\n"))?;
            if let Some(path) = csv {
                let summary = summarize(&spec).map_err(|e| usage(e.to_string()))?;
                let text = summary_to_csv(&[summary]).map_err(|e| usage(e.to_string()))?;
                write_file(&path, &text)?;
            }
        }
        Command::Trace {
            file,
            svg,
            cell,
            cycle,
            mode,
        } => {
            let g = load_graph(&file)?;
            let cycle = match cycle {
                Some(path) => load_cycle(&path, &g)?,
                None => solve(&g, mode.strict(), out)?.0,
            };
            write_file(&svg, &export_svg(&cycle, cell))?;
            emit(
                out,
                &format!("wrote {} ({} vertices)\n", svg.display(), cycle.len()),
            )?;
        }
        Command::Verify {
            bbox: (width, height),
            json,
        } => {
            let report = verify_box(width, height).map_err(|e| usage(e.to_string()))?;
            if json {
                let text = to_json(&report).map_err(|e| usage(e.to_string()))?;
                emit(out, &format!("{text}\n"))?;
            } else {
                let mut text = format!("box {width}x{height}: {} subsets\n", report.subsets);
                for s in report.suites() {
                    let status = if s.passed() { "pass" } else { "FAIL" };
                    text += &format!(
                        "{status} {}: checked {}, violations {}\n",
                        s.name, s.checked, s.violations
                    );
                }
                let r = &report.hamiltonian.rule_counts;
                text += &format!(
                    "rules: direct_insert {}, claim1_rewire {}, claim2_rewire {}, fallback_search {}\n",
                    r.direct_insert, r.claim1_rewire, r.claim2_rewire, r.fallback_search
                );
                text += &format!("violations: {}\n", report.total_violations());
                emit(out, &text)?;
            }
            if report.total_violations() > 0 {
                return Ok(EXIT_VIOLATIONS);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parse `args` (program name first) and run the command, writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
