use std::io::Write;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use ribbonlab_core::moves::apply_script;
use ribbonlab_core::quandle::{
    alexander_polynomial, colorings, count_colorings, group_presentation, quandle_presentation,
};
use ribbonlab_core::search::{default_gate_quandles, search_equiv_with, SearchConfig};
use ribbonlab_core::{RibbonData, SearchOutcome};

use crate::format::{
    parse_ribbon, parse_script_lines, read_file, resolve_quandle, write_outcome, write_ribbon,
};
use crate::generate::{generate, GenSpec};
use crate::parallel::Threaded;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_REFUTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ribbonlab",
    version,
    about = "Ribbon presentations of n-knots: moves, invariants and equivalence search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a ribbon file and report its components.
    Validate { file: PathBuf },
    /// Print the canonical form.
    Canon { file: PathBuf },
    /// Print |H| - |B| + 1.
    Genus { file: PathBuf },
    /// Print the presented quandle, or the knot group with --group.
    Quandle {
        file: PathBuf,
        #[arg(long)]
        group: bool,
    },
    /// Count colorings by a finite quandle.
    Color {
        file: PathBuf,
        /// A quandle file, `dihedral:<m>` or `trivial:<m>`.
        #[arg(long)]
        quandle: String,
        /// List every coloring before the count.
        #[arg(long)]
        list: bool,
    },
    /// Print the Alexander polynomial.
    Alex { file: PathBuf },
    /// Apply a move script and print the result.
    Apply {
        file: PathBuf,
        #[arg(long)]
        script: PathBuf,
    },
    /// Search for move scripts relating two presentations.
    Search {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        depth: usize,
        /// Trivial-handle moves allowed on each side.
        #[arg(long)]
        weak: usize,
        #[arg(long, default_value_t = 200_000)]
        states: usize,
        #[arg(long, default_value_t = NonZeroUsize::MIN)]
        threads: NonZeroUsize,
    },
    /// Print a generated example.
    Gen { spec: String },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn load(path: &Path) -> Result<RibbonData, Failure> {
    let text = read_file(path)?;
    parse_ribbon(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_knot(path: &Path) -> Result<RibbonData, Failure> {
    let data = load(path)?;
    if !data.is_connected() {
        return Err(Failure(format!(
            "{}: not a knot presentation",
            path.display()
        )));
    }
    Ok(data)
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut text = String::new();
    let code = match dispatch(cli.command, &mut text) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    };
    let _ = out.write_all(text.as_bytes());
    code
}

fn dispatch(command: Command, out: &mut String) -> Result<i32, Failure> {
    use std::fmt::Write as _;
    match command {
        Command::Validate { file } => {
            let data = load(&file)?;
            let diagnostics = data.validate();
            if !diagnostics.is_empty() {
                let msg: Vec<String> = diagnostics.iter().map(ToString::to_string).collect();
                return Err(Failure(msg.join("\n")));
            }
            writeln!(out, "ok")?;
            writeln!(out, "bases {}", data.base_count)?;
            writeln!(out, "handles {}", data.handles.len())?;
            writeln!(out, "components {}", data.components())?;
        }
        Command::Canon { file } => out.push_str(&write_ribbon(&load(&file)?.canonical_form())),
        Command::Genus { file } => writeln!(out, "{}", load(&file)?.genus()?)?,
        Command::Quandle { file, group } => {
            let data = load(&file)?;
            if group {
                write!(out, "{}", group_presentation(&data))?;
            } else {
                write!(out, "{}", quandle_presentation(&data))?;
            }
        }
        Command::Color {
            file,
            quandle,
            list,
        } => {
            let data = load(&file)?;
            let q = resolve_quandle(&quandle)?;
            if list {
                let all = colorings(&data, &q)?;
                for c in &all {
                    let cells: Vec<String> = c.iter().map(u32::to_string).collect();
                    writeln!(out, "{}", cells.join(" "))?;
                }
                writeln!(out, "count {}", all.len())?;
            } else {
                writeln!(out, "{}", count_colorings(&data, &q)?)?;
            }
        }
        Command::Alex { file } => writeln!(out, "{}", alexander_polynomial(&load_knot(&file)?)?)?,
        Command::Apply { file, script } => {
            let data = load(&file)?;
            let text = read_file(&script)?;
            let (moves, lines) = parse_script_lines(&text)
                .map_err(|e| Failure(format!("{}: {e}", script.display())))?;
            let result = apply_script(&data, &moves).map_err(|e| {
                Failure(format!(
                    "{}: line {}: {}",
                    script.display(),
                    lines[e.index],
                    e.source
                ))
            })?;
            out.push_str(&write_ribbon(&result));
        }
        Command::Search {
            a,
            b,
            depth,
            weak,
            states,
            threads,
        } => {
            let (da, db) = (load_knot(&a)?, load_knot(&b)?);
            let config = SearchConfig {
                depth,
                weak_budget: weak,
                state_cap: states,
            };
            let outcome = search_equiv_with(
                &da,
                &db,
                config,
                &default_gate_quandles(),
                &Threaded::new(threads),
            )?;
            out.push_str(&write_outcome(&outcome));
            return Ok(match outcome {
                SearchOutcome::Equivalent(_) => EXIT_OK,
                SearchOutcome::Refuted(_) => EXIT_REFUTED,
                SearchOutcome::Unknown { .. } => EXIT_UNKNOWN,
            });
        }
        Command::Gen { spec } => {
            let spec: GenSpec = spec.parse()?;
            out.push_str(&write_ribbon(&generate(spec)));
        }
    }
    Ok(EXIT_OK)
}
