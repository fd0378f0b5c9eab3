//! Command-line front end: reads an order, draws it, and writes SVG, JSON or
//! summary CSV. See [`run`] for the exit codes.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use confluent_core::bench::{scaling_report, Family};
use confluent_core::diagram::{validate_diagram, Diagram};
use confluent_core::oracle::{completion_equivalence, COMPLETION_LIMIT};
use confluent_core::pipeline::{draw_poset, draw_realizer};
use confluent_core::poset::{parse_edge_list, Poset};
use confluent_core::realizer::parse_realizer;
use confluent_core::render::{rotate45, to_json, to_svg, RenderOptions};
use confluent_core::sp::{parse_sp, sp_layout, sp_to_poset};
use confluent_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DIMENSION: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

pub const STATS_HEADER: &str = "n,junctions,segments,grid_side";

const BENCH_TRIALS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// One `u v` relation per line; `node u` declares an isolated element
    Edges,
    /// Two lines, each a linear order of the same labels
    Realizer,
    /// Series-parallel expression: `;` series, `|` parallel, parentheses
    Sp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Svg,
    Json,
    CsvStats,
}

/// Draw confluent Hasse diagrams of two-dimensional partial orders.
#[derive(Debug, Parser)]
#[command(name = "confluent", version)]
pub struct CliConfig {
    /// Input file, or `-` for standard input
    #[arg(required_unless_present = "bench")]
    pub input: Option<String>,

    #[arg(long, value_enum, default_value_t = InputFormat::Edges)]
    pub input_format: InputFormat,

    #[arg(long, value_enum, default_value_t = Emit::Svg)]
    pub emit: Emit,

    /// Output file; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Control point distance from junctions, in rotated grid units
    #[arg(long, default_value_t = 0.5)]
    pub bezier_offset: f64,

    /// Also draw the added bottom and top points and their segments
    #[arg(long)]
    pub show_invisible: bool,

    /// Validate the drawing and, for small inputs, compare it with the lattice completion
    #[arg(long)]
    pub verify: bool,

    /// Comma-separated sizes; prints a scaling table instead of drawing
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub bench: Option<Vec<usize>>,

    /// Benchmark random instances with this seed instead of the worst-case family
    #[arg(long)]
    pub seed: Option<u64>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DimensionExceedsTwo => EXIT_DIMENSION,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Runs the tool on `argv` (including the program name).
///
/// Exit codes: 0 on success, 1 on usage, input or output errors, 2 when the
/// order has dimension greater than two, 3 when `--verify` finds a problem.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cfg, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cfg: &CliConfig, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    if let Some(sizes) = &cfg.bench {
        let mut sizes = sizes.clone();
        sizes.sort_unstable();
        let family = match cfg.seed {
            Some(seed) => Family::Random { seed },
            None => {
                if sizes.contains(&0) {
                    return Err(Failure::input("worst-case family sizes must be at least 1"));
                }
                Family::WorstCase
            }
        };
        write_output(cfg, stdout, &scaling_report(&sizes, BENCH_TRIALS, family))?;
        return Ok(EXIT_OK);
    }

    let opts = RenderOptions {
        bezier_offset: cfg.bezier_offset,
        show_invisible: cfg.show_invisible,
        ..RenderOptions::default()
    };
    opts.validate().map_err(Failure::input)?;

    let path = cfg.input.as_deref().unwrap_or("-");
    let text = read_input(path, stdin)?;
    let (poset, diagram, has_bounds) = match cfg.input_format {
        InputFormat::Edges => {
            let p = parse_edge_list(&text)?;
            let (_, d) = draw_poset(&p)?;
            (p, d, true)
        }
        InputFormat::Realizer => {
            let r = parse_realizer(&text)?;
            (r.to_poset(), draw_realizer(&r), true)
        }
        InputFormat::Sp => {
            let t = parse_sp(&text)?;
            (sp_to_poset(&t), sp_layout(&t), false)
        }
    };

    let body = match cfg.emit {
        Emit::Svg => to_svg(&rotate45(&diagram), &opts),
        Emit::Json => to_json(&diagram),
        Emit::CsvStats => format!(
            "{STATS_HEADER}\n{},{},{},{}\n",
            poset.len(),
            diagram.junction_count(),
            diagram.segments.len(),
            diagram.scene.grid_side
        ),
    };
    write_output(cfg, stdout, &body)?;

    if cfg.verify && !verify(&diagram, &poset, has_bounds, stderr)? {
        return Ok(EXIT_VERIFY);
    }
    Ok(EXIT_OK)
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure::input(format!("reading standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

fn write_output(cfg: &CliConfig, stdout: &mut dyn Write, body: &str) -> Result<(), Failure> {
    match &cfg.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::input(format!("writing {}: {e}", path.display()))),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|e| Failure::input(format!("writing standard output: {e}"))),
    }
}

fn verify(d: &Diagram, p: &Poset, has_bounds: bool, stderr: &mut dyn Write) -> Result<bool, Failure> {
    let report = validate_diagram(d, p);
    let mut ok = true;
    for (name, check) in report.checks() {
        if !check.passed {
            ok = false;
            for f in &check.failures {
                let _ = writeln!(stderr, "verify {name}: {f}");
            }
        }
    }
    if p.len() <= COMPLETION_LIMIT {
        let eq = completion_equivalence(&d.scene, p, has_bounds)?;
        if !eq.isomorphic {
            ok = false;
            for problem in &eq.problems {
                let _ = writeln!(stderr, "verify completion: {problem}");
            }
        }
    } else {
        let _ = writeln!(
            stderr,
            "warning: {} elements exceed the completion oracle limit of {COMPLETION_LIMIT}; skipped the completion check",
            p.len()
        );
    }
    Ok(ok)
}
