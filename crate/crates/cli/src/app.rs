//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use dit_core::engine::{
    conjecture_by_id, builtin_conjectures, enumerate_class, parse_expr, print_expr,
    search_extremal_in, Direction, EvalError, ParseError, SearchError,
};
use dit_core::enumerate::{EnumerateError, GraphClass};
use dit_core::families::{FamilyError, FamilyId, FamilySpec};
use dit_core::invariants::{invariant_profile, InvariantError};
use dit_core::transforms::{
    drive_max_avgdist_minus_proximity, drive_max_ecc_minus_remoteness,
    drive_min_remoteness_minus_radius, normalize_leaf_positions, t10_double_extend_equal,
    t1_leaf_merge, t2_balance, t3_bfs_reduce, t4_leaf_to_diameter_end, t5_split_branches,
    t6_caterpillarize, t7_extend_single_centroid, t8_extend_two_centroids,
    t9_rebalance_centroid_leaves, terminal_graph, TransformError,
};
use dit_core::Graph;
use thiserror::Error;

use crate::codec::{decode_graph6, encode_graph6, read_edgelist, write_edgelist, CodecError};
use crate::report::{
    conjecture_csv, to_json, to_text, Body, ConjectureDoc, EnumerationDoc, GraphDoc, ProfileDoc,
    Report, SearchDoc, TraceDoc,
};

/// Exact distance invariants for small connected graphs: profiles,
/// enumeration, extremal search, rewrites and claim verification.
#[derive(Debug, Parser)]
#[command(name = "dit", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit the report as a single JSON line.
    #[arg(long, global = true)]
    pub json: bool,

    /// Emit the report as a per-order CSV table (verify only).
    #[arg(long, global = true)]
    pub csv: bool,

    /// Worker threads for enumeration and search (default: all cores).
    #[arg(long, global = true, env = "DIT_JOBS")]
    pub jobs: Option<usize>,

    /// RNG seed for sampled helpers.  Reserved: every built-in code path is
    /// exhaustive and deterministic, so the value is accepted and ignored.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Write the report to this path instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

/// Graph interchange formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Edgelist,
    Graph6,
}

/// Where a single input graph comes from: a named family instance or a
/// file (`-` for stdin).
#[derive(Debug, Args)]
pub struct GraphSource {
    /// Build a family instance: path, cycle, spider3, spider4, broom,
    /// crossed_cycle.
    #[arg(long, conflicts_with = "input")]
    pub family: Option<String>,

    /// Number of vertices for --family.
    #[arg(long, requires = "family")]
    pub n: Option<usize>,

    /// Read the graph from this file; use `-` for stdin.
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Format of the --input data.
    #[arg(long, value_enum, default_value_t = Format::Edgelist)]
    pub format: Format,
}

impl GraphSource {
    fn load(&self) -> Result<Graph, CliError> {
        match (&self.family, &self.input) {
            (Some(name), None) => {
                let family = FamilyId::from_name(name)?;
                let n = self
                    .n
                    .ok_or_else(|| CliError::Usage("--family requires --n".into()))?;
                Ok(FamilySpec { family, n }.build()?)
            }
            (None, Some(path)) => {
                let text = if path.as_os_str() == "-" {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|source| CliError::Io { path: "stdin".into(), source })?;
                    buf
                } else {
                    fs::read_to_string(path).map_err(|source| CliError::Io {
                        path: path.display().to_string(),
                        source,
                    })?
                };
                match self.format {
                    Format::Edgelist => Ok(read_edgelist(&text)?),
                    Format::Graph6 => {
                        let line = text
                            .lines()
                            .find(|l| !l.trim().is_empty())
                            .ok_or(CodecError::EmptyGraph6)?;
                        Ok(decode_graph6(line.trim())?)
                    }
                }
            }
            _ => Err(CliError::Usage(
                "provide exactly one of --family or --input".into(),
            )),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the full invariant profile of one graph.
    Invariants(GraphSource),

    /// Build a named family instance and print it.
    Family {
        /// Family name: path, cycle, spider3, spider4, broom, crossed_cycle.
        #[arg(long)]
        family: String,
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Output format for the graph.
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
    },

    /// Enumerate all non-isomorphic graphs of a class at one order.
    Enumerate {
        /// Graph class: tree, caterpillar, connected.
        #[arg(long)]
        class: String,
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Print only the number of graphs.
        #[arg(long)]
        count_only: bool,
        /// Unlock the larger connected-graph order cap.
        #[arg(long)]
        extended: bool,
        /// Output format for streamed graphs.
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
    },

    /// Exhaustively search a class for the extremal value of an expression.
    #[command(group(ArgGroup::new("direction").required(true).args(["maximize", "minimize"])))]
    Search {
        /// Graph class: tree, caterpillar, connected.
        #[arg(long)]
        class: String,
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Objective expression, e.g. "avg_distance - proximity".
        #[arg(long)]
        expr: String,
        /// Keep the largest objective value.
        #[arg(long)]
        maximize: bool,
        /// Keep the smallest objective value.
        #[arg(long)]
        minimize: bool,
        /// Unlock the larger connected-graph order cap.
        #[arg(long)]
        extended: bool,
    },

    /// Check a built-in extremal claim over a range of orders.
    Verify {
        /// Claim id; see --list for the catalog.
        #[arg(long, required_unless_present = "list")]
        conjecture: Option<String>,
        /// Smallest order to check.
        #[arg(long, default_value_t = 3)]
        min_n: usize,
        /// Largest order to check.
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Exit with status 1 if any defined verdict is false.
        #[arg(long = "assert")]
        assert_verdicts: bool,
        /// Unlock the larger connected-graph order cap.
        #[arg(long)]
        extended: bool,
        /// List the built-in claim ids and exit.
        #[arg(long)]
        list: bool,
    },

    /// Apply a rewrite rule or driver to a tree and print the trace.
    Transform {
        /// Rule t1..t10 or normalize, or a driver:
        /// max-avgdist-minus-proximity, max-ecc-minus-remoteness,
        /// min-remoteness-minus-radius.
        #[arg(long)]
        rule: String,
        #[command(flatten)]
        source: GraphSource,
    },
}

/// Errors from running a parsed command line.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("verdicts failed at {0}")]
    AssertFailed(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `argv` and runs the tool.  Returns the process exit code:
/// 0 success, 1 failed --assert, 2 usage or input errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let started = Instant::now();
    let outcome = execute(&cli, command_echo(&args));
    // Timing goes to stderr only: the report bytes stay deterministic.
    eprintln!("timing: {:?}", started.elapsed());
    match outcome {
        Ok(()) => 0,
        Err(e @ CliError::AssertFailed(_)) => {
            eprintln!("dit: {e}");
            1
        }
        Err(e) => {
            eprintln!("dit: {e}");
            2
        }
    }
}

/// Echo of the command line for the report header, without the program
/// name.  `--jobs` and `--output` are dropped as well: neither the worker
/// count nor the sink affects what was computed, so the same command yields
/// the same bytes wherever and however parallel it ran.
fn command_echo(args: &[OsString]) -> String {
    let mut words = Vec::new();
    let mut skip_value = false;
    for arg in args.iter().skip(1) {
        let text = arg.to_string_lossy();
        if skip_value {
            skip_value = false;
            continue;
        }
        if text == "--jobs" || text == "--output" {
            skip_value = true;
            continue;
        }
        if text.starts_with("--jobs=") || text.starts_with("--output=") {
            continue;
        }
        words.push(text.into_owned());
    }
    words.join(" ")
}

/// How a finished report leaves the process.
enum Rendered {
    Ok(String),
    /// Report text plus the failed-assertion description to return after
    /// the report is written.
    Failed(String, String),
}

fn execute(cli: &Cli, echo: String) -> Result<(), CliError> {
    if cli.json && cli.csv {
        return Err(usage("--json and --csv are mutually exclusive"));
    }
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        // First caller wins; later invocations keep the existing pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let _ = cli.seed; // reserved, see the flag's help text

    let rendered = dispatch(cli, echo)?;
    match rendered {
        Rendered::Ok(text) => write_output(cli, &text),
        Rendered::Failed(text, why) => {
            write_output(cli, &text)?;
            Err(CliError::AssertFailed(why))
        }
    }
}

fn write_output(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(cli: &Cli, report: &Report) -> Result<String, CliError> {
    if cli.csv {
        let Body::Conjecture(doc) = &report.body else {
            return Err(usage("--csv is only supported for verify"));
        };
        return Ok(conjecture_csv(doc));
    }
    if cli.json {
        return Ok(to_json(report));
    }
    Ok(to_text(report))
}

fn parse_class(name: &str) -> Result<GraphClass, CliError> {
    GraphClass::from_name(name).ok_or_else(|| {
        usage(format!(
            "unknown class `{name}`; valid classes: tree, caterpillar, connected"
        ))
    })
}

fn dispatch(cli: &Cli, echo: String) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Invariants(source) => {
            let g = source.load()?;
            let profile = invariant_profile(&g)?;
            let report = Report::new(echo, Body::Profile(ProfileDoc::new(&g, &profile)));
            Ok(Rendered::Ok(render(cli, &report)?))
        }

        Command::Family { family, n, format } => {
            let id = FamilyId::from_name(family)?;
            let g = FamilySpec { family: id, n: *n }.build()?;
            if cli.json || cli.csv {
                let report = Report::new(echo, Body::Graph(GraphDoc::new(id.name(), &g)));
                Ok(Rendered::Ok(render(cli, &report)?))
            } else {
                Ok(Rendered::Ok(match format {
                    Format::Edgelist => write_edgelist(&g),
                    Format::Graph6 => {
                        let mut line = encode_graph6(&g)?;
                        line.push('\n');
                        line
                    }
                }))
            }
        }

        Command::Enumerate { class, n, count_only, extended, format } => {
            let class = parse_class(class)?;
            let graphs = enumerate_class(class, *n, *extended)?;
            if cli.json || cli.csv {
                let listing = if *count_only {
                    None
                } else {
                    Some(
                        graphs
                            .iter()
                            .map(encode_graph6)
                            .collect::<Result<Vec<_>, _>>()?,
                    )
                };
                let doc = EnumerationDoc {
                    class: class.name(),
                    n: *n,
                    extended: *extended,
                    count: graphs.len(),
                    graphs: listing,
                };
                let report = Report::new(echo, Body::Enumeration(doc));
                return Ok(Rendered::Ok(render(cli, &report)?));
            }
            if *count_only {
                return Ok(Rendered::Ok(format!("{}\n", graphs.len())));
            }
            let mut out = String::new();
            for g in &graphs {
                match format {
                    Format::Graph6 => {
                        out.push_str(&encode_graph6(g)?);
                        out.push('\n');
                    }
                    Format::Edgelist => {
                        out.push_str(&write_edgelist(g));
                        out.push('\n');
                    }
                }
            }
            Ok(Rendered::Ok(out))
        }

        Command::Search { class, n, expr, maximize, minimize: _, extended } => {
            let class = parse_class(class)?;
            let objective = parse_expr(expr)?;
            let direction = if *maximize { Direction::Max } else { Direction::Min };
            let graphs = enumerate_class(class, *n, *extended)?;
            let result = search_extremal_in(&graphs, *n, &objective, direction)?;
            let doc = SearchDoc::new(
                class.name(),
                print_expr(&objective),
                direction.name(),
                &result,
            );
            let report = Report::new(echo, Body::Search(doc));
            Ok(Rendered::Ok(render(cli, &report)?))
        }

        Command::Verify { conjecture, min_n, max_n, assert_verdicts, extended, list } => {
            if *list {
                let mut out = String::new();
                for spec in builtin_conjectures() {
                    out.push_str(&format!(
                        "{}: {} of `{}` over {}\n",
                        spec.id,
                        spec.direction.name(),
                        print_expr(&spec.objective),
                        spec.class.name()
                    ));
                }
                return Ok(Rendered::Ok(out));
            }
            let id = conjecture.as_deref().expect("clap enforces --conjecture");
            let spec = conjecture_by_id(id).ok_or_else(|| {
                let ids: Vec<&str> = builtin_conjectures().iter().map(|c| c.id).collect();
                usage(format!(
                    "unknown claim id `{id}`; valid ids: {}",
                    ids.join(", ")
                ))
            })?;
            if min_n > max_n {
                return Err(usage("--min-n must not exceed --max-n"));
            }
            let report = dit_core::engine::verify_conjecture(&spec, *min_n, *max_n, *extended)?;
            let doc = ConjectureDoc::new(&report);
            let failed: Vec<usize> = doc
                .rows
                .iter()
                .filter(|row| {
                    row.family_is_extremal == Some(false) || row.bound_respected == Some(false)
                })
                .map(|row| row.n)
                .collect();
            let report = Report::new(echo, Body::Conjecture(doc));
            let text = render(cli, &report)?;
            if *assert_verdicts && !failed.is_empty() {
                let ns: Vec<String> = failed.iter().map(|n| format!("n={n}")).collect();
                return Ok(Rendered::Failed(
                    text,
                    format!("{id}: {}", ns.join(", ")),
                ));
            }
            Ok(Rendered::Ok(text))
        }

        Command::Transform { rule, source } => {
            let g = source.load()?;
            let trace = match rule.as_str() {
                "t1" => vec![t1_leaf_merge(&g)?],
                "t2" => vec![t2_balance(&g)?],
                "t3" => vec![t3_bfs_reduce(&g)?],
                "t4" => vec![t4_leaf_to_diameter_end(&g)?],
                "t5" => vec![t5_split_branches(&g)?],
                "t6" => vec![t6_caterpillarize(&g)?],
                "t7" => vec![t7_extend_single_centroid(&g)?],
                "t8" => vec![t8_extend_two_centroids(&g)?],
                "t9" => vec![t9_rebalance_centroid_leaves(&g)?],
                "t10" => vec![t10_double_extend_equal(&g)?],
                "normalize" => normalize_leaf_positions(&g)?.into_iter().collect(),
                "max-avgdist-minus-proximity" => drive_max_avgdist_minus_proximity(&g)?,
                "max-ecc-minus-remoteness" => drive_max_ecc_minus_remoteness(&g)?,
                "min-remoteness-minus-radius" => drive_min_remoteness_minus_radius(&g)?,
                other => {
                    return Err(usage(format!(
                        "unknown rule `{other}`; valid rules: t1..t10, normalize, \
                         max-avgdist-minus-proximity, max-ecc-minus-remoteness, \
                         min-remoteness-minus-radius"
                    )))
                }
            };
            let terminal = terminal_graph(&g, &trace);
            let doc = TraceDoc::new(rule, &g, &terminal, &trace);
            let report = Report::new(echo, Body::Trace(doc));
            Ok(Rendered::Ok(render(cli, &report)?))
        }
    }
}
