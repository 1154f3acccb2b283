//! Command-line front end.
//!
//! Exit codes are stable:
//!
//! | code | meaning                                            |
//! |------|----------------------------------------------------|
//! | 0    | success                                            |
//! | 1    | usage error or invalid parameters                  |
//! | 2    | the input is not a valid cycle                     |
//! | 3    | infeasible (or the oracle proved there is no cycle)|
//! | 4    | unknown instance and the Euler tour was incomplete |
//! | 5    | edge limit, oracle cap or oracle budget exceeded   |
//! | 6    | unreadable or malformed file                       |

pub mod document;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::connect::{
    applicable_walker, replay_certificate, walk, walk_general_from, PathCertificate, WalkerKind,
};
use crate::error::Error;
use crate::euler::{decode_cycle, generate};
use crate::graph::completion_count;
use crate::instance::{
    feasibility, validate_params, InstanceParams, Mode, RawParams, Status, Vertex, VertexIndex,
    Word, DEFAULT_EDGE_LIMIT,
};
use crate::verify::{
    hamilton_oracle, verify_cycle_string, verify_object_list, OracleOutcome, DEFAULT_ORACLE_BUDGET,
};
use document::{
    content_line_count, emit_list, parse_list, parse_string, parse_symbols, CycleDocument,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_CYCLE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_UNKNOWN_INCOMPLETE: i32 = 4;
pub const EXIT_LIMIT: i32 = 5;
pub const EXIT_IO: i32 = 6;

#[derive(Debug, Parser)]
#[command(
    name = "ocycle",
    version,
    about = "Generate and verify s-overlap cycles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// Alphabet size; symbols are 1..=n.
    #[arg(long)]
    pub n: Option<u64>,
    /// Object length (k-permutation mode).
    #[arg(long)]
    pub k: Option<u64>,
    /// Overlap between consecutive objects.
    #[arg(long)]
    pub s: Option<u64>,
    /// Permute this multiset instead, e.g. 1,1,2,3.
    #[arg(long, value_delimiter = ',')]
    pub multiset: Option<Vec<u64>>,
}

impl InstanceArgs {
    fn is_empty(&self) -> bool {
        self.n.is_none() && self.k.is_none() && self.s.is_none() && self.multiset.is_none()
    }

    /// Flags layered over `base` (a document header).
    fn raw(&self, base: Option<RawParams>) -> Option<RawParams> {
        let base = base.unwrap_or_default();
        let multiset = self.multiset.clone().or(base.multiset);
        let s = self.s.or(Some(base.s).filter(|&s| s > 0))?;
        Some(RawParams {
            n: self.n.or(base.n),
            k: self.k.or(if self.multiset.is_some() {
                None
            } else {
                base.k
            }),
            s,
            multiset,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Cycle document: header plus the cyclic symbol string.
    String,
    /// One object per line, in cycle order.
    List,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    String,
    List,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a cycle as an Euler tour of the transition graph.
    Gen {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Write here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "string")]
        format: OutputFormat,
        /// Refuse instances with more objects than this.
        #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
        limit: u64,
    },
    /// Check a cycle document, bare cycle string or object list.
    Verify {
        #[arg(long, short)]
        input: PathBuf,
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value = "auto")]
        format: InputFormat,
    },
    /// Print instance sizes and the feasibility verdict.
    Stats {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Print a replayable walk from a vertex to the minimum vertex.
    Path {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Start vertex (s symbols) or a whole object whose prefix is the start.
        #[arg(long)]
        from: String,
    },
    /// Search the overlap graph for a Hamilton cycle by brute force.
    Oracle {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Search node budget.
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: u64,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            code
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Gen {
            instance,
            output,
            format,
            limit,
        } => cmd_gen(&instance, output, format, limit, out, err),
        Command::Verify {
            input,
            instance,
            format,
        } => cmd_verify(&input, &instance, format, out),
        Command::Stats { instance } => cmd_stats(&instance, out),
        Command::Path { instance, from } => cmd_path(&instance, &from, out),
        Command::Oracle { instance, budget } => cmd_oracle(&instance, budget, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::LimitExceeded { .. } | Error::CountOverflow { .. } | Error::OracleCap { .. } => {
            EXIT_LIMIT
        }
        Error::TourIncomplete { .. } => EXIT_UNKNOWN_INCOMPLETE,
        Error::Format(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

type CmdResult = Result<i32, Error>;

fn params_from(args: &InstanceArgs) -> Result<InstanceParams, Error> {
    let raw = args
        .raw(None)
        .ok_or_else(|| Error::InvalidParams("--s is required".into()))?;
    validate_params(&raw)
}

fn io_error(path: &std::path::Path, e: std::io::Error) -> Error {
    Error::Format(format!("{}: {e}", path.display()))
}

fn cmd_gen(
    args: &InstanceArgs,
    output: Option<PathBuf>,
    format: OutputFormat,
    limit: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let params = params_from(args)?;
    let verdict = feasibility(&params);
    // With the document on stdout, keep stdout clean.
    let log: &mut dyn Write = if output.is_some() { out } else { err };
    let _ = writeln!(log, "feasibility: {verdict}");
    if verdict.status == Status::Infeasible {
        let _ = writeln!(log, "no cycle exists for {params}");
        return Ok(EXIT_INFEASIBLE);
    }
    let cycle = match generate(&params, limit) {
        Ok(c) => c,
        Err(Error::TourIncomplete { used, total, .. }) => {
            let _ = writeln!(
                log,
                "tour incomplete: reached {used} of {total} objects; {} unreached",
                total - used
            );
            return Ok(EXIT_UNKNOWN_INCOMPLETE);
        }
        Err(e) => return Err(e),
    };
    let text = match format {
        OutputFormat::String => CycleDocument::from_cycle(&cycle).emit(),
        OutputFormat::List => emit_list(&decode_cycle(&cycle)?),
    };
    match output {
        Some(path) => {
            fs::write(&path, text).map_err(|e| io_error(&path, e))?;
            let _ = writeln!(
                log,
                "wrote {} objects, string length {} to {}",
                cycle.object_count,
                cycle.symbols.len(),
                path.display()
            );
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    input: &std::path::Path,
    args: &InstanceArgs,
    format: InputFormat,
    out: &mut dyn Write,
) -> CmdResult {
    let text = fs::read_to_string(input).map_err(|e| io_error(input, e))?;
    let is_doc = CycleDocument::looks_like(&text);
    let format = match format {
        InputFormat::Auto if is_doc => InputFormat::String,
        InputFormat::Auto if content_line_count(&text) > 1 => InputFormat::List,
        InputFormat::Auto => InputFormat::String,
        f => f,
    };
    let header = if is_doc {
        Some(CycleDocument::parse_header(&text)?)
    } else {
        None
    };
    if header.is_none() && args.is_empty() {
        return Err(Error::InvalidParams(
            "instance flags are required for files without a header".into(),
        ));
    }
    let raw = args
        .raw(header)
        .ok_or_else(|| Error::InvalidParams("--s is required".into()))?;
    let params = validate_params(&raw)?;
    let report = match format {
        InputFormat::List => verify_object_list(&parse_list(&text)?, &params),
        _ if is_doc => {
            // Parse for well-formedness, but verify against the chosen params.
            let doc = CycleDocument::parse(&text)?;
            verify_cycle_string(&doc.symbols, &params)
        }
        _ => verify_cycle_string(&parse_string(&text)?, &params),
    };
    let _ = writeln!(out, "instance: {params}");
    let _ = write!(out, "{report}");
    Ok(if report.valid {
        EXIT_OK
    } else {
        EXIT_INVALID_CYCLE
    })
}

fn cmd_stats(args: &InstanceArgs, out: &mut dyn Write) -> CmdResult {
    let params = params_from(args)?;
    let count_text = |c: Result<u64, Error>| match c {
        Ok(c) => c.to_string(),
        Err(Error::CountOverflow { expr }) => format!("{expr} (exceeds 64 bits)"),
        Err(e) => e.to_string(),
    };
    let edges = params.object_count();
    let length = edges
        .as_ref()
        .ok()
        .and_then(|e| e.checked_mul(params.stride() as u64));
    let _ = writeln!(out, "instance: {params}");
    let _ = writeln!(out, "mode: {}", params.mode());
    let _ = writeln!(out, "n: {}", params.n());
    let _ = writeln!(out, "k: {}", params.k());
    let _ = writeln!(out, "s: {}", params.s());
    let _ = writeln!(out, "vertices: {}", count_text(params.vertex_count()));
    let _ = writeln!(out, "edges: {}", count_text(edges));
    let _ = writeln!(out, "out_degree: {}", out_degree_text(&params));
    let _ = writeln!(
        out,
        "string_length: {}",
        length.map_or_else(|| "overflow".to_string(), |l| l.to_string())
    );
    let _ = writeln!(out, "feasibility: {}", feasibility(&params));
    if let Some(w) = applicable_walker(&params) {
        let _ = writeln!(out, "walker: {w}");
    }
    Ok(EXIT_OK)
}

fn out_degree_text(params: &InstanceParams) -> String {
    match params.mode() {
        Mode::KPerm => {
            let rest = params.remainder(&params.minimum_vertex().0).unwrap();
            crate::count::falling_factorial(rest.len() as u64, params.stride() as u64)
                .map_or_else(|| "overflow".to_string(), |d| d.to_string())
        }
        Mode::Multiset => {
            let Ok(index) = VertexIndex::new(params) else {
                return "varies".to_string();
            };
            let degrees = (0..index.len()).map(|r| {
                let v = index.unrank(r).unwrap();
                completion_count(params, &params.remainder(&v.0).unwrap())
            });
            let (lo, hi) = degrees.fold((u64::MAX, 0), |(lo, hi), d| (lo.min(d), hi.max(d)));
            if lo == hi {
                lo.to_string()
            } else {
                format!("{lo}..{hi}")
            }
        }
    }
}

fn cmd_path(args: &InstanceArgs, from: &str, out: &mut dyn Write) -> CmdResult {
    let params = params_from(args)?;
    let symbols = parse_symbols(from)?;
    let walker = applicable_walker(&params);
    if walker.is_none() {
        let _ = writeln!(out, "feasibility: {}", feasibility(&params));
        let _ = writeln!(out, "no walker applies to {params}");
        return Ok(EXIT_INFEASIBLE);
    }
    let cert: PathCertificate = if symbols.len() == params.k() {
        let word = Word(symbols);
        if walker == Some(WalkerKind::General) {
            walk_general_from(&word, &params)?
        } else {
            walk(&word.prefix(params.s()), &params)?
        }
    } else if symbols.len() == params.s() {
        walk(&Vertex(symbols), &params)?
    } else {
        return Err(Error::InvalidVertex(format!(
            "{from} (expected {} or {} symbols)",
            params.s(),
            params.k()
        )));
    };
    let _ = writeln!(out, "walker: {}", walker.unwrap());
    let _ = write!(out, "{cert}");
    let _ = writeln!(out, "steps: {}", cert.len());
    match replay_certificate(&cert, &params) {
        Ok(()) => {
            let _ = writeln!(out, "replay: ok");
            Ok(EXIT_OK)
        }
        Err(v) => {
            let _ = writeln!(out, "replay: failed at {v}");
            Ok(EXIT_INVALID_CYCLE)
        }
    }
}

fn cmd_oracle(args: &InstanceArgs, budget: u64, out: &mut dyn Write) -> CmdResult {
    let params = params_from(args)?;
    let _ = writeln!(out, "instance: {params}");
    Ok(match hamilton_oracle(&params, budget)? {
        OracleOutcome::Witness(h) => {
            let _ = writeln!(out, "witness: {} objects", h.cycle.len());
            let _ = write!(out, "{}", emit_list(&h.cycle));
            EXIT_OK
        }
        OracleOutcome::NoCycle { nodes } => {
            let _ = writeln!(out, "no-cycle: search exhausted after {nodes} nodes");
            EXIT_INFEASIBLE
        }
        OracleOutcome::Exhausted { nodes } => {
            let _ = writeln!(out, "exhausted: budget of {nodes} nodes spent");
            EXIT_LIMIT
        }
    })
}
