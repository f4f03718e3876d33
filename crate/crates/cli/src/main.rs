use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use plumbing_cli::{
    cmd_analyze, cmd_batch, cmd_blowup, cmd_hilbert, cmd_multiplicity, cmd_semigroup, load,
    read_graph, selfcheck, BlowUpAt, CliError, Format, Output,
};

/// Invariants of negative definite plumbing graphs with generic analytic
/// structure.
#[derive(Debug, Parser)]
#[command(name = "plumbing", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Abort any lattice enumeration after this many search nodes.
    #[arg(long, global = true)]
    max_box: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Genus, fundamental and maximal ideal cycles, class and multiplicity.
    Analyze { path: PathBuf },
    /// Multiplicity and base points at the maximal ideal cycle, or base
    /// points of O(-l') for `--class`.
    Multiplicity {
        path: PathBuf,
        #[arg(long)]
        class: Option<String>,
    },
    /// Membership of a Chern class in the analytic semigroup.
    Semigroup {
        path: PathBuf,
        #[arg(long)]
        class: String,
    },
    /// Hilbert function values h(k * l0) for k = 0..=range.
    Hilbert {
        path: PathBuf,
        /// l0; defaults to Z_max.
        #[arg(long)]
        cycle: Option<String>,
        #[arg(long, default_value_t = 3)]
        range: u32,
    },
    /// Blow up a generic point of a vertex or an intersection point.
    Blowup {
        path: PathBuf,
        #[arg(long, conflicts_with = "edge", required_unless_present = "edge")]
        vertex: Option<i64>,
        /// Edge as `u,w`.
        #[arg(long, value_parser = parse_edge)]
        edge: Option<(i64, i64)>,
    },
    /// Run the invariant suite, with oracle comparison on small graphs.
    Selfcheck { path: PathBuf },
    /// Analyze every `*.json` graph in a directory.
    Batch {
        #[arg(long)]
        corpus: PathBuf,
    },
}

fn parse_edge(s: &str) -> Result<(i64, i64), String> {
    let (u, w) = s.split_once(',').ok_or("expected u,w")?;
    let id = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((id(u)?, id(w)?))
}

fn emit(out: &Output, format: Format) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.render(format).as_bytes());
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Analyze { path } => emit(&cmd_analyze(&load(&path, cli.max_box)?)?, format),
        Command::Multiplicity { path, class } => emit(
            &cmd_multiplicity(&load(&path, cli.max_box)?, class.as_deref())?,
            format,
        ),
        Command::Semigroup { path, class } => {
            emit(&cmd_semigroup(&load(&path, cli.max_box)?, &class)?, format)
        }
        Command::Hilbert { path, cycle, range } => emit(
            &cmd_hilbert(&load(&path, cli.max_box)?, cycle.as_deref(), range)?,
            format,
        ),
        Command::Blowup { path, vertex, edge } => {
            let g = read_graph(&path)?;
            let at = match (vertex, edge) {
                (Some(v), _) => BlowUpAt::Vertex(v),
                (None, Some((u, w))) => BlowUpAt::Edge(u, w),
                (None, None) => return Err(CliError::Argument("--vertex or --edge".into())),
            };
            emit(&cmd_blowup(&g, at)?, format);
        }
        Command::Selfcheck { path } => {
            let (out, passed) = selfcheck::run(&load(&path, cli.max_box)?)?;
            emit(&out, format);
            if !passed {
                return Ok(2);
            }
        }
        Command::Batch { corpus } => {
            let (out, code) = cmd_batch(&corpus, cli.max_box)?;
            emit(&out, format);
            return Ok(code);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("PLUMBING_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
