//! The `gkm` command-line tool.
//!
//! Exit codes: 0 on success, 1 on a negative verdict under `--strict` or a
//! corpus mismatch, 2 on input or usage errors.

mod commands;
pub mod corpus;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use gkm_core::format::{parse_graph_file, parse_graph_file_strict, GraphFile};
use gkm_core::GkmError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Environment variable overriding the corpus directory.
pub const CORPUS_ENV: &str = "GKM_CORPUS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Q,
    Z,
}

fn parse_cap(s: &str) -> Result<usize, String> {
    let cap: usize = s.parse().map_err(|_| format!("`{s}` is not a nonnegative integer"))?;
    if cap % 2 == 1 {
        return Err(format!("degree cap must be even, got {cap}"));
    }
    Ok(cap)
}

#[derive(Debug, Parser)]
#[command(name = "gkm", version, about = "Exact checks on 3-valent GKM graphs with labels in Z^2")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest cohomological degree to compute (even).
    #[arg(long, global = true, default_value_t = 20, value_parser = parse_cap)]
    degree_cap: usize,
    /// Use the connection with this index in the enumeration.
    #[arg(long, global = true)]
    connection: Option<u64>,
    /// Exit with status 1 on negative verdicts; reject unknown fields.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the graph axioms, effectivity and connected isotropy.
    Validate { file: PathBuf },
    /// Enumerate compatible connections; show transitions and paths of the
    /// selected one.
    Connections {
        file: PathBuf,
        /// Maximum number of connections listed.
        #[arg(long, default_value_t = 16)]
        limit: usize,
    },
    /// Decide orientability under the selected connection.
    Orientability { file: PathBuf },
    /// Degreewise equivariant cohomology, Betti numbers and Poincaré duality.
    Cohomology {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RingArg::Q)]
        ring: RingArg,
        /// Include basis rows of every degree.
        #[arg(long)]
        bases: bool,
    },
    /// Certify integral freeness up to the degree cap.
    Freeness { file: PathBuf },
    /// Build and classify the surface of connection paths.
    Surface {
        file: PathBuf,
        /// Write the polygon-gluing presentation (JSON) to this path.
        #[arg(long)]
        emit_complex: Option<PathBuf>,
    },
    /// Full realizability verdict.
    Verdict { file: PathBuf },
    /// Compare every corpus graph's report with its golden file.
    Corpus {
        /// Corpus directory; defaults to $GKM_CORPUS, then `./corpus`.
        dir: Option<PathBuf>,
        /// Rewrite the golden files instead of comparing.
        #[arg(long)]
        update: bool,
    },
}

/// Shared settings handed to every subcommand.
pub(crate) struct Settings {
    pub format: Format,
    pub degree_cap: usize,
    pub connection: Option<u64>,
    pub strict: bool,
}

/// Outcome of a subcommand before printing.
pub(crate) struct Output {
    pub json: serde_json::Value,
    pub text: String,
    pub negative: bool,
}

pub(crate) fn load(path: &Path, strict: bool, err: &mut dyn Write) -> Result<GraphFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let parsed = if strict { parse_graph_file_strict(&text) } else { parse_graph_file(&text) };
    let file = parsed.map_err(|e| match e {
        GkmError::Syntax { .. } => format!("{}:{e}", path.display()),
        other => format!("{}: {other}", path.display()),
    })?;
    for w in &file.warnings {
        let _ = writeln!(err, "warning: {}: unknown field `{w}`", path.display());
    }
    Ok(file)
}

/// Runs the tool with explicit output streams; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let settings = Settings {
        format: cli.format,
        degree_cap: cli.degree_cap,
        connection: cli.connection,
        strict: cli.strict,
    };
    let result = match cli.command {
        Command::Corpus { dir, update } => {
            let dir = dir
                .or_else(|| std::env::var_os(CORPUS_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("corpus"));
            return corpus::run_corpus(&dir, update, settings.format, out, err);
        }
        Command::Validate { file } => commands::validate(&settings, &file, err),
        Command::Connections { file, limit } => commands::connections(&settings, &file, limit, err),
        Command::Orientability { file } => commands::orientability(&settings, &file, err),
        Command::Cohomology { file, ring, bases } => commands::cohomology(&settings, &file, ring, bases, err),
        Command::Freeness { file } => commands::freeness(&settings, &file, err),
        Command::Surface { file, emit_complex } => {
            commands::surface(&settings, &file, emit_complex.as_deref(), err)
        }
        Command::Verdict { file } => commands::verdict(&settings, &file, err),
    };
    match result {
        Ok(output) => {
            let printed = match settings.format {
                Format::Json => serde_json::to_string_pretty(&output.json).expect("json") + "\n",
                Format::Text => output.text,
            };
            let _ = out.write_all(printed.as_bytes());
            if settings.strict && output.negative {
                EXIT_NEGATIVE
            } else {
                EXIT_OK
            }
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT
        }
    }
}

/// Runs the tool on the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
