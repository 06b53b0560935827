//! `btfree`: command-line front end for constructions, detection, audits,
//! exact search, embeddings and bound tables.
//!
//! JSON goes to standard output, one object per line; graphs are graph6
//! (bipartite graphs carry a `bip <|X|> <|Y|>` header line). Every run ends
//! with a manifest (command, parameters, versions, digests) written to the
//! `--manifest` path or, failing that, to standard error.

mod commands;
mod manifest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use manifest::{InputDigest, RunManifest};

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "BTFREE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "btfree", version, about = "Graphs without t four-cycles on a common edge")]
pub struct Cli {
    /// Seed for randomized constructions.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the run manifest here instead of to standard error.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    G6,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a construction and print it.
    Construct(ConstructArgs),
    /// Search each input graph for a copy of B_t.
    Detect(DetectArgs),
    /// Run the counting inequalities on each input graph.
    Audit(AuditArgs),
    /// Exact extremal number for small n.
    Solve(SolveArgs),
    /// Host condition, greedy embedding, deletion process or certification.
    Embed(EmbedArgs),
    /// Closed-form coefficients, the bound table, or the B_2 balance constant.
    Bounds(BoundsArgs),
    /// Re-run a manifest and compare output digests.
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Polarity graph of PG(2, q).
    Er,
    /// Point-line incidence graph of PG(2, q).
    Incidence,
    /// Uniform blow-up of the polarity graph (`--q`, `--s`).
    BlowUp,
    /// Bipartite (a, b)-blow-up of the incidence graph (`--q`, `--a`, `--b`).
    BipartiteBlowUp,
    /// Largest fitting B_t-free blow-up padded to n (`--t`, `--n`).
    BtFree,
    /// Bipartite variant of `bt-free` (`--t`, `--n`).
    BipartiteBtFree,
    /// Randomized B_2s-free blow-up (`--s`, `--q`, optional `--p`, `--seed`).
    RandomEven,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Fraction of enlarged vertices (default: the optimal value for s).
    #[arg(long)]
    pub p: Option<f64>,
}

/// Graph input shared by the streaming commands.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// graph6/sparse6 stream, one graph per line; `-` reads standard input.
    #[arg(long, short, default_value = "-")]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[arg(long)]
    pub t: usize,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long)]
    pub t: usize,
    /// Comma-separated subset of lemma21, lemma22, peredge, spider.
    #[arg(long, default_value = "lemma21,lemma22,peredge,spider")]
    pub checks: String,
    /// Largest accepted t.
    #[arg(long, default_value_t = btfree::audit::DEFAULT_MAX_T)]
    pub max_t: usize,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SymmetryArg {
    On,
    Off,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: usize,
    /// Bipartite host graphs, best over all part sizes.
    #[arg(long)]
    pub bipartite: bool,
    #[arg(long, value_enum, default_value_t = SymmetryArg::On)]
    pub symmetry: SymmetryArg,
    /// Search-node budget; exhausting it exits with status 3.
    #[arg(long, default_value_t = btfree::solver::SearchConfig::default().node_budget)]
    pub budget: u64,
    /// Allow n beyond the default caps (at most 16).
    #[arg(long)]
    pub unsafe_budget: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EmbedMode {
    /// Check the host condition only.
    Condition,
    /// Greedy embedding (needs the condition).
    Embed,
    /// Deletion process with its ledger.
    Delete,
    /// Embedding in either orientation, or deletion traces for both.
    Certify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Permissive,
    Strict,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long, value_enum, default_value_t = EmbedMode::Certify)]
    pub mode: EmbedMode,
    /// Tree as a parent list, e.g. `0,0,1`.
    #[arg(long, conflicts_with_all = ["path", "fspec"])]
    pub tree: Option<String>,
    /// Path tree on this many vertices.
    #[arg(long, conflicts_with = "fspec")]
    pub path: Option<usize>,
    /// Operation sequence as JSON (`{"ops":[{"a":0,"b":0,"r":1}]}`) or `@file`.
    #[arg(long)]
    pub fspec: Option<String>,
    /// Host parameter for `condition` and `delete` when no pattern is given.
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, value_enum, default_value_t = PolicyArg::Permissive)]
    pub policy: PolicyArg,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Rows for t = 1..=T in both host classes.
    #[arg(long, conflicts_with_all = ["solve_b2", "coefficient", "limit"])]
    pub table: Option<usize>,
    /// Solve for the bipartite B_2 balance constant.
    #[arg(long, conflicts_with_all = ["coefficient", "limit"])]
    pub solve_b2: bool,
    /// Coefficient id, e.g. `upper_general`, `lower_even`, `f`.
    #[arg(long)]
    pub coefficient: Option<String>,
    /// Comma-separated parameters of the coefficient.
    #[arg(long, default_value = "", requires = "coefficient")]
    pub params: String,
    /// Ratio to the limit at this s (general) and t (bipartite).
    #[arg(long)]
    pub limit: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run.
    pub manifest_path: PathBuf,
}

/// Exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_FOUND: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

/// Failure of a command, mapped onto an exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Budget(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<btfree::Error> for Failure {
    fn from(e: btfree::Error) -> Self {
        match e {
            btfree::Error::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Standard output plus a running digest of every byte written.
pub struct Sink<'a> {
    inner: &'a mut (dyn Write + Send),
    hasher: Sha256,
}

impl<'a> Sink<'a> {
    pub fn new(inner: &'a mut (dyn Write + Send)) -> Self {
        Sink {
            inner,
            hasher: Sha256::new(),
        }
    }

    pub fn line(&mut self, s: &str) -> std::io::Result<()> {
        self.write_all(s.as_bytes())?;
        self.write_all(b"\n")
    }

    pub fn json<T: serde::Serialize>(&mut self, v: &T) -> std::io::Result<()> {
        let s = serde_json::to_string(v).map_err(std::io::Error::other)?;
        self.line(&s)
    }

    fn digest(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

impl Write for Sink<'_> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.hasher.update(&buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

/// Outcome of a dispatched command.
pub struct Run {
    pub exit: u8,
    pub output_sha256: String,
    pub inputs: Vec<InputDigest>,
}

/// Parse `args` (without the program name), run, and write to `out`. The
/// manifest is handled by the caller.
pub fn execute(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<Run, Failure> {
    let mut sink = Sink::new(out);
    let mut inputs = Vec::new();
    let exit = btfree::exec::with_threads(cli.threads, || commands::dispatch(cli, &mut sink, &mut inputs))?;
    sink.flush()?;
    Ok(Run {
        exit,
        output_sha256: sink.digest(),
        inputs,
    })
}

fn exit_for(f: &Failure) -> u8 {
    match f {
        Failure::Usage(_) | Failure::Io(_) => EXIT_USAGE,
        Failure::Budget(_) => EXIT_BUDGET,
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let mut stdout = std::io::BufWriter::new(std::io::stdout());
    let result = execute(&cli, &mut stdout);
    let _ = stdout.flush();
    let (exit, run) = match result {
        Ok(run) => (run.exit, Some(run)),
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Budget(m) => eprintln!("error: {m}"),
                Failure::Io(e) => eprintln!("error: {e}"),
            }
            (exit_for(&f), None)
        }
    };
    if let (Some(run), false) = (run, matches!(cli.command, Command::Replay(_))) {
        let m = RunManifest::new(&cli, &argv[1..], run.inputs, run.output_sha256, exit);
        if let Err(e) = m.emit(cli.manifest.as_deref()) {
            eprintln!("error: could not write manifest: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    ExitCode::from(exit)
}
