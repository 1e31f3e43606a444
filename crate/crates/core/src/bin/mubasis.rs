use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mubasis::cli::{run, to_json, to_text, Command, InputSpec, EXIT_INVALID};

const GRAMMAR: &str = "Input is one tuple \"(e1, e2, e3, e4)\" of polynomials in s and t, e.g. \
\"(s^2, t^2, s^2-1, s^2+1)\". Terms are rational coefficients (3, -1/2) times powers s^k, t^k; \
'*' is optional (2s t), '**' is rejected, whitespace is ignored.";

#[derive(Parser)]
#[command(name = "mubasis", version, about = "μ-bases of rational surface parametrizations", after_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute and verify a μ-basis, with resolution data and bound checks.
    Compute(Common),
    /// Resolution of the homogenized ideal only.
    Resolve(Common),
    /// Bound formulas and checks only.
    Bounds(Common),
    /// Check that a given triple is a μ-basis.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Three 4-vectors, "((..), (..), (..))".
        #[arg(long)]
        basis: String,
    },
}

#[derive(Args)]
struct Common {
    /// The parametrization tuple.
    input: Option<String>,
    /// Read the tuple from a file.
    #[arg(short = 'i', long = "input-file", conflicts_with = "input")]
    file: Option<PathBuf>,
    /// Print a JSON document instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Time limit in seconds.
    #[arg(long, default_value_t = 300)]
    timeout: u64,
    #[arg(long, default_value_t = 20)]
    max_degree: u32,
    /// Include per-stage wall-clock times.
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, common, basis) = match cli.command {
        Cmd::Compute(c) => (Command::Compute, c, None),
        Cmd::Resolve(c) => (Command::Resolve, c, None),
        Cmd::Bounds(c) => (Command::Bounds, c, None),
        Cmd::Verify { common, basis } => (Command::Verify, common, Some(basis)),
    };
    let text = match (&common.input, &common.file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("cannot read {}: {e}", path.display());
                return ExitCode::from(EXIT_INVALID as u8);
            }
        },
        (None, None) => {
            eprintln!("no input given; pass a tuple or -i <file>");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let spec = InputSpec {
        text,
        basis,
        seed: common.seed,
        max_degree: common.max_degree,
        timeout_secs: common.timeout,
        timings: common.timings,
    };
    let (doc, code) = run(cmd, &spec);
    let out = if common.json { to_json(&doc) } else { to_text(&doc) };
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{out}");
    ExitCode::from(code as u8)
}
