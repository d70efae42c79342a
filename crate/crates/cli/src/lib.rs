//! Command-line front end: argument parsing, dispatch, caching and exit
//! codes. The binary is a one-line wrapper around [`run`].

pub mod cache;
pub mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::cache::Cache;
use crate::output::{envelope, render, Format, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

pub const CACHE_ENV: &str = "SURGERY_OBSTRUCTOR_CACHE";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] obstructor::Error),
    #[error("cache: {0}")]
    Cache(#[from] std::io::Error),
    #[error("output: {0}")]
    Output(#[from] csv::Error),
}

impl CliError {
    /// Bad inputs are usage errors. A cone that fails to stabilize or an
    /// internal check that fires is not the caller's fault.
    pub fn exit_code(&self) -> i32 {
        use obstructor::Error as E;
        match self {
            CliError::Core(E::Invariant(_) | E::NotStabilized(_) | E::HeightTooSmall(_)) => EXIT_INVARIANT,
            CliError::Output(_) => EXIT_INVARIANT,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "surgery-obstructor", version, about = "Obstructions to cosmetic surgery on genus-one knots")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Memo directory for computed tables.
    #[arg(long, env = CACHE_ENV, global = true)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Correction terms of S^3_{P/Q}(K).
    #[command(allow_negative_numbers = true)]
    DInv {
        p: i64,
        q: i64,
        #[arg(long, default_value = "unknot")]
        knot: String,
        /// Every Spin^c class rather than the self-conjugate ones.
        #[arg(long)]
        all_spinc: bool,
    },
    /// Do P/Q and P/Q' have equivalent Reidemeister torsion?
    #[command(allow_negative_numbers = true)]
    TorsionPair {
        p: i64,
        q: i64,
        q2: i64,
        #[arg(long, default_value = "rtrefoil")]
        knot: String,
    },
    /// Run the obstruction chain on the pair P/Q, P/Q'.
    #[command(allow_negative_numbers = true)]
    Verdict {
        p: i64,
        q: i64,
        q2: i64,
        #[arg(long)]
        knot: String,
    },
    /// Every candidate pair with |P| <= PMAX; reports the survivors.
    Enumerate {
        #[arg(long)]
        pmax: u64,
        /// Restrict to these models (default: every genus-one model).
        #[arg(long)]
        knot: Vec<String>,
    },
    /// Brute-force the torsion equation for 3 <= m <= MMAX.
    #[command(name = "verify-thm31")]
    VerifyThm31 {
        #[arg(long)]
        mmax: u64,
    },
    /// Independence of cyclotomic units with coefficients in [-BOX, BOX].
    Franz {
        #[arg(long)]
        m: u64,
        #[arg(long = "box")]
        bound: u32,
    },
    /// Casson-Walker invariant of S^3_{P/Q}(K).
    #[command(allow_negative_numbers = true)]
    Cw {
        p: i64,
        q: i64,
        #[arg(long)]
        knot: String,
    },
    /// Negative continued fraction of -P/Q.
    Cf { p: i64, q: i64 },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::DInv { .. } => "d-inv",
            Command::TorsionPair { .. } => "torsion-pair",
            Command::Verdict { .. } => "verdict",
            Command::Enumerate { .. } => "enumerate",
            Command::VerifyThm31 { .. } => "verify-thm31",
            Command::Franz { .. } => "franz",
            Command::Cw { .. } => "cw",
            Command::Cf { .. } => "cf",
        }
    }

    pub fn inputs(&self) -> Map<String, Value> {
        let v = match self {
            Command::DInv { p, q, knot, all_spinc } => json!({"p": p, "q": q, "knot": knot, "all_spinc": all_spinc}),
            Command::TorsionPair { p, q, q2, knot } | Command::Verdict { p, q, q2, knot } => {
                json!({"p": p, "q": q, "q2": q2, "knot": knot})
            }
            Command::Enumerate { pmax, knot } => json!({"pmax": pmax, "knots": knot}),
            Command::VerifyThm31 { mmax } => json!({"mmax": mmax}),
            Command::Franz { m, bound } => json!({"m": m, "box": bound}),
            Command::Cw { p, q, knot } => json!({"p": p, "q": q, "knot": knot}),
            Command::Cf { p, q } => json!({"p": p, "q": q}),
        };
        match v {
            Value::Object(m) => m,
            _ => unreachable!(),
        }
    }

    pub fn execute(&self) -> Result<Outcome, CliError> {
        match self {
            Command::DInv { p, q, knot, all_spinc } => commands::d_inv(*p, *q, knot, *all_spinc),
            Command::TorsionPair { p, q, q2, knot } => commands::torsion_pair(*p, *q, *q2, knot),
            Command::Verdict { p, q, q2, knot } => commands::verdict(*p, *q, *q2, knot),
            Command::Enumerate { pmax, knot } => commands::enumerate_cmd(*pmax, knot),
            Command::VerifyThm31 { mmax } => commands::verify_thm31(*mmax),
            Command::Franz { m, bound } => commands::franz(*m, *bound),
            Command::Cw { p, q, knot } => commands::cw(*p, *q, knot),
            Command::Cf { p, q } => commands::cf(*p, *q),
        }
    }
}

/// Parse `args`, run, write the envelope to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version also arrive here, on stdout
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(&cli) {
        Ok((text, violation)) => {
            let _ = out.write_all(text.as_bytes());
            match violation {
                Some(v) => {
                    let _ = writeln!(err, "error: invariant violated: {v}");
                    EXIT_INVARIANT
                }
                None => EXIT_OK,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, Option<String>), CliError> {
    let name = cli.command.name();
    let inputs = cli.command.inputs();
    let cache = cli.cache_dir.as_ref().map(Cache::new);
    let cached = cache.as_ref().and_then(|c| c.load(name, &inputs));
    let hit = cached.is_some();
    let outcome = match cached {
        Some(o) => o,
        None => {
            let o = cli.command.execute()?;
            if let Some(c) = &cache {
                c.store(name, &inputs, &o)?;
            }
            o
        }
    };
    let env = envelope(name, &inputs, &outcome.results, hit);
    Ok((render(cli.format, &env, &outcome.table)?, outcome.violation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use obstructor::Error as E;

    #[test]
    fn exit_codes_by_error() {
        assert_eq!(CliError::Core(E::NotCoprime(9, 3)).exit_code(), EXIT_USAGE);
        assert_eq!(CliError::Core(E::UnknownKnot("x".into())).exit_code(), EXIT_USAGE);
        assert_eq!(CliError::Core(E::Invariant("x".into())).exit_code(), EXIT_INVARIANT);
        assert_eq!(CliError::Core(E::NotStabilized(6)).exit_code(), EXIT_INVARIANT);
    }

    #[test]
    fn violation_sets_exit_two() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let cli = Cli::try_parse_from(["x", "franz", "--m", "9", "--box", "1"]).unwrap();
        let forged = Outcome {
            results: json!({"holds": false}),
            table: output::Table::new(&["holds"]),
            violation: Some("forged".into()),
        };
        cache.store(cli.command.name(), &cli.command.inputs(), &forged).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let dir = dir.path().to_str().unwrap();
        let code = run(["x", "franz", "--m", "9", "--box", "1", "--cache-dir", dir], &mut out, &mut err);
        assert_eq!(code, EXIT_INVARIANT);
        assert!(String::from_utf8(err).unwrap().contains("forged"));
        assert!(String::from_utf8(out).unwrap().contains("\"holds\": false"));
    }
}
