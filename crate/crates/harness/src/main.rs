use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dkoszul_core::glrep::ConstructionName;
use dkoszul_core::superspace::SuperSpace;
use dkoszul_harness::commands::{self, ExportKind};
use dkoszul_harness::plan::parse_checks;
use dkoszul_harness::{run_with_cache, Cache, HarnessError, VerificationPlan, EXIT_CONFIG};

#[derive(Parser)]
#[command(name = "dkoszul", version, about = "Exact verification of the double Koszul complex and its gl(m|n)-modules")]
struct Cli {
    /// Cache directory; the DKOSZUL_CACHE_DIR environment variable takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Parser)]
struct Alphabet {
    #[arg(long, default_value_t = 3)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
}

impl Alphabet {
    fn space(&self) -> Result<SuperSpace, HarnessError> {
        SuperSpace::new(self.m, self.n).map_err(|e| HarnessError::Config(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification plan and report per-claim results.
    Verify {
        #[command(flatten)]
        alphabet: Alphabet,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        #[arg(long, default_value_t = 4)]
        max_l: usize,
        #[arg(long, default_value_t = 2)]
        max_i: usize,
        #[arg(long, default_value_t = 2)]
        max_a: usize,
        #[arg(long, default_value_t = 3)]
        max_p: usize,
        #[arg(long, default_value_t = 3)]
        max_r: usize,
        #[arg(long, default_value_t = 5000)]
        max_dim: usize,
        /// Comma-separated subset of identities, exactness, commutativity,
        /// equivariance, spectra, splittings, constructions, characters; or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Do not read or write the disk cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Build a named module, e.g. `construct Ysummand 1 1`.
    Construct {
        name: String,
        params: Vec<usize>,
        #[command(flatten)]
        alphabet: Alphabet,
        #[arg(long, default_value_t = 5000)]
        max_dim: usize,
    },
    /// Exact spectrum of `delpqd <i> <a>` or `pdeldq <i> <k> <a>`.
    Spectrum {
        prop: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
    },
    /// Evaluate a character formula at a label such as `(2,1,0|-1)`.
    Character {
        formula: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },
    /// Canonical export: `matrix d:1,1`, `basis ext:2` or `report <digest>`.
    Export {
        what: String,
        key: String,
        #[command(flatten)]
        alphabet: Alphabet,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn say(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), HarnessError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| HarnessError::Io { path: p.clone(), source: e }),
        None => {
            say(text);
            say("\n");
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("value serializes") + "\n"
}

fn main_inner(cli: Cli) -> Result<i32, HarnessError> {
    let cache_dir = Cache::resolve_dir(cli.cache_dir.as_deref());
    match cli.command {
        Command::Verify {
            alphabet,
            max_k,
            max_l,
            max_i,
            max_a,
            max_p,
            max_r,
            max_dim,
            checks,
            jobs,
            json,
            no_cache,
        } => {
            let plan = VerificationPlan {
                m: alphabet.m,
                n: alphabet.n,
                max_k,
                max_l,
                max_i,
                max_a,
                max_p,
                max_r,
                checks: parse_checks(&checks)?,
                max_dim,
                jobs,
            };
            plan.validate()?;
            let cache = if no_cache { None } else { Some(Cache::open(&cache_dir)?) };
            let report = run_with_cache(&plan, cache.as_ref())?;
            say(&report.render_text());
            say(&format!("plan digest {}\n", report.plan_digest));
            if let Some(p) = json {
                emit(&report.to_json(), Some(&p))?;
            }
            Ok(report.exit_code())
        }
        Command::Construct { name, params, alphabet, max_dim } => {
            let name = ConstructionName::from_parts(&name, &params)?;
            let (report, module) = commands::construct_cmd(alphabet.space()?, name, max_dim)?;
            say(&pretty(&serde_json::json!({ "module": module, "report": report })));
            Ok(report.exit_code())
        }
        Command::Spectrum { prop, params } => {
            let op = commands::parse_spectral(&prop, &params)?;
            say(&pretty(&commands::spectrum_cmd(SuperSpace::standard(), op)?));
            Ok(0)
        }
        Command::Character { formula, lambda } => {
            let l = commands::parse_lambda(&lambda)?;
            say(&pretty(&commands::character_cmd(&formula, l)?));
            Ok(0)
        }
        Command::Export { what, key, alphabet, out } => {
            let what: ExportKind = what.parse()?;
            let cache = Cache::open(&cache_dir)?;
            let text = commands::export(what, &key, alphabet.space()?, &cache)?;
            emit(&text, out.as_ref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG as u8)
        }
    }
}
