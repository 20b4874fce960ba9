//! The `sds` command-line front end.
//!
//! Exit codes: `decide` and `corpus` return 0 for a positive semi-definite
//! verdict, 1 for a counterexample and 2 when inconclusive;
//! `verify-certificate` returns 0 for a valid certificate and 1 otherwise;
//! `oracle` and `subdivision` return 0. Usage, parse and I/O errors return 3.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus::{corpus_entry, corpus_ids, parse_job_file};
use crate::engine::{verify_certificate, yys_decide, EngineConfig, Verdict};
use crate::geometry::{enumerate_cells, DEFAULT_CELL_BUDGET};
use crate::oracle::{grid_min, random_negative_search, GridSpec, DEFAULT_GRID_BUDGET};
use crate::polynomial::{parse_form, validate_vars, Form, NegativityMode};
use crate::report::{
    certificate_to_records, records_to_certificate, to_json, CellReport, CertificateRecord, DecisionReport,
    InputEcho, OracleReport,
};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sds")]
#[command(
    about = "Decide nonnegativity of forms on the nonnegative orthant by successive weighted difference substitution"
)]
#[command(version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a form given inline or in a file
    Decide {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Run the decision procedure on a bundled example
    Corpus {
        /// Corpus id; omit to list the available ids
        name: Option<String>,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Sample the form over the simplex by brute force
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        /// Evaluate on every point a/N of the simplex grid
        #[arg(long, conflicts_with = "random_trials")]
        grid_denominator: Option<u64>,
        /// Number of random rational points to try
        #[arg(long)]
        random_trials: Option<u64>,
        /// Seed for --random-trials
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Dump the cells of the m-th barycentric subdivision of the simplex
    Subdivision {
        /// Number of variables (simplex dimension plus one)
        #[arg(long, short = 'n')]
        nvars: usize,
        /// Subdivision depth
        #[arg(long, short = 'm', default_value_t = 1)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check a positivity certificate against its form
    VerifyCertificate {
        #[command(flatten)]
        input: InputArgs,
        /// Certificate JSON written by `decide --certificate-out`
        #[arg(long)]
        certificate: PathBuf,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Polynomial text, e.g. "x^2 - x*y + y^2"
    polynomial: Option<String>,
    /// Read the polynomial from a file instead
    #[arg(long, conflicts_with = "polynomial")]
    file: Option<PathBuf>,
    /// Comma-separated variable order
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct EngineArgs {
    #[arg(long, default_value_t = 30)]
    max_depth: u32,
    #[arg(long, value_enum)]
    negativity_mode: Option<ModeArg>,
    /// Keep structurally identical frontier forms
    #[arg(long)]
    no_dedup: bool,
    /// Skip the negativity test on the input form itself
    #[arg(long)]
    no_root_check: bool,
    /// Coefficient negativity test, no root check, no deduplication
    #[arg(long)]
    compat: bool,
    /// Maximum number of forms generated per level
    #[arg(long, env = "SDS_NODE_BUDGET", default_value_t = 1_000_000)]
    node_budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the positivity certificate to this path
    #[arg(long)]
    certificate_out: Option<PathBuf>,
    /// Worker threads (defaults to the number of cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Include wall-clock time in the report
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Value,
    Coeffs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl EngineArgs {
    fn config(&self) -> EngineConfig {
        let mut cfg = if self.compat {
            EngineConfig::compat()
        } else {
            EngineConfig::default()
        };
        cfg.max_depth = self.max_depth;
        cfg.node_budget = self.node_budget;
        if let Some(mode) = self.negativity_mode {
            cfg.negativity_mode = match mode {
                ModeArg::Value => NegativityMode::Value,
                ModeArg::Coeffs => NegativityMode::Coeffs,
            };
        }
        if self.no_dedup {
            cfg.dedup = false;
        }
        if self.no_root_check {
            cfg.root_check = false;
        }
        cfg.emit_certificate = self.certificate_out.is_some();
        cfg
    }
}

struct LoadedInput {
    text: String,
    vars: Vec<String>,
    form: Form,
}

impl InputArgs {
    fn load(&self) -> Result<LoadedInput> {
        let (text, file_vars) = match (&self.polynomial, &self.file) {
            (Some(text), None) => (text.clone(), None),
            (None, Some(path)) => {
                let raw =
                    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let job = parse_job_file(&raw);
                (job.polynomial, job.vars)
            }
            _ => bail!("give the polynomial inline or with --file"),
        };
        let Some(vars) = self.vars.clone().or(file_vars) else {
            bail!("no variable list: pass --vars or add a `# vars:` line to the file");
        };
        validate_vars(&vars)?;
        let form = parse_form(&text, &vars)?;
        Ok(LoadedInput { text, vars, form })
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json = wants_json(&args);
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(err) => {
            if !err.use_stderr() {
                let _ = err.print();
                return 0;
            }
            if json {
                print_json_error(&err.kind().to_string());
            }
            let _ = err.print();
            return EXIT_ERROR;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            if json {
                print_json_error(&format!("{err:#}"));
            }
            eprintln!("error: {err:#}");
            EXIT_ERROR
        }
    }
}

/// Whether the raw arguments ask for JSON output, so that failures can
/// still be reported as JSON on stdout.
fn wants_json(args: &[OsString]) -> bool {
    let args: Vec<_> = args.iter().map(|a| a.to_string_lossy()).collect();
    args.iter().any(|a| a == "--format=json") || args.windows(2).any(|w| w[0] == "--format" && w[1] == "json")
}

fn print_json_error(message: &str) {
    println!("{}", serde_json::json!({ "error": message }));
}

fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Decide { input, engine } => {
            let loaded = input.load()?;
            let echo = InputEcho {
                polynomial: loaded.text.clone(),
                vars: loaded.vars.clone(),
                corpus: None,
            };
            decide(&loaded.form, &loaded.vars, echo, &engine)
        }
        Command::Corpus { name, engine } => {
            let Some(name) = name else {
                for id in corpus_ids() {
                    println!("{id}");
                }
                return Ok(0);
            };
            let Some(entry) = corpus_entry(&name) else {
                bail!(
                    "unknown corpus id `{name}` (available: {})",
                    corpus_ids().join(", ")
                );
            };
            let job = entry.job();
            let vars = entry.vars();
            let form = entry.form()?;
            let echo = InputEcho {
                polynomial: job.polynomial,
                vars: vars.clone(),
                corpus: Some(name),
            };
            decide(&form, &vars, echo, &engine)
        }
        Command::Oracle {
            input,
            grid_denominator,
            random_trials,
            seed,
            format,
        } => {
            let loaded = input.load()?;
            let report = match (grid_denominator, random_trials) {
                (Some(n), None) => {
                    let grid = GridSpec {
                        denominator: n,
                        nvars: loaded.form.nvars(),
                    };
                    let g = grid_min(&loaded.form, &grid, DEFAULT_GRID_BUDGET)?;
                    OracleReport::grid(&g.min, &g.argmin)
                }
                (None, Some(trials)) => {
                    if trials == 0 {
                        bail!("--random-trials must be at least 1");
                    }
                    let hit = random_negative_search(&loaded.form, trials, seed);
                    OracleReport::random(hit.as_ref())
                }
                _ => bail!("pass exactly one of --grid-denominator or --random-trials"),
            };
            match format {
                Format::Json => println!("{}", to_json(&report)?),
                Format::Text => match &report {
                    OracleReport::Grid { min, argmin } => {
                        println!("grid minimum: {min} at ({})", argmin.join(", "))
                    }
                    OracleReport::Random {
                        found: true,
                        point: Some(p),
                        value: Some(v),
                    } => {
                        println!("negative value {v} at ({})", p.join(", "))
                    }
                    OracleReport::Random { .. } => println!("no negative value found"),
                },
            }
            Ok(0)
        }
        Command::Subdivision { nvars, depth, format } => {
            let cells = enumerate_cells(nvars, depth, DEFAULT_CELL_BUDGET)?;
            let reports: Vec<CellReport> = cells.iter().map(CellReport::from).collect();
            match format {
                Format::Json => println!("{}", to_json(&reports)?),
                Format::Text => {
                    for r in &reports {
                        let verts: Vec<String> =
                            r.vertices.iter().map(|v| format!("({})", v.join(", "))).collect();
                        println!("{} {} d^2={}", r.chain, verts.join(" "), r.squared_diameter);
                    }
                }
            }
            Ok(0)
        }
        Command::VerifyCertificate { input, certificate } => {
            let loaded = input.load()?;
            let raw = std::fs::read_to_string(&certificate)
                .with_context(|| format!("reading {}", certificate.display()))?;
            let records: Vec<CertificateRecord> =
                serde_json::from_str(&raw).context("parsing certificate JSON")?;
            let cert = records_to_certificate(&records, &loaded.vars, loaded.form.degree())?;
            if verify_certificate(&loaded.form, &cert) {
                println!("certificate valid ({} entries)", cert.len());
                Ok(0)
            } else {
                println!("certificate INVALID");
                Ok(1)
            }
        }
    }
}

fn decide(form: &Form, vars: &[String], echo: InputEcho, args: &EngineArgs) -> Result<i32> {
    let cfg = args.config();
    let threads = args
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .context("building thread pool")?;
    let start = Instant::now();
    let decision = pool.install(|| yys_decide(form, &cfg))?;
    let elapsed = start.elapsed().as_secs_f64();

    let mut report = DecisionReport::new(echo, &cfg, &decision);
    if args.timing {
        report.stats.wall_time = Some(elapsed);
    }
    if let (
        Some(path),
        Verdict::PositiveSemidefinite {
            certificate: Some(cert),
            ..
        },
    ) = (&args.certificate_out, &decision.verdict)
    {
        let records = certificate_to_records(cert, vars);
        std::fs::write(path, to_json(&records)?).with_context(|| format!("writing {}", path.display()))?;
        report.verdict.certificate_path = Some(path.display().to_string());
    }
    match args.format {
        Format::Json => println!("{}", to_json(&report)?),
        Format::Text => println!("{}", report.to_text()),
    }
    Ok(match decision.verdict {
        Verdict::PositiveSemidefinite { .. } => EXIT_POSITIVE,
        Verdict::Counterexample { .. } => EXIT_COUNTEREXAMPLE,
        Verdict::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compat_flag_sets_reference_semantics() {
        let cli = Cli::try_parse_from(["sds", "corpus", "example2", "--compat"]).unwrap();
        let Command::Corpus { engine, .. } = cli.command else {
            panic!("wrong subcommand");
        };
        assert_eq!(engine.config(), EngineConfig::compat());
    }

    #[test]
    fn explicit_flags_override_defaults() {
        let cli = Cli::try_parse_from([
            "sds",
            "decide",
            "x*y",
            "--vars",
            "x,y",
            "--negativity-mode",
            "coeffs",
            "--no-dedup",
            "--max-depth",
            "4",
            "--node-budget",
            "99",
        ])
        .unwrap();
        let Command::Decide { engine, input } = cli.command else {
            panic!("wrong subcommand");
        };
        let cfg = engine.config();
        assert_eq!(cfg.negativity_mode, NegativityMode::Coeffs);
        assert!(!cfg.dedup);
        assert!(cfg.root_check);
        assert_eq!(cfg.max_depth, 4);
        assert_eq!(cfg.node_budget, 99);
        assert_eq!(input.vars, Some(vec!["x".to_string(), "y".to_string()]));
    }

    #[test]
    fn usage_errors_exit_above_two() {
        assert_eq!(run(["sds", "decide", "--bogus"]), EXIT_ERROR);
        assert_eq!(run(["sds", "decide", "x + y^2", "--vars", "x,y"]), EXIT_ERROR);
        assert_eq!(run(["sds", "decide", "x*y"]), EXIT_ERROR);
        assert_eq!(run(["sds", "corpus", "nope"]), EXIT_ERROR);
    }

    #[test]
    fn json_requests_are_detected() {
        let os = |v: &[&str]| v.iter().map(OsString::from).collect::<Vec<_>>();
        assert!(wants_json(&os(&["sds", "decide", "--format", "json"])));
        assert!(wants_json(&os(&["sds", "decide", "--format=json"])));
        assert!(!wants_json(&os(&["sds", "decide", "--format", "text"])));
    }
}
