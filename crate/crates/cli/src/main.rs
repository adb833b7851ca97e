use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use o1loop::exactnum::CycNum;
use o1loop::exec::Exec;
use o1loop::fpl::{census, census_compare, enumerate_fpl, enumerate_htsfpl};
use o1loop::linkpat::Kind;
use o1loop::pipeline::{run_check_entry, run_verify_all, Cache, CheckSpec, Identity, Status, VerifyPlan};
use o1loop::schur::{schur_eval, CountTable, YoungDiagram};
use o1loop::spin::spin_ground_state;
use o1loop::transfer::{eigenvector_any, Param};

/// Exact ground states of the O(1) loop model and the XXZ chain at Δ = −1/2.
#[derive(Parser)]
#[command(name = "o1loop", version)]
struct Cli {
    /// Run every data-parallel loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Loop-model ground state at a point.
    Eigvec(EigvecArgs),
    /// Spin-chain ground state and identities.
    #[command(subcommand)]
    Spin(SpinCommand),
    /// Run one loop-model identity at random points.
    Verify(VerifyArgs),
    /// Table of A_n, A_HT and related counts as CSV.
    Counts {
        /// Largest n.
        #[arg(long, default_value_t = 10)]
        max: u64,
    },
    /// Evaluate a Schur function.
    Schur(SchurArgs),
    /// Fully packed loop enumeration.
    #[command(subcommand)]
    Fpl(FplCommand),
    /// Run a whole verification plan.
    VerifyAll(VerifyAllArgs),
    /// Inspect the record cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
        /// Cache directory (overridden by O1LOOP_CACHE_DIR).
        #[arg(long, global = true)]
        dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Odd,
    Even,
    Punctured,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Odd => Kind::Odd,
            KindArg::Even => Kind::Even,
            KindArg::Punctured => Kind::Punctured,
        }
    }
}

#[derive(Args)]
struct EigvecArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    size: usize,
    /// Comma-separated spectral parameters (rationals or `inf`); default all 1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    z: Vec<String>,
    /// Spectral parameter of the auxiliary line; default the smallest integer ≥ 2 that is regular.
    #[arg(long)]
    t: Option<String>,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Read and store records in this cache directory.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SpinCommand {
    /// Ground state of the twisted transfer matrix, keyed by +/- words.
    Eigvec {
        #[arg(long)]
        size: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        z: Vec<String>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one spin identity.
    Verify {
        #[arg(long, value_enum)]
        identity: SpinIdentity,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Print the report entry as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpinIdentity {
    Intertwine,
    #[value(name = "QPminus", alias = "qpminus")]
    QPminus,
    Sumrules,
    Bilinear,
    Rank,
}

#[derive(Clone, Copy, ValueEnum)]
enum LoopIdentity {
    Exchange,
    Cyclic,
    Recursion,
    Sumrule,
    Projection,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    identity: LoopIdentity,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    size: usize,
    #[arg(long, default_value_t = 5)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SchurArgs {
    /// Partition as comma-separated rows.
    #[arg(long, value_delimiter = ',', conflicts_with = "staircase")]
    shape: Vec<u32>,
    /// One of the staircases Y_{n+1} (full), Y'_n (primed), Y_n (plain).
    #[arg(long, value_enum, requires = "n")]
    staircase: Option<StaircaseArg>,
    #[arg(long)]
    n: Option<u32>,
    /// Comma-separated rational arguments.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    z: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StaircaseArg {
    Full,
    Primed,
    Plain,
}

#[derive(Subcommand)]
enum FplCommand {
    /// Count configurations per boundary link pattern.
    Census {
        #[arg(long)]
        size: usize,
        /// Half-turn symmetric configurations only.
        #[arg(long)]
        symmetric: bool,
        /// Also compare against the homogeneous ground state.
        #[arg(long)]
        compare: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// ASCII drawings of every configuration.
    Draw {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        symmetric: bool,
        /// Print at most this many.
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
}

#[derive(Args)]
struct VerifyAllArgs {
    /// Plan file (JSON); flags below build one otherwise.
    #[arg(long)]
    plan: Option<PathBuf>,
    #[arg(long, default_value_t = 7)]
    max_odd: usize,
    #[arg(long, default_value_t = 6)]
    max_even: usize,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Add the corrupted sum-rule check, which must fail.
    #[arg(long)]
    negative_control: bool,
    /// JSON report path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Human-readable summary path (printed to stdout as well).
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Write the effective plan here and exit.
    #[arg(long)]
    write_plan: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CacheAction {
    /// List stored keys.
    List,
    /// Reload every record and check digests and normalizations.
    Verify,
    /// Delete every record.
    Clear,
}

fn parse_params(z: &[String], size: usize) -> Result<Vec<Param>> {
    if z.is_empty() {
        return Ok(vec![Param::int(1); size]);
    }
    if z.len() != size {
        bail!("expected {size} values of z, got {}", z.len());
    }
    z.iter().map(|s| Param::parse(s).map_err(Into::into)).collect()
}

fn parse_values(z: &[String], size: usize) -> Result<Vec<CycNum>> {
    parse_params(z, size)?
        .into_iter()
        .map(|p| match p {
            Param::Val(v) => Ok(v),
            Param::Inf => bail!("∞ is not allowed here"),
        })
        .collect()
}

fn emit(json: &serde_json::Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(json)? + "\n";
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_entry(spec: &CheckSpec, exec: Exec, json: bool) -> Result<ExitCode> {
    spec.validate()?;
    let cache = Cache::resolve(None)?;
    let e = run_check_entry(spec, cache.as_ref(), exec);
    if json {
        println!("{}", serde_json::to_string_pretty(&e)?);
    } else {
        println!("{} {} [{}] samples {} seed {}", e.status.label(), e.id, e.anchor, e.samples, e.seed);
        for w in &e.witnesses {
            println!("  witness: {} at z = ({})", w.detail, w.z.join(", "));
        }
    }
    Ok(if e.status == Status::Failed { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match cli.command {
        Command::Eigvec(a) => {
            let kind: Kind = a.kind.into();
            let z = parse_params(&a.z, a.size)?;
            let t = a.t.as_deref().map(Param::parse).transpose()?;
            let rec = match Cache::resolve(a.cache_dir.as_deref())? {
                Some(c) => {
                    let t = t.unwrap_or_else(|| o1loop::transfer::default_t(&z));
                    c.get_or_compute(kind, &z, &t, exec)?
                }
                None => eigenvector_any(kind, &z, t.as_ref(), exec)?,
            };
            emit(&rec.to_json(), a.out.as_deref())?;
        }
        Command::Spin(SpinCommand::Eigvec { size, z, t, out }) => {
            let z = parse_values(&z, size)?;
            let t = match t {
                Some(s) => match Param::parse(&s)? {
                    Param::Val(v) => Some(v),
                    Param::Inf => bail!("t must be finite"),
                },
                None => None,
            };
            let rec = spin_ground_state(&z, t.as_ref(), exec)?;
            emit(&rec.to_json(), out.as_deref())?;
        }
        Command::Spin(SpinCommand::Verify {
            identity,
            size,
            samples,
            seed,
            json,
        }) => {
            let id = match identity {
                SpinIdentity::Intertwine => Identity::Intertwine,
                SpinIdentity::QPminus => Identity::QPMinus,
                SpinIdentity::Sumrules => Identity::SpinSumRules,
                SpinIdentity::Bilinear => Identity::Bilinear,
                SpinIdentity::Rank => Identity::SRank,
            };
            let n = if id.sampled() { samples } else { 0 };
            return print_entry(&CheckSpec::new(id, None, size, n, seed), exec, json);
        }
        Command::Verify(a) => {
            let id = match a.identity {
                LoopIdentity::Exchange => Identity::Exchange,
                LoopIdentity::Cyclic => Identity::Cyclic,
                LoopIdentity::Recursion => Identity::Recursion,
                LoopIdentity::Sumrule => Identity::SumRule,
                LoopIdentity::Projection => Identity::Projection,
            };
            let spec = CheckSpec::new(id, Some(a.kind.into()), a.size, a.samples, a.seed);
            return print_entry(&spec, exec, a.json);
        }
        Command::Counts { max } => print!("{}", CountTable::upto(max).to_csv()),
        Command::Schur(a) => {
            let lambda = match (a.staircase, a.n) {
                (Some(StaircaseArg::Full), Some(n)) => YoungDiagram::staircase_full(n),
                (Some(StaircaseArg::Primed), Some(n)) => YoungDiagram::staircase_primed(n),
                (Some(StaircaseArg::Plain), Some(n)) => YoungDiagram::staircase_plain(n),
                _ => YoungDiagram::new(a.shape)?,
            };
            let z = parse_values(&a.z, a.z.len())?;
            println!("{}", schur_eval(&lambda, &z));
        }
        Command::Fpl(FplCommand::Census {
            size,
            symmetric,
            compare,
            out,
        }) => {
            let mut json = census(size, symmetric, exec)?.to_json();
            if compare {
                let r = census_compare(size, symmetric, exec)?;
                eprintln!(
                    "{}: {} of {} patterns mismatch, rotation offset {}{}",
                    if r.ok() { "CONJECTURE-CHECKED" } else { "FAILED" },
                    r.mismatches,
                    r.entries.len(),
                    r.offset,
                    if r.reflected { ", mirrored" } else { "" }
                );
                json["comparison"] = serde_json::to_value(&r)?;
            }
            emit(&json, out.as_deref())?;
        }
        Command::Fpl(FplCommand::Draw { size, symmetric, limit }) => {
            let all = if symmetric {
                enumerate_htsfpl(size, exec)?
            } else {
                enumerate_fpl(size, exec)?
            };
            for c in all.iter().take(limit) {
                let p = o1loop::fpl::extract_link_pattern(c, symmetric)?;
                println!("{}\n{c}", p.key());
            }
            println!("{} configurations", all.len());
        }
        Command::VerifyAll(a) => {
            let mut plan = match &a.plan {
                Some(p) => VerifyPlan::from_json(&fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?)?,
                None => VerifyPlan::standard(a.max_odd, a.max_even, a.samples, a.seed),
            };
            if a.negative_control {
                plan = plan.with_negative_control();
            }
            if a.out.is_some() {
                plan.report = a.out;
            }
            if a.summary.is_some() {
                plan.summary = a.summary;
            }
            if a.cache_dir.is_some() {
                plan.cache_dir = a.cache_dir;
            }
            if let Some(p) = a.write_plan {
                fs::write(&p, plan.to_json() + "\n")?;
                return Ok(ExitCode::SUCCESS);
            }
            let report = run_verify_all(&plan, exec)?;
            print!("{}", report.summary());
            return Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Cache { action, dir } => {
            let Some(cache) = Cache::resolve(dir.as_deref())? else {
                bail!("no cache directory: pass --dir or set {}", o1loop::pipeline::CACHE_ENV);
            };
            match action {
                CacheAction::List => {
                    for k in cache.keys()? {
                        println!("{k}");
                    }
                }
                CacheAction::Verify => println!("{} records verified", cache.verify()?),
                CacheAction::Clear => println!("{} records removed", cache.clear()?),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
