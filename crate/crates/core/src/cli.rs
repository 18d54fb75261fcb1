//! Command-line front end. Every subcommand parses flags, calls the library, and
//! formats the result; no algorithm lives here.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::model::{ItemList, Permutation, RequestSequence};
use crate::online::{simulate, OnlinePolicy};
use crate::oracles::{self, replay_witness, run_oracle, OracleConfig, OracleKind};
use crate::solver::{self, solve_with, SolverConfig};
use crate::table::{solver_memory_estimate, HARD_MAX_L};
use crate::workbench::{
    emit_report, find_counterexample, ingest_trace, instances_from_spec, render_trace,
    replay_record, run_experiment, Algorithm, CounterexampleRecord, ExperimentConfig, Instance,
    ReportFormat, SearchConfig, WorkloadKind, WorkloadSpec,
};

/// Environment override for the list-size guard, same meaning as `--max-l`.
pub const MAX_L_ENV: &str = "LISTOPT_MAX_L";

#[derive(Debug, Parser)]
#[command(
    name = "listopt",
    version,
    about = "Exact offline list update workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal schedule: permute once, then move only the requested item.
    Opt(OptArgs),
    /// Exact brute-force optimum under a chosen reorganization model.
    Oracle(OracleArgs),
    /// Cost of an online policy.
    Online(OnlineArgs),
    /// Run solvers and policies on one or more instances and emit a report.
    Compare(CompareArgs),
    /// Generate a request trace.
    Gen(GenArgs),
    /// Replay a counterexample record.
    Check(CheckArgs),
    /// Search for instances where the solver misses the brute-force optimum.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
struct InstanceArgs {
    /// Comma-separated item labels in their initial order.
    #[arg(long)]
    list: Option<String>,
    /// Comma-separated requests.
    #[arg(long, conflicts_with = "trace")]
    requests: Option<String>,
    /// Trace file: whitespace-separated requests, `#` comment lines.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GuardArgs {
    /// Largest list size accepted (default 8 for opt, 5 for oracles; env LISTOPT_MAX_L).
    #[arg(long)]
    max_l: Option<usize>,
    /// Lift the list-size guard (up to the hard ceiling of 12) and warn about memory.
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct OptArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    guard: GuardArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
    /// Relax layers on all cores.
    #[arg(long)]
    parallel: bool,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    guard: GuardArgs,
    /// all | paid-free | subset
    #[arg(long, default_value = "all")]
    kind: String,
    /// Include the reconstructed action trace.
    #[arg(long)]
    witness: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
}

#[derive(Debug, Args)]
struct OnlineArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// mtf | transpose | fc
    #[arg(long, default_value = "mtf")]
    policy: String,
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
}

#[derive(Debug, Args)]
struct WorkloadArgs {
    /// uniform | zipf | adversarial
    #[arg(long)]
    kind: Option<String>,
    /// Zipf exponent.
    #[arg(long, default_value_t = 1.0)]
    s: f64,
    /// List size.
    #[arg(long)]
    l: Option<usize>,
    /// Sequence length.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    workload: WorkloadArgs,
    /// Number of generated instances (seeds seed, seed+1, ...).
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Comma-separated subset of: opt, oracle-all, oracle-paid-free, oracle-subset, mtf, transpose, frequency-count.
    #[arg(long)]
    algorithms: Option<String>,
    /// csv | json
    #[arg(long, default_value = "csv")]
    format: String,
    /// Leave wall times empty for byte-identical reports.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    guard: GuardArgs,
    /// List-size guard for the oracles (default 5).
    #[arg(long)]
    oracle_max_l: Option<usize>,
    #[arg(long)]
    parallel: bool,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(flatten)]
    workload: WorkloadArgs,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Counterexample record (JSON).
    record: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
    #[command(flatten)]
    guard: GuardArgs,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 2)]
    l_min: usize,
    #[arg(long, default_value_t = 4)]
    l_max: usize,
    #[arg(long, default_value_t = 1)]
    m_min: usize,
    #[arg(long, default_value_t = 6)]
    m_max: usize,
    /// Instances to examine.
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    guard: GuardArgs,
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

/// Runs one command line: exit 0 on success, 1 on a domain error, 2 on a usage error.
pub fn parse_and_dispatch<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string().into_bytes();
            return if code == 0 {
                CliOutput {
                    code,
                    stdout: text,
                    stderr: Vec::new(),
                }
            } else {
                CliOutput {
                    code,
                    stdout: Vec::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut warnings = String::new();
    match dispatch(cli.command, &mut warnings) {
        Ok(stdout) => CliOutput {
            code: 0,
            stdout,
            stderr: warnings.into_bytes(),
        },
        Err(e) => {
            let _ = writeln!(warnings, "error: {e}");
            CliOutput {
                code: if e.is_usage() { 2 } else { 1 },
                stdout: Vec::new(),
                stderr: warnings.into_bytes(),
            }
        }
    }
}

fn dispatch(command: Command, warnings: &mut String) -> Result<Vec<u8>> {
    match command {
        Command::Opt(a) => cmd_opt(a, warnings),
        Command::Oracle(a) => cmd_oracle(a, warnings),
        Command::Online(a) => cmd_online(a),
        Command::Compare(a) => cmd_compare(a, warnings),
        Command::Gen(a) => cmd_gen(a),
        Command::Check(a) => cmd_check(a, warnings),
        Command::Search(a) => cmd_search(a, warnings),
    }
}

fn env_max_l() -> Result<Option<usize>> {
    match std::env::var(MAX_L_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            Error::Usage(format!("{MAX_L_ENV} must be a positive integer, got `{v}`"))
        }),
        Err(_) => Ok(None),
    }
}

impl GuardArgs {
    fn resolve(&self, default: usize) -> Result<usize> {
        if self.force {
            return Ok(HARD_MAX_L);
        }
        Ok(match self.max_l {
            Some(l) => l,
            None => env_max_l()?.unwrap_or(default),
        })
    }
}

fn warn_memory(l: usize, m: usize, warnings: &mut String) {
    if let Some(bytes) = solver_memory_estimate(l, m) {
        let _ = writeln!(
            warnings,
            "warning: size guard lifted; l = {l} needs roughly {:.1} MiB",
            bytes as f64 / (1024.0 * 1024.0)
        );
    }
}

fn load_instance(args: &InstanceArgs) -> Result<(ItemList, RequestSequence)> {
    if let Some(path) = &args.trace {
        let bytes = std::fs::read(path)?;
        let (universe, sigma) = ingest_trace(&bytes, crate::workbench::trace::DEFAULT_MAX_TOKENS)?;
        return match &args.list {
            None => Ok((universe, sigma)),
            Some(text) => {
                let list = ItemList::parse_csv(text)?;
                let sigma = RequestSequence::from_labels(&list, &sigma.labels(&universe))?;
                Ok((list, sigma))
            }
        };
    }
    let list = args
        .list
        .as_deref()
        .ok_or_else(|| Error::Usage("--list is required unless --trace is given".into()))?;
    let list = ItemList::parse_csv(list)?;
    let sigma = RequestSequence::parse_csv(&list, args.requests.as_deref().unwrap_or(""))?;
    Ok((list, sigma))
}

fn json_bytes<T: serde::Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

fn labels_line(list: &ItemList, rho: &Permutation) -> String {
    list.labels_of(rho).join(" ")
}

fn cmd_opt(args: OptArgs, warnings: &mut String) -> Result<Vec<u8>> {
    let (list, sigma) = load_instance(&args.instance)?;
    let max_l = args.guard.resolve(solver::DEFAULT_MAX_L)?;
    if args.guard.force {
        warn_memory(list.len(), sigma.len(), warnings);
    }
    let rho0 = list.identity();
    let config = SolverConfig {
        max_l,
        parallel: args.parallel,
    };
    let schedule = solve_with(&rho0, &sigma, &config)?;
    let record = schedule.to_record(&list, &sigma)?;
    match args.format {
        TextFormat::Json => json_bytes(&record),
        TextFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "initial: {} (cost {})",
                labels_line(&list, &schedule.initial),
                record.initial_cost
            );
            let _ = writeln!(
                out,
                "{:>5} {:>8} {:>5} {:>6} {:>5} {:>6}",
                "i", "request", "pre", "target", "reorg", "access"
            );
            for (i, r) in record.requests.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{:>5} {:>8} {:>5} {:>6} {:>5} {:>6}",
                    i + 1,
                    r.request,
                    r.pre_position,
                    r.target,
                    r.reorg_cost,
                    r.access_cost
                );
            }
            let _ = writeln!(out, "total: {}", record.total);
            Ok(out.into_bytes())
        }
    }
}

fn cmd_oracle(args: OracleArgs, warnings: &mut String) -> Result<Vec<u8>> {
    let (list, sigma) = load_instance(&args.instance)?;
    let kind: OracleKind = args.kind.parse()?;
    let max_l = args.guard.resolve(oracles::DEFAULT_MAX_L)?;
    if args.guard.force {
        let n = crate::model::factorial(list.len()).unwrap_or(usize::MAX) as f64;
        let _ = writeln!(
            warnings,
            "warning: size guard lifted; l = {} needs roughly {:.1} MiB for the distance matrix",
            list.len(),
            n * n * 2.0 / (1024.0 * 1024.0)
        );
    }
    let config = OracleConfig {
        max_l,
        witness: args.witness,
        ..OracleConfig::default()
    };
    let rho0 = list.identity();
    let result = run_oracle(kind, &rho0, &sigma, &config)?;
    let witness = result
        .witness
        .as_ref()
        .map(|steps| {
            replay_witness(&rho0, &sigma, steps)?;
            Ok::<_, Error>(
                steps
                    .iter()
                    .map(|s| crate::workbench::WitnessStep {
                        reorganized: list.labels_of(&s.reorganized),
                        access: s.access,
                        after: list.labels_of(&s.after),
                    })
                    .collect::<Vec<_>>(),
            )
        })
        .transpose()?;
    match args.format {
        TextFormat::Json => json_bytes(&serde_json::json!({
            "oracle": kind.name(),
            "total": result.total,
            "witness": witness,
        })),
        TextFormat::Text => {
            let mut out = String::new();
            if let Some(steps) = &witness {
                for (i, s) in steps.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "{:>5}  [{}] access {}  -> [{}]",
                        i + 1,
                        s.reorganized.join(" "),
                        s.access,
                        s.after.join(" ")
                    );
                }
            }
            let _ = writeln!(out, "oracle {}: total {}", kind.name(), result.total);
            Ok(out.into_bytes())
        }
    }
}

fn cmd_online(args: OnlineArgs) -> Result<Vec<u8>> {
    let (list, sigma) = load_instance(&args.instance)?;
    let policy: OnlinePolicy = args.policy.parse()?;
    let run = simulate(policy, &list.identity(), &sigma)?;
    match args.format {
        TextFormat::Json => json_bytes(&serde_json::json!({
            "policy": policy.name(),
            "costs": run.costs,
            "final": list.labels_of(&run.final_order),
            "total": run.total,
        })),
        TextFormat::Text => {
            let costs: Vec<String> = run.costs.iter().map(u64::to_string).collect();
            Ok(format!(
                "policy {}: costs {}\nfinal: {}\ntotal: {}\n",
                policy.name(),
                costs.join(" "),
                labels_line(&list, &run.final_order),
                run.total
            )
            .into_bytes())
        }
    }
}

fn workload_spec(args: &WorkloadArgs) -> Result<WorkloadSpec> {
    let kind = match args.kind.as_deref() {
        Some("uniform") => WorkloadKind::Uniform,
        Some("zipf") => WorkloadKind::Zipf { s: args.s },
        Some("adversarial") => WorkloadKind::Adversarial,
        Some(other) => {
            return Err(Error::Usage(format!(
                "unknown workload kind `{other}` (expected uniform, zipf or adversarial)"
            )))
        }
        None => return Err(Error::Usage("--kind is required".into())),
    };
    let l = args
        .l
        .ok_or_else(|| Error::Usage("--l is required".into()))?;
    let m = args
        .m
        .ok_or_else(|| Error::Usage("--m is required".into()))?;
    let spec = WorkloadSpec {
        kind,
        l,
        m,
        seed: args.seed,
    };
    spec.validate()?;
    Ok(spec)
}

fn cmd_compare(args: CompareArgs, warnings: &mut String) -> Result<Vec<u8>> {
    let format: ReportFormat = args.format.parse()?;
    let explicit = args.instance.list.is_some() || args.instance.trace.is_some();
    let instances = if explicit {
        if args.workload.kind.is_some() {
            return Err(Error::Usage(
                "give either an explicit instance (--list/--trace) or a workload (--kind), not both".into(),
            ));
        }
        let (list, sigma) = load_instance(&args.instance)?;
        let kind = match &args.instance.trace {
            Some(p) => WorkloadKind::Trace { path: p.clone() }.to_string(),
            None => "explicit".to_string(),
        };
        vec![Instance::explicit(0, kind, list, sigma)]
    } else {
        instances_from_spec(&workload_spec(&args.workload)?, args.count)?
    };
    let algorithms = match &args.algorithms {
        None => Algorithm::ALL.to_vec(),
        Some(text) => text
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<Vec<Algorithm>>>()?,
    };
    let solver_max_l = args.guard.resolve(solver::DEFAULT_MAX_L)?;
    let oracle_max_l = if args.guard.force {
        HARD_MAX_L
    } else {
        args.oracle_max_l.unwrap_or(oracles::DEFAULT_MAX_L)
    };
    if args.guard.force {
        if let Some(inst) = instances.iter().max_by_key(|i| i.l()) {
            warn_memory(inst.l(), inst.m(), warnings);
        }
    }
    let config = ExperimentConfig {
        algorithms,
        solver: SolverConfig {
            max_l: solver_max_l,
            parallel: false,
        },
        oracle: OracleConfig {
            max_l: oracle_max_l,
            ..OracleConfig::default()
        },
        parallel: args.parallel,
    };
    let report = run_experiment(&instances, &config);
    for e in &report.errors {
        let _ = writeln!(
            warnings,
            "warning: instance {} {}: {}",
            e.instance_id, e.algorithm, e.message
        );
    }
    if report.has_counterexample() {
        let _ = writeln!(
            warnings,
            "warning: exact solvers disagree on {} instance(s); see counterexamples in the JSON report",
            report.counterexamples.len()
        );
    }
    emit_report(&report, format, !args.no_timing)
}

fn cmd_gen(args: GenArgs) -> Result<Vec<u8>> {
    let spec = workload_spec(&args.workload)?;
    let list = ItemList::generated(spec.l)?;
    let sigma = crate::workbench::generate(&spec)?;
    let header = vec![format!(
        "kind={} l={} m={} seed={}",
        spec.kind, spec.l, spec.m, spec.seed
    )];
    Ok(render_trace(&list, &sigma, &header).into_bytes())
}

fn cmd_check(args: CheckArgs, warnings: &mut String) -> Result<Vec<u8>> {
    let text = std::fs::read_to_string(&args.record)?;
    let record = CounterexampleRecord::from_json(&text)?;
    let solver = SolverConfig {
        max_l: args.guard.resolve(solver::DEFAULT_MAX_L)?,
        parallel: false,
    };
    let oracle = OracleConfig {
        max_l: if args.guard.force {
            HARD_MAX_L
        } else {
            args.guard.max_l.unwrap_or(oracles::DEFAULT_MAX_L)
        },
        ..OracleConfig::default()
    };
    let outcome = replay_record(&record, &solver, &oracle)?;
    if !outcome.reproduces {
        let _ = writeln!(
            warnings,
            "warning: recomputed totals differ from the record"
        );
    }
    match args.format {
        TextFormat::Json => json_bytes(&outcome),
        TextFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "list: {}", record.list.join(" "));
            let _ = writeln!(out, "requests: {}", record.requests.join(" "));
            for (name, total) in &outcome.totals {
                let recorded = record
                    .totals
                    .get(name)
                    .map_or("-".to_string(), u64::to_string);
                let _ = writeln!(out, "{name}: {total} (recorded {recorded})");
            }
            let _ = writeln!(out, "reproduces: {}", outcome.reproduces);
            let _ = writeln!(out, "witnesses valid: {}", outcome.witnesses_valid);
            let _ = writeln!(out, "disagreement: {}", outcome.disagreement);
            Ok(out.into_bytes())
        }
    }
}

fn cmd_search(args: SearchArgs, _warnings: &mut String) -> Result<Vec<u8>> {
    if args.l_min > args.l_max || args.m_min > args.m_max {
        return Err(Error::Usage("empty search range".into()));
    }
    let config = SearchConfig {
        solver: SolverConfig {
            max_l: args.guard.resolve(solver::DEFAULT_MAX_L)?,
            parallel: false,
        },
        oracle: OracleConfig {
            max_l: if args.guard.force {
                HARD_MAX_L
            } else {
                args.guard.max_l.unwrap_or(oracles::DEFAULT_MAX_L)
            },
            ..OracleConfig::default()
        },
        ..SearchConfig::default()
    };
    let found = find_counterexample(
        args.l_min..=args.l_max,
        args.m_min..=args.m_max,
        args.budget,
        args.seed,
        &config,
    )?;
    Ok(match found {
        Some(record) => format!("{}\n", record.to_json()?).into_bytes(),
        None => b"null\n".to_vec(),
    })
}
