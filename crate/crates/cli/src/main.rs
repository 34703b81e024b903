//! `skolem`: synthesize, verify and experiment with Skolem functions.
//!
//! Exit codes: 0 success, 10 counterexample / invalid / not unique,
//! 20 resource limit, 64 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use skolem::benchgen::{
    bphp_lexfirst_skolem, gen_bphp, gen_factor, gen_planted_cover, gen_trap, BphpParams, BphpRegime,
    TrapParams,
};
use skolem::formula::{emit_skolem, parse_skolem, parse_spec, Cnf, SkolemFormat, SkolemVector, Specification, Var};
use skolem::interplab::{interp_size_experiment, rows_to_csv, ExperimentConfig, InterpError};
use skolem::oracle::{approx_count_projected, CountConfig, ExternalSolver, Oracle, OracleError, OracleStats};
use skolem::synth::{
    synth_auto, synth_cover, synth_lex, synth_unique_bit, AutoConfig, CoverConfig, LexConfig, LearnerConfig,
    SynthError,
};
use skolem::verify::{uniqueness_witness, verify_skolem, Verdict, VerifyError};

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 10;
const EXIT_LIMIT: u8 = 20;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "skolem", version, about = "Skolem function synthesis with SAT oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Where to write the JSON run report; `-` for standard output.
    #[arg(long, global = true, default_value = "skolem-report.json")]
    json: String,
    /// `internal` or `exec:PATH`; defaults to $SKOLEM_SOLVER, else internal.
    #[arg(long, global = true)]
    solver: Option<String>,
    /// Per-query wall-clock limit in milliseconds.
    #[arg(long, global = true)]
    timeout_ms: Option<u64>,
    /// Per-query conflict limit (internal engine).
    #[arg(long, global = true)]
    conflicts: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize Skolem functions for a QDIMACS or annotated DIMACS spec.
    Synth(SynthArgs),
    /// Check a Skolem vector against a spec with the error formula.
    Verify(VerifyArgs),
    /// Decide whether an output is uniquely defined by the inputs and earlier outputs.
    CheckUnique(CheckUniqueArgs),
    /// Generate a benchmark specification.
    Gen(GenArgs),
    /// Approximate projected model count of a DIMACS file.
    Count(CountArgs),
    /// Interpolant size versus lexicographic circuit size on pigeonhole pairs.
    InterpExp(InterpExpArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Strategy {
    Lex,
    Cover,
    Unique,
    Auto,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Gatelist,
    Aiger,
}

impl From<Format> for SkolemFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Gatelist => SkolemFormat::GateList,
            Format::Aiger => SkolemFormat::AigerAscii,
        }
    }
}

#[derive(Args, Debug)]
struct SynthArgs {
    spec: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    strategy: Strategy,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Initial image-size guess for the cover strategy.
    #[arg(long, default_value_t = 1)]
    k0: u64,
    /// Output limit of the lexicographic construction.
    #[arg(long, default_value_t = 16)]
    max_outputs: usize,
    /// Output file; defaults to the spec path with a `.skolem` extension.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "gatelist")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    spec: PathBuf,
    skolem: PathBuf,
    #[arg(long, value_enum, default_value = "gatelist")]
    format: Format,
}

#[derive(Args, Debug)]
struct CheckUniqueArgs {
    spec: PathBuf,
    /// Output index, 1-based.
    #[arg(long)]
    output: usize,
    /// Depend on the inputs only instead of inputs and earlier outputs.
    #[arg(long)]
    inputs_only: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Also write the family's ground truth as JSON.
    #[arg(long, global = true)]
    ground_truth: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Binary pigeonhole: k pigeons with m-bit hole addresses.
    Bphp {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "any")]
        regime: Regime,
    },
    /// Sequential trap.
    Trap {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        window: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Nontrivial factors of a `bits`-wide number.
    Factor {
        #[arg(long)]
        bits: usize,
    },
    /// Planted image of size k.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Regime {
    LogTight,
    Interpolation,
    Any,
}

#[derive(Args, Debug)]
struct CountArgs {
    /// DIMACS file; QDIMACS quantifier lines are allowed and select the projection.
    file: PathBuf,
    /// Comma-separated projection variables; defaults to `c ind` lines,
    /// then the universal block, then all variables.
    #[arg(long, value_delimiter = ',')]
    project: Vec<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 9)]
    trials: u32,
    #[arg(long, default_value_t = 73)]
    threshold: usize,
}

#[derive(Args, Debug)]
struct InterpExpArgs {
    /// Range `a..b` (inclusive) or comma list.
    #[arg(long, default_value = "1..3")]
    m: String,
    #[arg(long, value_enum, default_value = "pow2-plus1")]
    k_policy: KPolicy,
    /// Per-cell limit in seconds.
    #[arg(long, default_value_t = 600)]
    cell_time_s: u64,
    /// CSV file; standard output when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KPolicy {
    /// k = 2^m + 1: the pair is unsatisfiable.
    Pow2Plus1,
    /// k = 2^m: the pair is satisfiable and the cells stay empty.
    Pow2,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RunReport {
    command: Vec<String>,
    version: &'static str,
    engine: String,
    seed: Option<u64>,
    strategy: Option<Strategy>,
    oracle: OracleStats,
    elapsed_ms: u128,
    exit_code: u8,
    verdict: String,
    result: Value,
}

struct Outcome {
    code: u8,
    verdict: &'static str,
    seed: Option<u64>,
    strategy: Option<Strategy>,
    result: Value,
}

impl Outcome {
    fn ok(result: Value) -> Outcome {
        Outcome {
            code: EXIT_OK,
            verdict: "ok",
            seed: None,
            strategy: None,
            result,
        }
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error = e.into();
        Failure {
            code: classify(&error),
            error,
        }
    }
}

fn oracle_limit(e: &OracleError) -> bool {
    matches!(e, OracleError::ResourceLimit(_))
}

fn classify(e: &anyhow::Error) -> u8 {
    if let Some(s) = e.downcast_ref::<SynthError>() {
        return match s {
            SynthError::TooManyOutputs { .. } => EXIT_USAGE,
            SynthError::CoverBudgetExhausted { .. } | SynthError::LearnerBudgetExhausted { .. } => EXIT_LIMIT,
            SynthError::Oracle(o) if oracle_limit(o) => EXIT_LIMIT,
            SynthError::VerificationFailed | SynthError::InconsistentCounterexamples { .. } => EXIT_INVALID,
            SynthError::Formula(_) => EXIT_USAGE,
            SynthError::Oracle(_) => 1,
        };
    }
    if let Some(VerifyError::Oracle(o)) = e.downcast_ref::<VerifyError>() {
        return if oracle_limit(o) { EXIT_LIMIT } else { 1 };
    }
    if let Some(o) = e.downcast_ref::<OracleError>() {
        return if oracle_limit(o) { EXIT_LIMIT } else { 1 };
    }
    if let Some(InterpError::MemoryBudget { .. }) = e.downcast_ref::<InterpError>() {
        return EXIT_LIMIT;
    }
    EXIT_USAGE
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error: anyhow!(msg.into()),
    }
}

fn make_oracle(cli: &Cli) -> Result<(Oracle, String), Failure> {
    let external = match cli.solver.as_deref() {
        None => ExternalSolver::from_env(),
        Some("internal") => None,
        Some(s) => match s.strip_prefix("exec:") {
            Some(path) if !path.is_empty() => Some(ExternalSolver::new(path)),
            _ => return Err(usage(format!("--solver must be 'internal' or 'exec:PATH', got '{s}'"))),
        },
    };
    let (mut oracle, name) = match external {
        Some(e) => {
            let name = format!("exec:{}", e.program.display());
            (Oracle::external(e), name)
        }
        None => (Oracle::internal(), "internal".to_string()),
    };
    if let Some(ms) = cli.timeout_ms {
        oracle = oracle.with_time_limit(Duration::from_millis(ms));
    }
    if let Some(c) = cli.conflicts {
        oracle = oracle.with_conflict_limit(c);
    }
    Ok((oracle, name))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(|error| Failure { code: EXIT_USAGE, error })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(|error| Failure { code: EXIT_USAGE, error })
}

fn load_spec(path: &Path) -> Result<Specification, Failure> {
    parse_spec(&read(path)?)
        .with_context(|| format!("{}", path.display()))
        .map_err(|error| Failure { code: EXIT_USAGE, error })
}

fn synth(a: &SynthArgs, oracle: &Oracle) -> Result<Outcome, Failure> {
    let spec = load_spec(&a.spec)?;
    let mut result = json!({});
    let vector: SkolemVector = match a.strategy {
        Strategy::Lex => synth_lex(&spec, &LexConfig { max_outputs: a.max_outputs })?,
        Strategy::Cover => {
            let cfg = CoverConfig {
                k0: a.k0,
                seed: a.seed,
                ..CoverConfig::default()
            };
            let (v, cover) = synth_cover(&spec, oracle, &cfg)?;
            result["coverSize"] = json!(cover.elements.len());
            result["iterations"] = json!(cover.stats.iterations);
            result["cover"] = json!(cover.stats);
            v
        }
        Strategy::Unique => {
            let mut psis = Vec::with_capacity(spec.m());
            let mut rounds = Vec::new();
            for i in 0..spec.m() {
                let cfg = LearnerConfig {
                    seed: a.seed.wrapping_add(i as u64),
                    ..LearnerConfig::default()
                };
                let learned = synth_unique_bit(&spec, i, oracle, &cfg)?;
                rounds.push(learned.rounds.len());
                // Earlier outputs are replaced by their learned circuits.
                psis.push(learned.circuit);
            }
            result["iterations"] = json!(rounds.iter().sum::<usize>());
            result["roundsPerOutput"] = json!(rounds);
            compose_prefix(&spec, psis)?
        }
        Strategy::Auto => {
            let cfg = AutoConfig {
                seed: a.seed,
                cover: CoverConfig {
                    k0: a.k0,
                    seed: a.seed,
                    ..CoverConfig::default()
                },
                ..AutoConfig::default()
            };
            let report = synth_auto(&spec, oracle, &cfg)?;
            result["strategies"] = json!(report.strategies);
            if let Some(cover) = &report.cover {
                result["coverSize"] = json!(cover.elements.len());
                result["iterations"] = json!(cover.stats.iterations);
            }
            report.vector
        }
    };
    let out = a.output.clone().unwrap_or_else(|| a.spec.with_extension("skolem"));
    write(&out, &emit_skolem(&vector, a.format.into()))?;
    // Re-check the artifact as written.
    let reread = parse_skolem(&read(&out)?, a.format.into(), spec.inputs(), spec.outputs())?;
    let verdict = verify_skolem(&spec, &reread, oracle)?;
    result["circuitSizes"] = json!(vector.sizes());
    result["totalSize"] = json!(vector.size());
    result["artifact"] = json!(out.display().to_string());
    result["oracleCalls"] = json!(oracle.stats().calls);
    let (code, v) = if verdict.is_valid() {
        (EXIT_OK, "valid")
    } else {
        (EXIT_INVALID, "invalid")
    };
    Ok(Outcome {
        code,
        verdict: v,
        seed: Some(a.seed),
        strategy: Some(a.strategy),
        result,
    })
}

/// Turns circuits over `X ∪ Y_{<i}` into circuits over X alone.
fn compose_prefix(spec: &Specification, psis: Vec<skolem::formula::Circuit>) -> Result<SkolemVector, Failure> {
    use skolem::formula::{CircuitBuilder, GateRef};
    let mut b = CircuitBuilder::new();
    let mut outs: Vec<GateRef> = Vec::new();
    for psi in &psis {
        let g = b.import1(psi, |b, v| match spec.outputs().iter().position(|&y| y == v) {
            Some(j) => outs[j],
            None => b.input(v),
        });
        outs.push(g);
    }
    let all = b.finish(outs);
    let circuits = (0..spec.m()).map(|i| all.cone(i)).collect();
    Ok(SkolemVector::new(spec.inputs().to_vec(), spec.outputs().to_vec(), circuits)?)
}

/// Plain output goes to stdout unless the report is streamed there.
fn plain(cli: &Cli, text: &str) {
    if cli.json == "-" {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
}

fn verify(a: &VerifyArgs, oracle: &Oracle, cli: &Cli) -> Result<Outcome, Failure> {
    let spec = load_spec(&a.spec)?;
    let vector = parse_skolem(&read(&a.skolem)?, a.format.into(), spec.inputs(), spec.outputs())
        .with_context(|| format!("{}", a.skolem.display()))
        .map_err(|error| Failure { code: EXIT_USAGE, error })?;
    Ok(match verify_skolem(&spec, &vector, oracle)? {
        Verdict::Valid => Outcome {
            verdict: "valid",
            ..Outcome::ok(json!({ "circuitSizes": vector.sizes() }))
        },
        Verdict::Counterexample(w) => {
            let lines: String = w.iter().map(|(v, b)| format!("{} = {}\n", name_of(&spec, v), b as u8)).collect();
            plain(cli, &lines);
            Outcome {
                code: EXIT_INVALID,
                verdict: "counterexample",
                seed: None,
                strategy: None,
                result: json!({ "witness": w.to_string() }),
            }
        }
    })
}

fn name_of(spec: &Specification, v: Var) -> String {
    if let Some(i) = spec.inputs().iter().position(|&x| x == v) {
        format!("x{}", i + 1)
    } else if let Some(j) = spec.outputs().iter().position(|&y| y == v) {
        format!("y{}", j + 1)
    } else {
        format!("v{}", v.id())
    }
}

fn check_unique_cmd(a: &CheckUniqueArgs, oracle: &Oracle) -> Result<Outcome, Failure> {
    let spec = load_spec(&a.spec)?;
    if a.output == 0 || a.output > spec.m() {
        return Err(usage(format!("--output must be in 1..={}", spec.m())));
    }
    let i = a.output - 1;
    let mut z = spec.inputs().to_vec();
    if !a.inputs_only {
        z.extend_from_slice(&spec.outputs()[..i]);
    }
    Ok(match uniqueness_witness(&spec, i, &z, oracle)? {
        None => Outcome {
            verdict: "unique",
            ..Outcome::ok(json!({ "output": a.output, "unique": true }))
        },
        Some((first, second)) => Outcome {
            code: EXIT_INVALID,
            verdict: "not-unique",
            seed: None,
            strategy: None,
            result: json!({
                "output": a.output,
                "unique": false,
                "witness": [first.to_string(), second.to_string()],
            }),
        },
    })
}

fn gen(a: &GenArgs) -> Result<Outcome, Failure> {
    let (name, spec, truth) = match &a.family {
        Family::Bphp { k, m, regime } => {
            let regime = match regime {
                Regime::LogTight => BphpRegime::LogTight,
                Regime::Interpolation => BphpRegime::Interpolation,
                Regime::Any => BphpRegime::Any,
            };
            let p = BphpParams::new(*k, *m, regime)?;
            let b = gen_bphp(p);
            let lex = bphp_lexfirst_skolem(p);
            let truth = json!({
                "params": p,
                "negationClauses": b.negation.len(),
                "negationWidth": b.negation.width(),
                "lexFirstSize": lex.size(),
                "lexFirst": emit_skolem(&lex, SkolemFormat::GateList),
            });
            (format!("bphp-k{k}-m{m}"), b.spec, truth)
        }
        Family::Trap { n, m, window, seed } => {
            let t = gen_trap(TrapParams::new(*n, *m, *window, *seed)?);
            let bits = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
            let truth = json!({
                "params": t.params,
                "s": bits(&t.s),
                "hTable": t.table.iter().map(|r| bits(r)).collect::<Vec<_>>(),
                "smallVector": emit_skolem(&t.small_vector, SkolemFormat::GateList),
            });
            (format!("trap-n{n}-m{m}"), t.spec, truth)
        }
        Family::Factor { bits } => {
            let spec = gen_factor(*bits)?;
            (format!("factor-{bits}"), spec, json!({ "bits": bits }))
        }
        Family::Planted { n, m, k, seed } => {
            let pc = gen_planted_cover(*n, *m, *k, *seed)?;
            let targets: Vec<String> = pc
                .targets
                .iter()
                .map(|t| t.iter().map(|&b| if b { '1' } else { '0' }).collect())
                .collect();
            let truth = json!({ "n": n, "m": m, "k": k, "seed": seed, "targets": targets, "prefixBits": pc.prefix_bits });
            (format!("planted-n{n}-m{m}-k{k}"), pc.spec, truth)
        }
    };
    let out = a.output.clone().unwrap_or_else(|| PathBuf::from(format!("{name}.qdimacs")));
    write(&out, &spec.to_qdimacs())?;
    if let Some(gt) = &a.ground_truth {
        write(gt, &serde_json::to_string_pretty(&truth).expect("serializable"))?;
    }
    Ok(Outcome::ok(json!({
        "artifact": out.display().to_string(),
        "n": spec.n(),
        "m": spec.m(),
        "matrixSize": spec.matrix().size(),
        "clauses": spec.cnf().len(),
    })))
}

fn count(a: &CountArgs, oracle: &Oracle, cli: &Cli) -> Result<Outcome, Failure> {
    let text = read(&a.file)?;
    let mut body = String::new();
    let mut universal: Vec<u32> = Vec::new();
    let mut ind: Vec<u32> = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        let nums = |rest: &str| -> Result<Vec<u32>, Failure> {
            rest.split_whitespace()
                .map(|s| s.parse::<u32>().map_err(|_| usage(format!("bad variable '{s}'"))))
                .filter(|r| !matches!(r, Ok(0)))
                .collect()
        };
        if let Some(rest) = t.strip_prefix("a ") {
            universal.extend(nums(rest)?);
        } else if t.starts_with("e ") {
        } else if let Some(rest) = t.strip_prefix("c ind ") {
            ind.extend(nums(rest)?);
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    let cnf = Cnf::parse_dimacs(&body).map_err(|e| usage(format!("{}: {e}", a.file.display())))?;
    let proj: Vec<u32> = if !a.project.is_empty() {
        a.project.clone()
    } else if !ind.is_empty() {
        ind
    } else if !universal.is_empty() {
        universal
    } else {
        (1..=cnf.num_vars()).collect()
    };
    if let Some(&bad) = proj.iter().find(|&&v| v == 0 || v > cnf.num_vars()) {
        return Err(usage(format!("projection variable {bad} out of range")));
    }
    let proj: Vec<Var> = proj.into_iter().map(Var::new).collect();
    let cfg = CountConfig {
        trials: a.trials,
        threshold: a.threshold,
    };
    let est = approx_count_projected(oracle, &cnf, &proj, &cfg, a.seed)?;
    plain(cli, &format!("{}\n", est.estimate));
    Ok(Outcome {
        seed: Some(a.seed),
        ..Outcome::ok(json!({ "projection": proj.len(), "count": est }))
    })
}

fn parse_range(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || usage(format!("bad range '{s}', expected a..b or a comma list"));
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        Ok((a..=b).collect())
    } else {
        s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
    }
}

fn interp_exp(a: &InterpExpArgs, cli: &Cli) -> Result<Outcome, Failure> {
    let ms = parse_range(&a.m)?;
    if let Some(&m) = ms.iter().find(|&&m| m == 0 || m > 6) {
        return Err(usage(format!("m must be in 1..=6, got {m}")));
    }
    let cfg = ExperimentConfig {
        ms,
        k_of_m: match a.k_policy {
            KPolicy::Pow2Plus1 => |m| (1 << m) + 1,
            KPolicy::Pow2 => |m| 1 << m,
        },
        time_limit: Some(Duration::from_secs(a.cell_time_s)),
        conflict_limit: cli.conflicts,
    };
    let rows = interp_size_experiment(&cfg);
    let csv = rows_to_csv(&rows);
    match &a.output {
        Some(p) => write(p, &csv)?,
        None => plain(cli, &csv),
    }
    Ok(Outcome::ok(json!({ "rows": rows })))
}

fn run(cli: &Cli) -> Result<(Outcome, OracleStats, String), Failure> {
    let (oracle, engine) = make_oracle(cli)?;
    let outcome = match &cli.command {
        Command::Synth(a) => synth(a, &oracle)?,
        Command::Verify(a) => verify(a, &oracle, cli)?,
        Command::CheckUnique(a) => check_unique_cmd(a, &oracle)?,
        Command::Gen(a) => gen(a)?,
        Command::Count(a) => count(a, &oracle, cli)?,
        Command::InterpExp(a) => interp_exp(a, cli)?,
    };
    Ok((outcome, oracle.stats(), engine))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            });
        }
    };
    let start = Instant::now();
    let (outcome, stats, engine) = match run(&cli) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            return ExitCode::from(f.code);
        }
    };
    let report = RunReport {
        command: argv.iter().skip(1).cloned().collect(),
        version: env!("CARGO_PKG_VERSION"),
        engine,
        seed: outcome.seed,
        strategy: outcome.strategy,
        oracle: stats,
        elapsed_ms: start.elapsed().as_millis(),
        exit_code: outcome.code,
        verdict: outcome.verdict.to_string(),
        result: outcome.result,
    };
    let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    if cli.json == "-" {
        print!("{text}");
    } else if let Err(e) = std::fs::write(&cli.json, text) {
        eprintln!("error: cannot write report {}: {e}", cli.json);
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(outcome.code)
}
