//! Batch front end: every computation and verification as a subcommand with
//! machine-readable JSON (or CSV, for tables) on stdout.
//!
//! Exit codes: 0 success, 1 a requested identity failed to verify, 2 usage or
//! parameter error, 3 internal consistency violation (a "can never happen"
//! assertion fired).

use std::collections::BTreeMap;
use std::io::Write as _;
use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use kloosterman::char_sums::{delta_table, moment, salie_check, MomentKind};
use kloosterman::combinat::{constants, CosetFamily, Sign};
use kloosterman::error::Error;
use kloosterman::field::{FieldSpec, FieldTable};
use kloosterman::oracle::{
    build_q, coset_exp_sum, enumerate_double_coset, enumerate_o3, explicit_code, trace_histogram,
};
use kloosterman::recursion::{
    pless_check, sk_identity, t12sk_chain_minus, t12sk_chain_plus, LowerOrder, RecursionReport,
};
use kloosterman::weight_dist::{
    cell_profile, dual_distribution, dual_weight, mass_mismatch, sp_plus_profile_printed,
    weight_counts, CodeSpec,
};

const CACHE_ENV: &str = "KLOOSTERMAN_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "kloosterman",
    about = "Exact ternary Kloosterman sums, double-coset code weight distributions, and moment-identity verification",
    long_about = None,
    after_help = "Fields are given as 3^r (built-in modulus) or 3^r/c_r,...,c_0 \
                  (explicit monic modulus, most significant coefficient first). \
                  Built-in moduli: x, x^2+1, x^3+2x+1, x^4+x+2, x^5+2x+1, x^6+x+2. \
                  Set KLOOSTERMAN_CACHE_DIR to cache delta tables and moments on disk."
)]
struct Cli {
    /// Worker threads for parallel verification (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Minus,
    Plus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Minus => Sign::Minus,
            SignArg::Plus => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// Orthogonal double-coset code (needs --i).
    O,
    /// Companion symplectic code.
    Sp,
}

#[derive(Args)]
struct FieldArg {
    /// Field spec: 3^r or 3^r/c_r,...,c_0.
    #[arg(long)]
    field: String,
}

impl FieldArg {
    fn build(&self) -> Result<FieldTable, Error> {
        FieldSpec::parse(&self.field)?.build()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the parameters and basic structure of a field.
    Field(FieldArg),
    /// A power moment of Kloosterman sums.
    Moments {
        #[command(flatten)]
        field: FieldArg,
        /// MK, SK, T0SK or T12SK.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        h: u32,
    },
    /// The delta table: counts of m-tuples of nonzero elements with
    /// prescribed sum of x + 1/x values.
    Delta {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// The size constants A, B and N = A·B of a double-coset family.
    Constants {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long)]
        n: u32,
    },
    /// Weight-distribution prefix C_0..C_{j_max} of a code family.
    Weights {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long)]
        n: u32,
        /// Coset index (orthogonal families only).
        #[arg(long)]
        i: Option<u8>,
        #[arg(long, default_value_t = 6)]
        j_max: u32,
        /// Use the published symplectic plus-family cells (mass-mismatch
        /// diagnostic included) instead of the profile used by the identities.
        #[arg(long, default_value_t = false)]
        printed_sp_plus: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Dual-codeword weights of an orthogonal family.
    Dual {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u8,
        /// Single dual weight for this element index instead of the histogram.
        #[arg(long)]
        a: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Identity verification; exits 1 on the first failure.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Brute-force enumeration jobs.
    Oracle {
        #[command(flatten)]
        field: FieldArg,
        /// q, coset, o3, code or expsum.
        #[arg(long)]
        job: String,
        #[arg(long, value_enum)]
        sign: Option<SignArg>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        i: Option<u8>,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// The moment recursion of one family, solved bottom-up for h = 1..h_max.
    Recursion {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u8,
        #[arg(long, default_value_t = 4)]
        h_max: u32,
        /// Feed directly computed lower-order moments into the right-hand
        /// side instead of previously solved ones.
        #[arg(long, default_value_t = false)]
        direct_lower: bool,
    },
    /// The square-moment identities of one family.
    Sk {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 4)]
        h_max: u32,
    },
    /// The generic power moment identity on the built-in explicit code pair,
    /// or on distributions supplied as JSON.
    Pless {
        /// JSON file: {"code_weights": {"j": "count", ...}, "dual_weights":
        /// {...}, "k": int, "n": int, "q": int}.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        h_max: u32,
    },
    /// Incomplete-moment and character-delta identities.
    Charsum {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, default_value_t = 4)]
        m_max: u32,
    },
    /// The complete-moment recursion against the convolution oracle.
    Salie {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, default_value_t = 5)]
        h_max: u32,
    },
    /// The full acceptance suite.
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .ok();
    }
    // Internal-consistency assertions panic; surface them as exit code 3.
    let outcome = panic::catch_unwind(|| run(cli.command));
    match outcome {
        Ok(Ok(code)) => code,
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(_) => {
            eprintln!("internal consistency violation (this is a bug)");
            ExitCode::from(3)
        }
    }
}

/// Writes one line to stdout, exiting quietly if the consumer closed the
/// pipe (e.g. `... | head`).
fn emit_line(s: impl std::fmt::Display) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{s}").is_err() {
        std::process::exit(0);
    }
}

fn print_json(v: &Value) {
    emit_line(serde_json::to_string_pretty(v).expect("serializable"));
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from)
}

fn cache_lookup(key: &str) -> Option<Value> {
    let path = cache_dir()?.join(format!("{key}.json"));
    let text = std::fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

fn cache_store(key: &str, value: &Value) {
    if let Some(dir) = cache_dir() {
        if std::fs::create_dir_all(&dir).is_ok() {
            let _ = std::fs::write(dir.join(format!("{key}.json")), value.to_string());
        }
    }
}

fn cache_key(parts: &[&str]) -> String {
    parts.join("_").replace(['^', '/', ','], "-")
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Field(field) => {
            let t = field.build()?;
            let squares = t.nonzero_elements().filter(|&x| t.is_square(x)).count();
            let trace_zero = t.elements().filter(|&x| t.trace(x) == 0).count();
            print_json(&json!({
                "q": t.q(),
                "r": t.r(),
                "spec": t.spec_string(),
                "nonzero_squares": squares,
                "trace_zero_elements": trace_zero,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Moments { field, kind, h } => {
            let t = field.build()?;
            let kind = MomentKind::parse(&kind)?;
            let key = cache_key(&["moment", &t.spec_string(), &format!("{kind:?}"), &h.to_string()]);
            let value = match cache_lookup(&key) {
                Some(v) => v,
                None => {
                    let v = json!({
                        "q": t.q(),
                        "kind": format!("{kind:?}"),
                        "h": h,
                        "value": moment(&t, kind, h)?.to_string(),
                    });
                    cache_store(&key, &v);
                    v
                }
            };
            print_json(&value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Delta { field, m, format } => {
            let t = field.build()?;
            let key = cache_key(&["delta", &t.spec_string(), &m.to_string()]);
            let values: Vec<String> = match cache_lookup(&key) {
                Some(Value::Array(vs)) => {
                    vs.into_iter().map(|v| v.as_str().unwrap_or_default().to_string()).collect()
                }
                _ => {
                    let d = delta_table(&t, m)?;
                    let vs: Vec<String> = d.values.iter().map(|v| v.to_string()).collect();
                    cache_store(&key, &Value::Array(vs.iter().cloned().map(Value::String).collect()));
                    vs
                }
            };
            match format {
                OutputFormat::Json => print_json(&json!({ "q": t.q(), "m": m, "values": values })),
                OutputFormat::Csv => {
                    emit_line("beta,count");
                    for (beta, v) in values.iter().enumerate() {
                        emit_line(format_args!("{beta},{v}"));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Constants { field, sign, n } => {
            let t = field.build()?;
            let c = constants(sign.into(), n, &BigInt::from(t.q()))?;
            print_json(&json!({
                "sign": Sign::from(sign).to_string(),
                "n": n,
                "q": t.q(),
                "A": c.a.to_string(),
                "B": c.b.to_string(),
                "N": c.n_size.to_string(),
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Weights { field, family, sign, n, i, j_max, printed_sp_plus, format } => {
            let t = field.build()?;
            let sign = Sign::from(sign);
            let (profile, label) = match family {
                FamilyArg::O => {
                    let i = i.ok_or_else(|| Error::parameter("--i is required for orthogonal families"))?;
                    let fam = CosetFamily::new(sign, n, i)?;
                    (cell_profile(&t, &CodeSpec::Orthogonal(fam))?, format!("O {sign} n={n} i={i}"))
                }
                FamilyArg::Sp if printed_sp_plus => {
                    if sign != Sign::Plus {
                        return Err(Error::parameter("--printed-sp-plus applies to the plus family"));
                    }
                    (sp_plus_profile_printed(&t)?, format!("Sp {sign} (printed cells)"))
                }
                FamilyArg::Sp => {
                    (cell_profile(&t, &CodeSpec::Symplectic { sign, n })?, format!("Sp {sign} n={n}"))
                }
            };
            let expected = constants(sign, n, &BigInt::from(t.q()))?.n_size;
            if let Some((actual, expected)) = mass_mismatch(&profile, &expected) {
                eprintln!(
                    "warning: profile mass {actual} does not match the code length {expected}; \
                     weight counts below are for the printed cells as-is"
                );
            }
            let counts = weight_counts(&t, &profile, j_max)?;
            let strings: Vec<String> = counts.counts.iter().map(|c| c.to_string()).collect();
            match format {
                OutputFormat::Json => {
                    // the weight table itself is a bare array of decimal strings
                    let _ = label;
                    print_json(&Value::Array(strings.into_iter().map(Value::String).collect()));
                }
                OutputFormat::Csv => {
                    emit_line("j,count");
                    for (j, c) in strings.iter().enumerate() {
                        emit_line(format_args!("{j},{c}"));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dual { field, sign, n, i, a, format } => {
            let t = field.build()?;
            let fam = CosetFamily::new(sign.into(), n, i)?;
            match a {
                Some(idx) => {
                    if idx >= t.q() {
                        return Err(Error::parameter(format!("element index {idx} out of range")));
                    }
                    let w = dual_weight(&t, &fam, t.elem(idx))?;
                    print_json(&json!({ "a": idx, "weight": w.to_string() }));
                }
                None => {
                    let dist = dual_distribution(&t, &fam)?;
                    match format {
                        OutputFormat::Json => {
                            let map: BTreeMap<String, u64> =
                                dist.iter().map(|(w, c)| (w.to_string(), *c)).collect();
                            print_json(&json!({
                                "length": constants(fam.sign, n, &BigInt::from(t.q()))?.n_size.to_string(),
                                "distribution": map,
                            }));
                        }
                        OutputFormat::Csv => {
                            emit_line("weight,count");
                            for (w, c) in dist {
                                emit_line(format_args!("{w},{c}"));
                            }
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(v) => run_verify(v),
        Command::Oracle { field, job, sign, n, i } => run_oracle(field, &job, sign, n, i),
    }
}

fn recursion_report_json(rep: &RecursionReport) -> Value {
    json!({
        "sign": rep.sign.to_string(),
        "n": rep.n,
        "i": rep.i,
        "h": rep.h,
        "moment_order": rep.moment_order,
        "lhs": rep.lhs.to_string(),
        "rhs": rep.rhs.to_string(),
        "solved": rep.t12sk_solved.to_string(),
        "direct": rep.t12sk_direct.to_string(),
        "match": rep.matched,
    })
}

fn first_failure_trace(rep: &RecursionReport) -> Value {
    let trace: Vec<Value> = rep
        .trace
        .iter()
        .map(|(name, value)| json!({ "term": name, "value": value.to_string() }))
        .collect();
    json!({
        "failed": recursion_report_json(rep),
        "trace": trace,
    })
}

fn run_verify(v: VerifyCommand) -> Result<ExitCode, Error> {
    match v {
        VerifyCommand::Recursion { field, sign, n, i, h_max, direct_lower } => {
            let t = field.build()?;
            let lower = if direct_lower { LowerOrder::Direct } else { LowerOrder::Solved };
            let reports = match Sign::from(sign) {
                Sign::Minus => t12sk_chain_minus(&t, n, i, h_max, lower)?,
                Sign::Plus => t12sk_chain_plus(&t, n, i, h_max, lower)?,
            };
            if let Some(bad) = reports.iter().find(|r| !r.matched) {
                print_json(&first_failure_trace(bad));
                return Ok(ExitCode::from(1));
            }
            print_json(&Value::Array(reports.iter().map(recursion_report_json).collect()));
            Ok(ExitCode::SUCCESS)
        }
        VerifyCommand::Sk { field, sign, n, h_max } => {
            let t = field.build()?;
            let mut out = Vec::new();
            for h in 1..=h_max {
                let rep = sk_identity(&t, sign.into(), n, h)?;
                let value = json!({
                    "sign": rep.sign.to_string(),
                    "n": rep.n,
                    "h": rep.h,
                    "lhs": rep.lhs.to_string(),
                    "rhs": rep.rhs.to_string(),
                    "match": rep.matched,
                });
                if !rep.matched {
                    print_json(&value);
                    return Ok(ExitCode::from(1));
                }
                out.push(value);
            }
            print_json(&Value::Array(out));
            Ok(ExitCode::SUCCESS)
        }
        VerifyCommand::Pless { file, h_max } => {
            let (code_weights, dual_weights, k, n, q) = match file {
                Some(path) => parse_pless_file(&path)?,
                None => builtin_pless_pair()?,
            };
            let mut out = Vec::new();
            for h in 0..=h_max {
                let ok = pless_check(&code_weights, &dual_weights, k, n, h, q)?;
                let value = json!({ "h": h, "match": ok });
                if !ok {
                    print_json(&value);
                    return Ok(ExitCode::from(1));
                }
                out.push(value);
            }
            print_json(&Value::Array(out));
            Ok(ExitCode::SUCCESS)
        }
        VerifyCommand::Charsum { field, m_max } => {
            let t = field.build()?;
            let mut checked = 0u64;
            for m in 0..=m_max {
                for beta in t.elements() {
                    if !kloosterman::char_sums::incomplete_moment_identity(&t, m, beta)? {
                        print_json(&json!({ "identity": "incomplete_moment", "m": m, "beta": beta.index(), "match": false }));
                        return Ok(ExitCode::from(1));
                    }
                }
                for a in t.nonzero_elements() {
                    if !kloosterman::char_sums::char_delta_identity(&t, m, a)? {
                        print_json(&json!({ "identity": "char_delta", "m": m, "a": a.index(), "match": false }));
                        return Ok(ExitCode::from(1));
                    }
                }
                checked += (t.q() + t.q() - 1) as u64;
            }
            print_json(&json!({ "q": t.q(), "m_max": m_max, "instances": checked, "match": true }));
            Ok(ExitCode::SUCCESS)
        }
        VerifyCommand::Salie { field, h_max } => {
            let t = field.build()?;
            for h in 1..=h_max {
                if !salie_check(&t, h)? {
                    print_json(&json!({ "h": h, "match": false }));
                    return Ok(ExitCode::from(1));
                }
            }
            print_json(&json!({ "q": t.q(), "h_max": h_max, "match": true }));
            Ok(ExitCode::SUCCESS)
        }
        VerifyCommand::All => {
            let results = kloosterman::acceptance::run_all();
            let mut all_passed = true;
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                eprintln!("{status} criterion {:2} [{:5} ms] {}", r.id, r.millis, r.name);
                if !r.passed {
                    eprintln!("     {}", r.detail);
                    all_passed = false;
                }
            }
            let _ = std::io::stderr().flush();
            print_json(&serde_json::to_value(&results).expect("serializable"));
            Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

/// The built-in explicit pair: the 243-word kernel code of the first minus
/// family at n=1, q=3 (as the dual side) against its 3-word trace-lift dual.
fn builtin_pless_pair(
) -> Result<(BTreeMap<usize, BigInt>, BTreeMap<usize, BigInt>, u32, usize, u32), Error> {
    let t = FieldTable::new(1, None)?;
    let fam = CosetFamily::new(Sign::Minus, 1, 1)?;
    let code = explicit_code(&t, fam)?;
    let kernel = code.kernel.expect("length-6 kernel is enumerable");
    let dual: BTreeMap<usize, BigInt> =
        code.dual_histogram.iter().map(|(&j, &c)| (j, BigInt::from(c))).collect();
    let kernel_weights: BTreeMap<usize, BigInt> = kernel
        .weight_counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(j, &c)| (j, BigInt::from(c)))
        .collect();
    Ok((dual, kernel_weights, 1, 6, 3))
}

fn parse_pless_file(
    path: &PathBuf,
) -> Result<(BTreeMap<usize, BigInt>, BTreeMap<usize, BigInt>, u32, usize, u32), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parameter(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::parameter(format!("invalid JSON in {}: {e}", path.display())))?;
    let weights = |key: &str| -> Result<BTreeMap<usize, BigInt>, Error> {
        let obj = value
            .get(key)
            .and_then(Value::as_object)
            .ok_or_else(|| Error::parameter(format!("missing object {key:?}")))?;
        obj.iter()
            .map(|(j, c)| {
                let j: usize =
                    j.parse().map_err(|_| Error::parameter(format!("bad weight key {j:?}")))?;
                let c = c
                    .as_str()
                    .map(str::to_string)
                    .or_else(|| c.as_u64().map(|v| v.to_string()))
                    .ok_or_else(|| Error::parameter("counts must be strings or integers"))?;
                let c: BigInt =
                    c.parse().map_err(|_| Error::parameter(format!("bad count {c:?}")))?;
                Ok((j, c))
            })
            .collect()
    };
    let int = |key: &str| -> Result<u64, Error> {
        value
            .get(key)
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::parameter(format!("missing integer {key:?}")))
    };
    Ok((
        weights("code_weights")?,
        weights("dual_weights")?,
        int("k")? as u32,
        int("n")? as usize,
        int("q")? as u32,
    ))
}

fn run_oracle(
    field: FieldArg,
    job: &str,
    sign: Option<SignArg>,
    n: Option<u32>,
    i: Option<u8>,
) -> Result<ExitCode, Error> {
    let t = field.build()?;
    let need_fam = || -> Result<CosetFamily, Error> {
        let sign = sign.ok_or_else(|| Error::parameter("--sign is required for this job"))?;
        let n = n.ok_or_else(|| Error::parameter("--n is required for this job"))?;
        let i = i.unwrap_or(1);
        CosetFamily::new(sign.into(), n, i)
    };
    match job {
        "q" => {
            let n = n.ok_or_else(|| Error::parameter("--n is required for this job"))?;
            let elems = build_q(&t, n)?;
            let hist = trace_histogram(&t, &elems);
            print_json(&json!({
                "job": "q",
                "n": n,
                "q": t.q(),
                "order": elems.len().to_string(),
                "trace_histogram": hist,
            }));
        }
        "coset" => {
            let fam = need_fam()?;
            let e = enumerate_double_coset(&t, fam)?;
            let profile = cell_profile(&t, &CodeSpec::Orthogonal(fam))?;
            let matches = e
                .histogram
                .iter()
                .enumerate()
                .all(|(b, &c)| BigInt::from(c) == profile.sizes[b]);
            print_json(&json!({
                "job": "coset",
                "family": format!("{} n={} i={}", fam.sign, fam.n, fam.i),
                "q": t.q(),
                "order": e.elements.len().to_string(),
                "trace_histogram": e.histogram,
                "matches_closed_form": matches,
            }));
            if !matches {
                return Ok(ExitCode::from(1));
            }
        }
        "o3" => {
            let elems = enumerate_o3(&t)?;
            let hist = trace_histogram(&t, &elems);
            print_json(&json!({
                "job": "o3",
                "q": t.q(),
                "order": elems.len().to_string(),
                "trace_histogram": hist,
            }));
        }
        "code" => {
            let fam = need_fam()?;
            let code = explicit_code(&t, fam)?;
            let dual_hist: BTreeMap<String, u64> =
                code.dual_histogram.iter().map(|(w, c)| (w.to_string(), *c)).collect();
            let kernel = code.kernel.as_ref();
            print_json(&json!({
                "job": "code",
                "family": format!("{} n={} i={}", fam.sign, fam.n, fam.i),
                "length": code.length,
                "dual_distinct": code.dual_distinct,
                "dual_histogram": dual_hist,
                "kernel_words": kernel.map(|k| k.word_count.to_string()),
                "kernel_weights": kernel.map(|k| k.weight_counts.clone()),
                "delsarte_consistent": kernel.map(|k| k.delsarte_consistent),
            }));
            if !code.dual_distinct || kernel.is_some_and(|k| !k.delsarte_consistent) {
                return Ok(ExitCode::from(1));
            }
        }
        "expsum" => {
            let fam = need_fam()?;
            let e = enumerate_double_coset(&t, fam)?;
            let mut rows = Vec::new();
            let mut all_match = true;
            for a in t.nonzero_elements() {
                let termwise = coset_exp_sum(&t, &e, a)?;
                let closed =
                    kloosterman::char_sums::coset_exp_sum_closed_form(&t, &fam, a)?;
                let matched = termwise == closed;
                all_match &= matched;
                rows.push(json!({
                    "a": a.index(),
                    "termwise": termwise.to_string(),
                    "closed_form": closed.to_string(),
                    "match": matched,
                }));
            }
            print_json(&json!({
                "job": "expsum",
                "family": format!("{} n={} i={}", fam.sign, fam.n, fam.i),
                "q": t.q(),
                "sums": rows,
                "match": all_match,
            }));
            if !all_match {
                return Ok(ExitCode::from(1));
            }
        }
        other => {
            return Err(Error::parameter(format!(
                "unknown oracle job {other:?} (expected q, coset, o3, code or expsum)"
            )));
        }
    }
    Ok(ExitCode::SUCCESS)
}
