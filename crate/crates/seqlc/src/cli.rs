//! Command-line interface: `gen`, `lc`, `bound`, `sweep`, `validate`.
//!
//! Exit codes are part of the contract:
//! 0 success, 1 validation reported a failure, 2 bad configuration or an
//! unmet precondition, 3 I/O error, 4 independent measurements disagreed,
//! 5 internal soundness violation.

use std::fs::File;
use std::io::{self, BufReader};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::analysis;
use crate::bound::{
    compute_bound, exact_decomposition_check, tightness_sweep, validate_lifi_params, BoundError,
    BoundOptions, SweepConfig,
};
use crate::config::{read_sequence, write_sequence, ConfigError, GeneratorConfig, SequenceFormatError};
use crate::generators::ControlledSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_ORACLE_DISAGREEMENT: i32 = 4;
pub const EXIT_SOUNDNESS: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "seqlc",
    version,
    about = "Clock-controlled keystream generators and linear-complexity analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate keystream bits from a generator config.
    Gen {
        #[arg(long)]
        config: PathBuf,
        /// Number of bits to emit.
        #[arg(long)]
        count: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure linear complexity of a sequence file.
    Lc {
        /// Input file; stdin when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Compute the spectral lower bound for a clocked generator.
    Bound {
        #[arg(long)]
        config: PathBuf,
        /// Also measure the exact complexity over the full period.
        #[arg(long)]
        exact: bool,
        /// Report gcd diagnostics for spectrally absent factors too.
        #[arg(long = "all-factors")]
        all_factors: bool,
        #[arg(long)]
        json: bool,
        /// Controlled-period analysis limit.
        #[arg(long)]
        limit: Option<u64>,
        /// Enumeration and exact-measurement cap.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Randomized bound-vs-exact tightness study.
    Sweep {
        #[arg(long, default_value_t = 32)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check a generator config end to end: periods, preconditions, and
    /// cross-checked measurements at analysis scale.
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        json: bool,
        /// Controlled-period analysis limit.
        #[arg(long)]
        limit: Option<u64>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::new(EXIT_CONFIG, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_IO, e.to_string())
    }
}

impl From<SequenceFormatError> for Failure {
    fn from(e: SequenceFormatError) -> Self {
        match e {
            SequenceFormatError::Io(io) => Failure::new(EXIT_IO, io.to_string()),
            other => Failure::new(EXIT_CONFIG, other.to_string()),
        }
    }
}

impl From<BoundError> for Failure {
    fn from(e: BoundError) -> Self {
        let code = match &e {
            BoundError::SoundnessViolation(_) => EXIT_SOUNDNESS,
            BoundError::OracleDisagreement(_) => EXIT_ORACLE_DISAGREEMENT,
            _ => EXIT_CONFIG,
        };
        Failure::new(code, e.to_string())
    }
}

pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Gen { config, count, out } => cmd_gen(&config, count, out.as_deref()),
        Command::Lc { input, json } => cmd_lc(input.as_deref(), json),
        Command::Bound {
            config,
            exact,
            all_factors,
            json,
            limit,
            cap,
        } => cmd_bound(&config, exact, all_factors, json, limit, cap),
        Command::Sweep { trials, seed, json } => cmd_sweep(trials, seed, json),
        Command::Validate {
            config,
            json,
            limit,
        } => cmd_validate(&config, json, limit),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn load_config(path: &Path) -> Result<GeneratorConfig, Failure> {
    let text = std::fs::read_to_string(path)?;
    Ok(GeneratorConfig::from_json(&text)?)
}

/// Expected keystream period m*n, available only when both periods are
/// certain without enumeration past the cap and the stride is invertible.
fn analytic_period(spec: &crate::generators::ClockedSpec) -> Option<BigUint> {
    let cap = 1u64 << 17;
    let m = spec.control.step_period(cap).ok()?;
    let s = spec.control.step_sum(cap).ok()?;
    let n = match spec.controlled.period_analytic() {
        Ok(n) => n,
        Err(_) => BigUint::from(spec.controlled.cycle(cap).ok()?.len() as u64),
    };
    let s = BigUint::from(s);
    if !(&s % &n).gcd(&n).is_one() {
        return None;
    }
    Some(BigUint::from(m) * n)
}

fn cmd_gen(config: &Path, count: u64, out: Option<&Path>) -> Result<(), Failure> {
    let spec = load_config(config)?.build()?;
    let bits = spec.keystream_prefix(count as usize);
    let period = analytic_period(&spec);
    match out {
        Some(path) => {
            let file = File::create(path)?;
            write_sequence(io::BufWriter::new(file), &bits, period.as_ref())?;
        }
        None => {
            let stdout = io::stdout();
            write_sequence(stdout.lock(), &bits, period.as_ref())?;
        }
    }
    Ok(())
}

fn cmd_lc(input: Option<&Path>, json: bool) -> Result<(), Failure> {
    let (bits, declared) = match input {
        Some(path) => read_sequence(BufReader::new(File::open(path)?))?,
        None => read_sequence(io::stdin().lock())?,
    };
    let result = match declared {
        Some(0) => return Err(Failure::new(EXIT_CONFIG, "declared period must be positive")),
        Some(p) if (p as usize) > bits.len() => {
            return Err(Failure::new(
                EXIT_CONFIG,
                format!("declared period {p} exceeds the {} bits supplied", bits.len()),
            ))
        }
        Some(p) => {
            let p = p as usize;
            let cycle = &bits[..p];
            let exact = analysis::lc_result_of_cycle(cycle)
                .map_err(|e| Failure::new(EXIT_CONFIG, e.to_string()))?;
            if bits.len() >= 2 * p {
                let bm = analysis::berlekamp_massey(&bits[..2 * p])
                    .map_err(|e| Failure::new(EXIT_CONFIG, e.to_string()))?;
                if bm.complexity != exact.complexity {
                    return Err(Failure::new(
                        EXIT_ORACLE_DISAGREEMENT,
                        format!(
                            "recurrence solver found {} but the period structure gives {}",
                            bm.complexity, exact.complexity
                        ),
                    ));
                }
            }
            if p <= 4096 {
                let rank = analysis::lc_via_circulant_rank(cycle)
                    .map_err(|e| Failure::new(EXIT_CONFIG, e.to_string()))?;
                if rank != exact.complexity {
                    return Err(Failure::new(
                        EXIT_ORACLE_DISAGREEMENT,
                        format!(
                            "circulant rank {rank} disagrees with complexity {}",
                            exact.complexity
                        ),
                    ));
                }
            }
            exact
        }
        None => {
            eprintln!(
                "warning: no declared period; reporting the complexity of the \
                 {}-bit prefix, which may undershoot the full sequence",
                bits.len()
            );
            analysis::berlekamp_massey(&bits).map_err(|e| Failure::new(EXIT_CONFIG, e.to_string()))?
        }
    };
    if json {
        println!(
            "{}",
            serde_json::json!({
                "complexity": result.complexity,
                "min_poly": result.min_poly.to_string(),
                "min_poly_sparse": result.min_poly.sparse_string(),
                "consumed": result.consumed,
                "periodic": declared.is_some(),
            })
        );
    } else {
        println!("complexity: {}", result.complexity);
        println!("min poly: {}", result.min_poly.sparse_string());
    }
    Ok(())
}

fn options_from_flags(exact: bool, all_factors: bool, limit: Option<u64>, cap: Option<u64>) -> BoundOptions {
    let mut opts = BoundOptions {
        exact,
        diagnostics_all_factors: all_factors,
        ..BoundOptions::default()
    };
    if let Some(l) = limit {
        opts.analysis_limit = l;
    }
    if let Some(c) = cap {
        opts.enumeration_cap = c;
        opts.exact_cap = c;
    }
    opts
}

fn cmd_bound(
    config: &Path,
    exact: bool,
    all_factors: bool,
    json: bool,
    limit: Option<u64>,
    cap: Option<u64>,
) -> Result<(), Failure> {
    let spec = load_config(config)?.build()?;
    let opts = options_from_flags(exact, all_factors, limit, cap);
    let report = compute_bound(&spec, &opts)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(());
    }
    println!("n: {}", report.n);
    println!("m: {}", report.m);
    println!("s_m: {} (v = {})", report.step_sum, report.v);
    println!("sigma: {}", report.sigma);
    println!("decimation complexity: {}", report.decimation_complexity);
    println!("{:<28} {:>4} {:>4} {:>6} {:>14}", "factor", "deg", "h", "g", "contribution");
    for f in &report.factors {
        let g = f.g.map_or("-".to_string(), |g| g.to_string());
        println!(
            "{:<28} {:>4} {:>4} {:>6} {:>14}",
            f.p.sparse_string(),
            f.deg,
            f.h,
            g,
            f.contribution
        );
    }
    println!("bound: {}", report.bound);
    if let Some(exact) = report.exact_lc {
        println!("exact: {exact}");
    }
    if let Some(upper) = report.upper_bound {
        println!("upper: {upper}");
    }
    Ok(())
}

fn thread_pool_from_env() -> Result<rayon::ThreadPool, Failure> {
    let threads = match std::env::var("SEQLC_THREADS") {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            Failure::new(
                EXIT_CONFIG,
                format!("SEQLC_THREADS must be a thread count, got {v:?}"),
            )
        })?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::new(EXIT_CONFIG, e.to_string()))
}

fn cmd_sweep(trials: usize, seed: u64, json: bool) -> Result<(), Failure> {
    let cfg = SweepConfig {
        trials,
        seed,
        ..SweepConfig::default()
    };
    let pool = thread_pool_from_env()?;
    let summary = pool.install(|| tightness_sweep(&cfg));
    if json {
        println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
        return Ok(());
    }
    println!("{:>6} {:>6} {:>6} {:>8} {:>8} {:>10}", "index", "m", "n", "bound", "exact", "tightness");
    for row in &summary.rows {
        println!(
            "{:>6} {:>6} {:>6} {:>8} {:>8} {:>10.6}",
            row.index, row.m, row.n, row.bound, row.exact_lc, row.tightness
        );
    }
    println!(
        "completed {}/{} trials, bound met exactly in {}, mean tightness {:.6}, min {:.6}",
        summary.completed,
        summary.trials,
        summary.exact_matches,
        summary.mean_tightness,
        summary.min_tightness
    );
    Ok(())
}

fn cmd_validate(config: &Path, json: bool, limit: Option<u64>) -> Result<(), Failure> {
    let cfg = load_config(config)?;
    let spec = cfg.build()?;
    let limit = limit.unwrap_or(65536);

    // route on the controlled period: past the limit, certify analytically
    let analysis_scale = match &spec.controlled {
        ControlledSpec::Fcsr(f) => match f.period() {
            Ok(p) => p <= BigUint::from(limit),
            Err(_) => false,
        },
        ControlledSpec::Lfsr(_) => true,
    };

    if !analysis_scale {
        let ControlledSpec::Fcsr(f) = &spec.controlled else {
            unreachable!()
        };
        let report = validate_lifi_params(
            Some(spec.control.lfsr().feedback().clone()),
            spec.control.lfsr().initial_state(),
            spec.control.step_map(),
            f.modulus(),
            limit,
        )?;
        if json {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        } else {
            println!("control feedback: {}", report.control_feedback.sparse_string());
            println!("control period: {}", report.control_period);
            println!("step sum: {}", report.step_sum);
            println!("controlled period: {}", report.controlled_period);
            println!("stride invertible: {}", report.stride_invertible);
            println!("expected keystream period: {}", report.expected_keystream_period);
            println!("within analysis limit: {}", report.within_analysis_limit);
        }
        if !report.stride_invertible {
            return Err(Failure::new(
                EXIT_VALIDATION_FAILED,
                "step sum is not invertible modulo the controlled period",
            ));
        }
        return Ok(());
    }

    let opts = BoundOptions {
        exact: true,
        analysis_limit: limit,
        ..BoundOptions::default()
    };
    let report = compute_bound(&spec, &opts)?;
    let rows = exact_decomposition_check(&spec, &opts)?;
    let mn = report.m as u128 * report.n as u128;
    let ks = spec.keystream_prefix(mn as usize);
    let exact = report.exact_lc.expect("exact requested");
    if mn <= 4096 {
        let rank = analysis::lc_via_circulant_rank(&ks)
            .map_err(|e| Failure::new(EXIT_CONFIG, e.to_string()))?;
        if rank as u64 != exact {
            return Err(Failure::new(
                EXIT_ORACLE_DISAGREEMENT,
                format!("circulant rank {rank} disagrees with exact complexity {exact}"),
            ));
        }
    }
    let bm = analysis::berlekamp_massey(&spec.keystream_prefix(2 * mn as usize))
        .map_err(|e| Failure::new(EXIT_CONFIG, e.to_string()))?;
    if bm.complexity as u64 != exact {
        return Err(Failure::new(
            EXIT_ORACLE_DISAGREEMENT,
            format!(
                "recurrence solver found {} but the period structure gives {exact}",
                bm.complexity
            ),
        ));
    }
    if json {
        println!(
            "{}",
            serde_json::json!({
                "report": report,
                "decomposition": rows,
                "cross_checked": true,
            })
        );
    } else {
        println!("bound: {} <= exact: {exact}", report.bound);
        if let Some(upper) = report.upper_bound {
            println!("exact: {exact} <= upper: {upper}");
        }
        println!("decomposition verified across {} factor(s)", rows.len());
        println!("independent measurements agree");
    }
    Ok(())
}
