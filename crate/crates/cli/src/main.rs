//! `mersenne-lab`: factor Mersenne numbers, census dense-divisor sets and
//! evaluate the largest-prime-factor series from the command line.
//!
//! Exit codes: 0 success, 1 a verification suite found a violation (or an
//! operational error), 2 usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mersenne_lab::arith::{factor_integer, FactorBudget};
use mersenne_lab::cache::FactorCache;
use mersenne_lab::density::{
    count_dense, density_profile, generate_dense, smooth_count, CountMethod, DenseCount,
};
use mersenne_lab::mersenne::{
    divisor_multiplier_set, factor_mersenne, mersenne_number, primitive_divisor, verify_product,
};
use mersenne_lab::series::{
    classify_n, partial_sum_sigma, phi_min_order, schinzel_check, stewart_a_exceptions,
    stewart_b_check, tau_sum_check,
};
use mersenne_lab::{FactoredInteger, Status};

const DEFAULT_CACHE_FILE: &str = "mersenne-lab-cache.jsonl";
const CACHE_ENV_VAR: &str = "MERSENNE_LAB_CACHE";

#[derive(Parser)]
#[command(
    name = "mersenne-lab",
    version,
    about = "Workbench for the arithmetic of Mersenne numbers 2^n - 1",
    after_help = "\
The factor cache is a JSON-lines file; its path comes from --cache, then the\n\
MERSENNE_LAB_CACHE environment variable, then ./mersenne-lab-cache.jsonl.\n\
CSV exports use the fixed column order\n\
  n,status,trial_bound,rho_cap,timestamp,factors,cofactor\n\
with factors encoded as p^e separated by ';'. All numbers are decimal."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cache file path (overrides MERSENNE_LAB_CACHE)
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Run without reading or writing any cache
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Trial-division bound
    #[arg(long, default_value_t = 100_000)]
    trial_bound: u64,
    /// Total cycle-finding iteration cap
    #[arg(long, default_value_t = 1 << 26)]
    rho_cap: u64,
    /// Wall-clock safety cap in milliseconds
    #[arg(long, default_value_t = 120_000)]
    budget_ms: u64,
    /// Seed for the deterministic constant/witness schedules
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl BudgetArgs {
    fn budget(&self) -> FactorBudget {
        FactorBudget {
            trial_division_bound: self.trial_bound,
            rho_iteration_cap: self.rho_cap,
            wall_clock_cap_ms: self.budget_ms,
            rng_seed: self.seed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Generate,
    Sieve,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Schinzel,
    Lemma3,
    Saias,
    Primitive,
    Product,
    #[value(name = "stewartA", alias = "stewarta")]
    StewartA,
    #[value(name = "stewartB", alias = "stewartb")]
    StewartB,
    Tausum,
    Phimin,
}

#[derive(Subcommand)]
enum Command {
    /// Factor 2^n - 1 through its cyclotomic parts
    Factor {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Divisor-gap statistics of n itself (Δ, Δ₀, τ, ω)
    Density {
        #[arg(long)]
        n: u64,
    },
    /// Census of G(x,z) = { n <= x : Δ₀(n) <= z }
    Gxz {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        z: u64,
        /// generate walks the prime-chain tree; sieve brute-forces Δ₀
        #[arg(long, value_enum, default_value = "generate")]
        method: MethodArg,
        /// Also list the members (in ascending order)
        #[arg(long)]
        emit_members: bool,
    },
    /// Smooth-number count Ψ(x,y)
    Smooth {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
    },
    /// Partial sums of Σ (log n)^α / P(2^n - 1) for n = 2..max-n
    Sigma {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        max_n: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Exceptional-set membership flags for n = 2..max-n
    Classify {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        max_n: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run a verification suite; exits 1 if it finds a violation
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Upper end of the exponent scan (schinzel, primitive, product,
        /// stewartA, stewartB)
        #[arg(long, default_value_t = 120)]
        max_n: u64,
        /// Lower end of the schinzel scan
        #[arg(long, default_value_t = 13)]
        from: u64,
        /// Allow the schinzel scan below its n = 13 starting point
        #[arg(long)]
        permissive: bool,
        /// Range bound for lemma3 (Δ₀ equivalence scan)
        #[arg(long, default_value_t = 100_000)]
        x: u64,
        /// f(n) = (log n)^epsilon for stewartA
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Prime-factor-count slope for stewartB (must be < 1/log 2)
        #[arg(long, default_value_t = 1.2)]
        kappa: f64,
        /// Reference constant reported against by stewartB
        #[arg(long, default_value_t = 0.0)]
        big_c: f64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Export the cache as CSV or JSON
    Export {
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

fn cache_path(cli: &Cli) -> PathBuf {
    cli.cache.clone().unwrap_or_else(|| {
        std::env::var_os(CACHE_ENV_VAR)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_FILE))
    })
}

fn open_cache(cli: &Cli) -> Result<Option<FactorCache>, AnyError> {
    if cli.no_cache {
        return Ok(None);
    }
    Ok(Some(FactorCache::open(cache_path(cli))?))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), AnyError> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

#[derive(Serialize)]
struct FactorOutput {
    n: u64,
    factors: Vec<(String, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cofactor: Option<String>,
    status: Status,
}

#[derive(Serialize)]
struct GxzOutput {
    #[serde(flatten)]
    census: DenseCount,
    #[serde(skip_serializing_if = "Option::is_none")]
    members: Option<Vec<u64>>,
}

#[derive(Serialize)]
struct SmoothOutput {
    x: u64,
    y: u64,
    count: u64,
}

fn run(cli: &Cli) -> Result<ExitCode, AnyError> {
    match &cli.command {
        Command::Factor { n, budget } => {
            let cache = open_cache(cli)?;
            let mf = factor_mersenne(*n, &budget.budget(), cache.as_ref());
            let merged = mf.merged();
            print_json(&FactorOutput {
                n: *n,
                factors: merged
                    .factors()
                    .iter()
                    .map(|(p, e)| (p.to_string(), *e))
                    .collect(),
                cofactor: (!merged.is_complete()).then(|| merged.cofactor().to_string()),
                status: merged.status(),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Density { n } => {
            if *n < 2 {
                eprintln!("error: density needs n >= 2 (Δ is undefined on 1)");
                return Ok(ExitCode::from(2));
            }
            let profile = density_profile(&FactoredInteger::of_u64(*n))?;
            print_json(&profile)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gxz {
            x,
            z,
            method,
            emit_members,
        } => {
            let method = match method {
                MethodArg::Generate => CountMethod::Generate,
                MethodArg::Sieve => CountMethod::BruteForce,
            };
            let census = count_dense(*x, *z, method);
            let members = emit_members.then(|| {
                let mut m: Vec<u64> = generate_dense(*x, *z).collect();
                m.sort_unstable();
                m
            });
            print_json(&GxzOutput { census, members })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Smooth { x, y } => {
            print_json(&SmoothOutput {
                x: *x,
                y: *y,
                count: smooth_count(*x, *y),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sigma {
            alpha,
            max_n,
            budget,
        } => {
            let cache = open_cache(cli)?;
            let report = partial_sum_sigma(*alpha, *max_n, cache.as_ref(), &budget.budget());
            print_json(&report)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify {
            alpha,
            max_n,
            budget,
        } => {
            let cache = open_cache(cli)?;
            let budget = budget.budget();
            let mut flags = Vec::new();
            for n in 2..=*max_n {
                let mf = factor_mersenne(n, &budget, cache.as_ref());
                flags.push(classify_n(*alpha, &mf)?);
            }
            print_json(&flags)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { .. } => run_verify(cli),
        Command::Export { format, out } => {
            let path = cache_path(cli);
            let cache = FactorCache::open_read_only(&path)?;
            let records = cache.records();
            match format {
                ExportFormat::Json => {
                    let json = serde_json::to_string_pretty(&records)?;
                    std::fs::write(out, json + "\n")?;
                }
                ExportFormat::Csv => {
                    let mut w = csv::Writer::from_path(out)?;
                    w.write_record([
                        "n",
                        "status",
                        "trial_bound",
                        "rho_cap",
                        "timestamp",
                        "factors",
                        "cofactor",
                    ])?;
                    for r in &records {
                        let factors = r
                            .factors
                            .iter()
                            .map(|(p, e)| format!("{p}^{e}"))
                            .collect::<Vec<_>>()
                            .join(";");
                        w.write_record([
                            r.n.to_string(),
                            format!("{:?}", r.status),
                            r.trial_bound.to_string(),
                            r.rho_cap.to_string(),
                            r.timestamp.to_string(),
                            factors,
                            r.cofactor.clone(),
                        ])?;
                    }
                    w.flush()?;
                }
            }
            eprintln!("exported {} record(s) to {}", records.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[derive(Serialize)]
struct SuiteResult<T: Serialize> {
    suite: &'static str,
    pass: bool,
    detail: T,
}

fn finish<T: Serialize>(suite: &'static str, pass: bool, detail: T) -> Result<ExitCode, AnyError> {
    println!("{} {}", if pass { "PASS" } else { "FAIL" }, suite);
    print_json(&SuiteResult {
        suite,
        pass,
        detail,
    })?;
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_verify(cli: &Cli) -> Result<ExitCode, AnyError> {
    let Command::Verify {
        suite,
        max_n,
        from,
        permissive,
        x,
        epsilon,
        kappa,
        big_c,
        budget,
    } = &cli.command
    else {
        unreachable!()
    };
    let budget = budget.budget();
    match suite {
        Suite::Schinzel => {
            let cache = open_cache(cli)?;
            let report = schinzel_check(*from, *max_n, *permissive, cache.as_ref(), &budget)?;
            let pass = report.violations.is_empty();
            println!(
                "{} violations, {} unverified over [{}, {}]",
                report.violations.len(),
                report.unverified.len(),
                report.n_lo,
                report.n_hi
            );
            finish("schinzel", pass, report)
        }
        Suite::Lemma3 => {
            #[derive(Serialize)]
            struct Mismatch {
                n: u64,
                z: u64,
                chain: bool,
                delta0_le_z: bool,
            }
            let zs = [2u64, 3, 4, 5, 8, 16, 100];
            let mut mismatches = Vec::new();
            for n in 1..=*x {
                let f = FactoredInteger::of_u64(n);
                let d0 = mersenne_lab::density::delta0(&f)?;
                for &z in &zs {
                    let chain = mersenne_lab::density::dense_chain_test(&f, z)?;
                    let le = d0.le_u64(z);
                    if chain != le {
                        mismatches.push(Mismatch {
                            n,
                            z,
                            chain,
                            delta0_le_z: le,
                        });
                    }
                }
            }
            let pass = mismatches.is_empty();
            println!(
                "{} mismatches over n <= {}, z in {:?}",
                mismatches.len(),
                x,
                zs
            );
            finish("lemma3", pass, mismatches)
        }
        Suite::Saias => {
            #[derive(Serialize)]
            struct Band {
                z: u64,
                ratios: Vec<f64>,
                spread: f64,
                in_band: bool,
            }
            let mut bands = Vec::new();
            let mut pass = true;
            for z in [2u64, 10, 100] {
                let ratios: Vec<f64> = [1_000u64, 10_000, 100_000, 1_000_000]
                    .iter()
                    .map(|&x| count_dense(x, z, CountMethod::Generate).saias_ratio)
                    .collect();
                let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
                let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
                let in_band = ratios.iter().all(|r| (0.3..=3.5).contains(r));
                let spread = max / min;
                pass &= in_band && spread < 3.0;
                println!("z={z}: ratios {ratios:?} spread {spread:.4}");
                bands.push(Band {
                    z,
                    ratios,
                    spread,
                    in_band,
                });
            }
            finish("saias", pass, bands)
        }
        Suite::Primitive => {
            #[derive(Serialize)]
            struct PrimitiveIssue {
                n: u64,
                issue: String,
            }
            let cache = open_cache(cli)?;
            let mut issues = Vec::new();
            for n in 2..=*max_n {
                let mf = factor_mersenne(n, &budget, cache.as_ref());
                if !mf.is_complete() {
                    issues.push(PrimitiveIssue {
                        n,
                        issue: "factorization incomplete under budget".into(),
                    });
                    continue;
                }
                if n >= 7 && divisor_multiplier_set(&mf)?.multipliers.is_empty() {
                    issues.push(PrimitiveIssue {
                        n,
                        issue: "D(n) empty".into(),
                    });
                }
                let prim = primitive_divisor(&mf)?;
                if (n == 6) != prim.is_none() {
                    issues.push(PrimitiveIssue {
                        n,
                        issue: format!("primitive divisor {prim:?}"),
                    });
                }
            }
            let pass = issues.is_empty();
            println!("{} issues over 2..={}", issues.len(), max_n);
            finish("primitive", pass, issues)
        }
        Suite::Product => {
            #[derive(Serialize)]
            struct ProductIssue {
                n: u64,
                issue: String,
            }
            let cache = open_cache(cli)?;
            let mut issues = Vec::new();
            for n in 1..=*max_n {
                let mf = factor_mersenne(n, &budget, cache.as_ref());
                if !verify_product(&mf) {
                    issues.push(ProductIssue {
                        n,
                        issue: "verify_product failed".into(),
                    });
                }
                if n <= 64 && n >= 2 {
                    let direct = factor_integer(&mersenne_number(n), &budget);
                    if direct.factors() != mf.merged().factors()
                        || direct.cofactor() != mf.merged().cofactor()
                    {
                        issues.push(ProductIssue {
                            n,
                            issue: "cyclotomic and direct factorizations disagree".into(),
                        });
                    }
                }
            }
            let pass = issues.is_empty();
            println!("{} issues over 1..={}", issues.len(), max_n);
            finish("product", pass, issues)
        }
        Suite::StewartA => {
            let cache = open_cache(cli)?;
            let report = stewart_a_exceptions(*max_n, *epsilon, cache.as_ref(), &budget)?;
            println!(
                "{} exceptions (density {:.6}), {} unverified",
                report.exceptions.len(),
                report.density,
                report.unverified.len()
            );
            // report-only: the exceptional set is allowed to be nonempty
            finish("stewartA", true, report)
        }
        Suite::StewartB => {
            let cache = open_cache(cli)?;
            let report = stewart_b_check(*max_n, *kappa, *big_c, cache.as_ref(), &budget)?;
            match (report.min_ratio, report.argmin) {
                (Some(m), Some(a)) => println!(
                    "{} qualifying, min ratio {m:.6} at n = {a}",
                    report.qualifying
                ),
                _ => println!("no qualifying exponents"),
            }
            finish("stewartB", true, report)
        }
        Suite::Tausum => {
            #[derive(Serialize)]
            struct TauSumDetail {
                small: mersenne_lab::series::TauSumCheck,
                large: mersenne_lab::series::TauSumCheck,
                large_error: f64,
            }
            let small = tau_sum_check(100);
            let large = tau_sum_check(1_000_000);
            let large_error = (large.sum as f64 - large.reference).abs();
            let pass = small.sum == 482 && large_error < 1e4;
            println!(
                "sum(100) = {}, |sum(10^6) - reference| = {large_error:.1}",
                small.sum
            );
            finish(
                "tausum",
                pass,
                TauSumDetail {
                    small,
                    large,
                    large_error,
                },
            )
        }
        Suite::Phimin => {
            let report = phi_min_order(100, 1_000_000)?;
            let pass = report.value >= 0.3 && report.argmin == 510_510;
            println!(
                "min phi(n) loglog n / n = {:.6} at n = {}",
                report.value, report.argmin
            );
            finish("phimin", pass, report)
        }
    }
}
