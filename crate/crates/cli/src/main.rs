use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gpm_cli::bench::{bench, BenchSpec};
use gpm_cli::gen::{
    boolean_product, gen_adversarial_diagonal, gen_matrix_reduction, gen_random, parse_matrix,
    Regime,
};
use gpm_cli::run::{run_count, run_match, Algo, RunOpts};
use gpm_cli::verify::{verify, verify_table};
use gpm_cli::{format_count, format_report, Instance};
use gpm_core::randomized::CountStrategy;
use gpm_core::superimposed::{build_code, build_code_with_degree, verify_code};
use gpm_core::{discrepancy, files, Ratio};

/// Generalised pattern matching: generate, run, verify, and benchmark.
#[derive(Parser)]
#[command(name = "gpm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instance files.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Report all occurrences.
    Match(ExecArgs),
    /// Count mismatches per alignment.
    Count(ExecArgs),
    /// Run an algorithm against the brute-force oracle and check its
    /// contract.
    Verify(VerifyArgs),
    /// Timing sweeps with CSV output.
    Bench(BenchArgs),
    /// Colour a set-system file and report the discrepancy bound and the
    /// potential audit.
    Discrepancy {
        /// Set-system file (`sys z k |U|` header).
        #[arg(long)]
        sys: PathBuf,
    },
    /// Build and verify a superimposed code for a set-system file.
    Codes {
        #[arg(long)]
        sys: PathBuf,
        /// Approximation parameter, e.g. `1/4` or `0.25`.
        #[arg(long)]
        eps: Ratio,
        /// Pin the hash degree instead of deriving it from eps.
        #[arg(long)]
        degree: Option<u32>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random instance in a chosen parameter regime.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 16)]
        sigma_t: u64,
        #[arg(long, default_value_t = 16)]
        sigma_p: u64,
        /// Edge probability regime.
        #[arg(long, conflicts_with_all = ["degree_cap", "intervals_per_char"])]
        density: Option<f64>,
        /// Bounded-degree regime.
        #[arg(long, conflicts_with = "intervals_per_char")]
        degree_cap: Option<u64>,
        /// Interval regime (also writes the `.ivl` file).
        #[arg(long)]
        intervals_per_char: Option<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output path prefix.
        #[arg(long)]
        out: PathBuf,
    },
    /// The periodic diagonal fixture (worst-case stress instance).
    Diagonal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Leave one diagonal intact, producing exactly one occurrence.
        #[arg(long)]
        grant: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Boolean matrix product reduction fixture.
    Reduction {
        /// File with matrix A (0/1 rows).
        #[arg(long)]
        a: PathBuf,
        /// File with matrix B (0/1 rows).
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long)]
    text: PathBuf,
    #[arg(long)]
    pattern: PathBuf,
    /// Relation file (`rel` header).
    #[arg(long)]
    rel: Option<PathBuf>,
    /// Interval relation file (`ivl` header).
    #[arg(long)]
    ivl: Option<PathBuf>,
}

#[derive(Args)]
struct ExecArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// brute | rand-d | rand-s | rand-count | det-d | det-s | interval |
    /// threshold
    #[arg(long)]
    algo: Algo,
    #[arg(long)]
    eps: Option<Ratio>,
    /// Error exponent of the Monte Carlo algorithms.
    #[arg(long, default_value_t = 2)]
    c: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Threshold for `--algo threshold`.
    #[arg(long)]
    delta: Option<u64>,
    /// Counting strategy for rand-count: by-d | by-s | auto.
    #[arg(long, default_value = "auto")]
    strategy: String,
    /// Emit JSON lines instead of plain text.
    #[arg(long, value_parser = ["text", "json"], default_value = "text")]
    format: String,
    /// Report 0-based alignments.
    #[arg(long)]
    zero_index: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    exec: ExecArgs,
    /// Repetitions for randomized algorithms.
    #[arg(long, default_value_t = 100)]
    runs: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Instead of running the algorithm, check this `i count` table
    /// against the oracle.
    #[arg(long)]
    check_table: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated algorithm list.
    #[arg(long, value_delimiter = ',')]
    algos: Vec<Algo>,
    /// Comma-separated text lengths.
    #[arg(long, value_delimiter = ',')]
    ns: Vec<usize>,
    /// Comma-separated pattern lengths.
    #[arg(long, value_delimiter = ',', default_value = "64")]
    ms: Vec<usize>,
    #[arg(long, default_value_t = 32)]
    sigma: u64,
    #[arg(long, default_value_t = 0.1)]
    density: f64,
    /// Use the interval regime with this many intervals per character.
    #[arg(long)]
    intervals_per_char: Option<u32>,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    eps: Option<Ratio>,
    #[arg(long, default_value_t = 2)]
    c: u32,
    #[arg(long)]
    delta: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn parse_strategy(s: &str) -> Result<CountStrategy, gpm_core::Error> {
    Ok(match s {
        "by-d" => CountStrategy::ByDegree,
        "by-s" => CountStrategy::ByEdges,
        "auto" => CountStrategy::Auto,
        other => {
            return Err(gpm_core::Error::input(format!(
                "unknown strategy {other:?}"
            )))
        }
    })
}

fn exec_opts(args: &ExecArgs) -> Result<RunOpts, gpm_core::Error> {
    Ok(RunOpts {
        eps: args.eps,
        c: args.c,
        seed: args.seed,
        delta: args.delta,
        strategy: parse_strategy(&args.strategy)?,
    })
}

fn load_instance(args: &InstanceArgs) -> Result<Instance, gpm_core::Error> {
    Instance::load(
        &args.text,
        &args.pattern,
        args.rel.as_deref(),
        args.ivl.as_deref(),
    )
}

fn real_main() -> Result<ExitCode, gpm_core::Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen { what } => {
            match what {
                GenCommand::Random {
                    n,
                    m,
                    sigma_t,
                    sigma_p,
                    density,
                    degree_cap,
                    intervals_per_char,
                    seed,
                    out,
                } => {
                    let regime = match (density, degree_cap, intervals_per_char) {
                        (Some(p), None, None) => Regime::Density(p),
                        (None, Some(c), None) => Regime::DegreeCap(c),
                        (None, None, Some(i)) => Regime::IntervalsPerChar(i),
                        (None, None, None) => Regime::Density(0.1),
                        _ => {
                            return Err(gpm_core::Error::input(
                                "choose one of --density / --degree-cap / --intervals-per-char",
                            ))
                        }
                    };
                    let instance = gen_random(n, m, sigma_t, sigma_p, regime, seed)?;
                    let written = instance.write_files(&out)?;
                    report_gen(&instance, &written);
                }
                GenCommand::Diagonal { n, m, grant, out } => {
                    let instance = gen_adversarial_diagonal(n, m, grant)?;
                    let written = instance.write_files(&out)?;
                    report_gen(&instance, &written);
                }
                GenCommand::Reduction { a, b, out } => {
                    let a = parse_matrix(&fs::read_to_string(a)?)?;
                    let b = parse_matrix(&fs::read_to_string(b)?)?;
                    let red = gen_matrix_reduction(&a, &b)?;
                    let written = red.instance.write_files(&out)?;
                    report_gen(&red.instance, &written);
                    let product = boolean_product(&a, &b);
                    for (i, j, alignment) in red.designated {
                        println!(
                            "designated {i} {j} {alignment} product {}",
                            product[i - 1][j - 1]
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Match(args) => {
            let instance = load_instance(&args.instance)?;
            let opts = exec_opts(&args)?;
            let report = run_match(&instance, args.algo, &opts)?;
            print!(
                "{}",
                format_report(&report, args.zero_index, args.format == "json")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Count(args) => {
            let instance = load_instance(&args.instance)?;
            let opts = exec_opts(&args)?;
            let table = run_count(&instance, args.algo, &opts)?;
            print!(
                "{}",
                format_count(&table, args.zero_index, args.format == "json")
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let instance = load_instance(&args.exec.instance)?;
            let verdict = match &args.check_table {
                Some(path) => verify_table(&instance, &fs::read_to_string(path)?)?,
                None => {
                    let opts = exec_opts(&args.exec)?;
                    verify(&instance, args.exec.algo, &opts, args.runs, args.threads)?
                }
            };
            for line in &verdict.lines {
                println!("{line}");
            }
            if verdict.pass {
                println!("PASS");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("FAIL");
                Ok(ExitCode::from(1))
            }
        }
        Command::Bench(args) => {
            let regime = match args.intervals_per_char {
                Some(i) => Regime::IntervalsPerChar(i),
                None => Regime::Density(args.density),
            };
            let spec = BenchSpec {
                algos: args.algos,
                ns: args.ns,
                ms: args.ms,
                sigma: args.sigma,
                regime,
                reps: args.reps,
                seed: args.seed,
                opts: RunOpts {
                    eps: args.eps,
                    c: args.c,
                    seed: args.seed,
                    delta: args.delta,
                    strategy: CountStrategy::Auto,
                },
                threads: args.threads,
            };
            print!("{}", bench(&spec)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Discrepancy { sys } => {
            let system = files::load_set_system(&sys)?;
            let colouring = discrepancy::colour(&system);
            let audit_ok =
                discrepancy::audit_potentials(&system, &colouring.chi, colouring.eps_scaled);
            println!(
                "z {} k {} universe {}",
                system.num_sets(),
                system.max_set_size(),
                system.universe()
            );
            println!("max_discrepancy {}", colouring.max_abs_discrepancy());
            println!("bound {:.4}", colouring.discrepancy_bound(&system));
            println!("alpha {:.4}", colouring.alpha);
            println!("eps {:.6}", colouring.eps_scaled as f64 / 2f64.powi(64));
            println!("audit {}", if audit_ok { "ok" } else { "failed" });
            Ok(if audit_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Codes { sys, eps, degree } => {
            let system = files::load_set_system(&sys)?;
            let code = match degree {
                Some(d) => build_code_with_degree(&system, eps, d)?,
                None => build_code(&system, eps)?,
            };
            let report = verify_code(&code, &system);
            println!(
                "d {} w {} length {} partition_bound {}",
                code.degree()
                    .map_or(String::from("degenerate"), |d| d.to_string()),
                code.weight(),
                code.length(),
                code.partition_bound()
            );
            println!(
                "min_surviving {} tau {:.3}",
                report.min_surviving, report.tau
            );
            println!("verdict {}", if report.ok { "ok" } else { "failed" });
            Ok(if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn report_gen(instance: &Instance, written: &[PathBuf]) {
    let (d, s, i) = instance.achieved_params();
    println!(
        "n {} m {} D {} S {} I {}",
        instance.text.len(),
        instance.pattern.len(),
        d,
        s,
        i.map_or(String::from("-"), |v| v.to_string())
    );
    for path in written {
        println!("wrote {}", path.display());
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
