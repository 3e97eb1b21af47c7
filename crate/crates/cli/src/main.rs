use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Read;
use std::process::ExitCode;
use vknot_core::based_matrix::{self, BasedMatrix};
use vknot_core::diagram::parse_lines;
use vknot_core::formal_sum;
use vknot_core::harness::{self, Category, Check, FuzzConfig};
use vknot_core::invariants::{self, Invariant, InvariantValue};
use vknot_core::{fixtures, GaussDiagram};

/// Order-one invariants of virtual knots and based matrices of virtual strings.
#[derive(Parser)]
#[command(name = "vknot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an invariant on each diagram of a file, one per line.
    Invariant(InvariantArgs),
    /// Build, reduce, canonicalize or compare based matrices.
    #[command(subcommand)]
    Matrix(MatrixCommand),
    /// Run seeded randomized checks.
    Fuzz(FuzzArgs),
    /// Recompute every reference value.
    Fixtures {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InvariantName {
    #[value(name = "pt")]
    Pt,
    #[value(name = "pt-ordered")]
    PtOrdered,
    #[value(name = "pt-mod2")]
    PtMod2,
    #[value(name = "S")]
    S,
    #[value(name = "G")]
    G,
    #[value(name = "B")]
    B,
}

#[derive(Args)]
struct InvariantArgs {
    name: InvariantName,
    /// Input file, or `-` for standard input.
    #[arg(long = "in", value_name = "FILE")]
    input: String,
    /// For B: the crossing to smooth, counted from 1 in label order.
    #[arg(long)]
    crossing: Option<usize>,
    /// For B: print `p_t mod 2` of the bracket instead of the formal sum.
    #[arg(long)]
    mod2: bool,
    /// Compare the values of the first two diagrams.
    #[arg(long)]
    compare: bool,
}

#[derive(Subcommand)]
enum MatrixCommand {
    /// Based matrix of each flat diagram of a file.
    Build {
        #[arg(long = "in", value_name = "FILE")]
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Primitive class of a matrix.
    Reduce {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Canonical form of a matrix.
    Canon {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Whether two matrices are homologous.
    Compare { first: String, second: String },
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    steps: usize,
    #[arg(long, default_value_t = 8)]
    max_arrows: usize,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Comma-separated subset of pt, pt-ordered, pt-mod2, S, G, bm-homology, order-one, telescope.
    #[arg(long, value_delimiter = ',', value_parser = parse_check)]
    checks: Option<Vec<Check>>,
    /// Comma-separated subset of closed-framed, closed-unframed, long-framed, long-unframed.
    #[arg(long, value_delimiter = ',', value_parser = parse_category)]
    categories: Option<Vec<Category>>,
    /// Replay a single sample.
    #[arg(long)]
    sample: Option<usize>,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn parse_check(s: &str) -> Result<Check, String> {
    s.parse()
}

fn parse_category(s: &str) -> Result<Category, String> {
    s.parse()
}

type Outcome = Result<bool, String>;

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("reading standard input: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn read_diagrams(path: &str) -> Result<Vec<GaussDiagram>, String> {
    parse_lines(&read_input(path)?).map_err(|e| format!("{path}: {e}"))
}

fn read_matrix(path: &str) -> Result<BasedMatrix, String> {
    BasedMatrix::from_json(&read_input(path)?).map_err(|e| format!("{path}: {e}"))
}

fn value(name: InvariantName, args: &InvariantArgs, d: &GaussDiagram) -> Result<InvariantValue, String> {
    let inv = match name {
        InvariantName::Pt => Invariant::Pt,
        InvariantName::PtOrdered => Invariant::PtOrdered,
        InvariantName::PtMod2 => Invariant::PtMod2,
        InvariantName::S => Invariant::Smoothing,
        InvariantName::G => Invariant::Glueing,
        InvariantName::B => {
            let n = args.crossing.ok_or("B needs --crossing")?;
            if n == 0 || n > d.num_arrows() {
                return Err(format!("no crossing {n} in a diagram with {} arrows", d.num_arrows()));
            }
            let t = d.smooth(n - 1).map_err(|e| e.to_string())?;
            return if args.mod2 {
                invariants::bracket_b_mod2(&t).map(InvariantValue::Poly).map_err(|e| e.to_string())
            } else {
                invariants::bracket_b(&t, vknot_core::diagram::ComponentOrder::RightFirst)
                    .map(InvariantValue::Sum)
                    .map_err(|e| e.to_string())
            };
        }
    };
    invariants::vassiliev_extend(inv, d).map_err(|e| e.to_string())
}

fn run_invariant(args: &InvariantArgs) -> Outcome {
    let ds = read_diagrams(&args.input)?;
    let values = ds.iter().map(|d| value(args.name, args, d)).collect::<Result<Vec<_>, _>>()?;
    if args.compare {
        let [a, b] = &values[..] else {
            return Err(format!("--compare needs exactly two diagrams, got {}", values.len()));
        };
        let verdict = match (a, b) {
            (InvariantValue::Poly(p), InvariantValue::Poly(q)) => if p == q { "EQUAL" } else { "DISTINCT" }.to_string(),
            (InvariantValue::Sum(p), InvariantValue::Sum(q)) => formal_sum::compare(p, q).to_string(),
            _ => unreachable!("one invariant, one value type"),
        };
        println!("{verdict}");
    } else {
        for v in values {
            println!("{v}");
        }
    }
    Ok(true)
}

fn print_matrix(m: &BasedMatrix, json: bool) {
    if json {
        println!("{}", m.to_json());
    } else {
        println!("{m}");
    }
}

fn run_matrix(cmd: &MatrixCommand) -> Outcome {
    match cmd {
        MatrixCommand::Build { input, json } => {
            for (k, d) in read_diagrams(input)?.iter().enumerate() {
                if k > 0 && !json {
                    println!();
                }
                print_matrix(&based_matrix::build(d).map_err(|e| e.to_string())?, *json);
            }
        }
        MatrixCommand::Reduce { file, json } => {
            let class = read_matrix(file)?.reduce_to_primitive();
            if *json {
                let members: Vec<String> = class.matrices().map(BasedMatrix::to_json).collect();
                println!("{{\"members\":[{}]}}", members.join(","));
            } else {
                for (k, m) in class.matrices().enumerate() {
                    if k > 0 {
                        println!();
                    }
                    println!("{m}");
                }
            }
        }
        MatrixCommand::Canon { file, json } => print_matrix(&read_matrix(file)?.canonical_form(), *json),
        MatrixCommand::Compare { first, second } => {
            let (a, b) = (read_matrix(first)?, read_matrix(second)?);
            let h = a.homologous(&b).map_err(|e| e.to_string())?;
            println!("{}", if h { "HOMOLOGOUS" } else { "NOT HOMOLOGOUS" });
        }
    }
    Ok(true)
}

fn run_fuzz(args: &FuzzArgs) -> Outcome {
    let cfg = FuzzConfig {
        seed: args.seed,
        max_arrows: args.max_arrows,
        steps: args.steps,
        samples: args.samples,
        categories: args.categories.clone().unwrap_or_else(|| Category::ALL.to_vec()),
        checks: args.checks.clone().unwrap_or_else(|| Check::ALL.to_vec()),
        only_sample: args.sample,
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.threads).build().map_err(|e| e.to_string())?;
    let report = pool.install(|| harness::run_checks(&cfg));
    println!("{report}");
    Ok(report.is_ok())
}

fn run_fixtures(json: bool) -> Outcome {
    let checks = fixtures::run_suite();
    let ok = checks.iter().all(|c| c.passed());
    if json {
        let rows: Vec<serde_json::Value> = checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name, "expected": c.expected, "actual": c.actual, "passed": c.passed()
                })
            })
            .collect();
        println!("{}", serde_json::json!({ "checks": rows, "passed": ok }));
    } else {
        for c in &checks {
            println!("{c}");
        }
        let failed = checks.iter().filter(|c| !c.passed()).count();
        println!("{} checks, {failed} failed", checks.len());
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Invariant(a) => run_invariant(a),
        Command::Matrix(m) => run_matrix(m),
        Command::Fuzz(f) => run_fuzz(f),
        Command::Fixtures { json } => run_fixtures(*json),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("vknot: {e}");
            ExitCode::from(1)
        }
    }
}
