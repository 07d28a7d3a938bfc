//! Command-line front end: solvers, generators, format conversion and the
//! benchmark harness.
//!
//! Exit codes: 0 satisfiable, 1 unsatisfiable, 2 budget exhausted,
//! 64 usage error, 65 parse error, 70 oracle inconsistency, 74 I/O error.

mod bench;
mod report;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::RunReport;
use ssat::fmt::{read_instance, write_dimacs, write_text};
use ssat::gen::{blocked_board, from_solution_set, from_solution_set_shuffled, random_instance, Profile};
use ssat::oracle::{extract_solution, verify_unsat};
use ssat::solvers::{enumerate_solutions, solve_board, solve_linked, solve_probabilistic, SolveError};
use ssat::{Instance, SolutionSet, DEFAULT_TABLE_CAP};

#[derive(Parser)]
#[command(name = "ssat", version, about = "Full-width SAT solvers over complement-pair semantics")]
struct Cli {
    /// Output format for run results.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Print run counters in text output.
    #[arg(long, global = true)]
    counters: bool,

    /// Ceiling on n for solvers that allocate 2^n entries.
    #[arg(long, global = true, default_value_t = DEFAULT_TABLE_CAP)]
    table_cap: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FileFormat {
    /// Canonical `ssat`/`tsat` digit lines.
    Text,
    /// DIMACS CNF.
    Dimacs,
}

#[derive(Subcommand)]
enum Command {
    /// Decide satisfiability by filling a direct-addressed board.
    Board { input: PathBuf },
    /// Scan rows over a linked candidate table; reports a witness.
    Solve { input: PathBuf },
    /// List every satisfying assignment.
    Enumerate {
        input: PathBuf,
        /// Also print the final candidate-table links.
        #[arg(long)]
        table: bool,
    },
    /// Draw candidates uniformly without replacement until an answer.
    Prob {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stop after this many draws.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Extract a witness through the completion-decision oracle.
    Qsolve { input: PathBuf },
    /// Cross-examine an unsat answer through the oracle.
    Qverify { input: PathBuf },
    /// Generate an instance.
    Gen(GenArgs),
    /// Convert an instance between formats.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: FileFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark grid from a TOML config and emit CSV records.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GenMode {
    /// Comma-separated binary words; the instance's exact solution set.
    #[arg(long, value_name = "WORDS")]
    from_solutions: Option<String>,
    /// All 2^n rows in board-address order.
    #[arg(long)]
    blocked: bool,
    /// Seeded random instance.
    #[arg(long)]
    random: bool,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    mode: GenMode,
    /// Variable count (--blocked and --random).
    #[arg(short = 'n', long = "vars")]
    vars: Option<u32>,
    /// Clause count (--random).
    #[arg(short = 'm', long = "rows")]
    rows: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ProfileArg::Simple)]
    profile: ProfileArg,
    /// Largest clause width for the general profile.
    #[arg(long, default_value_t = 3)]
    max_width: u32,
    /// Shuffle the rows of --from-solutions output with this seed.
    #[arg(long)]
    shuffle_seed: Option<u64>,
    /// Output file format.
    #[arg(long = "as", value_enum, default_value_t = FileFormat::Text)]
    output_format: FileFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProfileArg {
    Simple,
    SimpleDistinct,
    General,
}

/// An error carrying the exit code it maps to.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 64,
            message: message.into(),
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: 65,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        CliError {
            code: 74,
            message: format!("{}: {}", path.display(), err),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(err: SolveError) -> Self {
        CliError::usage(err.to_string())
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::io(path, e))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
    }
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let text = read_input(path)?;
    read_instance(&text).map_err(|e| CliError::parse(format!("{}: {}", path.display(), e)))
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| CliError::io(path, e)),
        None => {
            print!("{}", content);
            Ok(())
        }
    }
}

fn emit(cli: &Cli, report: &RunReport, extra_text: Option<String>) -> u8 {
    match cli.format {
        OutputFormat::Json => println!("{}", report.to_json()),
        OutputFormat::Text => {
            print!("{}", report.to_text(cli.counters));
            if let Some(extra) = extra_text {
                print!("{}", extra);
            }
        }
    }
    report.exit_code as u8
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Board { input } => {
            let instance = load_instance(input)?;
            let result = solve_board(&instance, cli.table_cap)?;
            Ok(emit(cli, &RunReport::from_solve(&result, instance.m()), None))
        }
        Command::Solve { input } => {
            let instance = load_instance(input)?;
            let result = solve_linked(&instance, cli.table_cap)?;
            Ok(emit(cli, &RunReport::from_solve(&result, instance.m()), None))
        }
        Command::Enumerate { input, table } => {
            let instance = load_instance(input)?;
            let result = enumerate_solutions(&instance, cli.table_cap)?;
            let dump = table.then(|| result.table.dump());
            Ok(emit(
                cli,
                &RunReport::from_enumeration(&result, instance.m()),
                dump,
            ))
        }
        Command::Prob {
            input,
            seed,
            budget,
        } => {
            let instance = load_instance(input)?;
            let result = solve_probabilistic(&instance, *seed, *budget, cli.table_cap)?;
            Ok(emit(cli, &RunReport::from_solve(&result, instance.m()), None))
        }
        Command::Qsolve { input } => {
            let instance = load_instance(input)?;
            let result = extract_solution(&instance);
            Ok(emit(cli, &RunReport::from_solve(&result, instance.m()), None))
        }
        Command::Qverify { input } => {
            let instance = load_instance(input)?;
            let (outcome, counters) = verify_unsat(&instance);
            Ok(emit(
                cli,
                &RunReport::from_consistency(outcome, counters, instance.m()),
                None,
            ))
        }
        Command::Gen(args) => {
            let instance = generate(args, cli.table_cap)?;
            let content = match args.output_format {
                FileFormat::Text => write_text(&instance),
                FileFormat::Dimacs => write_dimacs(&instance),
            };
            write_output(&args.out, &content)?;
            Ok(0)
        }
        Command::Convert { input, to, out } => {
            let instance = load_instance(input)?;
            let content = match to {
                FileFormat::Text => write_text(&instance),
                FileFormat::Dimacs => write_dimacs(&instance),
            };
            write_output(out, &content)?;
            Ok(0)
        }
        Command::Bench { config, out } => {
            let text = read_input(config)?;
            let config = bench::BenchConfig::parse_toml(&text)
                .map_err(|e| CliError::usage(e.to_string()))?;
            let records = bench::run_bench(&config).map_err(|e| CliError::usage(e.to_string()))?;
            write_output(out, &bench::to_csv(&records))?;
            eprint!("{}", bench::render_aggregates(&bench::aggregate(&records)));
            Ok(0)
        }
    }
}

fn generate(args: &GenArgs, cap: u32) -> Result<Instance, CliError> {
    let gen_err = |e: ssat::gen::GenError| CliError::usage(e.to_string());
    if let Some(words) = &args.mode.from_solutions {
        let parsed: Vec<ssat::Assignment> = words
            .split(',')
            .map(|w| {
                ssat::Assignment::parse_binary(w.trim())
                    .map_err(|e| CliError::usage(format!("--from-solutions: {}", e)))
            })
            .collect::<Result<_, _>>()?;
        let n = parsed[0].n();
        if parsed.iter().any(|a| a.n() != n) {
            return Err(CliError::usage(
                "--from-solutions words must share one width",
            ));
        }
        let solutions = SolutionSet::new(n, parsed.iter().map(|a| a.word()))
            .expect("parsed words fit their width");
        return match args.shuffle_seed {
            Some(seed) => from_solution_set_shuffled(&solutions, seed, cap).map_err(gen_err),
            None => from_solution_set(&solutions, cap).map_err(gen_err),
        };
    }
    let n = args
        .vars
        .ok_or_else(|| CliError::usage("--vars is required"))?;
    if args.mode.blocked {
        return blocked_board(n, cap).map_err(gen_err);
    }
    let m = args
        .rows
        .ok_or_else(|| CliError::usage("--rows is required with --random"))?;
    let profile = match args.profile {
        ProfileArg::Simple => Profile::Simple,
        ProfileArg::SimpleDistinct => Profile::SimpleDistinct,
        ProfileArg::General => Profile::General {
            max_width: args.max_width,
        },
    };
    random_instance(n, m, args.seed, profile, cap).map_err(gen_err)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
