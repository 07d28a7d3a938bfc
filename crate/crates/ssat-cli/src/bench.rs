//! The benchmark harness: runs a grid of (solver, n, seed, repetition)
//! cells over one instance family, records the counters of every run as CSV
//! with a fixed header, and aggregates means and medians per solver and n.
//!
//! Cells execute in parallel; records are collected and written in the
//! deterministic grid order, so two runs of the same config produce the
//! same records apart from the wall-clock column.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Deserialize;

use ssat::gen::{blocked_board, from_solution_set_shuffled, random_instance, Profile};
use ssat::oracle::{extract_solution, verify_unsat, UnsatConsistency};
use ssat::solvers::{enumerate_solutions, solve_board, solve_linked, solve_probabilistic};
use ssat::{Counters, Instance, SolutionSet, DEFAULT_TABLE_CAP};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("bad bench config: {0}")]
    Config(String),
    #[error("cell solver={solver} n={n} seed={seed}: {message}")]
    Cell {
        solver: SolverKind,
        n: u32,
        seed: u64,
        message: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    Board,
    Linked,
    Enumerate,
    Prob,
    Qsolve,
    Qverify,
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SolverKind::Board => "board",
            SolverKind::Linked => "linked",
            SolverKind::Enumerate => "enumerate",
            SolverKind::Prob => "prob",
            SolverKind::Qsolve => "qsolve",
            SolverKind::Qverify => "qverify",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// All `2^n` rows in board-address order; always unsatisfiable.
    Blocked,
    /// Exactly one solution, `seed mod 2^n`, rows shuffled by the seed.
    Unique,
    /// A random nonempty prescribed solution set, rows shuffled by the seed.
    Prescribed,
    /// Uniform full-width rows with replacement.
    RandomSimple,
    /// Uniform full-width rows without replacement.
    RandomSimpleDistinct,
    /// Random clauses of width `1..=max_width`.
    RandomGeneral,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Blocked => "blocked",
            Family::Unique => "unique",
            Family::Prescribed => "prescribed",
            Family::RandomSimple => "random-simple",
            Family::RandomSimpleDistinct => "random-simple-distinct",
            Family::RandomGeneral => "random-general",
        };
        f.write_str(name)
    }
}

fn default_one_u32() -> u32 {
    1
}

fn default_one_u64() -> u64 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub solvers: Vec<SolverKind>,
    pub family: Family,
    pub n_min: u32,
    pub n_max: u32,
    /// Clause count for the random families.
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub max_width: Option<u32>,
    #[serde(default)]
    pub seed_start: u64,
    #[serde(default = "default_one_u64")]
    pub seed_count: u64,
    #[serde(default = "default_one_u32")]
    pub repetitions: u32,
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(default)]
    pub table_cap: Option<u32>,
}

impl BenchConfig {
    pub fn parse_toml(text: &str) -> Result<Self, BenchError> {
        let config: BenchConfig =
            toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    fn cap(&self) -> u32 {
        self.table_cap.unwrap_or(DEFAULT_TABLE_CAP)
    }

    fn validate(&self) -> Result<(), BenchError> {
        let fail = |message: &str| Err(BenchError::Config(message.to_string()));
        if self.solvers.is_empty() {
            return fail("no solvers listed");
        }
        if self.n_min < 1 || self.n_min > self.n_max {
            return fail("need 1 <= n_min <= n_max");
        }
        if self.n_max > self.cap() {
            return Err(BenchError::Config(format!(
                "n_max={} exceeds the table cap {}",
                self.n_max,
                self.cap()
            )));
        }
        if self.seed_count == 0 || self.repetitions == 0 {
            return fail("seed_count and repetitions must be positive");
        }
        let needs_m = matches!(
            self.family,
            Family::RandomSimple | Family::RandomSimpleDistinct | Family::RandomGeneral
        );
        if needs_m && self.m.is_none() {
            return fail("this family requires m");
        }
        if self.family == Family::RandomSimpleDistinct {
            let m = self.m.unwrap();
            if m > 1usize << self.n_min {
                return Err(BenchError::Config(format!(
                    "distinct sampling needs m <= 2^n for every n; m={} fails at n={}",
                    m, self.n_min
                )));
            }
        }
        if self.family == Family::RandomGeneral {
            let width = self.max_width.unwrap_or(3);
            if width == 0 || width > self.n_min {
                return Err(BenchError::Config(format!(
                    "max_width={} must be in 1..=n for every n in the range",
                    width
                )));
            }
        }
        let classical = |s: &SolverKind| {
            matches!(
                s,
                SolverKind::Board | SolverKind::Linked | SolverKind::Enumerate | SolverKind::Prob
            )
        };
        if self.family == Family::RandomGeneral && self.solvers.iter().any(classical) {
            return fail("the random-general family only runs under qsolve/qverify");
        }
        Ok(())
    }
}

/// One row of the CSV report.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub solver: SolverKind,
    pub family: Family,
    pub n: u32,
    pub m: usize,
    pub seed: u64,
    pub rep: u32,
    pub status: String,
    pub counters: Counters,
    pub wall_ns: u128,
}

fn build_instance(config: &BenchConfig, n: u32, seed: u64) -> Result<Instance, String> {
    let cap = config.cap();
    let stringify = |e: ssat::gen::GenError| e.to_string();
    match config.family {
        Family::Blocked => blocked_board(n, cap).map_err(stringify),
        Family::Unique => {
            let target = seed % (1u64 << n);
            let solutions = SolutionSet::new(n, [target]).expect("target fits width");
            from_solution_set_shuffled(&solutions, seed, cap).map_err(stringify)
        }
        Family::Prescribed => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut words: Vec<u64> = (0..(1u64 << n)).filter(|_| rng.gen::<bool>()).collect();
            if words.is_empty() {
                words.push(seed % (1u64 << n));
            }
            let solutions = SolutionSet::new(n, words).expect("words fit width");
            from_solution_set_shuffled(&solutions, seed, cap).map_err(stringify)
        }
        Family::RandomSimple => {
            random_instance(n, config.m.unwrap(), seed, Profile::Simple, cap).map_err(stringify)
        }
        Family::RandomSimpleDistinct => {
            random_instance(n, config.m.unwrap(), seed, Profile::SimpleDistinct, cap)
                .map_err(stringify)
        }
        Family::RandomGeneral => {
            let width = config.max_width.unwrap_or(3).min(n);
            random_instance(n, config.m.unwrap(), seed, Profile::General { max_width: width }, cap)
                .map_err(stringify)
        }
    }
}

fn run_cell(
    config: &BenchConfig,
    solver: SolverKind,
    n: u32,
    seed: u64,
    rep: u32,
) -> Result<BenchRecord, BenchError> {
    let cell_err = |message: String| BenchError::Cell {
        solver,
        n,
        seed,
        message,
    };
    let instance = build_instance(config, n, seed).map_err(cell_err)?;
    let cap = config.cap();
    let started = Instant::now();
    let (status, counters) = match solver {
        SolverKind::Board => {
            let res = solve_board(&instance, cap).map_err(|e| cell_err(e.to_string()))?;
            (res.verdict.status_label().to_string(), res.counters)
        }
        SolverKind::Linked => {
            let res = solve_linked(&instance, cap).map_err(|e| cell_err(e.to_string()))?;
            (res.verdict.status_label().to_string(), res.counters)
        }
        SolverKind::Enumerate => {
            let res = enumerate_solutions(&instance, cap).map_err(|e| cell_err(e.to_string()))?;
            let status = if res.solutions.is_empty() { "unsat" } else { "sat" };
            (status.to_string(), res.counters)
        }
        SolverKind::Prob => {
            let res = solve_probabilistic(&instance, seed, config.budget, cap)
                .map_err(|e| cell_err(e.to_string()))?;
            (res.verdict.status_label().to_string(), res.counters)
        }
        SolverKind::Qsolve => {
            let res = extract_solution(&instance);
            (res.verdict.status_label().to_string(), res.counters)
        }
        SolverKind::Qverify => {
            let (outcome, counters) = verify_unsat(&instance);
            let status = match outcome {
                UnsatConsistency::NotApplicable => "sat",
                UnsatConsistency::Consistent => "unsat",
                UnsatConsistency::Inconsistent { .. } => "inconsistent",
            };
            (status.to_string(), counters)
        }
    };
    Ok(BenchRecord {
        solver,
        family: config.family,
        n,
        m: instance.m(),
        seed,
        rep,
        status,
        counters,
        wall_ns: started.elapsed().as_nanos(),
    })
}

/// Runs every cell of the grid, in parallel, returning records in grid
/// order: solver, then n, then seed, then repetition.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    config.validate()?;
    let mut cells = Vec::new();
    for &solver in &config.solvers {
        for n in config.n_min..=config.n_max {
            for seed in config.seed_start..config.seed_start + config.seed_count {
                for rep in 0..config.repetitions {
                    cells.push((solver, n, seed, rep));
                }
            }
        }
    }
    cells
        .par_iter()
        .map(|&(solver, n, seed, rep)| run_cell(config, solver, n, seed, rep))
        .collect()
}

pub const CSV_HEADER: &str =
    "solver,family,n,m,seed,rep,status,rows_read,evaluations,removals,oracle_calls,random_draws,wall_ns";

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let c = &r.counters;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.solver,
            r.family,
            r.n,
            r.m,
            r.seed,
            r.rep,
            r.status,
            c.rows_read,
            c.evaluations,
            c.removals,
            c.oracle_calls,
            c.random_draws,
            r.wall_ns
        ));
    }
    out
}

/// Per-(solver, n) means and medians.
#[derive(Debug, Clone)]
pub struct Aggregate {
    pub solver: SolverKind,
    pub n: u32,
    pub runs: usize,
    pub mean: [f64; 6],
    pub median: [f64; 6],
}

const METRICS: [&str; 6] = [
    "rows_read",
    "evaluations",
    "removals",
    "oracle_calls",
    "random_draws",
    "wall_ns",
];

fn metric_values(records: &[&BenchRecord], metric: usize) -> Vec<f64> {
    records
        .iter()
        .map(|r| match metric {
            0 => r.counters.rows_read as f64,
            1 => r.counters.evaluations as f64,
            2 => r.counters.removals as f64,
            3 => r.counters.oracle_calls as f64,
            4 => r.counters.random_draws as f64,
            _ => r.wall_ns as f64,
        })
        .collect()
}

fn median(sorted: &[f64]) -> f64 {
    let k = sorted.len();
    if k == 0 {
        return 0.0;
    }
    if k % 2 == 1 {
        sorted[k / 2]
    } else {
        (sorted[k / 2 - 1] + sorted[k / 2]) / 2.0
    }
}

pub fn aggregate(records: &[BenchRecord]) -> Vec<Aggregate> {
    let mut groups: Vec<(SolverKind, u32)> = Vec::new();
    for r in records {
        if !groups.contains(&(r.solver, r.n)) {
            groups.push((r.solver, r.n));
        }
    }
    groups
        .into_iter()
        .map(|(solver, n)| {
            let members: Vec<&BenchRecord> = records
                .iter()
                .filter(|r| r.solver == solver && r.n == n)
                .collect();
            let mut mean = [0.0; 6];
            let mut med = [0.0; 6];
            for metric in 0..6 {
                let mut values = metric_values(&members, metric);
                mean[metric] = values.iter().sum::<f64>() / values.len() as f64;
                values.sort_by(f64::total_cmp);
                med[metric] = median(&values);
            }
            Aggregate {
                solver,
                n,
                runs: members.len(),
                mean,
                median: med,
            }
        })
        .collect()
}

pub fn render_aggregates(aggregates: &[Aggregate]) -> String {
    let mut out = String::from("aggregate means/medians per (solver, n):\n");
    for a in aggregates {
        out.push_str(&format!("  {} n={} runs={}", a.solver, a.n, a.runs));
        for (metric, name) in METRICS.iter().enumerate() {
            out.push_str(&format!(
                " {}={:.1}/{:.1}",
                name, a.mean[metric], a.median[metric]
            ));
        }
        out.push('\n');
    }
    out
}
