//! Command-line front end: `check`, `fuzz`, `solve`, `bench`.
//!
//! Exit codes are a stable contract for CI: 0 on success, 1 when a check
//! or solve finds a failure (an invariant violation, an unsatisfiable
//! problem), 2 for usage and I/O errors (including scripts that are
//! themselves illegal, as opposed to scripts that expose a library bug).

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::bench::{bench_ops, bench_restore, BenchReport};
use crate::oracle::{
    enumerate_scripts, random_script, run_script, run_script_with_bug, OpScript, ScriptError,
    SeededBug, Verdict,
};
use crate::solver::Csp;

#[derive(Debug, Parser)]
#[command(
    name = "sparse-domain",
    about = "Sparse-set integer domains: self-checking oracle, solver demo, benchmarks",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Replay scripts against the abstract model, checking every
    /// invariant after every operation.
    Check {
        /// Largest universe to cover exhaustively.
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Longest script length to cover exhaustively.
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        /// Check a single script file instead of the exhaustive suite.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Route remove/bind through a seeded bug; the run must then fail.
        #[arg(long)]
        inject_bug: Option<SeededBug>,
    },
    /// Generate one random guard-respecting script and replay it.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Universe size.
        #[arg(long, default_value_t = 64)]
        n: usize,
        /// Number of operations.
        #[arg(long, default_value_t = 10_000)]
        len: usize,
        /// Route remove/bind through a seeded bug; the run must then fail.
        #[arg(long)]
        inject_bug: Option<SeededBug>,
    },
    /// Solve n-queens with the forward-checking demo solver.
    Solve {
        /// Board size (and universe of every variable).
        #[arg(long)]
        nqueens: usize,
        /// Count all solutions instead of printing the first one.
        #[arg(long)]
        count: bool,
    },
    /// Time contains/remove/restore against baseline representations.
    Bench {
        /// Universe size.
        #[arg(long, default_value_t = 1024)]
        n: usize,
        /// Operations per timed stream.
        #[arg(long, default_value_t = 100_000)]
        ops: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also write the report as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Check {
            max_n,
            max_len,
            script,
            inject_bug,
        } => cmd_check(max_n, max_len, script, inject_bug),
        Command::Fuzz {
            seed,
            n,
            len,
            inject_bug,
        } => cmd_fuzz(seed, n, len, inject_bug),
        Command::Solve { nqueens, count } => cmd_solve(nqueens, count),
        Command::Bench { n, ops, seed, csv } => cmd_bench(n, ops, seed, csv),
    }
}

fn replay(script: &OpScript, bug: Option<SeededBug>) -> Result<Verdict, ScriptError> {
    match bug {
        None => run_script(script),
        Some(bug) => run_script_with_bug(script, bug),
    }
}

fn cmd_check(
    max_n: usize,
    max_len: usize,
    script: Option<PathBuf>,
    bug: Option<SeededBug>,
) -> i32 {
    if let Some(bug) = bug {
        println!("injecting bug: {bug}");
    }
    if let Some(path) = script {
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return 2;
            }
        };
        let parsed = match OpScript::parse(&text) {
            Ok(parsed) => parsed,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
        };
        print!("Checking script {} ... ", path.display());
        return match replay(&parsed, bug) {
            Ok(Verdict::Ok) => {
                println!("OK");
                0
            }
            Ok(Verdict::Violation(v)) => {
                println!("ERROR");
                println!("{v}");
                1
            }
            Err(e) => {
                // The script itself is illegal (e.g. removes a non-member);
                // that is the caller's error, not a finding.
                println!("ERROR");
                eprintln!("error: script error: {e}");
                2
            }
        };
    }

    if max_n == 0 || max_n > 64 {
        eprintln!("error: --max-n must be between 1 and 64");
        return 2;
    }
    let mut failed = false;
    for n in 1..=max_n {
        print!("Checking universe {n} (all scripts of length <= {max_len}) ... ");
        let mut scripts = 0u64;
        let mut first_violation = None;
        for script in enumerate_scripts(n, max_len) {
            scripts += 1;
            let verdict = replay(&script, bug).expect("enumerated scripts respect all guards");
            if let Verdict::Violation(v) = verdict {
                first_violation = Some((script, v));
                break;
            }
        }
        match first_violation {
            None => println!("OK ({scripts} scripts)"),
            Some((script, v)) => {
                failed = true;
                println!("ERROR");
                println!("first failing script:");
                print!("{script}");
                println!("{v}");
            }
        }
    }
    if failed {
        1
    } else {
        0
    }
}

fn cmd_fuzz(seed: u64, n: usize, len: usize, bug: Option<SeededBug>) -> i32 {
    if n == 0 {
        eprintln!("error: --n must be at least 1");
        return 2;
    }
    if let Some(bug) = bug {
        println!("injecting bug: {bug}");
    }
    let script = random_script(seed, n, len);
    print!("Checking fuzz seed {seed} (universe {n}, {len} ops) ... ");
    match replay(&script, bug) {
        Ok(Verdict::Ok) => {
            println!("OK");
            0
        }
        Ok(Verdict::Violation(v)) => {
            println!("ERROR");
            println!("{v}");
            1
        }
        Err(e) => {
            println!("ERROR");
            eprintln!("error: generated script is illegal: {e}");
            2
        }
    }
}

fn cmd_solve(k: usize, count: bool) -> i32 {
    if k == 0 {
        eprintln!("error: --nqueens must be at least 1");
        return 2;
    }
    let csp = Csp::nqueens(k);
    if count {
        println!("{}", csp.count_solutions());
        return 0;
    }
    match csp.solve_first() {
        Some(solution) => {
            let columns: Vec<String> = solution.iter().map(|c| c.to_string()).collect();
            println!("{}", columns.join(" "));
            0
        }
        None => {
            println!("unsat");
            1
        }
    }
}

fn cmd_bench(n: usize, ops: u64, seed: u64, csv: Option<PathBuf>) -> i32 {
    if n == 0 || ops == 0 {
        eprintln!("error: --n and --ops must be at least 1");
        return 2;
    }
    let mut report = bench_ops(n, ops, seed);
    let mut removed: Vec<usize> = [10, n / 8, n / 2]
        .into_iter()
        .map(|r| r.min(n - 1))
        .collect();
    removed.sort_unstable();
    removed.dedup();
    for r in removed {
        report.merge(bench_restore(n, r, seed));
    }
    print!("{}", report.to_table());
    if let Some(path) = csv {
        if let Err(e) = write_csv(&report, &path) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
        println!("csv written to {}", path.display());
    }
    0
}

fn write_csv(report: &BenchReport, path: &PathBuf) -> std::io::Result<()> {
    fs::write(path, report.to_csv())
}
