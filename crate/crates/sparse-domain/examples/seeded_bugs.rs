//! Checking the checker: four classic implementation mistakes, each
//! caught by the exhaustive suite.
//!
//! A test harness earns trust by failing when it should. Each seeded bug
//! reroutes remove/bind through a deliberately broken variant — a
//! half-updated inverse array, a double size decrement, a dom-only swap,
//! a swapless bind — and the enumerated scripts must expose every one.

use sparse_domain::oracle::{enumerate_scripts, run_script_with_bug, SeededBug, Verdict};

fn main() {
    for bug in SeededBug::ALL {
        let mut found = None;
        'search: for n in 1..=3 {
            for script in enumerate_scripts(n, 5) {
                let verdict = run_script_with_bug(&script, bug).unwrap();
                if let Verdict::Violation(v) = verdict {
                    found = Some((script, v));
                    break 'search;
                }
            }
        }
        match found {
            Some((script, violation)) => {
                println!("bug `{bug}`: caught, minimal script:");
                for line in script.to_string().lines() {
                    println!("    {line}");
                }
                println!("    -> {}", violation.label);
                println!();
            }
            None => {
                println!("bug `{bug}` SURVIVED the suite — the checker is too weak");
                std::process::exit(1);
            }
        }
    }
    println!("all {} seeded bugs detected", SeededBug::ALL.len());
}
