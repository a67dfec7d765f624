//! Runs every acceptance criterion on the default seed and five more, and
//! prints one verdict line per criterion.

use std::io::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use graded_qs::suites::{run_suite, SuiteConfig};

const SEEDS: [u64; 6] = [7, 1, 2, 3, 4, 5];

/// (criterion, suite, runtime bound in seconds)
const CRITERIA: [(u32, &str, u64); 11] = [
    (1, "splitting", 5),
    (2, "swan-weibel", 5),
    (3, "forms", 5),
    (4, "normalization", 30),
    (5, "rearrangement", 10),
    (6, "dilation", 30),
    (7, "patch", 60),
    (8, "transvection", 30),
    (9, "commutator", 60),
    (10, "unimodular", 30),
    (11, "det-stability", 5),
];

fn main() -> ExitCode {
    let mut out = std::io::stdout().lock();
    let mut all_ok = true;
    for (id, suite, bound) in CRITERIA {
        let bound = Duration::from_secs(bound);
        let mut problems = Vec::new();
        let mut slowest = Duration::ZERO;
        let mut trials = 0;
        for seed in SEEDS {
            let start = Instant::now();
            let report = run_suite(suite, &SuiteConfig::with_seed(seed));
            let took = start.elapsed();
            slowest = slowest.max(took);
            match report {
                Ok(r) => {
                    trials = r.trials;
                    if !r.passed() {
                        let first = &r.failures[0];
                        problems.push(format!(
                            "seed {seed}: {} of {} trials failed, first: {} (expected {}, got {})",
                            r.failures.len(),
                            r.trials,
                            first.input,
                            first.expected,
                            first.got
                        ));
                    }
                    if took > bound {
                        problems.push(format!(
                            "seed {seed}: {:.2}s exceeds {}s",
                            took.as_secs_f64(),
                            bound.as_secs()
                        ));
                    }
                }
                Err(e) => problems.push(format!("seed {seed}: {e}")),
            }
        }
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        all_ok &= problems.is_empty();
        writeln!(
            out,
            "{verdict} criterion {id:>2} {suite:<14} seeds 7,1,2,3,4,5  trials {trials:>4}  slowest {:.3}s (bound {}s)",
            slowest.as_secs_f64(),
            bound.as_secs()
        )
        .unwrap();
        for p in problems {
            writeln!(out, "    {p}").unwrap();
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
