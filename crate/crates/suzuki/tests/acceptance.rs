use std::process::Command;
use std::time::{Duration, Instant};

use suzuki::report::{verify_paper, Report, VerifyOptions};

fn timing(report: &Report, name: &str) -> Duration {
    report.timings.iter().find(|(n, _)| n == name).map(|(_, d)| *d).unwrap_or_else(|| panic!("no timing for {name}"))
}

#[test]
fn acceptance() {
    let report = verify_paper(&VerifyOptions::default());

    // end to end through the binary
    let start = Instant::now();
    let run = Command::new(env!("CARGO_BIN_EXE_suzuki")).arg("verify-paper").output().expect("binary runs");
    let total = start.elapsed();
    let text = String::from_utf8_lossy(&run.stdout);
    let cli_all_pass = run.status.code() == Some(0)
        && text.lines().any(|l| l.starts_with("PASS"))
        && !text.lines().any(|l| l.starts_with("FAIL"));

    let budgets: [(u8, Option<(&str, Duration)>); 11] = [
        (1, Some(("H character table", Duration::from_secs(5)))),
        (2, Some(("K character table", Duration::from_secs(30)))),
        (3, None),
        (4, None),
        (5, None),
        (6, None),
        (7, None),
        (8, None),
        (9, None),
        (10, None),
        (11, None),
    ];

    let mut failed = Vec::new();
    for (criterion, budget) in budgets {
        let mut pass = if criterion == 11 {
            cli_all_pass && report.all_passed() && total <= Duration::from_secs(3600)
        } else {
            report.criterion_passed(criterion)
        };
        let mut detail = String::new();
        if let Some((name, limit)) = budget {
            let t = timing(&report, name);
            pass &= t < limit;
            detail = format!(" ({name} {:.3} s, limit {} s)", t.as_secs_f64(), limit.as_secs());
        }
        if criterion == 11 {
            detail = format!(" (total {:.3} s, limit 3600 s)", total.as_secs_f64());
        }
        if !pass {
            failed.push(criterion);
            for c in report.checks.iter().filter(|c| c.criterion == criterion && !c.pass) {
                println!("    {}: expected {}; got {}", c.name, c.expected, c.got);
            }
        }
        println!("{} criterion {criterion}{detail}", if pass { "PASS" } else { "FAIL" });
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
