//! Runs acceptance criteria 1 to 11 and prints one line per criterion.
//!
//! The target fails on any unexplained failure. A criterion whose only failing
//! checks are recorded known issues is printed as FAIL with the reason, and the
//! target still requires those checks to keep failing so the record stays current.

use std::path::PathBuf;
use std::process::ExitCode;

use dpl_core::verify::{verify_all, Status, VerifyOptions};

fn main() -> ExitCode {
    let opts = VerifyOptions {
        cache_dir: std::env::var_os("DPL_CACHE_DIR").map(PathBuf::from),
        ..Default::default()
    };
    let reports = verify_all(&opts);
    let mut unexplained = Vec::new();
    for r in &reports {
        println!("{}", r.summary_line());
        for issue in &r.known_issues {
            println!("    known issue in {}: {}", issue.check, issue.reason);
        }
        let failing: Vec<&str> = r.failing_checks().map(|c| c.name.as_str()).collect();
        let known: Vec<&str> = r.known_issues.iter().map(|k| k.check.as_str()).collect();
        for c in r.failing_checks().filter(|c| !known.contains(&c.name.as_str())) {
            unexplained.push(format!(
                "criterion {}: {} expected {} got {}",
                r.id, c.name, c.expected, c.actual
            ));
        }
        for k in known.iter().filter(|k| !failing.contains(k)) {
            unexplained.push(format!(
                "criterion {}: known issue {k} no longer fails; update the record",
                r.id
            ));
        }
        if r.status == Status::Skipped {
            unexplained.push(format!("criterion {} was skipped", r.id));
        }
    }
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    println!("{passed}/{} criteria pass", reports.len());
    if unexplained.is_empty() {
        println!("all failures are recorded known issues");
        ExitCode::SUCCESS
    } else {
        for u in &unexplained {
            eprintln!("{u}");
        }
        ExitCode::FAILURE
    }
}
