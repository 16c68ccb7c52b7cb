//! Verifies every builtin scenario, or the scenario files given as arguments.

use conelab::scenarios::{builtin_names, load_scenario, run, Section, Status};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let targets: Vec<String> =
        if args.is_empty() { builtin_names().into_iter().map(String::from).collect() } else { args };
    let mut all_passed = true;
    for t in &targets {
        let s = load_scenario(t)?;
        let report = run(&s, Section::ALL);
        let flagged: Vec<&str> = report.with_status(Status::Flagged).map(|c| c.id.as_str()).collect();
        println!(
            "{:<18} {:<4} {:>3} checks{}",
            report.scenario,
            report.overall,
            report.checks.len(),
            if flagged.is_empty() { String::new() } else { format!("  flagged: {}", flagged.join(", ")) }
        );
        for c in report.with_status(Status::Fail) {
            println!("    FAIL {}: {}", c.id, c.details);
        }
        all_passed &= report.passed();
    }
    if !all_passed {
        std::process::exit(1);
    }
    Ok(())
}
