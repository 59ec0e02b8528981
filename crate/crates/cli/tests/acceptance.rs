use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use condensate::battery::{run_battery, run_criterion, Battery, BatteryOptions, CRITERIA};
use condensate::hamiltonian::DEFAULT_DIM_CAP;

fn budget(id: usize) -> Option<Duration> {
    let secs = match id {
        1 => 5,
        2 => 30,
        3 | 5 => 60,
        8 => 120,
        _ => return None,
    };
    Some(Duration::from_secs(secs))
}

fn main() -> ExitCode {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let battery = match Battery::load(&dir) {
        Ok(b) => b,
        Err(e) => {
            println!("acceptance: cannot load fixtures: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut all = true;
    for id in 1..=CRITERIA.len() {
        let start = Instant::now();
        let report = if id == CRITERIA.len() {
            let opts = BatteryOptions {
                filter: Some(CRITERIA[id - 1].into()),
                cap: DEFAULT_DIM_CAP,
            };
            run_battery(&battery, &opts).criteria.remove(0)
        } else {
            run_criterion(&battery, id, DEFAULT_DIM_CAP)
        };
        let elapsed = start.elapsed();
        let in_time = budget(id).is_none_or(|b| elapsed < b);
        let passed = report.passed && in_time;
        all &= passed;
        let failed: Vec<&str> = report
            .items
            .iter()
            .filter(|i| !i.passed)
            .map(|i| i.name.as_str())
            .collect();
        let mut line = format!(
            "criterion {id:>2} {:<22} {} ({} items, {:.2}s",
            report.name,
            if passed { "pass" } else { "FAIL" },
            report.items.len(),
            elapsed.as_secs_f64()
        );
        if let Some(b) = budget(id) {
            line += &format!(" of {}s budget", b.as_secs());
        }
        line += ")";
        if !failed.is_empty() {
            line += &format!(" failing: {}", failed.join(", "));
        }
        println!("{line}");
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
