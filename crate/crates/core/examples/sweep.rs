//! Verifies the formula over a whole symmetric group and over a random
//! sample of a larger one.
//!
//! ```text
//! cargo run --release --example sweep -- 5
//! ```

use klcube::sweep::default_jobs;
use klcube::{sweep, KlTable, Mode, Sample, SweepConfig};

fn main() -> klcube::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for mode in [Mode::Theorem, Mode::Conjecture] {
        let klt = KlTable::new(n)?;
        let cfg = SweepConfig { jobs: default_jobs(), dedup: true, ..SweepConfig::new(n, mode) };
        let s = sweep(&cfg, &klt)?.summary;
        println!(
            "S_{n} {}: {}/{} passed over {} intervals, {} distinct classes, {} ms",
            format!("{mode:?}").to_lowercase(),
            s.passed,
            s.total,
            s.intervals,
            s.distinct_classes.unwrap_or(0),
            s.elapsed_ms.unwrap_or(0)
        );
    }
    let m = n + 1;
    let klt = KlTable::new(m)?;
    let cfg = SweepConfig { sample: Some(Sample { count: 500, seed: 42 }), ..SweepConfig::new(m, Mode::Conjecture) };
    let report = sweep(&cfg, &klt)?;
    println!("S_{m} sample: {}/{} passed", report.summary.passed, report.summary.total);
    if let Some(r) = report.records.first() {
        println!("first record: {}", serde_json::to_string(r).unwrap());
    }
    Ok(())
}
