use std::io::Write;

use qpartition::acceptance::{run_suite, Config, Suite};

#[test]
fn acceptance_criteria() {
    let results = run_suite(Suite::All, &Config::default()).expect("no guard is exceeded at default settings");
    // written to the process stdout so the lines show even when output is captured
    let mut out = std::io::stdout().lock();
    for r in &results {
        writeln!(out, "{r}").unwrap();
    }
    assert_eq!(results.len(), 9);
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed()).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
