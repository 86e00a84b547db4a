//! Acceptance target: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p nashcert --test acceptance -- --nocapture`.

mod common;

use std::time::Instant;

use common::criteria::CRITERIA;

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for (i, (name, check)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        match &result {
            Ok(detail) => println!(
                "criterion {}: PASS  {name} ({elapsed:.2?}): {detail}",
                i + 1
            ),
            Err(why) => {
                println!("criterion {}: FAIL  {name} ({elapsed:.2?}): {why}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
