use std::time::Instant;

use trilie::certify::{run_criterion, CertifyOptions, CRITERIA};

#[test]
fn acceptance_criteria() {
    let opts = CertifyOptions { slow: std::env::var_os("TRILIE_SLOW").is_some(), ..CertifyOptions::default() };
    println!();
    let mut failed = Vec::new();
    for (id, _) in CRITERIA {
        let start = Instant::now();
        let result = run_criterion(id, &opts);
        println!("{result} [{:.1}s]", start.elapsed().as_secs_f64());
        if !result.pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
