//! Run the cross-validation suite: every counting identity, bijection
//! roundtrip, and oracle equivalence the crate claims, swept over all
//! graphs S(m,n) with m, n up to a bound and both sink choices.
//!
//! Run with: cargo run --example verify_identities

use splitpile::verify::{all_passed, run_suite, VerifyOptions};

fn main() {
    let opts = VerifyOptions { m_max: 3, n_max: 3, ..VerifyOptions::default() };
    println!(
        "verifying all graphs S(m,n) with m <= {}, n <= {}, both sinks\n",
        opts.m_max, opts.n_max
    );

    let outcomes = run_suite(&opts);
    for o in &outcomes {
        let flag = if o.passed { "pass" } else { "FAIL" };
        println!("{flag}  {:<45} {}", o.check, o.detail);
    }

    if all_passed(&outcomes) {
        println!("\nall {} checks passed", outcomes.len());
    } else {
        println!("\nsome checks failed");
        std::process::exit(1);
    }
}
