//! Run every claim suite and print the reports, as `xxchain verify` does.
//!
//! ```text
//! cargo run --release --example verify_claims
//! ```

use xxchain::experiments::{run_claim, Claim, VerifyOptions};

fn main() -> xxchain::Result<()> {
    let opts = VerifyOptions::default();
    let mut failed = 0;
    for claim in Claim::ALL {
        for report in run_claim(claim, &opts)? {
            failed += usize::from(!report.passed);
            print!("{report}");
        }
    }
    println!("{failed} failed");
    Ok(())
}
