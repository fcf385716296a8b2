//! End-to-end entanglement of longer chains with mirror-symmetric bonds that
//! grow toward the middle.
//!
//! ```text
//! cargo run --release --example long_chains
//! ```

use xxchain::experiments::claims::{monotone_profile_check, six_qubit_claim};

fn main() -> xxchain::Result<()> {
    print!("{}", six_qubit_claim()?);
    for n in [4, 6, 8] {
        print!("{}", monotone_profile_check(n)?);
    }
    Ok(())
}
