//! Which site pairs can be entangled: a pair with an odd number of sites
//! between its ends never is.
//!
//! ```text
//! cargo run --example parity_rule
//! ```

use xxchain::experiments::claims::verify_parity_rule;
use xxchain::experiments::{default_j_grid, default_t_grid};

fn main() -> xxchain::Result<()> {
    let (j, t) = (default_j_grid(), default_t_grid());
    for n in 3..=6 {
        let report = verify_parity_rule(n, &j, &t)?;
        print!("{report}");
    }
    Ok(())
}
