//! End-to-end concurrence of the four-site chain against the weakest link
//! of the chain between the ends.
//!
//! ```text
//! cargo run --example transfer_law
//! ```

use xxchain::experiments::claims::{transfer_law_report, TRANSFER_EPSILON};
use xxchain::experiments::linspace;

fn main() -> xxchain::Result<()> {
    let law = transfer_law_report(&linspace(0.0, 3.0, 13)?, &[0.0, 0.05], TRANSFER_EPSILON)?;
    println!(
        "{:>5} {:>5} {:>9} {:>9} {:>9} {:>9} {:>10}",
        "J1", "T", "C12", "C23", "C34", "C14", "C14 - min"
    );
    for r in &law.rows {
        println!(
            "{:>5} {:>5} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>10.2e}",
            r.j, r.temperature, r.c12, r.c23, r.c34, r.c14, r.deviation
        );
    }
    print!("\n{}", law.report);
    Ok(())
}
