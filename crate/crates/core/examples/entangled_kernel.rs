//! Weak boundary bonds around a strong middle pair: the end sites inherit
//! the middle pair's entanglement while their own bonds carry none.
//!
//! ```text
//! cargo run --example entangled_kernel
//! ```

use xxchain::experiments::claims::{entangled_kernel_scan, kernel_grids};

fn main() -> xxchain::Result<()> {
    let (j, t) = kernel_grids();
    let (sweep, report) = entangled_kernel_scan(&j, &t)?;
    println!(
        "{:>6} {:>5} {:>9} {:>9} {:>9}",
        "J", "T", "C12", "C23", "C14"
    );
    for p in sweep.points().iter().step_by(15) {
        println!(
            "{:>6.3} {:>5} {:>9.5} {:>9.5} {:>9.5}",
            p.j,
            p.temperature,
            p.c(1, 2),
            p.c(2, 3),
            p.c(1, 4)
        );
    }
    print!("\n{report}");
    Ok(())
}
