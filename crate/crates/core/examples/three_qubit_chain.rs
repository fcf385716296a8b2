//! Pairwise concurrence of a three-site chain with an impurity at site 1.
//!
//! ```text
//! cargo run --example three_qubit_chain
//! ```

use xxchain::{all_pairwise, impurity_pattern, Temperature};

fn main() -> xxchain::Result<()> {
    println!("{:>6} {:>10} {:>10} {:>10}", "J1", "C12", "C23", "C13");
    for j in [0.0, 0.5, 1.0, 2.0, 5.0, 20.0] {
        let chain = impurity_pattern(3, 1, j)?;
        let c = all_pairwise(&chain.thermal_state(Temperature::ZERO)?)?;
        println!(
            "{j:>6} {:>10.6} {:>10.6} {:>10.6}",
            c[&(1, 2)].value,
            c[&(2, 3)].value,
            c[&(1, 3)].value
        );
    }
    Ok(())
}
