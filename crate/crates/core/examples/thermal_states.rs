//! Gibbs states of a uniform four-site chain, from the ground multiplet to
//! high temperature.
//!
//! ```text
//! cargo run --example thermal_states
//! ```

use xxchain::thermal::ground_degeneracy;
use xxchain::{all_pairwise, ChainSpec, DensityMatrix, Temperature};

fn main() -> xxchain::Result<()> {
    let chain = ChainSpec::uniform(4)?;
    let spectrum = chain.spectrum()?;
    println!(
        "n = 4, ground energy {:.6}, ground degeneracy {}",
        spectrum.min(),
        ground_degeneracy(&spectrum)
    );
    let h = chain.hamiltonian();
    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10}",
        "T", "<H>", "C12", "C23", "C14"
    );
    for t in [0.0, 0.01, 0.1, 0.3, 1.0, 3.0] {
        let rho = DensityMatrix::thermal(&spectrum, Temperature::new(t)?)?;
        let c = all_pairwise(&rho)?;
        println!(
            "{t:>8} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            rho.expectation(&h),
            c[&(1, 2)].value,
            c[&(2, 3)].value,
            c[&(1, 4)].value
        );
    }
    Ok(())
}
