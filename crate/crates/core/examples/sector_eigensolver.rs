//! Block diagonalization of the Hamiltonian by excitation number.
//!
//! ```text
//! cargo run --example sector_eigensolver
//! ```

use xxchain::{eigh, eigh_blocks, magnetization_sectors, ChainSpec};

fn main() -> xxchain::Result<()> {
    let chain = ChainSpec::new(vec![0.5, 1.0, 2.0, 1.0, 0.5])?;
    let h = chain.hamiltonian();
    let sectors = magnetization_sectors(chain.n())?;
    for (k, s) in sectors.iter().enumerate() {
        println!("{k} excitations: {} states", s.len());
    }

    let blocked = eigh_blocks(&h, &sectors)?;
    let dense = eigh(&h)?;
    let gap = blocked
        .eigenvalues()
        .iter()
        .zip(dense.eigenvalues())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("largest eigenvalue difference, blocked vs dense: {gap:e}");
    println!(
        "reconstruction error: {:e}",
        blocked.reconstruct().distance(&h)
    );
    println!("spectrum: {:.4?}", blocked.eigenvalues());
    Ok(())
}
