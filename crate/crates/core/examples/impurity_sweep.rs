//! Sweep the four-site chain with an impurity at site 1 and write CSV.
//!
//! ```text
//! cargo run --example impurity_sweep > fig4.csv
//! ```

use xxchain::experiments::{linspace, run_sweep, Scenario};

fn main() -> xxchain::Result<()> {
    let scenario = Scenario::named("fig4", None)?;
    let j_grid = linspace(0.0, 3.0, 31)?;
    let sweep = run_sweep(&scenario, &j_grid, &[0.0, 0.05])?;
    sweep.write_csv(std::io::stdout().lock())?;
    eprintln!("{} rows for {} pairs", sweep.rows.len(), sweep.pairs.len());
    Ok(())
}
