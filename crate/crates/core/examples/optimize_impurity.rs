//! Search the impurity strength that maximizes one pair's concurrence.
//!
//! ```text
//! cargo run --example optimize_impurity
//! ```

use xxchain::experiments::{maximize_concurrence, Scenario, TemperatureSearch};

fn main() -> xxchain::Result<()> {
    let cases = [
        (Scenario::single_impurity(3, 2)?, (1, 2), 5.0),
        (Scenario::single_impurity(3, 1)?, (1, 2), 20.0),
        (Scenario::single_impurity(4, 1)?, (1, 4), 5.0),
        (Scenario::single_impurity(4, 2)?, (2, 3), 5.0),
    ];
    for (scenario, pair, j_max) in &cases {
        let opt = maximize_concurrence(
            scenario,
            *pair,
            (0.0, *j_max),
            TemperatureSearch::Fixed(0.0),
        )?;
        println!(
            "n={} {}: max C{}{} = {:.6} at J = {:.6} ({} evaluations)",
            scenario.n, scenario.rule, pair.0, pair.1, opt.concurrence, opt.j, opt.evaluations
        );
    }
    Ok(())
}
