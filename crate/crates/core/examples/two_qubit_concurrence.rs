//! Concurrence of hand-built two-qubit states, generic route against the
//! X-state closed form.
//!
//! ```text
//! cargo run --example two_qubit_concurrence
//! ```

use xxchain::{concurrence, concurrence_xstate, TwoQubitState};

fn main() -> xxchain::Result<()> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let states = [
        (
            "Bell (|01> + |10>)/sqrt2",
            TwoQubitState::pure([0.0, h, h, 0.0])?,
        ),
        ("product |0>|1>", TwoQubitState::pure([0.0, 1.0, 0.0, 0.0])?),
        (
            "Werner p = 0.5",
            TwoQubitState::x_state([0.125, 0.375, 0.375, 0.125], 0.25, 0.0)?,
        ),
        (
            "X-state z = 0.3",
            TwoQubitState::x_state([0.1, 0.4, 0.4, 0.1], 0.3, 0.0)?,
        ),
        (
            "X-state y = -0.35",
            TwoQubitState::x_state([0.4, 0.1, 0.1, 0.4], 0.0, -0.35)?,
        ),
    ];
    println!(
        "{:<26} {:>10} {:>10}  lambdas",
        "state", "generic", "X-form"
    );
    for (name, s) in &states {
        let c = concurrence(s)?;
        let x = concurrence_xstate(s)?;
        println!("{name:<26} {:>10.6} {x:>10.6}  {:.4?}", c.value, c.lambdas);
    }

    // A generic state with no X structure only has the generic route.
    let psi = [0.5, 0.5, 0.5, -0.5];
    let s = TwoQubitState::pure(psi)?;
    println!("\n{psi:?}: C = {:.6}", concurrence(&s)?.value);
    println!(
        "closed form refuses it: {}",
        concurrence_xstate(&s).unwrap_err()
    );
    Ok(())
}
