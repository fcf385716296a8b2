//! Invariants that must hold for every chain, temperature and state.

use nalgebra::DMatrix;
use proptest::prelude::*;

use xxchain::entanglement::{flipped, SIGMA_YY};
use xxchain::{
    all_pairwise, concurrence, eigh, partial_trace_pair, ChainSpec, Temperature, TwoQubitState,
};

fn factors(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    n.prop_flat_map(|n| prop::collection::vec(0.05f64..3.0, n))
}

fn temperature() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), 0.01f64..3.0]
}

fn pairs_at(f: &[f64], t: f64) -> xxchain::PairMap {
    let chain = ChainSpec::new(f.to_vec()).unwrap();
    all_pairwise(&chain.thermal_state(Temperature::new(t).unwrap()).unwrap()).unwrap()
}

fn energy(f: &[f64], t: f64) -> f64 {
    let chain = ChainSpec::new(f.to_vec()).unwrap();
    let rho = chain.thermal_state(Temperature::new(t).unwrap()).unwrap();
    rho.expectation(&chain.hamiltonian())
}

/// A random positive semidefinite two-qubit state `A Aᵀ / tr`.
fn two_qubit_state() -> impl Strategy<Value = TwoQubitState> {
    prop::array::uniform16(-1.0f64..1.0).prop_filter_map("degenerate", |a| {
        let mut m = [[0.0; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                m[r][c] = (0..4).map(|k| a[4 * r + k] * a[4 * c + k]).sum();
            }
        }
        let tr: f64 = (0..4).map(|k| m[k][k]).sum();
        if tr < 1e-3 {
            return None;
        }
        let rows = m.map(|row| row.map(|x| x / tr));
        TwoQubitState::from_rows(rows).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mirror_chain_mirrors_concurrences(f in factors(2..=6), t in temperature()) {
        let n = f.len();
        let mut rev = f.clone();
        rev.reverse();
        let (a, b) = (pairs_at(&f, t), pairs_at(&rev, t));
        for (&(i, j), c) in &a {
            let mirrored = b[&(n + 1 - j, n + 1 - i)].value;
            prop_assert!((c.value - mirrored).abs() < 1e-9, "C{i}{j}: {} vs {mirrored}", c.value);
        }
    }

    #[test]
    fn overall_scale_is_a_change_of_temperature(f in factors(2..=5), t in temperature(), s in 0.3f64..3.0) {
        // H scales with the square of a common site factor.
        let scaled: Vec<f64> = f.iter().map(|x| x * s).collect();
        let (a, b) = (pairs_at(&f, t), pairs_at(&scaled, t * s * s));
        for (k, c) in &a {
            prop_assert!((c.value - b[k].value).abs() < 1e-8, "{k:?}: {} vs {}", c.value, b[k].value);
        }
    }

    #[test]
    fn concurrence_lies_in_unit_interval(f in factors(2..=6), t in temperature()) {
        for c in pairs_at(&f, t).values() {
            prop_assert!((0.0..=1.0 + 1e-12).contains(&c.value));
            prop_assert!(c.lambdas.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn hot_chains_are_separable(f in factors(2..=5)) {
        for c in pairs_at(&f, 1e3).values() {
            prop_assert_eq!(c.thresholded(), 0.0);
        }
    }

    #[test]
    fn energy_rises_with_temperature(f in factors(2..=5), t1 in 0.01f64..2.0, dt in 0.01f64..2.0) {
        prop_assert!(energy(&f, t1) <= energy(&f, t1 + dt) + 1e-12);
        prop_assert!(energy(&f, 0.0) <= energy(&f, t1) + 1e-12);
    }

    #[test]
    fn spectrum_is_symmetric_about_zero(f in factors(2..=6)) {
        // flipping the sign of every other site maps H to −H
        let e = ChainSpec::new(f).unwrap().spectrum().unwrap();
        let ev = e.eigenvalues();
        for k in 0..ev.len() {
            prop_assert!((ev[k] + ev[ev.len() - 1 - k]).abs() < 1e-9);
        }
    }

    #[test]
    fn ground_energy_matches_free_fermions(f in factors(2..=7)) {
        // Jordan-Wigner: the ground energy is the sum of the negative
        // eigenvalues of the tridiagonal single-particle hopping matrix.
        let n = f.len();
        let hop = DMatrix::from_fn(n, n, |r, c| {
            if r + 1 == c || c + 1 == r { f[r.min(c)] * f[r.min(c) + 1] } else { 0.0 }
        });
        let want: f64 = hop.symmetric_eigen().eigenvalues.iter().filter(|&&e| e < 0.0).sum();
        let got = ChainSpec::new(f).unwrap().spectrum().unwrap().min();
        prop_assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }

    #[test]
    fn concurrence_invariant_under_swap_and_local_signs(s in two_qubit_state()) {
        let c = concurrence(&s).unwrap().value;
        let swapped = concurrence(&s.swapped()).unwrap().value;
        let z_left = concurrence(&s.sign_conjugated([1.0, 1.0, -1.0, -1.0])).unwrap().value;
        let z_right = concurrence(&s.sign_conjugated([1.0, -1.0, 1.0, -1.0])).unwrap().value;
        prop_assert!((c - swapped).abs() < 1e-9);
        prop_assert!((c - z_left).abs() < 1e-9);
        prop_assert!((c - z_right).abs() < 1e-9);
    }

    #[test]
    fn lambdas_square_to_trace_of_spin_flip_product(s in two_qubit_state()) {
        let r = concurrence(&s).unwrap();
        let f = flipped(&s);
        let tr: f64 = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).map(|(a, b)| s.get(a, b) * f.get(b, a)).sum();
        let sum_sq: f64 = r.lambdas.iter().map(|l| l * l).sum();
        prop_assert!((tr - sum_sq).abs() < 1e-9, "{tr} vs {sum_sq}");
        prop_assert!((0.0..=1.0 + 1e-12).contains(&r.value));
    }

    #[test]
    fn reduced_states_are_valid(f in factors(2..=6), t in temperature()) {
        let chain = ChainSpec::new(f.clone()).unwrap();
        let rho = chain.thermal_state(Temperature::new(t).unwrap()).unwrap();
        for i in 1..f.len() {
            let pair = partial_trace_pair(&rho, i, i + 1).unwrap();
            prop_assert!((pair.matrix().trace() - 1.0).abs() < 1e-10);
            prop_assert!(eigh(pair.matrix()).unwrap().min() > -1e-10);
            // excitation number is conserved, so no coherence between sectors
            prop_assert!(pair.sector_violation() < 1e-12);
        }
    }
}

#[test]
fn sigma_yy_is_an_involution() {
    for (r, row) in SIGMA_YY.iter().enumerate() {
        for c in 0..4 {
            let x: f64 = row.iter().zip(&SIGMA_YY).map(|(a, col)| a * col[c]).sum();
            assert_eq!(x, if r == c { 1.0 } else { 0.0 });
        }
    }
}
