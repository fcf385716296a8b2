//! Brute-force cross-check against an independent dense pipeline.
//!
//! The oracle builds the Hamiltonian from Kronecker products of 2×2 ladder
//! operators, diagonalizes it with nalgebra's symmetric eigensolver, traces
//! out sites by explicit index arithmetic and takes the concurrence from the
//! complex eigenvalues of the non-symmetric product `ρ ρ̃`. None of it shares
//! code with the library.

use nalgebra::{DMatrix, Matrix4};

use xxchain::{all_pairwise, ChainSpec, Temperature};

const SIGMA_PLUS: [[f64; 2]; 2] = [[0.0, 0.0], [1.0, 0.0]];
const SIGMA_MINUS: [[f64; 2]; 2] = [[0.0, 1.0], [0.0, 0.0]];

fn two_by_two(m: [[f64; 2]; 2]) -> DMatrix<f64> {
    DMatrix::from_fn(2, 2, |r, c| m[r][c])
}

/// `1 ⊗ … ⊗ a (at site k) ⊗ … ⊗ 1`, sites 1-based, site 1 leftmost.
fn embed(n: usize, k: usize, a: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = DMatrix::identity(1, 1);
    for site in 1..=n {
        let factor = if site == k {
            a.clone()
        } else {
            DMatrix::identity(2, 2)
        };
        out = out.kronecker(&factor);
    }
    out
}

fn oracle_hamiltonian(factors: &[f64]) -> DMatrix<f64> {
    let n = factors.len();
    let dim = 1 << n;
    let (up, down) = (two_by_two(SIGMA_PLUS), two_by_two(SIGMA_MINUS));
    let mut h = DMatrix::zeros(dim, dim);
    for i in 1..n {
        let hop = embed(n, i, &up) * embed(n, i + 1, &down);
        h += (&hop + hop.transpose()) * (factors[i - 1] * factors[i]);
    }
    h
}

fn oracle_state(factors: &[f64], t: f64) -> DMatrix<f64> {
    let h = oracle_hamiltonian(factors);
    let dim = h.nrows();
    let eig = h.symmetric_eigen();
    let e0 = eig.eigenvalues.min();
    let range = eig.eigenvalues.max() - e0;
    let weights: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&e| {
            if t == 0.0 {
                if e - e0 <= 1e-9 * range.max(1.0) {
                    1.0
                } else {
                    0.0
                }
            } else {
                (-(e - e0) / t).exp()
            }
        })
        .collect();
    let z: f64 = weights.iter().sum();
    let mut rho = DMatrix::zeros(dim, dim);
    for (k, w) in weights.iter().enumerate() {
        let v = eig.eigenvectors.column(k);
        rho += (v * v.transpose()) * (w / z);
    }
    rho
}

/// Reduced state of sites `(i, j)`: sum over every assignment of the others.
fn oracle_pair(rho: &DMatrix<f64>, n: usize, i: usize, j: usize) -> Matrix4<f64> {
    let bit = |index: usize, site: usize| (index >> (n - site)) & 1;
    let mut out = Matrix4::zeros();
    for r in 0..rho.nrows() {
        for c in 0..rho.ncols() {
            let others_agree = (1..=n)
                .filter(|&s| s != i && s != j)
                .all(|s| bit(r, s) == bit(c, s));
            if others_agree {
                let a = 2 * bit(r, i) + bit(r, j);
                let b = 2 * bit(c, i) + bit(c, j);
                out[(a, b)] += rho[(r, c)];
            }
        }
    }
    out
}

fn oracle_concurrence(rho: &Matrix4<f64>) -> f64 {
    let sy = nalgebra::Matrix2::new(0.0, -1.0, 1.0, 0.0);
    let yy = sy.kronecker(&sy);
    let flipped = yy * rho * yy;
    let mut lambdas: Vec<f64> = (rho * flipped)
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

fn library_pairs(factors: &[f64], t: f64) -> xxchain::PairMap {
    let chain = ChainSpec::new(factors.to_vec()).unwrap();
    all_pairwise(&chain.thermal_state(Temperature::new(t).unwrap()).unwrap()).unwrap()
}

fn assert_agrees(factors: &[f64], t: f64, tol: f64) {
    let n = factors.len();
    let rho = oracle_state(factors, t);
    let lib = library_pairs(factors, t);
    for i in 1..=n {
        for j in i + 1..=n {
            let want = oracle_concurrence(&oracle_pair(&rho, n, i, j));
            let got = lib[&(i, j)].value;
            assert!(
                (got - want).abs() <= tol,
                "factors {factors:?}, T = {t}, C{i}{j}: library {got}, oracle {want}"
            );
        }
    }
}

// The oracle takes square roots of round-off sized eigenvalues of ρ ρ̃, so a
// zero concurrence can come out as ~1e-8 there; the library avoids that.
const ORACLE_TOL: f64 = 1e-6;

#[test]
fn oracle_agrees_on_impurity_chains() {
    let cases: &[&[f64]] = &[
        &[1.0, 1.0],
        &[1.0, 1.0, 1.0],
        &[0.3, 1.0, 1.0],
        &[1.0, 2.5, 1.0],
        &[0.1, 1.0, 1.0, 0.1],
        &[1.0, 1.0, 0.7, 1.0],
        &[0.5, 1.0, 1.0, 1.0, 1.0],
        &[0.1, 1.0, 10.0, 10.0, 1.0, 0.1],
    ];
    for factors in cases {
        for t in [0.0, 0.05, 0.3, 1.0] {
            assert_agrees(factors, t, ORACLE_TOL);
        }
    }
}

#[test]
fn oracle_agrees_on_irregular_factors() {
    let factors = [0.37, 1.91, 0.05, 1.2, 2.6];
    for t in [0.0, 0.01, 0.2, 2.0] {
        assert_agrees(&factors, t, ORACLE_TOL);
    }
}

#[test]
fn oracle_hamiltonian_matches_library() {
    for factors in [
        vec![1.0, 1.0, 1.0],
        vec![0.2, 1.0, 3.0, 1.0],
        vec![1.0, 0.0, 2.0, 0.5, 1.0],
    ] {
        let ours = ChainSpec::new(factors.clone()).unwrap().hamiltonian();
        let theirs = oracle_hamiltonian(&factors);
        for r in 0..theirs.nrows() {
            for c in 0..theirs.ncols() {
                assert_eq!(
                    ours.get(r, c),
                    theirs[(r, c)],
                    "H[{r}][{c}] for {factors:?}"
                );
            }
        }
    }
}

// Values below were computed once with the oracle pipeline above (and with
// an independent NumPy script) and are frozen here.

#[test]
fn frozen_uniform_three_sites() {
    let c = library_pairs(&[1.0, 1.0, 1.0], 0.0);
    assert!((c[&(1, 2)].value - 0.45710678118654674).abs() < 1e-12);
    assert!((c[&(2, 3)].value - 0.45710678118654674).abs() < 1e-12);
    assert!(c[&(1, 3)].value < 1e-12);
}

#[test]
fn frozen_uniform_four_sites() {
    let c = library_pairs(&[1.0; 4], 0.0);
    let s5 = 5f64.sqrt();
    let near = (4.0 * s5 - 1.0) / 10.0;
    let far = (s5 - 2.0) / 5.0;
    assert!((c[&(1, 2)].value - near).abs() < 1e-12);
    assert!((c[&(3, 4)].value - near).abs() < 1e-12);
    assert!((c[&(1, 4)].value - far).abs() < 1e-12);
    assert!((c[&(2, 3)].value - far).abs() < 1e-12);
    assert!(c[&(1, 3)].value < 1e-12 && c[&(2, 4)].value < 1e-12);
}

#[test]
fn frozen_weak_ends_four_sites() {
    let c = library_pairs(&[0.1, 1.0, 1.0, 0.1], 0.0);
    assert!((c[&(1, 4)].value - 0.9613499064603).abs() < 1e-10);
    assert!((c[&(2, 3)].value - 0.9613499064603).abs() < 1e-10);
    assert!(c[&(1, 2)].value < 1e-12 && c[&(3, 4)].value < 1e-12);
}

#[test]
fn frozen_six_sites() {
    let c = library_pairs(&[0.1, 1.0, 10.0, 10.0, 1.0, 0.1], 0.0);
    assert!((c[&(1, 6)].value - 0.9609765105314282).abs() < 1e-10);
}

#[test]
fn frozen_boundary_impurity_limit() {
    // C14 for an impurity at site 1 approaches 1/√2 − 1/4 as J1 → 0⁺ but
    // is exactly zero at J1 = 0, where site 1 decouples.
    let at = |j: f64| library_pairs(&[j, 1.0, 1.0, 1.0], 0.0)[&(1, 4)].value;
    assert!((at(0.001) - 0.45650).abs() < 1e-5);
    assert!((at(0.01) - 0.45109).abs() < 1e-5);
    assert!(at(0.0) < 1e-12);
}
