//! Two-site reduced states and their Wootters concurrence.
//!
//! `C = max(λ₁ − λ₂ − λ₃ − λ₄, 0)` where the `λ_k` are, in descending order,
//! the square roots of the eigenvalues of `ρ ρ̃` with `ρ̃ = (σʸ⊗σʸ) ρ* (σʸ⊗σʸ)`.
//!
//! For a real symmetric `ρ` the matrix `R = √ρ (σʸ⊗σʸ) √ρ` is real symmetric
//! and `R² = √ρ ρ̃ √ρ`, which is similar to `ρ ρ̃`. So the `λ_k` are just the
//! absolute eigenvalues of `R`, obtained without taking square roots of tiny,
//! round-off dominated numbers.

use std::collections::BTreeMap;

use crate::chain::site_mask;
use crate::error::{Error, Result};
use crate::linalg::{eigh, psd_sqrt, SymMatrix};
use crate::thermal::DensityMatrix;

/// Dense 4×4 matrix, row-major.
pub type Mat4 = [[f64; 4]; 4];

/// Basis order of a [`TwoQubitState`].
pub const PAIR_BASIS: [&str; 4] = ["00", "01", "10", "11"];

/// Concurrences below this are reported as zero when checking claims.
pub const ZERO_THRESHOLD: f64 = 1e-8;

/// `σʸ ⊗ σʸ`: antidiagonal (−1, +1, +1, −1).
pub const SIGMA_YY: Mat4 = [
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
];

/// Reduced state of a site pair `(i, j)`, `i < j`, in the basis
/// `|00⟩, |01⟩, |10⟩, |11⟩` with site `i` as the left factor.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitState {
    rho: DensityMatrix,
}

impl TwoQubitState {
    pub fn new(matrix: SymMatrix) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(Error::input(format!(
                "two-qubit state must be 4x4, got {0}x{0}",
                matrix.dim()
            )));
        }
        Ok(TwoQubitState {
            rho: DensityMatrix::new(matrix)?,
        })
    }

    pub fn from_rows(rows: Mat4) -> Result<Self> {
        Self::new(SymMatrix::new(4, rows.iter().flatten().copied().collect())?)
    }

    /// Builds an X-state from its diagonal `(u, v, w, x)`, the `|01⟩⟨10|`
    /// coherence `z` and the `|00⟩⟨11|` coherence `y`.
    pub fn x_state(diag: [f64; 4], z: f64, y: f64) -> Result<Self> {
        let [u, v, w, x] = diag;
        Self::from_rows([
            [u, 0.0, 0.0, y],
            [0.0, v, z, 0.0],
            [0.0, z, w, 0.0],
            [y, 0.0, 0.0, x],
        ])
    }

    /// Projector onto a normalized two-qubit vector.
    pub fn pure(psi: [f64; 4]) -> Result<Self> {
        Ok(TwoQubitState {
            rho: DensityMatrix::pure(&psi)?,
        })
    }

    pub fn matrix(&self) -> &SymMatrix {
        self.rho.matrix()
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.rho.matrix().get(r, c)
    }

    pub fn to_rows(&self) -> Mat4 {
        let mut out = [[0.0; 4]; 4];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = self.get(r, c);
            }
        }
        out
    }

    /// Largest entry outside the X pattern (diagonal plus antidiagonal).
    pub fn x_form_violation(&self) -> f64 {
        [(0, 1), (0, 2), (1, 3), (2, 3)]
            .iter()
            .map(|&(r, c)| self.get(r, c).abs())
            .fold(0.0, f64::max)
    }

    /// Largest entry coupling different excitation-number blocks
    /// `{|00⟩}, {|01⟩,|10⟩}, {|11⟩}`.
    pub fn sector_violation(&self) -> f64 {
        self.x_form_violation().max(self.get(0, 3).abs())
    }

    /// Same state with the two sites exchanged.
    pub fn swapped(&self) -> TwoQubitState {
        self.conjugated(&[0, 2, 1, 3])
    }

    /// `P ρ Pᵀ` for a basis permutation.
    pub fn conjugated(&self, perm: &[usize; 4]) -> TwoQubitState {
        TwoQubitState {
            rho: DensityMatrix::from_matrix_unchecked(self.matrix().permuted(perm)),
        }
    }

    /// `D ρ D` for a diagonal ±1 sign pattern (a real local unitary such as σᶻ⊗1).
    pub fn sign_conjugated(&self, signs: [f64; 4]) -> TwoQubitState {
        let m = SymMatrix::from_upper_fn(4, |r, c| signs[r] * self.get(r, c) * signs[c]);
        TwoQubitState {
            rho: DensityMatrix::from_matrix_unchecked(m),
        }
    }
}

/// Concurrence plus the descending `λ` spectrum that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcurrenceResult {
    pub value: f64,
    pub lambdas: [f64; 4],
}

impl ConcurrenceResult {
    /// `value` with anything below [`ZERO_THRESHOLD`] snapped to exactly 0.
    pub fn thresholded(&self) -> f64 {
        if self.value < ZERO_THRESHOLD {
            0.0
        } else {
            self.value
        }
    }
}

/// Concurrence of every site pair, keyed by `(i, j)` with `i < j`.
pub type PairMap = BTreeMap<(usize, usize), ConcurrenceResult>;

/// Traces out every site except `i` and `j` (1-based, `i < j`).
pub fn partial_trace_pair(rho: &DensityMatrix, i: usize, j: usize) -> Result<TwoQubitState> {
    let n = rho.n_qubits();
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::input(format!(
            "site pair ({i}, {j}) must satisfy 1 <= i < j <= {n}"
        )));
    }
    let (mi, mj) = (site_mask(n, i), site_mask(n, j));
    let local = [0, mj, mi, mi | mj];
    let m = rho.matrix();
    let mut out = [[0.0; 4]; 4];
    for base in (0..rho.dim()).filter(|b| b & (mi | mj) == 0) {
        for (a, row) in out.iter_mut().enumerate() {
            let r = base | local[a];
            for (b, x) in row.iter_mut().enumerate() {
                *x += m.get(r, base | local[b]);
            }
        }
    }
    let matrix = SymMatrix::from_upper_fn(4, |r, c| 0.5 * (out[r][c] + out[c][r]));
    Ok(TwoQubitState {
        rho: DensityMatrix::from_matrix_unchecked(matrix),
    })
}

/// Spin-flipped state `ρ̃ = (σʸ⊗σʸ) ρ* (σʸ⊗σʸ)`.
pub fn flipped(rho2: &TwoQubitState) -> SymMatrix {
    let y = SIGMA_YY;
    let m = rho2.to_rows();
    let yry = mul(&mul(&y, &m), &y);
    SymMatrix::from_upper_fn(4, |r, c| yry[r][c])
}

/// `ρ ρ̃`, the (generally non-symmetric) operator whose spectrum defines the concurrence.
pub fn spin_flip(rho2: &TwoQubitState) -> Mat4 {
    let f = flipped(rho2);
    let f = std::array::from_fn(|r| std::array::from_fn(|c| f.get(r, c)));
    mul(&rho2.to_rows(), &f)
}

pub fn concurrence(rho2: &TwoQubitState) -> Result<ConcurrenceResult> {
    let s = psd_sqrt(rho2.matrix())?;
    let s4: Mat4 = std::array::from_fn(|r| std::array::from_fn(|c| s.get(r, c)));
    let r = mul(&mul(&s4, &SIGMA_YY), &s4);
    let r = SymMatrix::from_upper_fn(4, |a, b| 0.5 * (r[a][b] + r[b][a]));
    let mut lambdas: [f64; 4] = {
        let spec = eigh(&r)?;
        std::array::from_fn(|k| spec.eigenvalues()[k].abs())
    };
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let value = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0);
    Ok(ConcurrenceResult { value, lambdas })
}

/// Closed-form concurrence of an X-state:
/// `2 · max(0, |z| − √(u x), |y| − √(v w))`.
pub fn concurrence_xstate(rho2: &TwoQubitState) -> Result<f64> {
    let violation = rho2.x_form_violation();
    if violation > 1e-8 {
        return Err(Error::input(format!(
            "state is not of X form (off-pattern entry {violation:e})"
        )));
    }
    let (u, v, w, x) = (
        rho2.get(0, 0),
        rho2.get(1, 1),
        rho2.get(2, 2),
        rho2.get(3, 3),
    );
    let z = rho2.get(1, 2);
    let y = rho2.get(0, 3);
    let a = z.abs() - (u * x).max(0.0).sqrt();
    let b = y.abs() - (v * w).max(0.0).sqrt();
    Ok(2.0 * a.max(b).max(0.0))
}

/// Concurrence for every pair `i < j`, in lexicographic order.
pub fn all_pairwise(rho: &DensityMatrix) -> Result<PairMap> {
    let n = rho.n_qubits();
    let mut out = PairMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.insert((i, j), concurrence(&partial_trace_pair(rho, i, j)?)?);
        }
    }
    Ok(out)
}

fn mul(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|r| std::array::from_fn(|c| (0..4).map(|k| a[r][k] * b[k][c]).sum()))
}
