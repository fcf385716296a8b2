//! Thermal states: Gibbs states `exp(-H/T)/Z` (k_B = 1) and the `T → 0⁺`
//! ground-multiplet mixture.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{eigh, Spectrum, SymMatrix};

const TRACE_TOLERANCE: f64 = 1e-10;
const POSITIVITY_TOLERANCE: f64 = 1e-10;

/// Temperature in units of the exchange coupling. `T = 0` stands for the
/// ground-multiplet limit.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Temperature(f64);

impl Temperature {
    pub const ZERO: Temperature = Temperature(0.0);

    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::input(format!(
                "temperature {t} must be finite and >= 0"
            )));
        }
        Ok(Temperature(t))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

impl fmt::Display for Temperature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Symmetric, unit-trace, positive semidefinite state on `log2(dim)` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: SymMatrix,
}

impl DensityMatrix {
    /// Validates trace, positivity and a power-of-two dimension.
    pub fn new(matrix: SymMatrix) -> Result<Self> {
        let dim = matrix.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::input(format!(
                "density matrix dimension {dim} is not 2^n"
            )));
        }
        let trace = matrix.trace();
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::input(format!("density matrix trace {trace} != 1")));
        }
        let min = eigh(&matrix)?.min();
        if min < -POSITIVITY_TOLERANCE {
            return Err(Error::InvalidState(min));
        }
        Ok(DensityMatrix { matrix })
    }

    /// Projector onto `psi / ‖psi‖`.
    pub fn pure(psi: &[f64]) -> Result<Self> {
        let norm = psi.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::input("state vector must be nonzero and finite"));
        }
        let m = SymMatrix::from_upper_fn(psi.len(), |r, c| psi[r] * psi[c] / (norm * norm));
        Self::new(m)
    }

    /// `I / 2ⁿ`.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        DensityMatrix {
            matrix: SymMatrix::diagonal(&vec![1.0 / dim as f64; dim]),
        }
    }

    /// Gibbs state at `t`, or [`ground_state_mixture`] with the default tolerance at `T = 0`.
    pub fn thermal(spec: &Spectrum, t: Temperature) -> Result<Self> {
        if t.is_zero() {
            ground_state_mixture(spec, default_degeneracy_tolerance(spec))
        } else {
            gibbs_state(spec, t)
        }
    }

    pub(crate) fn from_matrix_unchecked(matrix: SymMatrix) -> Self {
        DensityMatrix { matrix }
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// `tr(ρ A)`.
    pub fn expectation(&self, a: &SymMatrix) -> f64 {
        assert_eq!(a.dim(), self.dim(), "dimension mismatch");
        self.matrix
            .as_slice()
            .iter()
            .zip(a.as_slice())
            .map(|(x, y)| x * y)
            .sum()
    }
}

/// `1e-9 · (λ_max − λ_min)`, kept strictly positive.
pub fn default_degeneracy_tolerance(spec: &Spectrum) -> f64 {
    (1e-9 * (spec.max() - spec.min())).max(f64::MIN_POSITIVE)
}

/// `ρ = Σ_k w_k |v_k⟩⟨v_k|` with `w_k ∝ exp(-(λ_k − λ_min)/T)`.
pub fn gibbs_state(spec: &Spectrum, t: Temperature) -> Result<DensityMatrix> {
    if t.is_zero() {
        return Err(Error::input(
            "gibbs_state needs T > 0; use ground_state_mixture for T = 0",
        ));
    }
    let ground = spec.min();
    let mut weights: Vec<f64> = spec
        .eigenvalues()
        .iter()
        .map(|&e| (-(e - ground) / t.value()).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= z);
    Ok(DensityMatrix::from_matrix_unchecked(
        spec.weighted_projector_sum(&weights),
    ))
}

/// Equal mixture of the eigenvectors with `λ_k ≤ λ_min + deg_tol`.
pub fn ground_state_mixture(spec: &Spectrum, deg_tol: f64) -> Result<DensityMatrix> {
    if !(deg_tol > 0.0 && deg_tol.is_finite()) {
        return Err(Error::input(format!(
            "degeneracy tolerance {deg_tol} must be positive"
        )));
    }
    let cutoff = spec.min() + deg_tol;
    let g = spec.eigenvalues().iter().filter(|&&e| e <= cutoff).count();
    let weights: Vec<f64> = spec
        .eigenvalues()
        .iter()
        .map(|&e| if e <= cutoff { 1.0 / g as f64 } else { 0.0 })
        .collect();
    Ok(DensityMatrix::from_matrix_unchecked(
        spec.weighted_projector_sum(&weights),
    ))
}

/// Number of eigenvalues within the default tolerance of the ground energy.
pub fn ground_degeneracy(spec: &Spectrum) -> usize {
    let cutoff = spec.min() + default_degeneracy_tolerance(spec);
    spec.eigenvalues().iter().filter(|&&e| e <= cutoff).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainSpec;

    fn t(x: f64) -> Temperature {
        Temperature::new(x).unwrap()
    }

    fn nondegenerate() -> Spectrum {
        eigh(&SymMatrix::from_upper_fn(4, |r, c| match (r, c) {
            (0, 0) => -1.0,
            (0, 1) => 0.3,
            (1, 1) => 0.5,
            (2, 2) => 1.2,
            (2, 3) => -0.4,
            (3, 3) => 2.0,
            _ => 0.0,
        }))
        .unwrap()
    }

    #[test]
    fn infinite_temperature_is_maximally_mixed() {
        let rho = gibbs_state(&nondegenerate(), t(1e9)).unwrap();
        let mixed = SymMatrix::diagonal(&[0.25; 4]);
        for (a, b) in rho.matrix().as_slice().iter().zip(mixed.as_slice()) {
            assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn zero_temperature_limit_is_ground_projector() {
        let spec = nondegenerate();
        let rho = gibbs_state(&spec, t(1e-9)).unwrap();
        let v = spec.eigenvector(0);
        let p = SymMatrix::from_upper_fn(4, |r, c| v[r] * v[c]);
        for (a, b) in rho.matrix().as_slice().iter().zip(p.as_slice()) {
            assert!((a - b).abs() < 1e-6);
        }
        let ground = ground_state_mixture(&spec, 1e-9).unwrap();
        assert!(ground.matrix().distance(&p) < 1e-12);
    }

    #[test]
    fn rejects_bad_temperatures() {
        assert!(Temperature::new(-1.0).is_err());
        assert!(Temperature::new(f64::NAN).is_err());
        assert!(Temperature::new(f64::INFINITY).is_err());
        assert!(gibbs_state(&nondegenerate(), Temperature::ZERO).is_err());
        assert!(ground_state_mixture(&nondegenerate(), 0.0).is_err());
    }

    #[test]
    fn uniform_three_site_ground_multiplet_is_doubly_degenerate() {
        let spec = ChainSpec::uniform(3).unwrap().spectrum().unwrap();
        assert_eq!(ground_degeneracy(&spec), 2);
        let ground = ground_state_mixture(&spec, default_degeneracy_tolerance(&spec)).unwrap();
        let e = ground.expectation(&ChainSpec::uniform(3).unwrap().hamiltonian());
        assert!((e + 2f64.sqrt()).abs() < 1e-12);
        let near = gibbs_state(&spec, t(1e-6)).unwrap();
        assert!(ground.matrix().distance(near.matrix()) <= 1e-3);
    }

    #[test]
    fn validated_construction() {
        assert!(DensityMatrix::new(SymMatrix::diagonal(&[0.5, 0.5])).is_ok());
        assert!(DensityMatrix::new(SymMatrix::diagonal(&[0.5, 0.6])).is_err());
        assert!(DensityMatrix::new(SymMatrix::diagonal(&[1.5, -0.5])).is_err());
        assert!(DensityMatrix::new(SymMatrix::diagonal(&[1.0 / 3.0; 3])).is_err());
        assert!(DensityMatrix::pure(&[0.0, 0.0]).is_err());
        let rho = DensityMatrix::pure(&[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(rho.n_qubits(), 2);
        assert!((rho.matrix().get(0, 1) - 0.5).abs() < 1e-15);
    }
}
