//! XX open chains with site coupling factors.
//!
//! The Hamiltonian is
//!
//! ```text
//! H = Σ_{i=1}^{n-1} J_i J_{i+1} (σ_i⁺ σ_{i+1}⁻ + σ_{i+1}⁺ σ_i⁻),   σ± = (σˣ ± iσʸ)/2
//! ```
//!
//! so site factor `J_i` enters the two bonds touching site `i`. Every term
//! moves one excitation between neighbouring sites, which makes `H` real in
//! the computational basis and block diagonal over excitation number.
//!
//! Basis convention: bit value 1 is an excited spin (`σ⁺|0⟩ = |1⟩`), and the
//! configuration `b₁…bₙ` has index `Σ b_k 2^(n-k)`, i.e. site 1 is the most
//! significant bit. Sites are numbered from 1 throughout the public API.

use crate::error::{Error, Result};
use crate::linalg::{eigh_blocks, Spectrum, SymMatrix};
use crate::thermal::{DensityMatrix, Temperature};

pub const MIN_SITES: usize = 2;
pub const MAX_SITES: usize = 12;

/// Qubit count plus per-site coupling factors `J₁..Jₙ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSpec {
    site_factors: Vec<f64>,
}

impl ChainSpec {
    pub fn new(site_factors: Vec<f64>) -> Result<Self> {
        check_sites(site_factors.len())?;
        for (k, &j) in site_factors.iter().enumerate() {
            if !j.is_finite() || j < 0.0 {
                return Err(Error::input(format!(
                    "site factor J{} = {j} must be finite and non-negative",
                    k + 1
                )));
            }
        }
        Ok(ChainSpec { site_factors })
    }

    /// All factors equal to 1.
    pub fn uniform(n: usize) -> Result<Self> {
        check_sites(n)?;
        Ok(ChainSpec {
            site_factors: vec![1.0; n],
        })
    }

    pub fn n(&self) -> usize {
        self.site_factors.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    pub fn site_factors(&self) -> &[f64] {
        &self.site_factors
    }

    /// Strength `J_i J_{i+1}` of the bond between sites `i` and `i + 1` (1-based).
    pub fn bond(&self, i: usize) -> f64 {
        self.site_factors[i - 1] * self.site_factors[i]
    }

    /// `J_i = J_{n+1-i}` for every site.
    pub fn is_palindromic(&self) -> bool {
        self.site_factors.iter().eq(self.site_factors.iter().rev())
    }

    pub fn hamiltonian(&self) -> SymMatrix {
        build_hamiltonian(self)
    }

    /// Full spectrum, diagonalizing each magnetization sector separately.
    pub fn spectrum(&self) -> Result<Spectrum> {
        eigh_blocks(&self.hamiltonian(), &magnetization_sectors(self.n())?)
    }

    /// Gibbs state at `t`, or the ground-multiplet mixture at `T = 0`.
    pub fn thermal_state(&self, t: Temperature) -> Result<DensityMatrix> {
        DensityMatrix::thermal(&self.spectrum()?, t)
    }
}

fn check_sites(n: usize) -> Result<()> {
    if !(MIN_SITES..=MAX_SITES).contains(&n) {
        return Err(Error::input(format!(
            "qubit count n = {n} must lie in {MIN_SITES}..={MAX_SITES}"
        )));
    }
    Ok(())
}

/// Bit mask of site `k` (1-based) in an `n`-site basis index.
#[inline]
pub fn site_mask(n: usize, k: usize) -> usize {
    1 << (n - k)
}

/// Excitation pattern `b₁..bₙ` of a basis index.
pub fn index_to_bits(n: usize, index: usize) -> Vec<u8> {
    (1..=n)
        .map(|k| u8::from(index & site_mask(n, k) != 0))
        .collect()
}

pub fn bits_to_index(bits: &[u8]) -> usize {
    bits.iter()
        .fold(0, |acc, &b| (acc << 1) | usize::from(b != 0))
}

/// Basis permutation induced by reversing the site order.
pub fn site_reversal(n: usize) -> Vec<usize> {
    (0..1usize << n)
        .map(|i| i.reverse_bits() >> (usize::BITS as usize - n))
        .collect()
}

/// Dense `2ⁿ × 2ⁿ` matrix of the XX Hamiltonian.
pub fn build_hamiltonian(spec: &ChainSpec) -> SymMatrix {
    let n = spec.n();
    let mut h = SymMatrix::zeros(spec.dim());
    for i in 1..n {
        let strength = spec.bond(i);
        if strength == 0.0 {
            continue;
        }
        let pair = site_mask(n, i) | site_mask(n, i + 1);
        for r in 0..spec.dim() {
            // exactly one of the two sites excited: hop the excitation across
            let occupied = r & pair;
            if occupied != 0 && occupied != pair {
                let c = r ^ pair;
                if r < c {
                    h.set_sym(r, c, strength);
                }
            }
        }
    }
    h
}

/// Basis indices grouped by excitation count `k = 0..=n`, each list ascending.
pub fn magnetization_sectors(n: usize) -> Result<Vec<Vec<usize>>> {
    check_sites(n)?;
    let mut sectors = vec![Vec::new(); n + 1];
    for i in 0..1usize << n {
        sectors[i.count_ones() as usize].push(i);
    }
    Ok(sectors)
}

/// Chain with `J = j` at `site` (1-based) and 1 everywhere else.
pub fn impurity_pattern(n: usize, site: usize, j: f64) -> Result<ChainSpec> {
    check_sites(n)?;
    if !(1..=n).contains(&site) {
        return Err(Error::input(format!(
            "impurity site {site} outside 1..={n}"
        )));
    }
    let mut factors = vec![1.0; n];
    factors[site - 1] = j;
    ChainSpec::new(factors)
}
