//! Dense real-symmetric matrices and their eigendecomposition.
//!
//! Eigenpairs come from the cyclic Jacobi method: each sweep visits every
//! off-diagonal position once and annihilates it with a plane rotation,
//! accumulating the rotations into the eigenvector matrix. The method is
//! unconditionally convergent for real symmetric input and accurate to a few
//! ulps of the matrix norm, which is all the concurrence pipeline needs.

use std::fmt;

use crate::error::{Error, Result};

/// Sweep until the off-diagonal Frobenius norm drops below this fraction of ‖A‖_F.
const OFF_DIAGONAL_TOLERANCE: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues below `-PSD_TOLERANCE` mean the input was not positive semidefinite.
pub const PSD_TOLERANCE: f64 = 1e-8;

/// Dense real symmetric matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds a matrix from row-major entries, checking finiteness and symmetry.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("matrix dimension must be positive"));
        }
        if data.len() != dim * dim {
            return Err(Error::input(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::input("matrix entries must be finite"));
        }
        let m = SymMatrix { dim, data };
        if !m.is_symmetric() {
            return Err(Error::input(format!(
                "matrix is not symmetric (asymmetry {:e})",
                m.asymmetry()
            )));
        }
        Ok(m)
    }

    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.data[k * dim + k] = 1.0;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (k, &x) in values.iter().enumerate() {
            m.data[k * values.len() + k] = x;
        }
        m
    }

    /// Fills the upper triangle from `f(r, c)` with `r <= c` and mirrors it.
    pub fn from_upper_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in r..dim {
                let x = f(r, c);
                m.data[r * dim + c] = x;
                m.data[c * dim + r] = x;
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.dim + c]
    }

    /// Sets both `(r, c)` and `(c, r)`.
    #[inline]
    pub fn set_sym(&mut self, r: usize, c: usize, x: f64) {
        self.data[r * self.dim + c] = x;
        self.data[c * self.dim + r] = x;
    }

    #[inline]
    pub(crate) fn add_sym(&mut self, r: usize, c: usize, x: f64) {
        self.data[r * self.dim + c] += x;
        if r != c {
            self.data[c * self.dim + r] += x;
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|k| self.get(k, k)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest `|A[r][c] - A[c][r]|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r + 1..self.dim {
                worst = worst.max((self.get(r, c) - self.get(c, r)).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry() <= 1e-12 * (1.0 + self.max_abs())
    }

    /// Frobenius norm of `self - other`.
    pub fn distance(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// `self · self`, symmetric because `self` is.
    pub fn squared(&self) -> SymMatrix {
        let n = self.dim;
        Self::from_upper_fn(n, |r, c| {
            self.row(r)
                .iter()
                .zip(self.row(c))
                .map(|(a, b)| a * b)
                .sum()
        })
    }

    /// `A · x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        (0..self.dim)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `P A Pᵀ` for the basis permutation `k ↦ perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> SymMatrix {
        assert_eq!(perm.len(), self.dim, "dimension mismatch");
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.data[perm[r] * self.dim + perm[c]] = self.get(r, c);
            }
        }
        out
    }

    fn submatrix(&self, indices: &[usize]) -> SymMatrix {
        let m = indices.len();
        let mut out = Self::zeros(m);
        for (a, &r) in indices.iter().enumerate() {
            for (b, &c) in indices.iter().enumerate() {
                out.data[a * m + b] = self.get(r, c);
            }
        }
        out
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Full eigendecomposition of a symmetric matrix.
///
/// Eigenvalues are ascending; `eigenvector(k)` pairs with `eigenvalues()[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Vec<f64>>,
}

impl Spectrum {
    fn sorted(mut pairs: Vec<(f64, Vec<f64>)>) -> Self {
        // stable, so ties keep their block/column order
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (eigenvalues, eigenvectors) = pairs.into_iter().unzip();
        Spectrum {
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.eigenvectors[k]
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    /// `V · diag(λ) · Vᵀ`.
    pub fn reconstruct(&self) -> SymMatrix {
        self.weighted_projector_sum(&self.eigenvalues)
    }

    /// `Σ_k w_k v_k v_kᵀ`, visiting only the nonzero support of each vector.
    pub(crate) fn weighted_projector_sum(&self, weights: &[f64]) -> SymMatrix {
        let n = self.dim();
        let mut out = SymMatrix::zeros(n);
        let mut support = Vec::with_capacity(n);
        for (w, v) in weights.iter().zip(&self.eigenvectors) {
            if *w == 0.0 {
                continue;
            }
            support.clear();
            support.extend((0..n).filter(|&i| v[i] != 0.0));
            for (a, &r) in support.iter().enumerate() {
                let wr = w * v[r];
                for &c in &support[a..] {
                    out.add_sym(r, c, wr * v[c]);
                }
            }
        }
        out
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
pub fn eigh(a: &SymMatrix) -> Result<Spectrum> {
    if !a.is_symmetric() {
        return Err(Error::input(format!(
            "eigh requires a symmetric matrix (asymmetry {:e})",
            a.asymmetry()
        )));
    }
    let (values, vectors) = jacobi(a)?;
    Ok(Spectrum::sorted(values.into_iter().zip(vectors).collect()))
}

/// Eigendecomposition of a matrix that is block diagonal over `blocks`.
///
/// `blocks` must partition `0..dim`, and every entry coupling two different
/// blocks must vanish. Each block is diagonalized on its own and the
/// eigenvectors are embedded back into the full space, so they are exactly
/// zero outside their block.
pub fn eigh_blocks(a: &SymMatrix, blocks: &[Vec<usize>]) -> Result<Spectrum> {
    let n = a.dim();
    let mut owner = vec![usize::MAX; n];
    for (b, block) in blocks.iter().enumerate() {
        for &i in block {
            if i >= n || owner[i] != usize::MAX {
                return Err(Error::input("blocks must partition the basis indices"));
            }
            owner[i] = b;
        }
    }
    if owner.contains(&usize::MAX) {
        return Err(Error::input("blocks must cover every basis index"));
    }
    if !a.is_symmetric() {
        return Err(Error::input("eigh_blocks requires a symmetric matrix"));
    }
    let tol = 1e-12 * (1.0 + a.max_abs());
    for r in 0..n {
        for c in r + 1..n {
            if owner[r] != owner[c] && a.get(r, c).abs() > tol {
                return Err(Error::input(format!(
                    "entry ({r}, {c}) couples two different blocks"
                )));
            }
        }
    }

    let mut pairs = Vec::with_capacity(n);
    for block in blocks.iter().filter(|b| !b.is_empty()) {
        let (values, vectors) = jacobi(&a.submatrix(block))?;
        for (value, local) in values.into_iter().zip(vectors) {
            let mut full = vec![0.0; n];
            for (&i, x) in block.iter().zip(local) {
                full[i] = x;
            }
            pairs.push((value, full));
        }
    }
    Ok(Spectrum::sorted(pairs))
}

/// Symmetric square root of a positive semidefinite matrix.
///
/// Eigenvalues in `[-PSD_TOLERANCE, 0)` are treated as round-off and clamped
/// to zero, as is anything below `1e-14 · λ_max`, where the eigensolver
/// cannot tell a value from zero anyway. More negative eigenvalues are an
/// [`Error::InvalidState`].
pub fn psd_sqrt(a: &SymMatrix) -> Result<SymMatrix> {
    let spec = eigh(a)?;
    if spec.min() < -PSD_TOLERANCE {
        return Err(Error::InvalidState(spec.min()));
    }
    let floor = 1e-14 * spec.max().max(0.0);
    let roots: Vec<f64> = spec
        .eigenvalues()
        .iter()
        .map(|&x| if x <= floor { 0.0 } else { x.sqrt() })
        .collect();
    Ok(spec.weighted_projector_sum(&roots))
}

/// Unsorted eigenvalues and eigenvectors (as columns).
fn jacobi(a: &SymMatrix) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.dim();
    // symmetrize the working copy so both triangles agree exactly
    let mut m = SymMatrix::from_upper_fn(n, |r, c| 0.5 * (a.get(r, c) + a.get(c, r)));
    let mut v = SymMatrix::identity(n).data;
    let norm = m.frobenius_norm();

    let mut converged = false;
    let mut residual = 0.0;
    for sweep in 0..=MAX_SWEEPS {
        residual = off_diagonal_norm(&m);
        if residual <= OFF_DIAGONAL_TOLERANCE * norm {
            converged = true;
            break;
        }
        if sweep == MAX_SWEEPS {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            residual,
        });
    }

    let values = (0..n).map(|k| m.get(k, k)).collect();
    let vectors = (0..n)
        .map(|col| (0..n).map(|row| v[row * n + col]).collect())
        .collect();
    Ok((values, vectors))
}

fn off_diagonal_norm(m: &SymMatrix) -> f64 {
    let n = m.dim();
    let mut sum = 0.0;
    for r in 0..n {
        for c in r + 1..n {
            sum += 2.0 * m.get(r, c).powi(2);
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation zeroing `m[p][q]`; `v` accumulates the rotation columns.
fn rotate(m: &mut SymMatrix, v: &mut [f64], p: usize, q: usize) {
    let n = m.dim;
    let apq = m.get(p, q);
    if apq == 0.0 {
        return;
    }
    let app = m.get(p, p);
    let aqq = m.get(q, q);
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = m.get(k, p);
        let akq = m.get(k, q);
        m.set_sym(k, p, c * akp - s * akq);
        m.set_sym(k, q, s * akp + c * akq);
    }
    m.set_sym(p, p, app - t * apq);
    m.set_sym(q, q, aqq + t * apq);
    m.set_sym(p, q, 0.0);

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}
