//! Dense diagonalization within sectors, degeneracy pairing between
//! conjugate sectors, cat eigenstates, and entanglement diagnostics.

use num_complex::Complex64;

use crate::basis::{BasisState, Chain, Model, ModelParams};
use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix};
use crate::operators::{build_hamiltonian, SparseOperator};

/// Dense-path dimension cap; larger spaces must be restricted to a sector.
pub const DENSE_DIM_CAP: usize = 6000;

/// Eigendecomposition of a sector Hamiltonian: ascending eigenvalues and
/// orthonormal eigenvector columns in the sector basis.
#[derive(Debug, Clone)]
pub struct Spectrum {
    basis: Vec<BasisState>,
    eigenvalues: Vec<f64>,
    eigenvectors: DenseMatrix,
}

impl Spectrum {
    pub fn basis(&self) -> &[BasisState] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        self.eigenvectors.col(k)
    }

    /// Worst eigenpair residual `max_k |H v_k - E_k v_k|_inf` and worst
    /// orthonormality deviation `max |V^T V - 1|_inf`.
    pub fn verify_quality(&self, h: &SparseOperator) -> Result<(f64, f64)> {
        if h.dim() != self.dim() {
            return Err(Error::DimensionMismatch(h.dim(), self.dim()));
        }
        let n = self.dim();
        let mut max_res = 0.0f64;
        for k in 0..n {
            let v = self.eigenvector(k);
            let hv = h.apply(v)?;
            for i in 0..n {
                max_res = max_res.max((hv[i] - self.eigenvalues[k] * v[i]).abs());
            }
        }
        let mut max_ortho = 0.0f64;
        for a in 0..n {
            let va = self.eigenvector(a);
            for b in a..n {
                let vb = self.eigenvector(b);
                let dot: f64 = va.iter().zip(vb).map(|(x, y)| x * y).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                max_ortho = max_ortho.max((dot - target).abs());
            }
        }
        Ok((max_res, max_ortho))
    }
}

/// Full symmetric eigendecomposition of a sector operator, dense path.
pub fn diagonalize(h: &SparseOperator) -> Result<Spectrum> {
    if h.dim() > DENSE_DIM_CAP {
        return Err(Error::DimensionCap {
            dim: h.dim(),
            cap: DENSE_DIM_CAP,
        });
    }
    let dense = DenseMatrix::from_sparse(h);
    let (eigenvalues, eigenvectors) = linalg::symmetric_eigen(&dense)?;
    Ok(Spectrum {
        basis: h.basis().to_vec(),
        eigenvalues,
        eigenvectors,
    })
}

/// Maximum sorted-eigenvalue mismatch between two spectra of equal
/// dimension; fails with the mismatch value when it exceeds `tol`.
pub fn verify_pair_degeneracy(a: &Spectrum, b: &Spectrum, tol: f64) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let max = a
        .eigenvalues
        .iter()
        .zip(&b.eigenvalues)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    if max <= tol {
        Ok(max)
    } else {
        Err(Error::DegeneracyViolation(max))
    }
}

/// A normalized (or in-construction) complex vector on an ordered basis.
#[derive(Debug, Clone)]
pub struct StateVector {
    basis: Vec<BasisState>,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(basis: Vec<BasisState>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if basis.len() != amplitudes.len() {
            return Err(Error::DimensionMismatch(basis.len(), amplitudes.len()));
        }
        Ok(Self { basis, amplitudes })
    }

    /// Product state: amplitude 1 on one basis member.
    pub fn basis_vector(basis: Vec<BasisState>, s: BasisState) -> Result<Self> {
        let pos = basis
            .binary_search(&s)
            .map_err(|_| Error::MemberOutsideBasis {
                state: format!("{:b}", s.0),
            })?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); basis.len()];
        amplitudes[pos] = Complex64::new(1.0, 0.0);
        Ok(Self { basis, amplitudes })
    }

    pub fn from_real(basis: Vec<BasisState>, values: &[f64]) -> Result<Self> {
        if basis.len() != values.len() {
            return Err(Error::DimensionMismatch(basis.len(), values.len()));
        }
        Ok(Self {
            basis,
            amplitudes: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        })
    }

    pub fn basis(&self) -> &[BasisState] {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Sign of the conjugation superposition `(v + sign * X v) / sqrt(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatSign {
    Plus,
    Minus,
}

impl CatSign {
    fn factor(self) -> f64 {
        match self {
            CatSign::Plus => 1.0,
            CatSign::Minus => -1.0,
        }
    }
}

/// `(v ± X v) / sqrt(2)` on the union of the input basis and its conjugate
/// image. Fails with a zero-vector error when `v` is conjugation symmetric
/// and the minus sign is requested.
pub fn build_cat_state(chain: &Chain, v: &StateVector, sign: CatSign) -> Result<StateVector> {
    let mut union: Vec<BasisState> = v.basis().to_vec();
    for &s in v.basis() {
        union.push(chain.charge_conjugate(s)?);
    }
    union.sort_unstable();
    union.dedup();
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); union.len()];
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    for (i, &s) in v.basis().iter().enumerate() {
        let a = v.amplitudes()[i] * inv_sqrt2;
        let p = union.binary_search(&s).unwrap();
        amplitudes[p] += a;
        let q = union.binary_search(&chain.charge_conjugate(s)?).unwrap();
        amplitudes[q] += a * sign.factor();
    }
    let cat = StateVector::new(union, amplitudes)?;
    if cat.norm() < 1e-12 {
        return Err(Error::ZeroVector);
    }
    Ok(cat)
}

/// Cat state of a frozen configuration: `(|phi> + sign |X phi>) / sqrt(2)`
/// on the two-state basis.
pub fn frozen_cat(chain: &Chain, phi: BasisState, sign: CatSign) -> Result<StateVector> {
    let single = StateVector::basis_vector(vec![phi], phi)?;
    build_cat_state(chain, &single, sign)
}

/// Norm of `H_XY` applied to the GHZ state `(|0...0> + |1...1>)/sqrt(2)` on
/// the full chain basis; exactly zero because both aligned components carry
/// no unequal bond. Capped at `L <= 16` (the check materializes `2^L`
/// states).
pub fn verify_ghz_zero_mode(chain: &Chain) -> Result<f64> {
    if chain.len() > 16 {
        return Err(Error::DimensionCap {
            dim: chain.hilbert_dim() as usize,
            cap: 1 << 16,
        });
    }
    let basis: Vec<BasisState> = (0..chain.hilbert_dim() as u32).map(BasisState).collect();
    let params = ModelParams::new(*chain, Model::Xy, 0.0, 0.0);
    let h = build_hamiltonian(&basis, &params)?;
    let all_ones = chain.charge_conjugate(BasisState(0))?;
    let mut ghz = vec![Complex64::new(0.0, 0.0); basis.len()];
    ghz[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    ghz[all_ones.0 as usize] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let image = h.apply_complex(&ghz)?;
    Ok(image.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt())
}

const ENTANGLEMENT_ELEMENT_CAP: u64 = 1 << 24;

/// Von Neumann entanglement entropy (nats) of the contiguous region
/// `sites 0..cut-1`, via the singular values of the amplitude matrix.
pub fn entanglement_entropy(chain: &Chain, v: &StateVector, cut: u32) -> Result<f64> {
    let l = chain.len();
    if cut == 0 || cut >= l {
        return Err(Error::InvalidCut { cut, l });
    }
    let left_dim = 1u64 << cut;
    let right_dim = 1u64 << (l - cut);
    if left_dim * right_dim > ENTANGLEMENT_ELEMENT_CAP {
        return Err(Error::DimensionCap {
            dim: (left_dim * right_dim) as usize,
            cap: ENTANGLEMENT_ELEMENT_CAP as usize,
        });
    }
    let right_bits = l - cut;
    let right_mask = (right_dim - 1) as u32;
    let mut re = DenseMatrix::zeros(left_dim as usize, right_dim as usize);
    let mut im = DenseMatrix::zeros(left_dim as usize, right_dim as usize);
    for (idx, &s) in v.basis().iter().enumerate() {
        chainless_check(chain, s)?;
        let a = (s.0 >> right_bits) as usize;
        let b = (s.0 & right_mask) as usize;
        let amp = v.amplitudes()[idx];
        re.set(a, b, re.get(a, b) + amp.re);
        im.set(a, b, im.get(a, b) + amp.im);
    }
    let singulars = linalg::complex_singular_values(&re, &im)?;
    let total: f64 = singulars.iter().map(|s| s * s).sum();
    let mut entropy = 0.0;
    for s in singulars {
        let p = s * s / total;
        if p > 1e-15 {
            entropy -= p * p.ln();
        }
    }
    Ok(entropy)
}

fn chainless_check(chain: &Chain, s: BasisState) -> Result<()> {
    if chain.contains(s) {
        Ok(())
    } else {
        Err(Error::InvalidState {
            state: s.0,
            l: chain.len(),
        })
    }
}
