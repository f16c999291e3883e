//! Sparse operators on ordered state bases: Hamiltonians, sector projectors,
//! the charge-conjugation permutation, and the logical-qubit generators built
//! from conjugation-paired Krylov sectors.
//!
//! Every algebraic identity in this module is checked in exact integer
//! arithmetic. The generators have entries in {-1, 0, +1} and `iY` is kept as
//! a real matrix, so no floating tolerance (and no complex number) ever
//! enters a verification.

use crate::basis::{BasisState, Chain, Model, ModelParams};
use crate::error::{Error, Result};
use crate::fragment::KrylovSector;

/// A real matrix on an ordered basis, stored as sorted `(row, col, value)`
/// triplets with zeros dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    basis: Vec<BasisState>,
    entries: Vec<(u32, u32, f64)>,
    symmetric: bool,
}

fn check_sorted_basis(basis: &[BasisState]) -> Result<()> {
    if basis.windows(2).all(|w| w[0] < w[1]) {
        Ok(())
    } else {
        Err(Error::UnsortedBasis)
    }
}

impl SparseOperator {
    /// Build from raw triplets: sorts, merges duplicates, drops zeros.
    pub fn from_triplets(
        basis: Vec<BasisState>,
        mut triplets: Vec<(u32, u32, f64)>,
        symmetric: bool,
    ) -> Result<Self> {
        check_sorted_basis(&basis)?;
        let dim = basis.len() as u32;
        if triplets.iter().any(|&(r, c, _)| r >= dim || c >= dim) {
            return Err(Error::DimensionMismatch(basis.len(), basis.len()));
        }
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(u32, u32, f64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|&(_, _, v)| v != 0.0);
        Ok(Self {
            basis,
            entries,
            symmetric,
        })
    }

    pub fn identity(basis: Vec<BasisState>) -> Result<Self> {
        let dim = basis.len();
        Self::from_triplets(
            basis,
            (0..dim as u32).map(|i| (i, i, 1.0)).collect(),
            true,
        )
    }

    pub fn zero(basis: Vec<BasisState>) -> Result<Self> {
        Self::from_triplets(basis, Vec::new(), true)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisState] {
        &self.basis
    }

    pub fn entries(&self) -> &[(u32, u32, f64)] {
        &self.entries
    }

    pub fn is_symmetric_flagged(&self) -> bool {
        self.symmetric
    }

    fn same_basis(&self, other: &Self) -> Result<()> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    fn row_ptr(&self) -> Vec<usize> {
        let mut ptr = vec![0usize; self.dim() + 1];
        for &(r, _, _) in &self.entries {
            ptr[r as usize + 1] += 1;
        }
        for i in 0..self.dim() {
            ptr[i + 1] += ptr[i];
        }
        ptr
    }

    /// Sparse product `self * other` on a shared basis.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        let dim = self.dim();
        let b_ptr = other.row_ptr();
        let mut acc = vec![0.0f64; dim];
        let mut marked = vec![false; dim];
        let mut touched: Vec<u32> = Vec::new();
        let mut triplets = Vec::new();
        let a_ptr = self.row_ptr();
        for row in 0..dim {
            for &(_, k, va) in &self.entries[a_ptr[row]..a_ptr[row + 1]] {
                for &(_, j, vb) in &other.entries[b_ptr[k as usize]..b_ptr[k as usize + 1]] {
                    if !marked[j as usize] {
                        marked[j as usize] = true;
                        touched.push(j);
                    }
                    acc[j as usize] += va * vb;
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                if acc[j as usize] != 0.0 {
                    triplets.push((row as u32, j, acc[j as usize]));
                }
                acc[j as usize] = 0.0;
                marked[j as usize] = false;
            }
            touched.clear();
        }
        Self::from_triplets(self.basis.clone(), triplets, false)
    }

    /// `alpha * self + beta * other` on a shared basis.
    pub fn linear_combination(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        self.same_basis(other)?;
        let mut triplets: Vec<(u32, u32, f64)> = Vec::with_capacity(
            self.entries.len() + other.entries.len(),
        );
        triplets.extend(self.entries.iter().map(|&(r, c, v)| (r, c, alpha * v)));
        triplets.extend(other.entries.iter().map(|&(r, c, v)| (r, c, beta * v)));
        Self::from_triplets(self.basis.clone(), triplets, self.symmetric && other.symmetric)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.linear_combination(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.linear_combination(1.0, other, -1.0)
    }

    /// Largest entrywise difference between two operators.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        let diff = self.sub(other)?;
        Ok(diff
            .entries
            .iter()
            .fold(0.0f64, |m, &(_, _, v)| m.max(v.abs())))
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries
            .iter()
            .fold(0.0f64, |m, &(_, _, v)| m.max(v.abs()))
    }

    /// `y = A x` for a complex vector.
    pub fn apply_complex(&self, x: &[num_complex::Complex64]) -> Result<Vec<num_complex::Complex64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(x.len(), self.dim()));
        }
        let mut y = vec![num_complex::Complex64::new(0.0, 0.0); self.dim()];
        for &(r, c, v) in &self.entries {
            y[r as usize] += v * x[c as usize];
        }
        Ok(y)
    }

    /// `y = A x` for a real vector.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(x.len(), self.dim()));
        }
        let mut y = vec![0.0f64; self.dim()];
        for &(r, c, v) in &self.entries {
            y[r as usize] += v * x[c as usize];
        }
        Ok(y)
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.dim()];
        for &(r, c, v) in &self.entries {
            if r == c {
                d[r as usize] = v;
            }
        }
        d
    }

    pub fn trace(&self) -> f64 {
        self.entries
            .iter()
            .filter(|&&(r, c, _)| r == c)
            .map(|&(_, _, v)| v)
            .sum()
    }

    /// Coordinate-list text dump (`row col value` per line, 12 significant
    /// digits) for cross-checks against independent tools.
    pub fn to_coordinate_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for &(r, c, v) in &self.entries {
            writeln!(out, "{} {} {:.11e}", r, c, v).unwrap();
        }
        out
    }

    /// Exact integer view of the entries; fails if any entry is not an
    /// integer exactly representable in `i64`.
    fn integer_entries(&self) -> Result<Vec<(u32, u32, i64)>> {
        self.entries
            .iter()
            .map(|&(r, c, v)| {
                if v.fract() == 0.0 && v.abs() < 9.0e15 {
                    Ok((r, c, v as i64))
                } else {
                    Err(Error::NonIntegerEntries)
                }
            })
            .collect()
    }
}

/// Merge two ascending, disjoint member lists into one ordered basis.
pub fn union_basis(p: &KrylovSector, q: &KrylovSector) -> Vec<BasisState> {
    let mut out = Vec::with_capacity(p.dim() + q.dim());
    let (mut a, mut b) = (p.members().iter().peekable(), q.members().iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some(&&x), Some(&&y)) => {
                if x < y {
                    out.push(x);
                    a.next();
                } else {
                    out.push(y);
                    b.next();
                }
            }
            (Some(&&x), None) => {
                out.push(x);
                a.next();
            }
            (None, Some(&&y)) => {
                out.push(y);
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

/// Re-index an operator onto a larger ordered basis containing its own.
pub fn embed_operator(op: &SparseOperator, basis: &[BasisState]) -> Result<SparseOperator> {
    check_sorted_basis(basis)?;
    let positions: Vec<u32> = op
        .basis()
        .iter()
        .map(|s| {
            basis
                .binary_search(s)
                .map(|p| p as u32)
                .map_err(|_| Error::MemberOutsideBasis {
                    state: format!("{:b}", s.0),
                })
        })
        .collect::<Result<_>>()?;
    let triplets = op
        .entries()
        .iter()
        .map(|&(r, c, v)| (positions[r as usize], positions[c as usize], v))
        .collect();
    SparseOperator::from_triplets(basis.to_vec(), triplets, op.symmetric)
}

/// Hamiltonian on an ordered basis: off-diagonal `+1` per allowed exchange
/// (all unequal bonds for the XY model, XNOR-gated bonds for the
/// constrained model), diagonal `delta * sum_i z_i z_{i+2} + h * sum_i
/// (-1)^i z_i` per basis state.
pub fn build_hamiltonian(basis: &[BasisState], params: &ModelParams) -> Result<SparseOperator> {
    check_sorted_basis(basis)?;
    let chain = &params.chain;
    let mut triplets = Vec::new();
    for (idx, &s) in basis.iter().enumerate() {
        let diag = params.delta * chain.second_neighbor_zz(s)? as f64
            + params.field * chain.staggered_sum(s)? as f64;
        if diag != 0.0 {
            triplets.push((idx as u32, idx as u32, diag));
        }
        for (_, t) in chain.moves(params.model, s)? {
            let j = basis.binary_search(&t).map_err(|_| Error::ClosureViolation {
                state: chain.format_state(s),
            })?;
            if t.0 > s.0 {
                triplets.push((idx as u32, j as u32, 1.0));
                triplets.push((j as u32, idx as u32, 1.0));
            }
        }
    }
    SparseOperator::from_triplets(basis.to_vec(), triplets, true)
}

/// Diagonal 0/1 projector selecting the sector's members inside `basis`.
pub fn build_projector(sector: &KrylovSector, basis: &[BasisState]) -> Result<SparseOperator> {
    check_sorted_basis(basis)?;
    let mut triplets = Vec::with_capacity(sector.dim());
    for &s in sector.members() {
        let p = basis.binary_search(&s).map_err(|_| Error::MemberOutsideBasis {
            state: format!("{:b}", s.0),
        })? as u32;
        triplets.push((p, p, 1.0));
    }
    SparseOperator::from_triplets(basis.to_vec(), triplets, true)
}

/// Charge-conjugation permutation matrix on a flip-closed basis.
pub fn build_conjugation(chain: &Chain, basis: &[BasisState]) -> Result<SparseOperator> {
    check_sorted_basis(basis)?;
    let mut triplets = Vec::with_capacity(basis.len());
    for (idx, &s) in basis.iter().enumerate() {
        let x = chain.charge_conjugate(s)?;
        let j = basis.binary_search(&x).map_err(|_| Error::NotFlipClosed {
            state: chain.format_state(s),
        })?;
        triplets.push((j as u32, idx as u32, 1.0));
    }
    SparseOperator::from_triplets(basis.to_vec(), triplets, true)
}

/// Logical-qubit generators on the union basis of a conjugation pair:
/// `I = P + Q`, `Z = P - Q`, `X = XP + XQ`, and `iY = XQ - XP` kept real.
#[derive(Debug, Clone)]
pub struct LogicalGenerators {
    pair_roots: (BasisState, BasisState),
    identity: SparseOperator,
    z: SparseOperator,
    x: SparseOperator,
    iy: SparseOperator,
}

impl LogicalGenerators {
    pub fn pair_roots(&self) -> (BasisState, BasisState) {
        self.pair_roots
    }

    pub fn identity_op(&self) -> &SparseOperator {
        &self.identity
    }

    pub fn z_op(&self) -> &SparseOperator {
        &self.z
    }

    pub fn x_op(&self) -> &SparseOperator {
        &self.x
    }

    /// `iY` as a real integer matrix.
    pub fn iy_op(&self) -> &SparseOperator {
        &self.iy
    }

    pub fn basis(&self) -> &[BasisState] {
        self.identity.basis()
    }
}

fn check_conjugation_pair(chain: &Chain, p: &KrylovSector, q: &KrylovSector) -> Result<()> {
    if p.key() != q.key() {
        return Err(Error::MixedKeys);
    }
    if p.dim() != q.dim() {
        return Err(Error::NotConjugationPair);
    }
    // Conjugation reverses order, so compare P descending against Q ascending.
    for (&s, &t) in p.members().iter().rev().zip(q.members().iter()) {
        if chain.charge_conjugate(s)? != t {
            return Err(Error::NotConjugationPair);
        }
    }
    Ok(())
}

pub fn build_logical_generators(
    chain: &Chain,
    p: &KrylovSector,
    q: &KrylovSector,
) -> Result<LogicalGenerators> {
    check_conjugation_pair(chain, p, q)?;
    let basis = union_basis(p, q);
    let proj_p = build_projector(p, &basis)?;
    let proj_q = build_projector(q, &basis)?;
    let x_full = build_conjugation(chain, &basis)?;
    let identity = proj_p.add(&proj_q)?;
    let z = proj_p.sub(&proj_q)?;
    let x = x_full.matmul(&proj_p)?.add(&x_full.matmul(&proj_q)?)?;
    let iy = x_full.matmul(&proj_q)?.sub(&x_full.matmul(&proj_p)?)?;
    Ok(LogicalGenerators {
        pair_roots: (p.root(), q.root()),
        identity,
        z,
        x,
        iy,
    })
}

/// Exact integer matrix used by the verification routines.
struct IntMat {
    dim: usize,
    entries: Vec<(u32, u32, i64)>,
}

impl IntMat {
    fn from_sparse(op: &SparseOperator) -> Result<Self> {
        Ok(Self {
            dim: op.dim(),
            entries: op.integer_entries()?,
        })
    }

    fn identity(dim: usize) -> Self {
        Self {
            dim,
            entries: (0..dim as u32).map(|i| (i, i, 1)).collect(),
        }
    }

    fn row_ptr(&self) -> Vec<usize> {
        let mut ptr = vec![0usize; self.dim + 1];
        for &(r, _, _) in &self.entries {
            ptr[r as usize + 1] += 1;
        }
        for i in 0..self.dim {
            ptr[i + 1] += ptr[i];
        }
        ptr
    }

    fn matmul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let b_ptr = other.row_ptr();
        let a_ptr = self.row_ptr();
        let mut acc = vec![0i64; self.dim];
        let mut marked = vec![false; self.dim];
        let mut touched: Vec<u32> = Vec::new();
        let mut entries = Vec::new();
        for row in 0..self.dim {
            for &(_, k, va) in &self.entries[a_ptr[row]..a_ptr[row + 1]] {
                for &(_, j, vb) in &other.entries[b_ptr[k as usize]..b_ptr[k as usize + 1]] {
                    if !marked[j as usize] {
                        marked[j as usize] = true;
                        touched.push(j);
                    }
                    acc[j as usize] += va * vb;
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                if acc[j as usize] != 0 {
                    entries.push((row as u32, j, acc[j as usize]));
                }
                acc[j as usize] = 0;
                marked[j as usize] = false;
            }
            touched.clear();
        }
        Self {
            dim: self.dim,
            entries,
        }
    }

    /// Max |entry| of `sum_k coeff_k * term_k`.
    fn combination_residual(terms: &[(&IntMat, i64)]) -> i64 {
        use std::collections::BTreeMap;
        let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for (mat, coeff) in terms {
            for &(r, c, v) in &mat.entries {
                *acc.entry((r, c)).or_insert(0) += coeff * v;
            }
        }
        acc.values().map(|v| v.abs()).max().unwrap_or(0)
    }
}

/// Check every relation of the logical SU(2) algebra in integer arithmetic:
/// the three squares, the three vanishing anticommutators, and the cyclic
/// commutators (written with the real matrix `iY`). Returns 0 on success.
pub fn verify_su2_algebra(gens: &LogicalGenerators) -> Result<i64> {
    let x = IntMat::from_sparse(gens.x_op())?;
    let iy = IntMat::from_sparse(gens.iy_op())?;
    let z = IntMat::from_sparse(gens.z_op())?;
    let ident = IntMat::from_sparse(gens.identity_op())?;
    let unit = IntMat::identity(gens.identity_op().dim());
    // On the union basis P + Q must itself be the identity matrix.
    let r = IntMat::combination_residual(&[(&ident, 1), (&unit, -1)]);
    if r != 0 {
        return Err(Error::AlgebraViolation {
            relation: "I = P + Q = 1",
            residual: r,
        });
    }

    let xx = x.matmul(&x);
    let yy = iy.matmul(&iy);
    let zz = z.matmul(&z);
    let xy = x.matmul(&iy);
    let yx = iy.matmul(&x);
    let xz = x.matmul(&z);
    let zx = z.matmul(&x);
    let yz = iy.matmul(&z);
    let zy = z.matmul(&iy);

    let checks: [(&'static str, i64); 9] = [
        (
            "X^2 = I",
            IntMat::combination_residual(&[(&xx, 1), (&ident, -1)]),
        ),
        (
            "(iY)^2 = -I",
            IntMat::combination_residual(&[(&yy, 1), (&ident, 1)]),
        ),
        (
            "Z^2 = I",
            IntMat::combination_residual(&[(&zz, 1), (&ident, -1)]),
        ),
        (
            "{X, iY} = 0",
            IntMat::combination_residual(&[(&xy, 1), (&yx, 1)]),
        ),
        (
            "{X, Z} = 0",
            IntMat::combination_residual(&[(&xz, 1), (&zx, 1)]),
        ),
        (
            "{iY, Z} = 0",
            IntMat::combination_residual(&[(&yz, 1), (&zy, 1)]),
        ),
        (
            "[X, iY] = -2Z",
            IntMat::combination_residual(&[(&xy, 1), (&yx, -1), (&z, 2)]),
        ),
        (
            "[iY, Z] = -2X",
            IntMat::combination_residual(&[(&yz, 1), (&zy, -1), (&x, 2)]),
        ),
        (
            "[Z, X] = 2iY",
            IntMat::combination_residual(&[(&zx, 1), (&xz, -1), (&iy, -2)]),
        ),
    ];
    for (relation, residual) in checks {
        if residual != 0 {
            return Err(Error::AlgebraViolation { relation, residual });
        }
    }
    Ok(0)
}

/// Check that the generators of two disjoint conjugation pairs commute,
/// after embedding both sets into the merged basis. Returns 0 on success.
pub fn verify_pairs_commute(a: &LogicalGenerators, b: &LogicalGenerators) -> Result<i64> {
    let mut basis: Vec<BasisState> = a.basis().iter().chain(b.basis().iter()).copied().collect();
    basis.sort_unstable();
    basis.dedup();
    let lift = |op: &SparseOperator| -> Result<IntMat> {
        IntMat::from_sparse(&embed_operator(op, &basis)?)
    };
    let ops_a = [lift(a.x_op())?, lift(a.iy_op())?, lift(a.z_op())?];
    let ops_b = [lift(b.x_op())?, lift(b.iy_op())?, lift(b.z_op())?];
    for oa in &ops_a {
        for ob in &ops_b {
            let ab = oa.matmul(ob);
            let ba = ob.matmul(oa);
            let r = IntMat::combination_residual(&[(&ab, 1), (&ba, -1)]);
            if r != 0 {
                return Err(Error::AlgebraViolation {
                    relation: "cross-pair commutator",
                    residual: r,
                });
            }
        }
    }
    Ok(0)
}

/// The two magnetization blocks `+m`/`-m` and the conjugation bijection
/// between them (position in the `+m` block -> position in the `-m` block).
pub fn pair_magnetization_blocks(
    chain: &Chain,
    m: i32,
) -> Result<(
    crate::basis::SymmetryBlock,
    crate::basis::SymmetryBlock,
    Vec<usize>,
)> {
    if m == 0 {
        return Err(Error::NonZeroMagnetization(0));
    }
    if m < 0 {
        return Err(Error::InvalidMagnetization { m, l: chain.len() });
    }
    let plus = crate::basis::SymmetryBlock::enumerate_magnetization(chain, m)?;
    let minus = crate::basis::SymmetryBlock::enumerate_magnetization(chain, -m)?;
    let bijection = plus
        .states()
        .iter()
        .map(|&s| {
            let x = chain.charge_conjugate(s)?;
            minus.position_of(x).ok_or(Error::NotConjugationPair)
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok((plus, minus, bijection))
}

/// Report from [`verify_fragment_sum`]: the number of fragments per kind,
/// with every residual already checked to be exactly zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentSumReport {
    pub invariant_fragments: usize,
    pub paired_fragments: usize,
    pub magnetization_fragments: usize,
}

const FULL_BASIS_CAP: u32 = 12;

fn full_basis(chain: &Chain) -> Vec<BasisState> {
    (0..chain.hilbert_dim() as u32).map(BasisState).collect()
}

/// Assemble the symmetry fragments of the conjugation operator —
/// `X Gamma_j` over invariant m=0 Krylov sectors, `X_j = X P_j + X Q_j` over
/// paired m=0 sectors, and `X_m = X (P_m + Q_m)` over magnetization pairs —
/// and verify in exact arithmetic that they sum to the full conjugation
/// permutation, that each commutes with the constrained Hamiltonian at the
/// given `delta` (h = 0), and that they commute pairwise.
pub fn verify_fragment_sum(chain: &Chain, delta: f64) -> Result<FragmentSumReport> {
    if chain.len() > FULL_BASIS_CAP {
        return Err(Error::DimensionCap {
            dim: chain.hilbert_dim() as usize,
            cap: 1usize << FULL_BASIS_CAP,
        });
    }
    let basis = full_basis(chain);
    let x_full = build_conjugation(chain, &basis)?;

    let mut fragments: Vec<SparseOperator> = Vec::new();
    let mut report = FragmentSumReport {
        invariant_fragments: 0,
        paired_fragments: 0,
        magnetization_fragments: 0,
    };

    for n_dw in chain.domain_wall_values() {
        let sectors = crate::fragment::build_krylov_sectors(
            chain,
            crate::basis::SectorKey { m: 0, n_dw },
        )?;
        if sectors.is_empty() {
            continue;
        }
        let class = crate::fragment::classify_conjugation(chain, &sectors)?;
        for &id in &class.invariant_ids {
            let gamma = build_projector(&sectors[id], &basis)?;
            fragments.push(x_full.matmul(&gamma)?);
            report.invariant_fragments += 1;
        }
        for &(p, q) in &class.pairs {
            let proj_p = build_projector(&sectors[p], &basis)?;
            let proj_q = build_projector(&sectors[q], &basis)?;
            fragments.push(x_full.matmul(&proj_p.add(&proj_q)?)?);
            report.paired_fragments += 1;
        }
    }

    for m in chain.magnetization_values().filter(|&m| m > 0) {
        let (plus, minus, _) = pair_magnetization_blocks(chain, m)?;
        let mut triplets = Vec::new();
        for &s in plus.states().iter().chain(minus.states().iter()) {
            let p = basis.binary_search(&s).unwrap() as u32;
            triplets.push((p, p, 1.0));
        }
        let proj = SparseOperator::from_triplets(basis.clone(), triplets, true)?;
        fragments.push(x_full.matmul(&proj)?);
        report.magnetization_fragments += 1;
    }

    // Sum rule: all fragments add up to the conjugation permutation.
    let mut sum = SparseOperator::zero(basis.clone())?;
    for f in &fragments {
        sum = sum.add(f)?;
    }
    let residual = IntMat::combination_residual(&[
        (&IntMat::from_sparse(&sum)?, 1),
        (&IntMat::from_sparse(&x_full)?, -1),
    ]);
    if residual != 0 {
        return Err(Error::SumRuleViolation(residual));
    }

    // Each fragment commutes with the constrained Hamiltonian. The fragments
    // are permutation-like (at most one entry per row and column), so both
    // products accumulate single terms and the comparison is exact.
    let params = ModelParams::new(*chain, Model::Xnor, delta, 0.0);
    let h = build_hamiltonian(&basis, &params)?;
    for f in &fragments {
        let hf = h.matmul(f)?;
        let fh = f.matmul(&h)?;
        let r = hf.max_abs_diff(&fh)?;
        if r != 0.0 {
            return Err(Error::FragmentCommutatorViolation(r));
        }
    }

    // Fragments commute pairwise (they have disjoint support).
    let ints: Vec<IntMat> = fragments
        .iter()
        .map(IntMat::from_sparse)
        .collect::<Result<_>>()?;
    for (i, a) in ints.iter().enumerate() {
        for b in ints.iter().skip(i + 1) {
            let ab = a.matmul(b);
            let ba = b.matmul(a);
            let r = IntMat::combination_residual(&[(&ab, 1), (&ba, -1)]);
            if r != 0 {
                return Err(Error::AlgebraViolation {
                    relation: "fragment pairwise commutator",
                    residual: r,
                });
            }
        }
    }

    Ok(report)
}
