//! Stroboscopic time evolution within sectors, observable series, encoded
//! qubit splittings, and projected-ensemble late-time predictions.
//!
//! Evolution uses the sector eigendecomposition directly,
//! `|psi(t)> = sum_k e^{-i (pi/4) E_k t} <v_k|psi_0> |v_k>` at integer `t`,
//! so there is no integrator error anywhere in the pipeline, and amplitudes
//! can never leak out of the sector basis the trajectory lives on.

use num_complex::Complex64;

use crate::basis::{BasisState, Chain, ModelParams};
use crate::error::{Error, Result};
use crate::fragment::{self, KrylovSector};
use crate::operators::{build_conjugation, build_hamiltonian, build_logical_generators, SparseOperator};
use crate::spectra::{diagonalize, frozen_cat, CatSign, Spectrum, StateVector};

/// One stroboscopic step advances phases by `(pi/4) E`.
pub const STEP_PHASE: f64 = std::f64::consts::FRAC_PI_4;

/// Time series of a state vector under stroboscopic evolution, `t = 0..=T`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    basis: Vec<BasisState>,
    states: Vec<Vec<Complex64>>,
}

impl Trajectory {
    pub fn basis(&self) -> &[BasisState] {
        &self.basis
    }

    /// Number of steps `T`; the trajectory holds `T + 1` states.
    pub fn steps(&self) -> u32 {
        (self.states.len() - 1) as u32
    }

    pub fn state(&self, t: usize) -> &[Complex64] {
        &self.states[t]
    }

    pub fn states(&self) -> &[Vec<Complex64>] {
        &self.states
    }
}

/// Evolve `psi0` under the sector Hamiltonian for integer steps `0..=T`.
pub fn evolve(psi0: &StateVector, h: &SparseOperator, steps: u32) -> Result<Trajectory> {
    if psi0.basis() != h.basis() {
        return Err(Error::BasisMismatch);
    }
    let spectrum = diagonalize(h)?;
    evolve_with_spectrum(psi0, &spectrum, steps)
}

/// Same as [`evolve`], reusing an existing eigendecomposition.
pub fn evolve_with_spectrum(
    psi0: &StateVector,
    spectrum: &Spectrum,
    steps: u32,
) -> Result<Trajectory> {
    if psi0.basis() != spectrum.basis() {
        return Err(Error::BasisMismatch);
    }
    let n = spectrum.dim();
    let mut coeff = vec![Complex64::new(0.0, 0.0); n];
    for (k, c) in coeff.iter_mut().enumerate() {
        let v = spectrum.eigenvector(k);
        *c = v
            .iter()
            .zip(psi0.amplitudes())
            .map(|(&vi, &ai)| vi * ai)
            .sum();
    }
    let mut states = Vec::with_capacity(steps as usize + 1);
    for t in 0..=steps {
        let mut acc = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            let phase =
                Complex64::from_polar(1.0, -STEP_PHASE * spectrum.eigenvalues()[k] * t as f64);
            let ck = coeff[k] * phase;
            if ck.norm_sqr() < 1e-32 {
                continue;
            }
            let v = spectrum.eigenvector(k);
            for (a, &vi) in acc.iter_mut().zip(v) {
                *a += ck * vi;
            }
        }
        states.push(acc);
    }
    Ok(Trajectory {
        basis: psi0.basis().to_vec(),
        states,
    })
}

/// `<X(t)>` along a trajectory whose basis is closed under conjugation.
pub fn expectation_conjugation(chain: &Chain, traj: &Trajectory) -> Result<Vec<f64>> {
    let x = build_conjugation(chain, traj.basis())?;
    traj.states
        .iter()
        .map(|psi| {
            let xpsi = x.apply_complex(psi)?;
            let val: Complex64 = psi.iter().zip(&xpsi).map(|(a, b)| a.conj() * b).sum();
            Ok(val.re)
        })
        .collect()
}

/// `<Z_i(t)>` for every site: one series per site, indexed `[site][t]`.
pub fn expectation_z_profile(chain: &Chain, traj: &Trajectory) -> Result<Vec<Vec<f64>>> {
    let l = chain.len() as usize;
    let mut series = vec![Vec::with_capacity(traj.states.len()); l];
    for psi in &traj.states {
        let mut acc = vec![0.0f64; l];
        for (idx, &s) in traj.basis.iter().enumerate() {
            let w = psi[idx].norm_sqr();
            if w == 0.0 {
                continue;
            }
            for (i, a) in acc.iter_mut().enumerate() {
                *a += w * chain.site_z(s, i as u32) as f64;
            }
        }
        for (i, v) in acc.into_iter().enumerate() {
            series[i].push(v);
        }
    }
    Ok(series)
}

/// Exact per-site infinite-temperature average of `Z_i` projected into one
/// Krylov sector: `Z^inf_i = (sum over members of z_i) / dim`, kept as a
/// rational with the sector dimension as denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImbalanceProfile {
    numerators: Vec<i64>,
    denominator: u64,
}

impl ImbalanceProfile {
    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn sites(&self) -> usize {
        self.numerators.len()
    }

    pub fn site_value(&self, i: usize) -> f64 {
        self.numerators[i] as f64 / self.denominator as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.sites()).map(|i| self.site_value(i)).collect()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.numerators.iter().all(|&n| n == 0)
    }

    pub fn is_site_independent(&self) -> bool {
        self.numerators.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn projected_ensemble_imbalance(
    chain: &Chain,
    sector: &KrylovSector,
) -> Result<ImbalanceProfile> {
    let l = chain.len() as usize;
    let mut numerators = vec![0i64; l];
    for &s in sector.members() {
        for (i, n) in numerators.iter_mut().enumerate() {
            *n += chain.site_z(s, i as u32) as i64;
        }
    }
    Ok(ImbalanceProfile {
        numerators,
        denominator: sector.dim() as u64,
    })
}

/// Arithmetic mean over the final `window` fraction of the series.
pub fn late_time_average(series: &[f64], window: f64) -> Result<f64> {
    if !(window > 0.0 && window <= 1.0) || (series.len() as f64) < 10.0 / window {
        return Err(Error::SeriesTooShort {
            len: series.len(),
            window,
        });
    }
    let n = ((series.len() as f64) * window).ceil() as usize;
    let tail = &series[series.len() - n..];
    Ok(tail.iter().sum::<f64>() / n as f64)
}

/// Perturbation-induced splitting of a frozen-pair qubit:
/// `delta = 2 |h sum_i (-1)^i z_i(phi)|`. The second-neighbor coupling
/// cancels between conjugate partners because it is even in Z.
pub fn rabi_splitting(phi: BasisState, params: &ModelParams) -> Result<f64> {
    let chain = &params.chain;
    if !fragment::is_frozen(chain, phi)? {
        return Err(Error::NotFrozen {
            state: chain.format_state(phi),
        });
    }
    Ok(2.0 * (params.field * chain.staggered_sum(phi)? as f64).abs())
}

/// The analytic two-level series `cos((pi/4) delta t)`.
pub fn two_level_series(splitting: f64, steps: u32) -> Vec<f64> {
    (0..=steps)
        .map(|t| (STEP_PHASE * splitting * t as f64).cos())
        .collect()
}

/// All `m = 0` Krylov sectors of the requested dimension, sorted by root.
/// With `require_asymmetric` set, only sectors that are neither
/// conjugation- nor translation-invariant are returned (the staggered
/// imbalance workflow needs those).
pub fn find_figure_sector(
    chain: &Chain,
    dim_target: usize,
    require_asymmetric: bool,
) -> Result<Vec<KrylovSector>> {
    let sectors = fragment::census(chain, 0)?;
    Ok(sectors
        .into_iter()
        .filter(|sec| {
            sec.dim() == dim_target
                && (!require_asymmetric
                    || (!sec.is_conjugation_invariant(chain)
                        && !sec.is_translation_invariant(chain)))
        })
        .collect())
}

/// Frozen-pair cat dynamics: trajectory on the two-state basis, the
/// `<X(t)>` series, and the analytic splitting `delta`.
pub fn frozen_cat_dynamics(
    phi: BasisState,
    params: &ModelParams,
    steps: u32,
) -> Result<(Trajectory, Vec<f64>, f64)> {
    let chain = &params.chain;
    let splitting = rabi_splitting(phi, params)?;
    let cat = frozen_cat(chain, phi, CatSign::Plus)?;
    let h = build_hamiltonian(cat.basis(), params)?;
    let traj = evolve(&cat, &h, steps)?;
    let series = expectation_conjugation(chain, &traj)?;
    Ok((traj, series, splitting))
}

/// Eigenstate-pair cat dynamics for a conjugation pair `(p, q)`:
/// prepare `(|E,+> + |E,->)/sqrt(2)` from the unperturbed (`field = 0`)
/// spectrum of `p` at the median eigenvalue index `dim/2`, evolve under the
/// perturbed Hamiltonian blockwise on the union basis, and return the
/// trajectory together with `<X(t)>`.
pub fn eigenstate_cat_dynamics(
    p: &KrylovSector,
    q: &KrylovSector,
    params: &ModelParams,
    steps: u32,
) -> Result<(Trajectory, Vec<f64>)> {
    let chain = &params.chain;
    let gens = build_logical_generators(chain, p, q)?;
    let union = gens.basis().to_vec();

    let prep = ModelParams::new(*chain, params.model, params.delta, 0.0);
    let spec_prep = diagonalize(&build_hamiltonian(p.members(), &prep)?)?;
    let median = spec_prep.dim() / 2;
    let mut plus = vec![0.0f64; union.len()];
    for (i, &s) in p.members().iter().enumerate() {
        plus[union.binary_search(&s).unwrap()] = spec_prep.eigenvector(median)[i];
    }
    let minus = gens.x_op().apply(&plus)?;
    let amplitudes: Vec<Complex64> = plus
        .iter()
        .zip(&minus)
        .map(|(a, b)| Complex64::new((a + b) * std::f64::consts::FRAC_1_SQRT_2, 0.0))
        .collect();

    // The Hamiltonian is block diagonal over the pair, so each half of the
    // union evolves in its own sector eigendecomposition.
    let spec_p = diagonalize(&build_hamiltonian(p.members(), params)?)?;
    let spec_q = diagonalize(&build_hamiltonian(q.members(), params)?)?;
    let extract = |members: &[BasisState]| -> Vec<Complex64> {
        members
            .iter()
            .map(|s| amplitudes[union.binary_search(s).unwrap()])
            .collect()
    };
    let psi_p = StateVector::new(p.members().to_vec(), extract(p.members()))?;
    let psi_q = StateVector::new(q.members().to_vec(), extract(q.members()))?;
    let traj_p = evolve_with_spectrum(&psi_p, &spec_p, steps)?;
    let traj_q = evolve_with_spectrum(&psi_q, &spec_q, steps)?;

    let mut states = Vec::with_capacity(steps as usize + 1);
    for t in 0..=steps as usize {
        let mut full = vec![Complex64::new(0.0, 0.0); union.len()];
        for (i, &s) in p.members().iter().enumerate() {
            full[union.binary_search(&s).unwrap()] = traj_p.state(t)[i];
        }
        for (i, &s) in q.members().iter().enumerate() {
            full[union.binary_search(&s).unwrap()] = traj_q.state(t)[i];
        }
        states.push(full);
    }
    let traj = Trajectory {
        basis: union,
        states,
    };
    let series = expectation_conjugation(chain, &traj)?;
    Ok((traj, series))
}

/// Relaxation workflow for one sector: evolve the median member (index
/// `dim/2` of the ascending member list) as the initial product state,
/// returning the trajectory, the per-site `<Z_i(t)>` series, and the exact
/// projected-ensemble profile.
///
/// A mid-list member relaxes to the projected-ensemble profile; extremal
/// members such as the canonical root are maximally ordered and their
/// diagonal ensembles retain excess staggering at any time.
pub fn imbalance_dynamics(
    sector: &KrylovSector,
    params: &ModelParams,
    steps: u32,
) -> Result<(Trajectory, Vec<Vec<f64>>, ImbalanceProfile)> {
    let chain = &params.chain;
    let start = sector.members()[sector.dim() / 2];
    let psi0 = StateVector::basis_vector(sector.members().to_vec(), start)?;
    let h = build_hamiltonian(sector.members(), params)?;
    let traj = evolve(&psi0, &h, steps)?;
    let z_series = expectation_z_profile(chain, &traj)?;
    let profile = projected_ensemble_imbalance(chain, sector)?;
    Ok((traj, z_series, profile))
}
