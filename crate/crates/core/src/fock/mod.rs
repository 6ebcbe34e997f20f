//! Exact Fock-state output statistics.
//!
//! Two routes to the same bosonic amplitudes:
//!
//! * all `N` photons in one port: the output state is
//!   `(Σ_ℓ α_ℓ a†_ℓ)^N |0⟩ / √N!`, whose multinomial expansion gives
//!   `⟨n₁…n_{2L}| ψ⟩ = √(N! / ∏ nₖ!) · ∏ αₖ^{nₖ}`;
//! * any input pattern: `Per(U_{S,T}) / √(∏ sⱼ! ∏ tₗ!)` with `U_{S,T}` the
//!   [`scattering_submatrix`].
//!
//! Fermionic amplitudes (determinants) live in [`fermion`].

pub mod fermion;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::dims::dim_bosonic;
use crate::error::{Error, Result};
use crate::kernels::{permanent_ryser, scattering_submatrix};
use crate::lattice::input_ports;
use crate::limits::Limits;
use crate::pattern::{patterns, OccupationPattern};
use crate::scalar::{factorial, sqrt_multinomial, Cx, Real};
use crate::transfer::TransferMatrix;

pub use fermion::{
    fermion_amplitude, fermion_basis, fermion_superposition, FermionOccupation, Spin,
};

/// Amplitude of `pattern` when all `n` photons enter through the port whose
/// transfer column is `alphas`.
pub fn amplitude_single_port<T: Real>(
    alphas: &[Cx<T>],
    pattern: &OccupationPattern,
    n: u32,
) -> Result<Cx<T>> {
    if alphas.len() != pattern.modes() {
        return Err(Error::domain(format!(
            "pattern spans {} modes but the column has {}",
            pattern.modes(),
            alphas.len()
        )));
    }
    pattern.expect_total(n, "output")?;
    let mono = alphas
        .iter()
        .zip(pattern.counts())
        .fold(Cx::<T>::one(), |acc, (a, &k)| acc * a.powu(k));
    Ok(mono * sqrt_multinomial::<T>(pattern.counts()))
}

/// `Per(U_{input,output}) / √(∏ input! · ∏ output!)`.
pub fn amplitude_general<T: Real>(
    u: &TransferMatrix<T>,
    input: &OccupationPattern,
    output: &OccupationPattern,
    limits: &Limits,
) -> Result<Cx<T>> {
    let sub = scattering_submatrix(u, input, output)?;
    let per = permanent_ryser(&sub, limits)?;
    let norm: T = input
        .counts()
        .iter()
        .chain(output.counts())
        .map(|&k| factorial::<T>(k))
        .fold(T::one(), |a, b| a * b);
    Ok(per / norm.sqrt())
}

/// Input pattern `|N⟩|M⟩` on the two central ports of a depth-`L` register.
pub fn dual_fock_input(depth: usize, n: u32, m: u32) -> OccupationPattern {
    let (a, b) = input_ports(depth);
    let mut p = OccupationPattern::vacuum(2 * depth);
    p.counts_mut()[a] = n;
    p.counts_mut()[b] = m;
    p
}

/// Every output pattern with its amplitude, in enumeration order.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeDistribution<T> {
    total_photons: u32,
    modes: usize,
    entries: Vec<(OccupationPattern, Cx<T>)>,
}

impl<T: Real> AmplitudeDistribution<T> {
    pub fn total_photons(&self) -> u32 {
        self.total_photons
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OccupationPattern, Cx<T>)> {
        self.entries.iter().map(|(p, a)| (p, *a))
    }

    pub fn amplitude(&self, pattern: &OccupationPattern) -> Option<Cx<T>> {
        self.entries
            .binary_search_by(|(p, _)| p.cmp(pattern))
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn probability(&self, pattern: &OccupationPattern) -> Option<T> {
        self.amplitude(pattern).map(|a| a.norm_sqr())
    }

    pub fn total_probability(&self) -> T {
        self.entries.iter().map(|(_, a)| a.norm_sqr()).sum()
    }

    /// Number of patterns with probability above `threshold`.
    pub fn support_size(&self, threshold: T) -> usize {
        self.entries
            .iter()
            .filter(|(_, a)| a.norm_sqr() > threshold)
            .count()
    }
}

/// Options for [`full_distribution`].
#[derive(Debug, Clone, Copy)]
pub struct DistributionOptions {
    pub limits: Limits,
    /// Worker threads for the per-pattern loop; `1` runs inline.
    pub threads: usize,
}

impl Default for DistributionOptions {
    fn default() -> Self {
        DistributionOptions {
            limits: Limits::default(),
            threads: 1,
        }
    }
}

/// Refuses distributions with more than `limits.max_patterns` patterns.
pub fn check_pattern_cap(n: u32, depth: usize, limits: &Limits) -> Result<BigUint> {
    let dim = dim_bosonic(n as u64, depth as u64)?;
    let limit = BigUint::from(limits.max_patterns);
    if dim > limit {
        return Err(Error::CostGuard {
            what: "complete distribution",
            size: dim.to_u128().unwrap_or(u128::MAX),
            limit: limits.max_patterns,
            detail: format!("dim[H({n},{depth})] = {dim} patterns"),
        });
    }
    Ok(dim)
}

/// Amplitudes of every output pattern for `input`, via permanents.
pub fn full_distribution<T: Real>(
    u: &TransferMatrix<T>,
    input: &OccupationPattern,
    options: &DistributionOptions,
) -> Result<AmplitudeDistribution<T>> {
    let modes = u.dim();
    if input.modes() != modes || !modes.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "input pattern spans {} modes, transfer matrix has {modes}",
            input.modes()
        )));
    }
    let n = input.total();
    check_pattern_cap(n, modes / 2, &options.limits)?;
    let outs: Vec<OccupationPattern> = patterns(modes, n).collect();
    let amp = |p: &OccupationPattern| amplitude_general(u, input, p, &options.limits);
    let amps: Vec<Cx<T>> = if options.threads <= 1 {
        outs.iter().map(amp).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.threads)
            .build()
            .map_err(|e| Error::validation(format!("thread pool: {e}")))?;
        pool.install(|| outs.par_iter().map(amp).collect::<Result<_>>())?
    };
    Ok(AmplitudeDistribution {
        total_photons: n,
        modes,
        entries: outs.into_iter().zip(amps).collect(),
    })
}

/// Distribution for `n` photons in one port, from the multinomial formula.
pub fn single_port_distribution<T: Real>(
    alphas: &[Cx<T>],
    n: u32,
    limits: &Limits,
) -> Result<AmplitudeDistribution<T>> {
    let modes = alphas.len();
    check_pattern_cap(n, modes.max(2) / 2, limits)?;
    let entries = patterns(modes, n)
        .map(|p| amplitude_single_port(alphas, &p, n).map(|a| (p, a)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AmplitudeDistribution {
        total_photons: n,
        modes,
        entries,
    })
}

/// Probability that each listed `(detector, count)` constraint holds,
/// summed over the complete distribution. Detectors are 0-based.
pub fn marginal<T: Real>(
    dist: &AmplitudeDistribution<T>,
    constraints: &[(usize, u32)],
) -> Result<T> {
    if let Some(&(d, _)) = constraints.iter().find(|(d, _)| *d >= dist.modes) {
        return Err(Error::domain(format!(
            "detector {d} outside 0..{}",
            dist.modes
        )));
    }
    Ok(dist
        .entries
        .iter()
        .filter(|(p, _)| constraints.iter().all(|&(d, k)| p.counts()[d] == k))
        .map(|(_, a)| a.norm_sqr())
        .fold(T::zero(), |acc, x| acc + x))
}

/// Photon-number distribution of one detector, indices `0..=N`.
pub fn detector_distribution<T: Real>(
    dist: &AmplitudeDistribution<T>,
    detector: usize,
) -> Result<Vec<T>> {
    if detector >= dist.modes {
        return Err(Error::domain(format!(
            "detector {detector} outside 0..{}",
            dist.modes
        )));
    }
    let mut out = vec![T::zero(); dist.total_photons as usize + 1];
    for (p, a) in &dist.entries {
        out[p.counts()[detector] as usize] += a.norm_sqr();
    }
    Ok(out)
}

/// Mean photon number at each detector.
pub fn mean_photons<T: Real>(dist: &AmplitudeDistribution<T>) -> Vec<T> {
    let mut out = vec![T::zero(); dist.modes];
    for (p, a) in &dist.entries {
        let w = a.norm_sqr();
        for (o, &k) in out.iter_mut().zip(p.counts()) {
            *o += w * T::from_u32(k).unwrap();
        }
    }
    out
}
