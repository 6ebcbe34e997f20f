//! Schrödinger-picture reference engine.
//!
//! The state is kept as an explicit map from occupation patterns to
//! amplitudes and pushed through the lattice one splitter and one phase at a
//! time. Its cost grows with the Hilbert-space dimension, which is the point:
//! it shares no code with the transfer-matrix route beyond the lattice
//! geometry, so agreement between the two is a real check.
//!
//! Following every photon's individual left/right choices instead would mean
//! `2^{L(N+M)}` branches; [`path_count`] gives that number exactly.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::{check_pattern_cap, dual_fock_input};
use crate::lattice::{active_mode_span, splitter_modes, BeamSplitterSpec, LatticeConfig};
use crate::limits::Limits;
use crate::pattern::OccupationPattern;
use crate::scalar::{cis, Cx, Real};

/// Creation-operator map of a two-mode element; column `c` holds the images
/// of `a†_c` on the two modes, as for transfer blocks.
pub type TwoModeMap<T> = [[Cx<T>; 2]; 2];

#[derive(Debug, Clone, PartialEq)]
pub struct FockStateVector<T> {
    modes: usize,
    amplitudes: BTreeMap<OccupationPattern, Cx<T>>,
}

impl<T: Real> FockStateVector<T> {
    pub fn vacuum(modes: usize) -> Self {
        Self::basis(OccupationPattern::vacuum(modes))
    }

    pub fn basis(pattern: OccupationPattern) -> Self {
        let modes = pattern.modes();
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(pattern, Cx::one());
        FockStateVector { modes, amplitudes }
    }

    /// Arbitrary superposition. Patterns must all span `modes` modes.
    pub fn from_terms(
        modes: usize,
        terms: impl IntoIterator<Item = (OccupationPattern, Cx<T>)>,
    ) -> Result<Self> {
        let mut amplitudes = BTreeMap::new();
        for (p, a) in terms {
            if p.modes() != modes {
                return Err(Error::domain(format!(
                    "pattern {p} does not span {modes} modes"
                )));
            }
            *amplitudes.entry(p).or_insert_with(Cx::zero) += a;
        }
        Ok(FockStateVector { modes, amplitudes })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitude(&self, pattern: &OccupationPattern) -> Cx<T> {
        self.amplitudes
            .get(pattern)
            .copied()
            .unwrap_or_else(Cx::zero)
    }

    pub fn probability(&self, pattern: &OccupationPattern) -> T {
        self.amplitude(pattern).norm_sqr()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OccupationPattern, Cx<T>)> {
        self.amplitudes.iter().map(|(p, a)| (p, *a))
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨n̂_ℓ⟩` for every mode.
    pub fn mean_photons(&self) -> Vec<T> {
        let mut out = vec![T::zero(); self.modes];
        for (p, a) in &self.amplitudes {
            let w = a.norm_sqr();
            for (o, &k) in out.iter_mut().zip(p.counts()) {
                *o += w * T::from_u32(k).unwrap();
            }
        }
        out
    }
}

fn binomial<T: Real>(n: u32, k: u32) -> T {
    (0..k).fold(T::one(), |acc, i| {
        acc * T::from_u32(n - i).unwrap() / T::from_u32(i + 1).unwrap()
    })
}

fn sqrt_factorial_ratio<T: Real>(num: [u32; 2], den: [u32; 2]) -> T {
    // √(num₀! num₁! / (den₀! den₁!)), both sides sum to the same total.
    let f = |n: u32| (2..=n).fold(T::one(), |a, k| a * T::from_u32(k).unwrap());
    (f(num[0]) / f(den[0]) * f(num[1]) / f(den[1])).sqrt()
}

/// Applies a general two-mode linear map to modes `a`, `b`.
///
/// `|p, q⟩ = (a†_a)^p (a†_b)^q |0⟩ / √(p! q!)` is rewritten by substituting the
/// images of both creation operators and expanding binomially.
pub fn apply_two_mode<T: Real>(
    state: &FockStateVector<T>,
    a: usize,
    b: usize,
    map: &TwoModeMap<T>,
) -> FockStateVector<T> {
    assert!(
        a != b && a < state.modes && b < state.modes,
        "invalid mode pair ({a},{b})"
    );
    let (c_aa, c_ba) = (map[0][0], map[1][0]);
    let (c_ab, c_bb) = (map[0][1], map[1][1]);
    let mut out: BTreeMap<OccupationPattern, Cx<T>> = BTreeMap::new();
    for (pattern, amp) in &state.amplitudes {
        let p = pattern.counts()[a];
        let q = pattern.counts()[b];
        for j in 0..=p {
            let left = c_aa.powu(j) * c_ba.powu(p - j) * binomial::<T>(p, j);
            for k in 0..=q {
                let right = c_ab.powu(k) * c_bb.powu(q - k) * binomial::<T>(q, k);
                let na = j + k;
                let nb = p + q - na;
                let coeff = left * right * sqrt_factorial_ratio::<T>([na, nb], [p, q]);
                if coeff.is_zero() {
                    continue;
                }
                let mut next = pattern.clone();
                next.counts_mut()[a] = na;
                next.counts_mut()[b] = nb;
                *out.entry(next).or_insert_with(Cx::zero) += *amp * coeff;
            }
        }
    }
    FockStateVector {
        modes: state.modes,
        amplitudes: out,
    }
}

/// Splitter on modes `a`, `b`: `a†_a ↦ i r a†_a + t a†_b`, `a†_b ↦ t a†_a + i r a†_b`.
pub fn apply_bs<T: Real>(
    state: &FockStateVector<T>,
    a: usize,
    b: usize,
    spec: &BeamSplitterSpec<T>,
) -> FockStateVector<T> {
    let ir = Cx::new(T::zero(), spec.r());
    let t = Cx::new(spec.t(), T::zero());
    apply_two_mode(state, a, b, &[[ir, t], [t, ir]])
}

/// `exp(iφ n̂)` on one mode.
pub fn apply_phase<T: Real>(state: &mut FockStateVector<T>, mode: usize, phi: T) {
    if phi.is_zero() {
        return;
    }
    for (p, a) in state.amplitudes.iter_mut() {
        let n = p.counts()[mode];
        if n > 0 {
            *a *= cis(phi * T::from_u32(n).unwrap());
        }
    }
}

/// Runs `state` through every level of the lattice. `observe` is called
/// after each splitter layer and each phase layer.
pub fn evolve_state_observed<T: Real>(
    config: &LatticeConfig<T>,
    mut state: FockStateVector<T>,
    mut observe: impl FnMut(&FockStateVector<T>),
) -> Result<FockStateVector<T>> {
    let depth = config.depth();
    if state.modes != config.modes() {
        return Err(Error::domain(format!(
            "state spans {} modes, lattice has {}",
            state.modes,
            config.modes()
        )));
    }
    for level in 1..=depth {
        for (k, spec) in config.level_splitters(level)?.iter().enumerate() {
            let (a, b) = splitter_modes(depth, level, k + 1);
            state = apply_bs(&state, a, b, spec);
        }
        observe(&state);
        let span = active_mode_span(depth, level)?;
        let phases = config.level_phases(level)?;
        if !phases.is_empty() {
            for (phi, mode) in phases.iter().zip(span.indices()) {
                apply_phase(&mut state, mode, *phi);
            }
            observe(&state);
        }
    }
    Ok(state)
}

pub fn evolve_state<T: Real>(
    config: &LatticeConfig<T>,
    state: FockStateVector<T>,
) -> Result<FockStateVector<T>> {
    evolve_state_observed(config, state, |_| {})
}

/// `|N⟩|M⟩` on the input ports, evolved to the detectors.
pub fn evolve<T: Real>(
    config: &LatticeConfig<T>,
    n: u32,
    m: u32,
    limits: &Limits,
) -> Result<FockStateVector<T>> {
    check_pattern_cap(n + m, config.depth(), limits)?;
    evolve_state(
        config,
        FockStateVector::basis(dual_fock_input(config.depth(), n, m)),
    )
}

/// Number of single-photon left/right histories, `2^{L(N+M)}`.
pub fn path_count(n: u64, m: u64, depth: u64) -> BigUint {
    BigUint::one() << (depth * (n + m))
}

/// Fock expansion of `S(ξ)|0⟩` up to `max_photons`, as `(photons, amplitude)`:
/// `c_{2n} = (−e^{iθ} tanh s)ⁿ √((2n)!) / (2ⁿ n! √cosh s)` with `ξ = s e^{iθ}`.
pub fn squeezed_vacuum_terms<T: Real>(xi: Cx<T>, max_photons: u32) -> Vec<(u32, Cx<T>)> {
    let s = xi.norm();
    let step = -cis(xi.arg()) * s.tanh();
    let mut coeff = Cx::new(T::one() / s.cosh().sqrt(), T::zero());
    let mut out = vec![(0, coeff)];
    let mut n = 1u32;
    while 2 * n <= max_photons {
        let k = T::from_u32(2 * n).unwrap();
        coeff = coeff * step * ((k - T::one()) / k).sqrt();
        out.push((2 * n, coeff));
        n += 1;
    }
    out
}
