//! Spin-½ fermions through the same spatial lattice.
//!
//! Each spin species propagates independently through the spatial transfer
//! matrix. A basis state is written with all spin-↑ creation operators
//! first, then all spin-↓ ones, each block in ascending mode order. The
//! amplitude between two basis states is then the product over species of
//! `det U[out, in]`, the rows being the occupied output modes and the
//! columns the occupied input modes of that species.
//!
//! Spin-entangled inputs are superpositions of such basis states
//! ([`fermion_superposition`]). In this ordering the spin singlet
//! `c†_{A↑}c†_{B↓} − c†_{A↓}c†_{B↑}` reads `|A↑,B↓⟩ + |B↑,A↓⟩`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kernels::determinant;
use crate::matrix::ComplexMatrix;
use crate::scalar::{Cx, Real};
use crate::transfer::TransferMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    fn symbol(self) -> &'static str {
        match self {
            Spin::Up => "u",
            Spin::Down => "d",
        }
    }
}

/// Occupation of each `(mode, spin)` orbital, each zero or one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FermionOccupation {
    up: Vec<bool>,
    down: Vec<bool>,
}

impl FermionOccupation {
    pub fn empty(modes: usize) -> Self {
        FermionOccupation {
            up: vec![false; modes],
            down: vec![false; modes],
        }
    }

    /// Builds from `(mode, spin)` pairs, rejecting doubly occupied orbitals.
    pub fn from_orbitals(modes: usize, orbitals: &[(usize, Spin)]) -> Result<Self> {
        let mut occ = Self::empty(modes);
        for &(mode, spin) in orbitals {
            if mode >= modes {
                return Err(Error::domain(format!("mode {mode} outside 0..{modes}")));
            }
            let slot = match spin {
                Spin::Up => &mut occ.up[mode],
                Spin::Down => &mut occ.down[mode],
            };
            if *slot {
                return Err(Error::domain(format!(
                    "Pauli exclusion: orbital ({mode},{}) occupied twice",
                    spin.symbol()
                )));
            }
            *slot = true;
        }
        Ok(occ)
    }

    /// Parses a comma-separated orbital list such as `"2u,3d"` (0-based
    /// modes; spin `u`/`up`/`d`/`down`).
    pub fn parse(modes: usize, text: &str) -> Result<Self> {
        let mut orbitals = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let split = item
                .find(|c: char| !c.is_ascii_digit())
                .ok_or_else(|| Error::validation(format!("orbital `{item}` lacks a spin")))?;
            let (mode, spin) = item.split_at(split);
            let mode: usize = mode
                .parse()
                .map_err(|_| Error::validation(format!("bad mode in orbital `{item}`")))?;
            let spin = match spin.trim_start_matches(':').to_ascii_lowercase().as_str() {
                "u" | "up" => Spin::Up,
                "d" | "down" | "dn" => Spin::Down,
                _ => return Err(Error::validation(format!("bad spin in orbital `{item}`"))),
            };
            orbitals.push((mode, spin));
        }
        Self::from_orbitals(modes, &orbitals)
    }

    pub fn modes(&self) -> usize {
        self.up.len()
    }

    pub fn occupied(&self, spin: Spin) -> Vec<usize> {
        let v = match spin {
            Spin::Up => &self.up,
            Spin::Down => &self.down,
        };
        v.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn count(&self, spin: Spin) -> usize {
        self.occupied(spin).len()
    }

    /// Particles in spatial mode `mode`, 0 to 2.
    pub fn mode_count(&self, mode: usize) -> usize {
        self.up[mode] as usize + self.down[mode] as usize
    }
}

impl fmt::Display for FermionOccupation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [Spin::Up, Spin::Down]
            .iter()
            .flat_map(|&s| {
                self.occupied(s)
                    .into_iter()
                    .map(move |m| format!("{m}{}", s.symbol()))
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

fn species_det<T: Real>(u: &TransferMatrix<T>, input: &[usize], output: &[usize]) -> Result<Cx<T>> {
    let sub = ComplexMatrix::from_fn(output.len(), input.len(), |i, j| u.get(output[i], input[j]));
    determinant(&sub)
}

/// `⟨output| W |input⟩` for spin-independent spatial transfer `u`.
/// Zero when the per-species particle numbers differ.
pub fn fermion_amplitude<T: Real>(
    u: &TransferMatrix<T>,
    input: &FermionOccupation,
    output: &FermionOccupation,
) -> Result<Cx<T>> {
    let dim = u.dim();
    if input.modes() != dim || output.modes() != dim {
        return Err(Error::domain(format!("occupations must span {dim} modes")));
    }
    let mut amp = Cx::new(T::one(), T::zero());
    for spin in [Spin::Up, Spin::Down] {
        let (i, o) = (input.occupied(spin), output.occupied(spin));
        if i.len() != o.len() {
            return Ok(Cx::zero());
        }
        amp *= species_det(u, &i, &o)?;
    }
    Ok(amp)
}

/// Ascending `k`-subsets of `0..n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// All basis states with `n_up` spin-↑ and `n_down` spin-↓ particles.
pub fn fermion_basis(modes: usize, n_up: usize, n_down: usize) -> Vec<FermionOccupation> {
    let ups = combinations(modes, n_up);
    let downs = combinations(modes, n_down);
    let mut out = Vec::with_capacity(ups.len() * downs.len());
    for u in &ups {
        for d in &downs {
            let mut occ = FermionOccupation::empty(modes);
            u.iter().for_each(|&m| occ.up[m] = true);
            d.iter().for_each(|&m| occ.down[m] = true);
            out.push(occ);
        }
    }
    out
}

/// Output amplitudes of an input superposition `Σ cₖ |inputₖ⟩`, over every
/// basis state with the inputs' species counts. The coefficients are used
/// as given; normalizing them is the caller's choice.
pub fn fermion_superposition<T: Real>(
    u: &TransferMatrix<T>,
    terms: &[(Cx<T>, FermionOccupation)],
) -> Result<Vec<(FermionOccupation, Cx<T>)>> {
    let Some((_, first)) = terms.first() else {
        return Ok(Vec::new());
    };
    let counts = (first.count(Spin::Up), first.count(Spin::Down));
    if terms
        .iter()
        .any(|(_, t)| (t.count(Spin::Up), t.count(Spin::Down)) != counts)
    {
        return Err(Error::domain(
            "superposed terms must share spin-resolved particle numbers",
        ));
    }
    fermion_basis(u.dim(), counts.0, counts.1)
        .into_iter()
        .map(|out| {
            let mut amp = Cx::zero();
            for (c, inp) in terms {
                amp += *c * fermion_amplitude(u, inp, &out)?;
            }
            Ok((out, amp))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::BeamSplitterSpec;
    use crate::scalar::cx;
    use crate::transfer::single_splitter;

    fn bs() -> TransferMatrix<f64> {
        single_splitter(&BeamSplitterSpec::balanced())
    }

    fn occ(text: &str) -> FermionOccupation {
        FermionOccupation::parse(2, text).unwrap()
    }

    #[test]
    fn same_spin_antibunching() {
        let u = bs();
        let input = occ("0u,1u");
        // Two same-spin particles can never share a mode; the only output is (1,1).
        let outs = fermion_superposition(&u, &[(cx(1.0, 0.0), input.clone())]).unwrap();
        assert_eq!(outs.len(), 1);
        let a = fermion_amplitude(&u, &input, &occ("0u,1u")).unwrap();
        assert!((a - cx(-1.0, 0.0)).norm() < 1e-15);
        assert!((a.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn opposite_spins_are_independent() {
        let u = bs();
        let a = fermion_amplitude(&u, &occ("0u,1d"), &occ("0u,1d")).unwrap();
        assert!((a - u.get(0, 0) * u.get(1, 1)).norm() < 1e-15);
        assert_eq!(
            fermion_amplitude(&u, &occ("0u,1d"), &occ("0u,1u")).unwrap(),
            cx(0.0, 0.0)
        );
    }

    #[test]
    fn singlet_bunches_triplet_splits() {
        let u = bs();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = [(cx(h, 0.0), occ("0u,1d")), (cx(h, 0.0), occ("1u,0d"))];
        let out = fermion_superposition(&u, &singlet).unwrap();
        let p = |text: &str| {
            out.iter()
                .find(|(o, _)| *o == occ(text))
                .unwrap()
                .1
                .norm_sqr()
        };
        assert!((p("0u,0d") - 0.5).abs() < 1e-15);
        assert!((p("1u,1d") - 0.5).abs() < 1e-15);
        assert!(p("0u,1d") < 1e-30 && p("1u,0d") < 1e-30);

        let triplet0 = [(cx(h, 0.0), occ("0u,1d")), (cx(-h, 0.0), occ("1u,0d"))];
        let out = fermion_superposition(&u, &triplet0).unwrap();
        let together: f64 = out
            .iter()
            .filter(|(o, _)| o.mode_count(0) == 2 || o.mode_count(1) == 2)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        assert!(together < 1e-30);
        let total: f64 = out.iter().map(|(_, a)| a.norm_sqr()).sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_and_parse_errors() {
        assert!(FermionOccupation::parse(2, "0u,0u").is_err());
        assert!(FermionOccupation::parse(2, "0u,0d").is_ok());
        assert!(FermionOccupation::parse(2, "2u").is_err());
        assert!(FermionOccupation::parse(2, "0x").is_err());
        assert!(FermionOccupation::parse(2, "0").is_err());
        assert_eq!(
            FermionOccupation::parse(3, "2:up, 0down")
                .unwrap()
                .to_string(),
            "2u,0d"
        );
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(fermion_basis(4, 2, 1).len(), 24);
    }
}
