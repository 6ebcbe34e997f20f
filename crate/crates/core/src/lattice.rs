//! Geometry of the triangular beam-splitter lattice and its resource counts.
//!
//! A lattice of depth `L` has `L` levels. Level `ℓ` holds `ℓ` beam splitters
//! and, for `ℓ < L`, `2ℓ` phase shifters acting on its outputs. All levels
//! live in one fixed register of `2L` modes: level `ℓ` uses the centred
//! block of `2ℓ` modes, and its `k`-th splitter couples the `k`-th adjacent
//! pair of that block. The two input ports are the central pair.
//!
//! Levels and node indices are 1-based, as in the lattice diagrams. Mode
//! indices handed to matrix code are 0-based.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Real reflection/transmission pair of a lossless beam splitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterSpec<T> {
    r: T,
    t: T,
}

impl<T: Real> BeamSplitterSpec<T> {
    pub fn new(r: T, t: T) -> Result<Self> {
        let in_unit = |x: T| x >= -T::norm_tolerance() && x <= T::one() + T::norm_tolerance();
        if !r.is_finite() || !t.is_finite() || !in_unit(r) || !in_unit(t) {
            return Err(Error::validation(format!(
                "beam splitter coefficients must lie in [0, 1], got r={r}, t={t}"
            )));
        }
        let defect = (r * r + t * t - T::one()).abs();
        if defect > T::norm_tolerance() {
            return Err(Error::validation(format!(
                "beam splitter not normalized: r²+t²-1 = {defect:e} (r={r}, t={t})"
            )));
        }
        Ok(BeamSplitterSpec { r, t })
    }

    /// `r = sin θ`, `t = cos θ`. The angle must keep both coefficients
    /// non-negative, i.e. `θ ∈ [0, π/2]`.
    pub fn from_angle(theta: T) -> Result<Self> {
        Self::new(theta.sin(), theta.cos())
    }

    /// The 50-50 splitter, `r = t = 1/√2`.
    pub fn balanced() -> Self {
        BeamSplitterSpec {
            r: T::FRAC_1_SQRT_2(),
            t: T::FRAC_1_SQRT_2(),
        }
    }

    #[inline]
    pub fn r(&self) -> T {
        self.r
    }

    #[inline]
    pub fn t(&self) -> T {
        self.t
    }

    pub fn cast<U: Real>(&self) -> BeamSplitterSpec<U> {
        BeamSplitterSpec {
            r: U::from(self.r).unwrap(),
            t: U::from(self.t).unwrap(),
        }
    }
}

/// Optional physical scale of the device, SI units.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Physical depth of one level, metres.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    /// Photon angular frequency, rad/s.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
}

/// Validated, immutable description of a depth-`L` lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeConfig<T> {
    depth: usize,
    splitters: Vec<Vec<BeamSplitterSpec<T>>>,
    phases: Vec<Vec<T>>,
    physical: Option<PhysicalConstants>,
}

impl<T: Real> LatticeConfig<T> {
    /// `splitters[ℓ-1]` must hold `ℓ` entries for `ℓ = 1..=L`;
    /// `phases[ℓ-1]` must hold `2ℓ` entries for `ℓ = 1..L`.
    pub fn new(
        splitters: Vec<Vec<BeamSplitterSpec<T>>>,
        phases: Vec<Vec<T>>,
        physical: Option<PhysicalConstants>,
    ) -> Result<Self> {
        let depth = splitters.len();
        if depth == 0 {
            return Err(Error::domain("lattice depth must be at least 1"));
        }
        for (i, level) in splitters.iter().enumerate() {
            if level.len() != i + 1 {
                return Err(Error::validation(format!(
                    "level {} must have {} beam splitters, got {}",
                    i + 1,
                    i + 1,
                    level.len()
                )));
            }
        }
        if phases.len() != depth - 1 {
            return Err(Error::validation(format!(
                "a depth-{depth} lattice has {} phase layers, got {}",
                depth - 1,
                phases.len()
            )));
        }
        for (i, layer) in phases.iter().enumerate() {
            if layer.len() != 2 * (i + 1) {
                return Err(Error::validation(format!(
                    "phase layer {} must have {} entries, got {}",
                    i + 1,
                    2 * (i + 1),
                    layer.len()
                )));
            }
            if let Some(bad) = layer.iter().find(|p| !p.is_finite()) {
                return Err(Error::validation(format!(
                    "non-finite phase {bad} at level {}",
                    i + 1
                )));
            }
        }
        if let Some(p) = physical {
            for (name, v) in [("d", p.d), ("omega", p.omega)] {
                if let Some(v) = v {
                    if !(v.is_finite() && v > 0.0) {
                        return Err(Error::validation(format!(
                            "physical.{name} must be positive, got {v}"
                        )));
                    }
                }
            }
        }
        Ok(LatticeConfig {
            depth,
            splitters,
            phases,
            physical,
        })
    }

    #[inline]
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Size of the mode register, `2L`.
    #[inline]
    pub fn modes(&self) -> usize {
        2 * self.depth
    }

    /// Splitter `k` of level `ℓ`, both 1-based.
    pub fn splitter(&self, level: usize, k: usize) -> Result<BeamSplitterSpec<T>> {
        self.check_level(level)?;
        if k == 0 || k > level {
            return Err(Error::domain(format!(
                "level {level} has no beam splitter {k}"
            )));
        }
        Ok(self.splitters[level - 1][k - 1])
    }

    pub fn level_splitters(&self, level: usize) -> Result<&[BeamSplitterSpec<T>]> {
        self.check_level(level)?;
        Ok(&self.splitters[level - 1])
    }

    /// Phases applied after level `ℓ`'s splitters, in ascending mode order.
    /// Empty for the final level.
    pub fn level_phases(&self, level: usize) -> Result<&[T]> {
        self.check_level(level)?;
        Ok(self.phases.get(level - 1).map_or(&[][..], Vec::as_slice))
    }

    /// Phase shifter `j` (1-based, `1..=2ℓ`) of level `ℓ < L`.
    pub fn phase(&self, level: usize, j: usize) -> Result<T> {
        let layer = self.level_phases(level)?;
        layer
            .get(j.wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::domain(format!("level {level} has no phase shifter {j}")))
    }

    pub fn physical(&self) -> Option<PhysicalConstants> {
        self.physical
    }

    pub fn with_physical(mut self, physical: PhysicalConstants) -> Self {
        self.physical = Some(physical);
        self
    }

    /// Replaces splitter `(ℓ, k)`.
    pub fn set_splitter(
        &mut self,
        level: usize,
        k: usize,
        spec: BeamSplitterSpec<T>,
    ) -> Result<()> {
        self.splitter(level, k)?;
        self.splitters[level - 1][k - 1] = spec;
        Ok(())
    }

    /// Replaces phase `(ℓ, j)`.
    pub fn set_phase(&mut self, level: usize, j: usize, phase: T) -> Result<()> {
        self.phase(level, j)?;
        if !phase.is_finite() {
            return Err(Error::validation(format!("non-finite phase {phase}")));
        }
        self.phases[level - 1][j - 1] = phase;
        Ok(())
    }

    pub fn splitters(&self) -> impl Iterator<Item = (usize, usize, BeamSplitterSpec<T>)> + '_ {
        self.splitters
            .iter()
            .enumerate()
            .flat_map(|(l, lvl)| lvl.iter().enumerate().map(move |(k, s)| (l + 1, k + 1, *s)))
    }

    pub fn phases(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.phases
            .iter()
            .enumerate()
            .flat_map(|(l, lvl)| lvl.iter().enumerate().map(move |(j, p)| (l + 1, j + 1, *p)))
    }

    pub fn cast<U: Real>(&self) -> LatticeConfig<U> {
        LatticeConfig {
            depth: self.depth,
            splitters: self
                .splitters
                .iter()
                .map(|l| l.iter().map(BeamSplitterSpec::cast).collect())
                .collect(),
            phases: self
                .phases
                .iter()
                .map(|l| l.iter().map(|&p| U::from(p).unwrap()).collect())
                .collect(),
            physical: self.physical,
        }
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level == 0 || level > self.depth {
            return Err(Error::domain(format!(
                "level {level} outside 1..={} for this lattice",
                self.depth
            )));
        }
        Ok(())
    }
}

/// Every splitter set to `(r, t)`, every phase shifter to `phase`.
pub fn uniform_config<T: Real>(depth: usize, r: T, t: T, phase: T) -> Result<LatticeConfig<T>> {
    if depth == 0 {
        return Err(Error::domain("lattice depth must be at least 1"));
    }
    let spec = BeamSplitterSpec::new(r, t)?;
    let splitters = (1..=depth).map(|l| vec![spec; l]).collect();
    let phases = (1..depth).map(|l| vec![phase; 2 * l]).collect();
    LatticeConfig::new(splitters, phases, None)
}

/// Uniform 50-50 lattice with all phases off.
pub fn balanced_config<T: Real>(depth: usize) -> Result<LatticeConfig<T>> {
    let h = T::FRAC_1_SQRT_2();
    uniform_config(depth, h, h, T::zero())
}

/// Inclusive 1-based range of the modes active at one level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeSpan {
    pub lo: usize,
    pub hi: usize,
}

impl ModeSpan {
    pub fn width(&self) -> usize {
        self.hi + 1 - self.lo
    }

    /// The same span as 0-based register indices.
    pub fn indices(&self) -> Range<usize> {
        self.lo - 1..self.hi
    }

    pub fn contains(&self, other: &ModeSpan) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Modes `L−ℓ+1 ..= L+ℓ` of the register are active at level `ℓ`.
pub fn active_mode_span(depth: usize, level: usize) -> Result<ModeSpan> {
    if level == 0 || level > depth {
        return Err(Error::domain(format!("level {level} outside 1..={depth}")));
    }
    Ok(ModeSpan {
        lo: depth - level + 1,
        hi: depth + level,
    })
}

/// 0-based register modes coupled by splitter `k` of level `ℓ`.
///
/// In 1-based terms this is the pair `(L−ℓ+2k−1, L−ℓ+2k)`.
pub fn splitter_modes(depth: usize, level: usize, k: usize) -> (usize, usize) {
    debug_assert!(1 <= level && level <= depth && 1 <= k && k <= level);
    let first = depth - level + 2 * k - 2;
    (first, first + 1)
}

/// 0-based register modes of the two input ports `|N⟩|M⟩`.
pub fn input_ports(depth: usize) -> (usize, usize) {
    (depth - 1, depth)
}

/// Component counts and physical cost of one run of the lattice.
///
/// Physical fields are `None` when the constants they depend on are absent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResourceReport {
    pub depth: usize,
    pub photons: u64,
    pub num_bs: u64,
    pub num_ps: u64,
    pub num_detectors: u64,
    pub num_input_modes: u64,
    pub num_internal_modes: u64,
    /// `(N+M)ħω`, joules.
    pub energy_per_run: Option<f64>,
    /// `√2·L·d/c`, seconds.
    pub run_time: Option<f64>,
    /// `2L²d²`, square metres.
    pub area: Option<f64>,
}

pub fn resource_report<T: Real>(config: &LatticeConfig<T>, n: u64, m: u64) -> ResourceReport {
    let l = config.depth() as u64;
    let photons = n + m;
    let physical = config.physical().unwrap_or_default();
    let lf = l as f64;
    ResourceReport {
        depth: config.depth(),
        photons,
        num_bs: l * (l + 1) / 2,
        num_ps: l * (l - 1),
        num_detectors: 2 * l,
        num_input_modes: 2 * l,
        num_internal_modes: l * (l - 1),
        energy_per_run: physical.omega.map(|w| photons as f64 * HBAR * w),
        run_time: physical
            .d
            .map(|d| std::f64::consts::SQRT_2 * lf * d / SPEED_OF_LIGHT),
        area: physical.d.map(|d| 2.0 * lf * lf * d * d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_counts() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = uniform_config(3, h, h, 0.0).unwrap();
        assert_eq!(c.splitters().count(), 6);
        assert_eq!(c.phases().count(), 6);

        let c = uniform_config(1, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(c.splitters().count(), 1);
        assert_eq!(c.phases().count(), 0);
        assert_eq!(c.splitter(1, 1).unwrap().t(), 1.0);

        assert!(uniform_config(3, 0.6, 0.8, 0.0).is_ok());
    }

    #[test]
    fn uniform_rejects_bad_input() {
        assert!(matches!(
            uniform_config(3, 0.6, 0.7, 0.0),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            uniform_config(0, 0.6, 0.8, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(BeamSplitterSpec::new(-0.6, 0.8).is_err());
        assert!(BeamSplitterSpec::new(f64::NAN, 0.8).is_err());
    }

    #[test]
    fn node_access_bounds() {
        let c = balanced_config::<f64>(3).unwrap();
        assert!(c.splitter(0, 1).is_err());
        assert!(c.splitter(2, 3).is_err());
        assert!(c.phase(3, 1).is_err());
        assert!(c.phase(2, 5).is_err());
        assert!(c.phase(2, 0).is_err());
        assert!(c.phase(2, 4).is_ok());
        assert!(c.level_phases(3).unwrap().is_empty());
    }

    #[test]
    fn mode_spans() {
        assert_eq!(active_mode_span(3, 1).unwrap(), ModeSpan { lo: 3, hi: 4 });
        assert_eq!(active_mode_span(3, 3).unwrap(), ModeSpan { lo: 1, hi: 6 });
        assert_eq!(active_mode_span(5, 2).unwrap(), ModeSpan { lo: 4, hi: 7 });
        assert!(active_mode_span(3, 0).is_err());
        assert!(active_mode_span(3, 4).is_err());
    }

    #[test]
    fn spans_nest_and_widen() {
        for depth in 1..30 {
            for level in 1..=depth {
                let s = active_mode_span(depth, level).unwrap();
                assert_eq!(s.width(), 2 * level);
                if level < depth {
                    assert!(active_mode_span(depth, level + 1).unwrap().contains(&s));
                }
            }
        }
    }

    #[test]
    fn splitter_pairs_tile_the_span() {
        for depth in 1..12 {
            for level in 1..=depth {
                let span = active_mode_span(depth, level).unwrap().indices();
                let covered: Vec<usize> = (1..=level)
                    .flat_map(|k| {
                        let (a, b) = splitter_modes(depth, level, k);
                        [a, b]
                    })
                    .collect();
                assert_eq!(covered, span.collect::<Vec<_>>());
            }
        }
        assert_eq!(input_ports(3), (2, 3));
    }

    #[test]
    fn resource_formulas() {
        let c = balanced_config::<f64>(3).unwrap();
        let r = resource_report(&c, 2, 0);
        assert_eq!((r.num_bs, r.num_ps, r.num_detectors), (6, 6, 6));
        assert!(r.energy_per_run.is_none() && r.run_time.is_none() && r.area.is_none());

        let r = resource_report(&balanced_config::<f64>(1).unwrap(), 1, 0);
        assert_eq!((r.num_bs, r.num_ps, r.num_detectors), (1, 0, 2));

        for l in 1..=50u64 {
            let r = resource_report(&balanced_config::<f64>(l as usize).unwrap(), 0, 0);
            assert_eq!(
                r.num_bs + r.num_ps + r.num_detectors,
                l * (l + 1) / 2 + l * (l - 1) + 2 * l
            );
            assert_eq!(r.num_input_modes, 2 * l);
            assert_eq!(r.num_internal_modes, l * (l - 1));
        }
    }

    #[test]
    fn physical_costs() {
        let omega = 2.0 * std::f64::consts::PI * 3.0e14;
        let c = balanced_config::<f64>(69)
            .unwrap()
            .with_physical(PhysicalConstants {
                d: Some(1e-3),
                omega: Some(omega),
            });
        let r = resource_report(&c, 137, 0);
        assert_eq!(r.energy_per_run.unwrap(), 137.0 * HBAR * omega);
        let t = r.run_time.unwrap();
        assert!((t - std::f64::consts::SQRT_2 * 69.0 * 1e-3 / SPEED_OF_LIGHT).abs() < 1e-24);
        assert!((r.area.unwrap() - 2.0 * 69.0 * 69.0 * 1e-6).abs() < 1e-15);
    }
}
