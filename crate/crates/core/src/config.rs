//! JSON configuration documents for lattices.
//!
//! ```json
//! {
//!   "depth": 3,
//!   "default_bs": {"r": 0.7071067811865476, "t": 0.7071067811865476},
//!   "default_phase": 0.0,
//!   "overrides": [
//!     {"level": 2, "index": 1, "theta": 0.3},
//!     {"level": 1, "index": 2, "phase": 1.5707963267948966}
//!   ],
//!   "physical": {"d": 0.001, "omega": 2.35e15}
//! }
//! ```
//!
//! A splitter is given either as `{r, t}` or as a mixing angle `{theta}` with
//! `r = sin θ`, `t = cos θ`. Nodes without an override take the defaults;
//! `default_bs` itself defaults to 50-50 and `default_phase` to zero.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{BeamSplitterSpec, LatticeConfig, PhysicalConstants};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SplitterEntry {
    Coefficients { r: f64, t: f64 },
    Angle { theta: f64 },
}

impl SplitterEntry {
    fn to_spec<T: Real>(self) -> Result<BeamSplitterSpec<T>> {
        match self {
            SplitterEntry::Coefficients { r, t } => BeamSplitterSpec::new(T::lit(r), T::lit(t)),
            SplitterEntry::Angle { theta } => BeamSplitterSpec::from_angle(T::lit(theta)),
        }
    }
}

impl Default for SplitterEntry {
    fn default() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        SplitterEntry::Coefficients { r: h, t: h }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Override {
    Splitter {
        level: usize,
        index: usize,
        r: f64,
        t: f64,
    },
    SplitterAngle {
        level: usize,
        index: usize,
        theta: f64,
    },
    Phase {
        level: usize,
        index: usize,
        phase: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub depth: usize,
    #[serde(default)]
    pub default_bs: SplitterEntry,
    #[serde(default)]
    pub default_phase: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub overrides: Vec<Override>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub physical: Option<PhysicalConstants>,
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Validates and materializes the lattice.
    pub fn build<T: Real>(&self) -> Result<LatticeConfig<T>> {
        if self.depth == 0 {
            return Err(Error::domain("lattice depth must be at least 1"));
        }
        let spec = self.default_bs.to_spec::<T>()?;
        let phase = T::lit(self.default_phase);
        let splitters = (1..=self.depth).map(|l| vec![spec; l]).collect();
        let phases = (1..self.depth).map(|l| vec![phase; 2 * l]).collect();
        let mut config = LatticeConfig::new(splitters, phases, self.physical)?;
        for o in &self.overrides {
            match *o {
                Override::Splitter { level, index, r, t } => {
                    let spec = SplitterEntry::Coefficients { r, t }.to_spec()?;
                    config.set_splitter(level, index, spec)?;
                }
                Override::SplitterAngle {
                    level,
                    index,
                    theta,
                } => {
                    config.set_splitter(level, index, SplitterEntry::Angle { theta }.to_spec()?)?;
                }
                Override::Phase {
                    level,
                    index,
                    phase,
                } => {
                    config.set_phase(level, index, T::lit(phase))?;
                }
            }
        }
        Ok(config)
    }

    /// Document describing `config`: defaults from the first nodes, one
    /// override per node that differs from them.
    pub fn from_config<T: Real>(config: &LatticeConfig<T>) -> Self {
        let to64 = |x: T| x.to_f64().unwrap();
        let first = config.splitter(1, 1).expect("depth >= 1");
        let default_phase = config.phase(1, 1).map(to64).unwrap_or(0.0);
        let mut overrides = Vec::new();
        for (level, index, s) in config.splitters() {
            if s != first {
                overrides.push(Override::Splitter {
                    level,
                    index,
                    r: to64(s.r()),
                    t: to64(s.t()),
                });
            }
        }
        for (level, index, p) in config.phases() {
            if to64(p) != default_phase {
                overrides.push(Override::Phase {
                    level,
                    index,
                    phase: to64(p),
                });
            }
        }
        ConfigFile {
            depth: config.depth(),
            default_bs: SplitterEntry::Coefficients {
                r: to64(first.r()),
                t: to64(first.t()),
            },
            default_phase,
            overrides,
            physical: config.physical(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::uniform_config;

    #[test]
    fn minimal_document_defaults_to_balanced() {
        let c: LatticeConfig<f64> = ConfigFile::from_json(r#"{"depth": 3}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(c.depth(), 3);
        assert!((c.splitter(2, 2).unwrap().r() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-16);
        assert_eq!(c.phase(2, 4).unwrap(), 0.0);
        assert!(c.physical().is_none());
    }

    #[test]
    fn overrides_and_angles() {
        let doc = r#"{
            "depth": 3,
            "default_bs": {"theta": 0.5},
            "default_phase": 0.25,
            "overrides": [
                {"level": 2, "index": 1, "r": 0.6, "t": 0.8},
                {"level": 3, "index": 3, "theta": 0.0},
                {"level": 1, "index": 2, "phase": -1.0}
            ],
            "physical": {"d": 0.01}
        }"#;
        let c: LatticeConfig<f64> = ConfigFile::from_json(doc).unwrap().build().unwrap();
        assert_eq!(c.splitter(1, 1).unwrap().r(), 0.5f64.sin());
        assert_eq!(c.splitter(2, 1).unwrap().t(), 0.8);
        assert_eq!(c.splitter(3, 3).unwrap().t(), 1.0);
        assert_eq!(c.phase(1, 2).unwrap(), -1.0);
        assert_eq!(c.phase(2, 3).unwrap(), 0.25);
        assert_eq!(c.physical().unwrap().d, Some(0.01));
        assert_eq!(c.physical().unwrap().omega, None);
    }

    #[test]
    fn invalid_documents() {
        let bad = [
            r#"{"depth": 0}"#,
            r#"{"depth": 2, "default_bs": {"r": 0.5, "t": 0.5}}"#,
            r#"{"depth": 2, "overrides": [{"level": 3, "index": 1, "phase": 0.1}]}"#,
            r#"{"depth": 2, "overrides": [{"level": 2, "index": 1, "phase": 0.1}]}"#,
            r#"{"depth": 2, "overrides": [{"level": 1, "index": 2, "r": 0.6, "t": 0.8}]}"#,
            r#"{"depth": 2, "physical": {"d": -1.0}}"#,
        ];
        for doc in bad {
            let res = ConfigFile::from_json(doc).and_then(|f| f.build::<f64>());
            assert!(res.is_err(), "{doc} should be rejected");
        }
        assert!(matches!(ConfigFile::from_json("{"), Err(Error::Parse(_))));
        assert!(ConfigFile::from_json(r#"{"depth": 2, "extra": 1}"#).is_err());
    }

    #[test]
    fn round_trip_uniform() {
        let c = uniform_config(4, 0.6, 0.8, 0.3).unwrap();
        let text = ConfigFile::from_config(&c).to_json();
        let back: LatticeConfig<f64> = ConfigFile::from_json(&text).unwrap().build().unwrap();
        assert_eq!(back, c);
    }
}
