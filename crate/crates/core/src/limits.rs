//! Cost caps for the exponential computations.
//!
//! Defaults: Ryser permanents up to 30×30, Laplace permanents up to 12×12,
//! complete distributions up to 10⁶ patterns. The `PACHINKO_COST_CAP`
//! environment variable overrides them. It accepts either a bare integer
//! (the pattern cap) or a comma-separated list of `key=value` pairs with keys
//! `patterns`, `ryser` and `laplace`, e.g. `patterns=5000000,ryser=32`.

use crate::error::{Error, Result};

pub const COST_CAP_ENV: &str = "PACHINKO_COST_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_patterns: u128,
    pub max_ryser: usize,
    pub max_laplace: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_patterns: 1_000_000,
            max_ryser: 30,
            max_laplace: 12,
        }
    }
}

impl Limits {
    /// Defaults, overridden by `PACHINKO_COST_CAP` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(COST_CAP_ENV) {
            Ok(spec) => Self::parse(&spec),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(spec: &str) -> Result<Self> {
        let mut limits = Self::default();
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(limits);
        }
        if let Ok(n) = spec.parse::<u128>() {
            limits.max_patterns = n;
            return Ok(limits);
        }
        for item in spec.split(',') {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                Error::validation(format!("{COST_CAP_ENV}: malformed entry `{item}`"))
            })?;
            let bad = |_| Error::validation(format!("{COST_CAP_ENV}: bad value in `{item}`"));
            match key.trim() {
                "patterns" => limits.max_patterns = value.trim().parse().map_err(bad)?,
                "ryser" => limits.max_ryser = value.trim().parse().map_err(bad)?,
                "laplace" => limits.max_laplace = value.trim().parse().map_err(bad)?,
                other => {
                    return Err(Error::validation(format!(
                        "{COST_CAP_ENV}: unknown key `{other}`"
                    )))
                }
            }
        }
        Ok(limits)
    }
}
