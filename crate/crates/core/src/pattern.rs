//! Occupation patterns and their stars-and-bars enumeration.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Photon counts per mode (0-based mode index).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OccupationPattern(Vec<u32>);

impl OccupationPattern {
    pub fn new(counts: Vec<u32>) -> Self {
        OccupationPattern(counts)
    }

    pub fn vacuum(modes: usize) -> Self {
        OccupationPattern(vec![0; modes])
    }

    /// `n` photons in one mode, vacuum elsewhere.
    pub fn single_mode(modes: usize, mode: usize, n: u32) -> Self {
        let mut v = vec![0; modes];
        v[mode] = n;
        OccupationPattern(v)
    }

    /// Parses `"1,1,0,0"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(OccupationPattern(Vec::new()));
        }
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::validation(format!("bad photon count `{s}` in pattern")))
            })
            .collect::<Result<Vec<_>>>()
            .map(OccupationPattern)
    }

    #[inline]
    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn counts_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    /// Mode indices with each mode repeated by its count, ascending.
    pub fn repeated_modes(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(m, &n)| std::iter::repeat_n(m, n as usize))
            .collect()
    }

    pub(crate) fn expect_total(&self, total: u32, what: &str) -> Result<()> {
        if self.total() != total {
            return Err(Error::domain(format!(
                "{what} pattern {self} carries {} photons, expected {total}",
                self.total()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for OccupationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl From<Vec<u32>> for OccupationPattern {
    fn from(v: Vec<u32>) -> Self {
        OccupationPattern(v)
    }
}

/// All patterns of `total` photons over `modes` modes, in ascending
/// lexicographic order: `(0,…,0,N)` first, `(N,0,…,0)` last.
pub fn patterns(modes: usize, total: u32) -> Patterns {
    Patterns::new(modes, total)
}

/// Iterator behind [`patterns`].
pub struct Patterns {
    current: Option<Vec<u32>>,
    total: u32,
}

impl Patterns {
    fn new(modes: usize, total: u32) -> Self {
        let current = if modes == 0 {
            (total == 0).then(Vec::new)
        } else {
            let mut v = vec![0; modes];
            v[modes - 1] = total;
            Some(v)
        };
        Patterns { current, total }
    }
}

impl Iterator for Patterns {
    type Item = OccupationPattern;

    fn next(&mut self) -> Option<OccupationPattern> {
        let out = self.current.take()?;
        let mut v = out.clone();
        let m = v.len();
        // Successor: find the rightmost position i < m−1 that can be incremented,
        // i.e. with photons remaining to its right.
        let mut suffix = v.get(m.wrapping_sub(1)).copied().unwrap_or(0);
        let mut i = m.saturating_sub(1);
        while i > 0 {
            i -= 1;
            if suffix > 0 {
                v[i] += 1;
                let prefix: u32 = v[..=i].iter().sum();
                for x in &mut v[i + 1..] {
                    *x = 0;
                }
                v[m - 1] = self.total - prefix;
                self.current = Some(v);
                break;
            }
            suffix += v[i];
        }
        Some(OccupationPattern(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_match_stars_and_bars() {
        for modes in 1..7usize {
            for total in 0..6u32 {
                let all: Vec<_> = patterns(modes, total).collect();
                assert_eq!(
                    all.len() as u64,
                    binom(total as u64 + modes as u64 - 1, total as u64)
                );
                assert!(all.iter().all(|p| p.total() == total && p.modes() == modes));
                assert!(all.windows(2).all(|w| w[0] < w[1]), "strictly ascending");
            }
        }
    }

    #[test]
    fn order_and_edges() {
        let all: Vec<String> = patterns(3, 2).map(|p| p.to_string()).collect();
        assert_eq!(all, ["0,0,2", "0,1,1", "0,2,0", "1,0,1", "1,1,0", "2,0,0"]);
        assert_eq!(patterns(0, 0).count(), 1);
        assert_eq!(patterns(0, 3).count(), 0);
        assert_eq!(
            patterns(4, 0).collect::<Vec<_>>(),
            vec![OccupationPattern::vacuum(4)]
        );
    }

    #[test]
    fn parse_and_repeat() {
        let p = OccupationPattern::parse("2, 0,1").unwrap();
        assert_eq!(p.counts(), &[2, 0, 1]);
        assert_eq!(p.repeated_modes(), vec![0, 0, 2]);
        assert!(OccupationPattern::parse("1,x").is_err());
        assert_eq!(OccupationPattern::parse("").unwrap().modes(), 0);
    }
}
