//! Exact Hilbert-space dimensions and cost counts.
//!
//! All counts are exact big integers. The only floating value is the
//! Stirling estimate `2^{2N}/√(πN)` of the central binomial coefficient,
//! which is kept in log₁₀ form so that it never overflows.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::path_count;

/// Exact `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc·(n−i) is divisible by (i+1) since acc = C(n, i) after step i.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of ways to place `N` indistinguishable photons on `2L` detectors,
/// `C(N + 2L − 1, N)`.
pub fn dim_bosonic(n: u64, depth: u64) -> Result<BigUint> {
    if depth == 0 {
        return Err(Error::domain("lattice depth must be at least 1"));
    }
    Ok(binomial(n + 2 * depth - 1, n))
}

/// Single-species fermionic dimension `C(2L, N)`.
pub fn dim_fermionic(n: u64, depth: u64) -> Result<BigUint> {
    if n > 2 * depth {
        return Err(Error::domain(format!(
            "{n} identical fermions cannot occupy {} modes",
            2 * depth
        )));
    }
    Ok(binomial(2 * depth, n))
}

/// `2^{2N}/√(πN)`, carried as its base-10 logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StirlingEstimate {
    pub log10: f64,
}

impl StirlingEstimate {
    /// Value as `f64`; `inf` once it exceeds the `f64` range (`N ≳ 511`).
    pub fn value(&self) -> f64 {
        10f64.powf(self.log10)
    }
}

pub fn stirling_estimate(n: u64) -> Result<StirlingEstimate> {
    if n == 0 {
        return Err(Error::domain("Stirling estimate needs N >= 1"));
    }
    let nf = n as f64;
    Ok(StirlingEstimate {
        log10: 2.0 * nf * std::f64::consts::LOG10_2 - 0.5 * (std::f64::consts::PI * nf).log10(),
    })
}

pub fn decimal_digits(x: &BigUint) -> usize {
    if x.is_zero() {
        1
    } else {
        x.to_str_radix(10).len()
    }
}

/// `log₁₀ x` for exact positive integers of any size.
pub fn log10_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().log10();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

/// `(mantissa, exponent)` with `x ≈ mantissa × 10^exponent`, `1 ≤ mantissa < 10`.
pub fn scientific(x: &BigUint) -> (f64, i64) {
    if x.is_zero() {
        return (0.0, 0);
    }
    let l = log10_big(x);
    let mut e = l.floor() as i64;
    let mut m = 10f64.powf(l - e as f64);
    if m >= 10.0 {
        m /= 10.0;
        e += 1;
    }
    (m, e)
}

/// Schoolbook Ryser cost for a `2L × 2L` matrix, `2^{2L}·L²`.
pub fn ryser_ops(depth: u64) -> BigUint {
    (BigUint::one() << (2 * depth)) * depth * depth
}

/// One row of the cost table in the `N = 2L − 1` regime.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityRow {
    pub depth: u64,
    pub photons: u64,
    #[serde(serialize_with = "decimal")]
    pub dim_bosonic: BigUint,
    #[serde(serialize_with = "decimal")]
    pub dim_fermionic: BigUint,
    #[serde(serialize_with = "decimal")]
    pub path_count: BigUint,
    #[serde(serialize_with = "decimal")]
    pub ryser_ops: BigUint,
}

/// Big integers serialize as decimal strings.
fn decimal<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}

pub fn complexity_table(max_depth: u64) -> Result<Vec<ComplexityRow>> {
    if max_depth == 0 || max_depth > 200 {
        return Err(Error::domain(format!(
            "table depth must lie in 1..=200, got {max_depth}"
        )));
    }
    (1..=max_depth)
        .map(|l| {
            let n = 2 * l - 1;
            Ok(ComplexityRow {
                depth: l,
                photons: n,
                dim_bosonic: dim_bosonic(n, l)?,
                dim_fermionic: dim_fermionic(l, l)?,
                path_count: path_count(n, 0, l),
                ryser_ops: ryser_ops(l),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn closed_forms() {
        assert_eq!(dim_bosonic(2, 3).unwrap(), big(21));
        for n in 0..=100 {
            assert_eq!(dim_bosonic(n, 1).unwrap(), big(n + 1));
        }
        for l in 1..=100 {
            assert_eq!(dim_bosonic(1, l).unwrap(), big(2 * l));
            assert_eq!(dim_bosonic(2, l).unwrap(), big(l * (2 * l + 1)));
        }
        assert!(dim_bosonic(1, 0).is_err());
    }

    #[test]
    fn fermionic() {
        assert_eq!(dim_fermionic(1, 1).unwrap(), big(2));
        assert_eq!(dim_fermionic(2, 2).unwrap(), big(6));
        assert_eq!(dim_fermionic(0, 3).unwrap(), big(1));
        assert!(dim_fermionic(5, 2).is_err());
    }

    #[test]
    fn pascal_identity() {
        for n in 1..80u64 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
        assert_eq!(binomial(3, 5), big(0));
    }

    #[test]
    fn bosons_outnumber_fermions() {
        for l in 1..=50 {
            for n in 0..=2 * l {
                assert!(dim_bosonic(n, l).unwrap() >= dim_fermionic(n, l).unwrap());
            }
        }
    }

    #[test]
    fn stirling() {
        let e = stirling_estimate(1).unwrap();
        assert!((e.value() - 4.0 / std::f64::consts::PI.sqrt()).abs() < 1e-12);
        let e = stirling_estimate(137).unwrap();
        assert!((e.log10 - 81.2).abs() < 0.05);
        assert!(stirling_estimate(0).is_err());
        assert!(stirling_estimate(2000).unwrap().value().is_infinite());
        assert!(stirling_estimate(2000).unwrap().log10.is_finite());
    }

    #[test]
    fn big_logs() {
        let x = BigUint::one() << 9453u32;
        assert!((log10_big(&x) - 9453.0 * std::f64::consts::LOG10_2).abs() < 1e-9);
        let (m, e) = scientific(&(BigUint::one() << 288u32));
        assert_eq!(e, 86);
        assert!((m - 4.97).abs() < 0.01);
        assert_eq!(decimal_digits(&big(0)), 1);
        assert_eq!(decimal_digits(&big(1000)), 4);
    }

    #[test]
    fn table_rows() {
        let t = complexity_table(64).unwrap();
        assert_eq!(t[0].dim_bosonic, big(2));
        assert_eq!(t[0].photons, 1);
        for w in t.windows(2) {
            assert!(w[1].dim_bosonic > w[0].dim_bosonic);
            assert!(w[1].dim_fermionic > w[0].dim_fermionic);
            assert!(w[1].path_count > w[0].path_count);
            assert!(w[1].ryser_ops > w[0].ryser_ops);
        }
        assert!(complexity_table(0).is_err());
        assert!(complexity_table(201).is_err());
    }
}
