//! Exact permanent and determinant kernels.
//!
//! Bosonic amplitudes are permanents of scattering submatrices; fermionic
//! amplitudes are determinants. The permanent is computed with Ryser's
//! inclusion–exclusion formula in Gray-code order,
//!
//! ```text
//! Per(A) = (−1)ⁿ Σ_{S ⊆ [n]} (−1)^{|S|} ∏ᵢ Σ_{j ∈ S} a_ij
//! ```
//!
//! visiting subsets so that consecutive ones differ by a single column and the
//! row sums update in `O(n)`. That gives `Θ(2ⁿ·n)` work; the textbook form
//! without Gray ordering is `Θ(2ⁿ·n²)`, which for a `2L × 2L` matrix is the
//! familiar `O(2^{2L} L²)`. The determinant uses row reduction in `Θ(n³)`.
//!
//! Ryser accumulates in `f64` whatever the input scalar is.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::ComplexMatrix;
use crate::pattern::OccupationPattern;
use crate::scalar::{Cx, Real};
use crate::transfer::TransferMatrix;

fn require_square<T: Real>(m: &ComplexMatrix<T>) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::validation(format!(
            "expected a square matrix, got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.rows())
}

pub(crate) fn ryser_guard(n: usize, limits: &Limits) -> Result<()> {
    if n > limits.max_ryser {
        return Err(Error::CostGuard {
            what: "permanent (Ryser)",
            size: n as u128,
            limit: limits.max_ryser as u128,
            detail: format!(
                "Ryser needs 2^{n}·{n} ≈ {:.3e} steps",
                (n as f64).exp2() * n as f64
            ),
        });
    }
    Ok(())
}

fn promote<T: Real>(m: &ComplexMatrix<T>) -> Vec<Complex64> {
    m.as_slice()
        .iter()
        .map(|z| Complex64::new(z.re.to_f64().unwrap(), z.im.to_f64().unwrap()))
        .collect()
}

fn demote<T: Real>(z: Complex64) -> Cx<T> {
    Cx::new(T::lit(z.re), T::lit(z.im))
}

/// Permanent by Gray-code Ryser, `Θ(2ⁿ·n)`. `Per` of the empty matrix is 1.
pub fn permanent_ryser<T: Real>(m: &ComplexMatrix<T>, limits: &Limits) -> Result<Cx<T>> {
    let n = require_square(m)?;
    ryser_guard(n, limits)?;
    if n == 0 {
        return Ok(Cx::one());
    }
    let a = promote(m);
    let total = ryser_range(&a, n, 1, 1u64 << n);
    Ok(demote(finish_ryser(total, n)))
}

/// Ryser with the subset range split into `chunks` pieces evaluated in
/// parallel and summed in a fixed order.
pub fn permanent_ryser_parallel<T: Real>(
    m: &ComplexMatrix<T>,
    limits: &Limits,
    chunks: usize,
) -> Result<Cx<T>> {
    let n = require_square(m)?;
    ryser_guard(n, limits)?;
    if n == 0 {
        return Ok(Cx::one());
    }
    let a = promote(m);
    let end = 1u64 << n;
    let chunks = (chunks.max(1) as u64).min(end - 1);
    let step = (end - 1).div_ceil(chunks);
    let parts: Vec<Complex64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = 1 + c * step;
            let hi = (lo + step).min(end);
            if lo >= hi {
                Complex64::zero()
            } else {
                ryser_range(&a, n, lo, hi)
            }
        })
        .collect();
    let total = parts.into_iter().fold(Complex64::zero(), |acc, z| acc + z);
    Ok(demote(finish_ryser(total, n)))
}

#[inline]
fn gray(k: u64) -> u64 {
    k ^ (k >> 1)
}

/// Signed subset sum over Gray indices `k ∈ [lo, hi)`, `lo ≥ 1`.
fn ryser_range(a: &[Complex64], n: usize, lo: u64, hi: u64) -> Complex64 {
    // Row sums for the subset preceding `lo`.
    let start = gray(lo - 1);
    let mut row_sums = vec![Complex64::zero(); n];
    for j in (0..n).filter(|&j| start >> j & 1 == 1) {
        for (i, s) in row_sums.iter_mut().enumerate() {
            *s += a[i * n + j];
        }
    }
    let mut total = Complex64::zero();
    for k in lo..hi {
        let j = k.trailing_zeros() as usize;
        let g = gray(k);
        if g >> j & 1 == 1 {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += a[i * n + j];
            }
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= a[i * n + j];
            }
        }
        let prod = row_sums.iter().fold(Complex64::one(), |p, s| p * s);
        if g.count_ones().is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

fn finish_ryser(total: Complex64, n: usize) -> Complex64 {
    if n.is_multiple_of(2) {
        total
    } else {
        -total
    }
}

/// Permanent by recursive first-row expansion with all plus signs.
pub fn permanent_laplace<T: Real>(m: &ComplexMatrix<T>, limits: &Limits) -> Result<Cx<T>> {
    let n = require_square(m)?;
    if n > limits.max_laplace {
        return Err(Error::CostGuard {
            what: "permanent (Laplace)",
            size: n as u128,
            limit: limits.max_laplace as u128,
            detail: format!("row expansion needs about {n}! terms"),
        });
    }
    fn expand<T: Real>(m: &ComplexMatrix<T>, row: usize, free: u64) -> Cx<T> {
        let n = m.rows();
        if row == n {
            return Cx::one();
        }
        let mut acc = Cx::zero();
        for col in 0..n {
            if free >> col & 1 == 1 {
                let a = m[(row, col)];
                if !a.is_zero() {
                    acc += a * expand(m, row + 1, free & !(1 << col));
                }
            }
        }
        acc
    }
    Ok(expand(m, 0, (1u64 << n) - 1))
}

/// Determinant by Gaussian elimination with partial pivoting.
/// `det` of the empty matrix is 1; exactly singular inputs give 0.
pub fn determinant<T: Real>(m: &ComplexMatrix<T>) -> Result<Cx<T>> {
    let n = require_square(m)?;
    let mut a = m.clone();
    let mut det = Cx::<T>::one();
    for col in 0..n {
        let mut pivot = col;
        let mut best = T::zero();
        for r in col..n {
            let v = a[(r, col)].norm();
            if v > best {
                best = v;
                pivot = r;
            }
        }
        if best.is_zero() {
            return Ok(Cx::zero());
        }
        if pivot != col {
            a.swap_rows(pivot, col);
            det = -det;
        }
        let p = a[(col, col)];
        det *= p;
        let inv = p.inv();
        for r in col + 1..n {
            let f = a[(r, col)] * inv;
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let v = a[(col, c)];
                a[(r, c)] -= f * v;
            }
        }
    }
    Ok(det)
}

/// `N × N` matrix with column `j` of `U` repeated `input[j]` times and row
/// `ℓ` repeated `output[ℓ]` times.
pub fn scattering_submatrix<T: Real>(
    u: &TransferMatrix<T>,
    input: &OccupationPattern,
    output: &OccupationPattern,
) -> Result<ComplexMatrix<T>> {
    let dim = u.dim();
    if input.modes() != dim || output.modes() != dim {
        return Err(Error::domain(format!(
            "patterns must span {dim} modes, got input {} and output {}",
            input.modes(),
            output.modes()
        )));
    }
    input.expect_total(output.total(), "input")?;
    let cols = input.repeated_modes();
    let rows = output.repeated_modes();
    Ok(ComplexMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        u.get(rows[i], cols[j])
    }))
}
