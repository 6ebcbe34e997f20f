//! Creation-operator transfer matrices.
//!
//! Convention: **columns are input modes**. Column `j` of a
//! [`TransferMatrix`] holds the output-mode coefficients of input mode `j`,
//!
//! ```text
//! a†(in, j) = Σ_ℓ U[ℓ, j] · a†(out, ℓ)
//! ```
//!
//! so the coefficients multiplying the output creation operators for a photon
//! entering port `j` are read off as one column. Composition runs right to
//! left: `U = M_L ⋯ M_2 M_1`. The annihilation-operator (forward) map is the
//! conjugate transpose and is not exposed separately.

use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::{active_mode_span, splitter_modes, BeamSplitterSpec, LatticeConfig};
use crate::matrix::ComplexMatrix;
use crate::ops::OpCount;
use crate::scalar::{cis, cx, Cx, Real};

/// 2×2 block `[[B₀₀, B₀₁], [B₁₀, B₁₁]]` in the column convention.
pub type Block<T> = [[Cx<T>; 2]; 2];

/// Unitary `2L × 2L` map from input to output creation operators.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferMatrix<T> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> TransferMatrix<T> {
    /// Wraps an arbitrary square matrix after checking unitarity.
    pub fn from_matrix(matrix: ComplexMatrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::validation(format!(
                "transfer matrix must be square, got {}×{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let dev = matrix.unitarity_deviation();
        if !(dev <= T::unitarity_tolerance()) {
            return Err(Error::validation(format!(
                "transfer matrix is not unitary: ‖U†U−I‖_max = {dev:e}"
            )));
        }
        Ok(TransferMatrix { matrix })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    #[inline]
    pub fn get(&self, out_mode: usize, in_mode: usize) -> Cx<T> {
        self.matrix[(out_mode, in_mode)]
    }

    /// Output-mode coefficients of one input mode.
    pub fn column(&self, in_mode: usize) -> Vec<Cx<T>> {
        self.matrix.column(in_mode)
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn unitarity_deviation(&self) -> T {
        self.matrix.unitarity_deviation()
    }

    /// Worst deviation of a column's squared norm from one.
    pub fn column_norm_deviation(&self) -> T {
        (0..self.dim())
            .map(|j| {
                let s: T = self.column(j).iter().map(|z| z.norm_sqr()).sum();
                (s - T::one()).abs()
            })
            .fold(T::zero(), T::max)
    }
}

/// `a†₁ ↦ i r a†₁' + t a†₂'`, `a†₂ ↦ t a†₁' + i r a†₂'`, i.e. `[[ir, t], [t, ir]]`.
pub fn bs_block<T: Real>(spec: &BeamSplitterSpec<T>) -> Block<T> {
    let ir = cx(T::zero(), spec.r());
    let t = cx(spec.t(), T::zero());
    [[ir, t], [t, ir]]
}

/// Dense matrix of one level: its splitter blocks on their mode pairs,
/// followed by the phase layer on the active modes when `ℓ < L`.
pub fn level_matrix<T: Real>(config: &LatticeConfig<T>, level: usize) -> Result<TransferMatrix<T>> {
    let depth = config.depth();
    let span = active_mode_span(depth, level)?;
    let mut m = ComplexMatrix::identity(config.modes());
    for (k, spec) in config.level_splitters(level)?.iter().enumerate() {
        let (a, b) = splitter_modes(depth, level, k + 1);
        let blk = bs_block(spec);
        m[(a, a)] = blk[0][0];
        m[(a, b)] = blk[0][1];
        m[(b, a)] = blk[1][0];
        m[(b, b)] = blk[1][1];
    }
    for (phase, mode) in config.level_phases(level)?.iter().zip(span.indices()) {
        m.scale_row(mode, cis(*phase));
    }
    Ok(TransferMatrix { matrix: m })
}

/// `U = M_L ⋯ M_1`, built by applying each level's splitter blocks and
/// phases as row operations on the running product.
///
/// Each level touches `2ℓ` rows of length `2L`, so the build costs
/// `Θ(L³)` complex steps in total.
pub fn total_matrix<T: Real>(config: &LatticeConfig<T>) -> TransferMatrix<T> {
    total_matrix_counted(config, &mut OpCount::new())
}

pub fn total_matrix_counted<T: Real>(
    config: &LatticeConfig<T>,
    ops: &mut OpCount,
) -> TransferMatrix<T> {
    let mut u = ComplexMatrix::identity(config.modes());
    for level in 1..=config.depth() {
        apply_level_rows(config, level, &mut u, ops);
    }
    TransferMatrix { matrix: u }
}

/// Reference product of the dense level matrices, `Θ(L·(2L)³)`.
pub fn total_matrix_dense<T: Real>(config: &LatticeConfig<T>) -> TransferMatrix<T> {
    let mut u = ComplexMatrix::identity(config.modes());
    for level in 1..=config.depth() {
        let m = level_matrix(config, level).expect("level in range");
        u = m.matrix().matmul(&u);
    }
    TransferMatrix { matrix: u }
}

/// Column of `U` for a single input mode, propagated as a vector in
/// `Θ(L²)` steps without forming the matrix.
pub fn input_column<T: Real>(
    config: &LatticeConfig<T>,
    in_mode: usize,
    ops: &mut OpCount,
) -> Result<Vec<Cx<T>>> {
    let n = config.modes();
    if in_mode >= n {
        return Err(Error::domain(format!(
            "input mode {in_mode} outside 0..{n}"
        )));
    }
    let mut v = ComplexMatrix::zeros(n, 1);
    v[(in_mode, 0)] = Cx::one();
    for level in 1..=config.depth() {
        apply_level_rows(config, level, &mut v, ops);
    }
    Ok(v.column(0))
}

fn apply_level_rows<T: Real>(
    config: &LatticeConfig<T>,
    level: usize,
    u: &mut ComplexMatrix<T>,
    ops: &mut OpCount,
) {
    let depth = config.depth();
    let cols = u.cols();
    let splitters = config.level_splitters(level).expect("level in range");
    for (k, spec) in splitters.iter().enumerate() {
        let (a, b) = splitter_modes(depth, level, k + 1);
        let blk = bs_block(spec);
        for c in 0..cols {
            let ua = u[(a, c)];
            let ub = u[(b, c)];
            u[(a, c)] = blk[0][0] * ua + blk[0][1] * ub;
            u[(b, c)] = blk[1][0] * ua + blk[1][1] * ub;
        }
        ops.add(4 * cols as u64);
    }
    let span = active_mode_span(depth, level).expect("level in range");
    for (phase, mode) in config
        .level_phases(level)
        .expect("level in range")
        .iter()
        .zip(span.indices())
    {
        let p = cis(*phase);
        if p != Cx::one() {
            u.scale_row(mode, p);
        }
        ops.add(cols as u64);
    }
}

/// Splitter block as a standalone 2×2 transfer matrix (a depth-1 lattice).
pub fn single_splitter<T: Real>(spec: &BeamSplitterSpec<T>) -> TransferMatrix<T> {
    let b = bs_block(spec);
    TransferMatrix {
        matrix: ComplexMatrix::from_rows(&[vec![b[0][0], b[0][1]], vec![b[1][0], b[1][1]]]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{balanced_config, uniform_config};

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Cx<f64> {
        Cx::new(re, im)
    }

    #[test]
    fn blocks() {
        let b = bs_block(&BeamSplitterSpec::balanced());
        assert_eq!(b, [[c(0.0, H), c(H, 0.0)], [c(H, 0.0), c(0.0, H)]]);
        let b = bs_block(&BeamSplitterSpec::new(0.0, 1.0).unwrap());
        assert_eq!(b, [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]);
        let b = bs_block(&BeamSplitterSpec::new(1.0, 0.0).unwrap());
        assert_eq!(b, [[c(0.0, 1.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 1.0)]]);
    }

    #[test]
    fn first_level_is_central_block() {
        let cfg = balanced_config::<f64>(3).unwrap();
        let m = level_matrix(&cfg, 1).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let expected = match (i, j) {
                    (2, 2) | (3, 3) => c(0.0, H),
                    (2, 3) | (3, 2) => c(H, 0.0),
                    _ if i == j => c(1.0, 0.0),
                    _ => c(0.0, 0.0),
                };
                assert_eq!(m.get(i, j), expected, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn last_level_has_no_phase_layer() {
        let mut cfg = uniform_config(3, H, H, 0.7).unwrap();
        let m3 = level_matrix(&cfg, 3).unwrap();
        cfg.set_phase(2, 1, 0.0).unwrap();
        assert_eq!(level_matrix(&cfg, 3).unwrap(), m3);
        for i in 0..6 {
            for j in 0..6 {
                let expected = if i == j {
                    c(0.0, H)
                } else if i / 2 == j / 2 {
                    c(H, 0.0)
                } else {
                    c(0.0, 0.0)
                };
                assert_eq!(m3.get(i, j), expected, "entry ({i},{j})");
            }
        }
        assert!(level_matrix(&cfg, 0).is_err());
        assert!(level_matrix(&cfg, 4).is_err());
    }

    #[test]
    fn levels_are_unitary() {
        let cfg = uniform_config(5, 0.6, 0.8, 0.4).unwrap();
        for level in 1..=5 {
            assert!(level_matrix(&cfg, level).unwrap().unitarity_deviation() < 1e-12);
        }
    }

    #[test]
    fn single_level_equals_block() {
        let u = total_matrix(&balanced_config::<f64>(1).unwrap());
        assert_eq!(u, single_splitter(&BeamSplitterSpec::balanced()));
    }

    #[test]
    fn banded_matches_dense_product() {
        let mut cfg = uniform_config(6, 0.6, 0.8, 0.0).unwrap();
        cfg.set_phase(3, 2, 1.1).unwrap();
        cfg.set_splitter(4, 3, BeamSplitterSpec::from_angle(0.2).unwrap())
            .unwrap();
        let a = total_matrix(&cfg);
        let b = total_matrix_dense(&cfg);
        assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-14);
    }

    #[test]
    fn column_propagation() {
        let cfg = uniform_config(4, 0.6, 0.8, 0.3).unwrap();
        let u = total_matrix(&cfg);
        for j in 0..8 {
            let col = input_column(&cfg, j, &mut OpCount::new()).unwrap();
            for (a, b) in col.iter().zip(u.column(j)) {
                assert!((a - b).norm() < 1e-14);
            }
        }
        assert!(input_column(&cfg, 8, &mut OpCount::new()).is_err());
    }

    #[test]
    fn from_matrix_checks() {
        assert!(TransferMatrix::from_matrix(ComplexMatrix::<f64>::zeros(2, 3)).is_err());
        let mut m = ComplexMatrix::<f64>::identity(2);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(TransferMatrix::from_matrix(m).is_err());
        assert!(TransferMatrix::from_matrix(ComplexMatrix::<f64>::identity(3)).is_ok());
    }

    #[test]
    fn single_precision_lattice() {
        let cfg = balanced_config::<f32>(4).unwrap();
        let u = total_matrix(&cfg);
        assert!(u.unitarity_deviation() < 1e-5);
    }
}
