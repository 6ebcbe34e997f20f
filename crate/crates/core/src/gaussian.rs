//! Coherent and Gaussian inputs, propagated in polynomial time.
//!
//! Conventions, used everywhere in this module: `ħ = 1`, quadratures
//! `x = (a + a†)/√2`, `p = (a − a†)/(i√2)`, interleaved as
//! `(x₁, p₁, x₂, p₂, …)`. The vacuum covariance is `I/2` and the symplectic
//! form is `Ω = ⊕ [[0, 1], [−1, 0]]`.
//!
//! A passive lattice with transfer matrix `U = X + iY` maps complex mode
//! amplitudes as `α ↦ Uα`; in quadrature space every `2×2` block of the
//! induced symplectic matrix is `[[X_{lj}, −Y_{lj}], [Y_{lj}, X_{lj}]]`.
//! Means transform as `S·mean` and covariances as `S·V·Sᵀ`.
//!
//! The mean photon number of mode `ℓ` is
//! `⟨n_ℓ⟩ = (V_{xx} + V_{pp} − 1)/2 + (x̄² + p̄²)/2`.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, RealMatrix};
use crate::ops::OpCount;
use crate::scalar::{Cx, Real};
use crate::transfer::TransferMatrix;

/// Coherent amplitude `β` injected at one input mode (0-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentInput<T> {
    pub beta: Cx<T>,
    pub port: usize,
}

impl<T: Real> CoherentInput<T> {
    pub fn mean_photons(&self) -> T {
        self.beta.norm_sqr()
    }
}

/// Output amplitudes `β·U[ℓ, port]`. `Θ(L)` given `U`.
pub fn propagate_coherent<T: Real>(
    u: &TransferMatrix<T>,
    input: &CoherentInput<T>,
) -> Result<Vec<Cx<T>>> {
    propagate_coherent_counted(u, input, &mut OpCount::new())
}

pub fn propagate_coherent_counted<T: Real>(
    u: &TransferMatrix<T>,
    input: &CoherentInput<T>,
    ops: &mut OpCount,
) -> Result<Vec<Cx<T>>> {
    if input.port >= u.dim() {
        return Err(Error::domain(format!(
            "port {} outside 0..{}",
            input.port,
            u.dim()
        )));
    }
    ops.add(u.dim() as u64);
    Ok(u.column(input.port)
        .into_iter()
        .map(|a| a * input.beta)
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState<T> {
    mean: Vec<T>,
    cov: RealMatrix<T>,
}

impl<T: Real> GaussianState<T> {
    /// Validates symmetry and the uncertainty relation `V + iΩ/2 ⪰ 0`
    /// (tolerance `1e-9`).
    pub fn new(mean: Vec<T>, cov: RealMatrix<T>) -> Result<Self> {
        let n = cov.dim();
        if !n.is_multiple_of(2) || mean.len() != n {
            return Err(Error::validation(format!(
                "Gaussian state needs an even quadrature count with matching mean; got covariance {n}, mean {}",
                mean.len()
            )));
        }
        let tol = T::lit(1e-9);
        let asym = cov.max_asymmetry();
        if !(asym <= tol) {
            return Err(Error::validation(format!(
                "covariance is not symmetric (max deviation {asym:e})"
            )));
        }
        if !uncertainty_ok(&cov, tol) {
            return Err(Error::validation("covariance violates V + iΩ/2 ⪰ 0"));
        }
        Ok(GaussianState { mean, cov })
    }

    pub fn vacuum(modes: usize) -> Self {
        GaussianState {
            mean: vec![T::zero(); 2 * modes],
            cov: RealMatrix::scaled_identity(2 * modes, T::lit(0.5)),
        }
    }

    /// Coherent state `|β⟩` on `port`, vacuum elsewhere.
    pub fn coherent(modes: usize, input: &CoherentInput<T>) -> Result<Self> {
        if input.port >= modes {
            return Err(Error::domain(format!(
                "port {} outside 0..{modes}",
                input.port
            )));
        }
        let mut s = Self::vacuum(modes);
        s.mean[2 * input.port] = input.beta.re * T::SQRT_2();
        s.mean[2 * input.port + 1] = input.beta.im * T::SQRT_2();
        Ok(s)
    }

    pub fn modes(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &[T] {
        &self.mean
    }

    pub fn covariance(&self) -> &RealMatrix<T> {
        &self.cov
    }

    /// Complex amplitude `⟨a_ℓ⟩ = (x̄ + i p̄)/√2` of each mode.
    pub fn mode_amplitudes(&self) -> Vec<Cx<T>> {
        self.mean
            .chunks(2)
            .map(|q| Cx::new(q[0], q[1]) * T::FRAC_1_SQRT_2())
            .collect()
    }

    pub fn mean_photons(&self) -> Vec<T> {
        (0..self.modes())
            .map(|l| {
                let (x, p) = (2 * l, 2 * l + 1);
                (self.cov[(x, x)] + self.cov[(p, p)] - T::one()) / T::lit(2.0)
                    + (self.mean[x] * self.mean[x] + self.mean[p] * self.mean[p]) / T::lit(2.0)
            })
            .collect()
    }

    pub fn total_mean_photons(&self) -> T {
        self.mean_photons().into_iter().sum()
    }

    /// `det(2V)`; one for pure states.
    pub fn purity_determinant(&self) -> T {
        let n = self.cov.dim();
        let mut twice = self.cov.clone();
        for i in 0..n {
            for j in 0..n {
                twice[(i, j)] = self.cov[(i, j)] * T::lit(2.0);
            }
        }
        twice.determinant()
    }
}

/// Single-mode squeezed vacuum `S(ξ)|0⟩` on `port` of a depth-`L` register,
/// `S(ξ) = exp[(ξ* a² − ξ a†²)/2]`. With `ξ = s·e^{iθ}` the port's covariance
/// is `R(θ/2) diag(e^{−2s}, e^{2s}) R(θ/2)ᵀ / 2`.
pub fn squeezed_vacuum_state<T: Real>(
    xi: Cx<T>,
    port: usize,
    depth: usize,
) -> Result<GaussianState<T>> {
    let s = xi.norm();
    if !(s <= T::lit(5.0)) {
        return Err(Error::domain(format!(
            "squeezing |ξ| = {s} outside the supported range 0..=5"
        )));
    }
    let modes = 2 * depth;
    if port >= modes {
        return Err(Error::domain(format!("port {port} outside 0..{modes}")));
    }
    let mut state = GaussianState::vacuum(modes);
    let half = T::lit(0.5);
    let phi = xi.arg() * half;
    let (sn, cs) = phi.sin_cos();
    let (lo, hi) = (
        (-s * T::lit(2.0)).exp() * half,
        (s * T::lit(2.0)).exp() * half,
    );
    let (x, p) = (2 * port, 2 * port + 1);
    state.cov[(x, x)] = cs * cs * lo + sn * sn * hi;
    state.cov[(p, p)] = sn * sn * lo + cs * cs * hi;
    let off = cs * sn * (lo - hi);
    state.cov[(x, p)] = off;
    state.cov[(p, x)] = off;
    Ok(state)
}

/// Interleaved `Ω` on `modes` modes.
pub fn symplectic_form<T: Real>(modes: usize) -> RealMatrix<T> {
    let mut o = RealMatrix::zeros(2 * modes);
    for l in 0..modes {
        o[(2 * l, 2 * l + 1)] = T::one();
        o[(2 * l + 1, 2 * l)] = -T::one();
    }
    o
}

/// Real quadrature map of a passive transfer matrix.
pub fn symplectic_from_unitary<T: Real>(u: &TransferMatrix<T>) -> RealMatrix<T> {
    let n = u.dim();
    let mut s = RealMatrix::zeros(2 * n);
    for l in 0..n {
        for j in 0..n {
            let z = u.get(l, j);
            s[(2 * l, 2 * j)] = z.re;
            s[(2 * l, 2 * j + 1)] = -z.im;
            s[(2 * l + 1, 2 * j)] = z.im;
            s[(2 * l + 1, 2 * j + 1)] = z.re;
        }
    }
    s
}

/// `‖SᵀΩS − Ω‖_max`.
pub fn symplectic_deviation<T: Real>(s: &RealMatrix<T>) -> T {
    let omega = symplectic_form::<T>(s.dim() / 2);
    s.transpose().matmul(&omega).matmul(s).max_abs_diff(&omega)
}

/// `mean ↦ S·mean`, `V ↦ S·V·Sᵀ` with `S` induced by `U`.
pub fn propagate_gaussian<T: Real>(
    u: &TransferMatrix<T>,
    state: &GaussianState<T>,
) -> Result<GaussianState<T>> {
    propagate_gaussian_counted(u, state, &mut OpCount::new())
}

pub fn propagate_gaussian_counted<T: Real>(
    u: &TransferMatrix<T>,
    state: &GaussianState<T>,
    ops: &mut OpCount,
) -> Result<GaussianState<T>> {
    if state.modes() != u.dim() {
        return Err(Error::domain(format!(
            "state has {} modes, transfer matrix {}",
            state.modes(),
            u.dim()
        )));
    }
    let s = symplectic_from_unitary(u);
    let dev = symplectic_deviation(&s);
    if !(dev <= T::unitarity_tolerance()) {
        return Err(Error::validation(format!(
            "induced map is not symplectic (deviation {dev:e})"
        )));
    }
    let n = s.dim();
    let mean = s.apply(&state.mean);
    ops.add((n * n) as u64);
    let sv = dense_product(&s, &state.cov, ops);
    let cov = dense_product(&sv, &s.transpose(), ops);
    Ok(GaussianState { mean, cov })
}

fn dense_product<T: Real>(
    a: &RealMatrix<T>,
    b: &RealMatrix<T>,
    ops: &mut OpCount,
) -> RealMatrix<T> {
    let n = a.dim();
    let mut out = RealMatrix::zeros(n);
    for i in 0..n {
        for k in 0..n {
            let x = a[(i, k)];
            for j in 0..n {
                out[(i, j)] += x * b[(k, j)];
            }
        }
    }
    ops.add((n * n * n) as u64);
    out
}

/// Cholesky of the Hermitian matrix `V + iΩ/2 + tol·I`; success means the
/// uncertainty relation holds to within `tol`.
fn uncertainty_ok<T: Real>(cov: &RealMatrix<T>, tol: T) -> bool {
    let n = cov.dim();
    let omega = symplectic_form::<T>(n / 2);
    let mut h = ComplexMatrix::from_fn(n, n, |i, j| {
        Cx::new(cov[(i, j)], omega[(i, j)] * T::lit(0.5))
    });
    for i in 0..n {
        h[(i, i)].re += tol;
    }
    let mut l = ComplexMatrix::<T>::zeros(n, n);
    for j in 0..n {
        let mut d = h[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if !(d > T::zero()) {
            return false;
        }
        let d = d.sqrt();
        l[(j, j)] = Cx::new(d, T::zero());
        for i in j + 1..n {
            let mut z = h[(i, j)];
            for k in 0..j {
                z -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = z / d;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{balanced_config, input_ports, uniform_config};
    use crate::scalar::cx;
    use crate::transfer::{single_splitter, total_matrix};

    #[test]
    fn coherent_on_one_splitter() {
        let u = single_splitter(&crate::lattice::BeamSplitterSpec::<f64>::balanced());
        let beta = cx(0.3, -1.2);
        let out = propagate_coherent(&u, &CoherentInput { beta, port: 0 }).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out[0] - cx(0.0, h) * beta).norm() < 1e-15);
        assert!((out[1] - beta * h).norm() < 1e-15);
        assert!(propagate_coherent(&u, &CoherentInput { beta, port: 2 }).is_err());
    }

    #[test]
    fn vacuum_stays_vacuum() {
        let u = total_matrix(&uniform_config(3, 0.6, 0.8, 0.2).unwrap());
        let out = propagate_gaussian(&u, &GaussianState::vacuum(6)).unwrap();
        assert!(
            out.covariance()
                .max_abs_diff(&RealMatrix::scaled_identity(12, 0.5))
                < 1e-14
        );
        assert!(out.mean().iter().all(|m: &f64| m.abs() < 1e-15));
    }

    #[test]
    fn squeezed_covariance() {
        let s = squeezed_vacuum_state(cx(0.0, 0.0), 2, 3).unwrap();
        assert_eq!(s, GaussianState::vacuum(6));

        let s = squeezed_vacuum_state(cx(1.0, 0.0), 2, 3).unwrap();
        let v = s.covariance();
        assert!((v[(4, 4)] - (-2f64).exp() / 2.0).abs() < 1e-15);
        assert!((v[(5, 5)] - 2f64.exp() / 2.0).abs() < 1e-15);
        assert!((s.total_mean_photons() - 1f64.sinh().powi(2)).abs() < 1e-14);
        assert!((1f64.sinh().powi(2) - 1.3811).abs() < 1e-4);
        assert!((s.purity_determinant() - 1.0).abs() < 1e-12);

        let s = squeezed_vacuum_state(Cx::from_polar(0.7, 1.3), 0, 1).unwrap();
        assert!((s.total_mean_photons() - 0.7f64.sinh().powi(2)).abs() < 1e-14);
        assert!((s.purity_determinant() - 1.0).abs() < 1e-12);

        assert!(squeezed_vacuum_state(cx(5.1, 0.0), 0, 1).is_err());
        assert!(squeezed_vacuum_state(cx(0.1, 0.0), 2, 1).is_err());
    }

    #[test]
    fn squeezed_means_follow_column() {
        let cfg = balanced_config::<f64>(3).unwrap();
        let u = total_matrix(&cfg);
        let port = input_ports(3).0;
        let xi = Cx::from_polar(0.5, 0.4);
        let out = propagate_gaussian(&u, &squeezed_vacuum_state(xi, port, 3).unwrap()).unwrap();
        let sh2 = 0.5f64.sinh().powi(2);
        for (n, a) in out.mean_photons().iter().zip(u.column(port)) {
            assert!((n - a.norm_sqr() * sh2).abs() < 1e-14);
        }
        assert!((out.purity_determinant() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn invalid_covariances() {
        let mut v = RealMatrix::<f64>::scaled_identity(2, 0.5);
        v[(0, 1)] = 0.1;
        assert!(GaussianState::new(vec![0.0; 2], v).is_err());
        // Too narrow on both quadratures.
        let v = RealMatrix::<f64>::scaled_identity(2, 0.2);
        assert!(GaussianState::new(vec![0.0; 2], v).is_err());
        assert!(GaussianState::new(vec![0.0; 3], RealMatrix::scaled_identity(2, 0.5)).is_err());
        assert!(GaussianState::new(vec![0.0; 2], RealMatrix::scaled_identity(2, 0.5)).is_ok());
        // Thermal noise is fine.
        assert!(GaussianState::new(vec![1.0, 2.0], RealMatrix::scaled_identity(2, 1.5)).is_ok());
    }

    #[test]
    fn mode_mismatch() {
        let u = total_matrix(&balanced_config::<f64>(2).unwrap());
        assert!(propagate_gaussian(&u, &GaussianState::vacuum(6)).is_err());
    }
}
