#![allow(dead_code)]

use pachinko::lattice::{BeamSplitterSpec, LatticeConfig};
use pachinko::matrix::ComplexMatrix;
use pachinko::C64;
use rand::Rng;

/// Every splitter angle and phase drawn independently.
pub fn random_config(depth: usize, rng: &mut impl Rng) -> LatticeConfig<f64> {
    let splitters = (1..=depth)
        .map(|l| {
            (0..l)
                .map(|_| {
                    BeamSplitterSpec::from_angle(rng.gen_range(0.0..std::f64::consts::FRAC_PI_2))
                        .unwrap()
                })
                .collect()
        })
        .collect();
    let phases = (1..depth)
        .map(|l| {
            (0..2 * l)
                .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
                .collect()
        })
        .collect();
    LatticeConfig::new(splitters, phases, None).unwrap()
}

pub fn random_matrix(n: usize, rng: &mut impl Rng) -> ComplexMatrix<f64> {
    ComplexMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// Closed-form column for the input port of a uniform depth-3 lattice.
pub fn depth3_column(r: f64, t: f64) -> [C64; 6] {
    let i = C64::new(0.0, 1.0);
    [
        i * r * t * t,
        C64::from(-r * r * t),
        i * r * (t * t - r * r),
        C64::from(-2.0 * r * r * t),
        i * r * t * t,
        C64::from(t * t * t),
    ]
}

/// Permanent by summing over all permutations.
pub fn permanent_brute(m: &ComplexMatrix<f64>) -> C64 {
    signed_sum(m, false)
}

/// Leibniz determinant.
pub fn determinant_brute(m: &ComplexMatrix<f64>) -> C64 {
    signed_sum(m, true)
}

fn signed_sum(m: &ComplexMatrix<f64>, signed: bool) -> C64 {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = C64::new(0.0, 0.0);
    permute(&mut perm, 0, &mut |p| {
        let mut term = C64::new(1.0, 0.0);
        for (i, &j) in p.iter().enumerate() {
            term *= m[(i, j)];
        }
        if signed && parity(p) {
            total -= term;
        } else {
            total += term;
        }
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// `true` for odd permutations.
pub fn parity(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for start in 0..p.len() {
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

pub fn rel_err(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}
