//! Wall-clock comparison of the permanent and determinant kernels.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::kernels::{determinant, permanent_ryser, ryser_guard};
use crate::limits::Limits;
use crate::matrix::ComplexMatrix;
use crate::ops::semilog_slope;
use crate::scalar::cx;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ryser,
    Determinant,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Ryser => "ryser",
            Method::Determinant => "determinant",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub method: Method,
    pub mean_seconds: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct BenchOptions {
    pub n_min: usize,
    pub n_max: usize,
    pub reps: usize,
    /// Each timed sample repeats the call until this much time has passed,
    /// so that microsecond kernels are not lost in timer noise.
    pub min_sample_seconds: f64,
    pub seed: u64,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            n_min: 1,
            n_max: 20,
            reps: 3,
            min_sample_seconds: 0.02,
            seed: 7,
        }
    }
}

pub fn random_matrix(n: usize, rng: &mut impl Rng) -> ComplexMatrix<f64> {
    ComplexMatrix::from_fn(n, n, |_, _| {
        cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn time_per_call(min_seconds: f64, mut f: impl FnMut()) -> f64 {
    let start = Instant::now();
    let mut calls = 0u64;
    loop {
        f();
        calls += 1;
        let elapsed = start.elapsed().as_secs_f64();
        if elapsed >= min_seconds {
            return elapsed / calls as f64;
        }
    }
}

/// Mean seconds per call of both kernels for every `n` in range.
pub fn bench_permanent(options: &BenchOptions, limits: &Limits) -> Result<Vec<BenchRow>> {
    // Refuse the whole sweep up front rather than after timing the small sizes.
    ryser_guard(options.n_max, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut rows = Vec::new();
    for n in options.n_min..=options.n_max {
        let m = random_matrix(n, &mut rng);
        for method in [Method::Ryser, Method::Determinant] {
            let reps = options.reps.max(1);
            let mut total = 0.0;
            for _ in 0..reps {
                total += match method {
                    Method::Ryser => time_per_call(options.min_sample_seconds, || {
                        std::hint::black_box(
                            permanent_ryser(std::hint::black_box(&m), limits).unwrap(),
                        );
                    }),
                    Method::Determinant => time_per_call(options.min_sample_seconds, || {
                        std::hint::black_box(determinant(std::hint::black_box(&m)).unwrap());
                    }),
                };
            }
            rows.push(BenchRow {
                n,
                method,
                mean_seconds: total / reps as f64,
            });
        }
    }
    Ok(rows)
}

/// Fitted growth factor of the mean time per unit increase of `n`.
pub fn growth_per_unit(rows: &[BenchRow], method: Method) -> f64 {
    let (ns, ts): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter(|r| r.method == method)
        .map(|r| (r.n as f64, r.mean_seconds))
        .unzip();
    semilog_slope(&ns, &ts).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_bench_runs() {
        let opts = BenchOptions {
            n_min: 2,
            n_max: 4,
            reps: 1,
            min_sample_seconds: 0.0,
            seed: 1,
        };
        let rows = bench_permanent(&opts, &Limits::default()).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.mean_seconds > 0.0));
        let opts = BenchOptions {
            n_min: 31,
            n_max: 31,
            ..opts
        };
        assert!(bench_permanent(&opts, &Limits::default())
            .unwrap_err()
            .is_cost_guard());
    }

    #[test]
    fn oversized_sweep_is_refused_before_timing() {
        let opts = BenchOptions {
            n_min: 1,
            n_max: 40,
            ..Default::default()
        };
        let start = Instant::now();
        assert!(bench_permanent(&opts, &Limits::default())
            .unwrap_err()
            .is_cost_guard());
        assert!(start.elapsed().as_secs_f64() < 0.5);
    }
}
