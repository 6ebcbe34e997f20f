//! Arithmetic step counting, used to show polynomial cost without relying on
//! wall-clock time.

/// Running tally of scalar multiply-add steps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCount(u64);

impl OpCount {
    pub fn new() -> Self {
        OpCount(0)
    }

    #[inline]
    pub fn add(&mut self, steps: u64) {
        self.0 += steps;
    }

    #[inline]
    pub fn get(&self) -> u64 {
        self.0
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs.iter().zip(ys).map(|(x, y)| (x.ln(), y.ln())).collect();
    linear_slope(&pts)
}

/// Least-squares slope of `ln y` against `x`; `exp` of it is the fitted
/// growth factor per unit step of `x`.
pub fn semilog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs.iter().zip(ys).map(|(x, y)| (*x, y.ln())).collect();
    linear_slope(&pts)
}

fn linear_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slopes_of_exact_laws() {
        let xs: Vec<f64> = (2..20).map(f64::from).collect();
        let cubic: Vec<f64> = xs.iter().map(|x| 5.0 * x * x * x).collect();
        assert!((loglog_slope(&xs, &cubic) - 3.0).abs() < 1e-12);
        let expo: Vec<f64> = xs.iter().map(|x| 3.0 * 2f64.powf(*x)).collect();
        assert!((semilog_slope(&xs, &expo).exp() - 2.0).abs() < 1e-12);
    }
}
