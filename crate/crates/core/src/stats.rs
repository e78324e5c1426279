//! Goodness-of-fit statistics used by the sampler and random-matrix checks.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

impl ChiSquare {
    pub fn passes(&self, significance: f64) -> bool {
        self.p_value >= significance
    }
}

/// Pearson's test of observed cell counts against equal expected counts.
pub fn chi_square_uniform(observed: &[u64]) -> ChiSquare {
    let cells = observed.len();
    let total: u64 = observed.iter().sum();
    if cells < 2 || total == 0 {
        return ChiSquare { statistic: 0.0, dof: cells.saturating_sub(1), p_value: 1.0 };
    }
    let expected = total as f64 / cells as f64;
    let statistic = observed
        .iter()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum::<f64>();
    let dof = cells - 1;
    let dist = ChiSquared::new(dof as f64).expect("dof >= 1");
    ChiSquare { statistic, dof, p_value: dist.sf(statistic) }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KsTest {
    /// `sup |F_x - F_y|`.
    pub statistic: f64,
    pub n: usize,
    pub m: usize,
    /// Asymptotic critical value at the requested significance.
    pub critical_value: f64,
    pub p_value: f64,
    pub significance: f64,
    pub passed: bool,
}

/// Two-sample Kolmogorov-Smirnov statistic. Inputs need not be sorted.
pub fn ks_statistic(x: &[f64], y: &[f64]) -> f64 {
    let mut a = x.to_vec();
    let mut b = y.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let v = if a[i] <= b[j] { a[i] } else { b[j] };
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// `c(α) sqrt((n + m) / (n m))` with `c(α) = sqrt(-ln(α / 2) / 2)`.
pub fn ks_critical_value(n: usize, m: usize, significance: f64) -> f64 {
    let c = (-(significance / 2.0).ln() / 2.0).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

/// Asymptotic p-value from the Kolmogorov distribution, with the usual
/// small-sample correction of the argument.
pub fn ks_p_value(statistic: f64, n: usize, m: usize) -> f64 {
    let ne = (n as f64 * m as f64) / (n + m) as f64;
    let s = ne.sqrt();
    let lambda = (s + 0.12 + 0.11 / s) * statistic;
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

pub fn ks_two_sample(x: &[f64], y: &[f64], significance: f64) -> KsTest {
    let statistic = ks_statistic(x, y);
    let critical_value = ks_critical_value(x.len(), y.len(), significance);
    KsTest {
        statistic,
        n: x.len(),
        m: y.len(),
        critical_value,
        p_value: ks_p_value(statistic, x.len(), y.len()),
        significance,
        passed: statistic <= critical_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_statistic_by_hand() {
        assert_eq!(ks_statistic(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), 0.0);
        assert_eq!(ks_statistic(&[0.0, 0.0], &[1.0, 1.0]), 1.0);
        // F_x jumps to 1/2 at 1, F_y stays 0 until 1.5
        let d = ks_statistic(&[1.0, 2.0], &[1.5, 2.5]);
        assert!((d - 0.5).abs() < 1e-15);
        // ties across samples are handled as a single step
        assert_eq!(ks_statistic(&[1.0, 1.0, 2.0], &[1.0, 2.0, 2.0]), 1.0 / 3.0);
    }

    #[test]
    fn ks_critical_values() {
        // c(0.05) = 1.358, c(0.001) = 1.949
        let c05 = ks_critical_value(1, 1, 0.05) / 2f64.sqrt();
        assert!((c05 - 1.3581).abs() < 1e-3);
        let c001 = ks_critical_value(1, 1, 0.001) / 2f64.sqrt();
        assert!((c001 - 1.9495).abs() < 1e-3);
        assert!(ks_p_value(0.0, 100, 100) > 0.999);
        assert!(ks_p_value(0.5, 1000, 1000) < 1e-10);
    }

    #[test]
    fn chi_square_values() {
        let flat = chi_square_uniform(&[100, 100, 100, 100]);
        assert_eq!(flat.statistic, 0.0);
        assert!((flat.p_value - 1.0).abs() < 1e-12);
        let skewed = chi_square_uniform(&[150, 50]);
        assert!((skewed.statistic - 50.0).abs() < 1e-12);
        assert!(skewed.p_value < 1e-10);
        // 3.84 is the 95% point of chi-square with one degree of freedom
        let edge = chi_square_uniform(&[0, 0]);
        assert_eq!(edge.p_value, 1.0);
        let d = ChiSquared::new(1.0).unwrap();
        assert!((d.sf(3.841458820694124) - 0.05).abs() < 1e-9);
    }
}
