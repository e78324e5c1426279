//! Unitarily invariant Hermitian matrices with prescribed spectra.
//!
//! For independent `A`, `B` of this kind, the largest eigenvalue of `A + B`
//! has the same law as `max_{k+l=n+1} a_k + b_l`, where `a_k` (resp. `b_l`)
//! is the top eigenvalue of the upper-left `k × k` corner of an independent
//! copy of `A` (resp. `B`). [`corollary_experiment`] compares the two by a
//! two-sample Kolmogorov-Smirnov test.

mod matrix;

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::rng_for;
use crate::stats::{ks_two_sample, KsTest};

pub use matrix::{
    haar_unitary, hermitian_eigen, householder_qr, top_eigenvalue, CMatrix, Eigen, JACOBI_MAX_SWEEPS,
    JACOBI_TOL,
};

pub const MIN_SAMPLES: usize = 1000;

/// Statistics are compared on this grid so that exact equalities in law
/// (a scalar `B`, `n = 1`) are not split by eigensolver rounding.
pub const RESOLUTION: f64 = 1e-9;

fn quantize(x: f64) -> f64 {
    (x / RESOLUTION).round() * RESOLUTION
}

/// Weakly decreasing real eigenvalues.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("a spectrum needs at least one value".into()));
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("spectrum values must be finite".into()));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("spectrum must be weakly decreasing".into()));
        }
        Ok(Spectrum { values })
    }

    /// Sorts into decreasing order first.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }
}

impl TryFrom<Vec<f64>> for Spectrum {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Spectrum::new(v)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Vec<f64> {
        s.values
    }
}

impl std::str::FromStr for Spectrum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("`{t}` is not a number")))
            })
            .collect::<Result<Vec<_>>>()?;
        Spectrum::new(values)
    }
}

/// `U diag(spec) U^†` for one Haar unitary `U`.
#[derive(Clone, Debug)]
pub struct HermitianSample {
    matrix: CMatrix,
}

impl HermitianSample {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let r = matrix.hermiticity_residual();
        if r > 1e-12 * matrix.frobenius().max(1.0) {
            return Err(Error::InvalidArgument(format!("matrix is not Hermitian (residual {r:e})")));
        }
        Ok(HermitianSample { matrix })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }
}

pub fn sample_invariant_hermitian_with<R: Rng + ?Sized>(spec: &Spectrum, rng: &mut R) -> HermitianSample {
    let n = spec.n();
    let u = haar_unitary(n, rng);
    if spec.values()[0] == spec.values()[n - 1] {
        return HermitianSample { matrix: CMatrix::from_real_diagonal(spec.values()) };
    }
    let mut m = u.mul(&CMatrix::from_real_diagonal(spec.values())).mul(&u.adjoint());
    // symmetrize away rounding so the result is Hermitian to the last bit
    let adj = m.adjoint();
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = (m[(i, j)] + adj[(i, j)]) * 0.5;
        }
    }
    HermitianSample { matrix: m }
}

pub fn sample_invariant_hermitian(spec: &Spectrum, seed: u64) -> HermitianSample {
    sample_invariant_hermitian_with(spec, &mut rng_for(seed, 0))
}

/// `a_k` = top eigenvalue of the leading `k × k` block, for `k = 1..=n`.
/// Weakly increasing by Cauchy interlacing.
pub fn corner_top_eigs(m: &HermitianSample) -> Result<Vec<f64>> {
    (1..=m.n()).map(|k| top_eigenvalue(&m.matrix.leading(k))).collect()
}

fn max_corner_sum(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    (0..n).map(|k| a[k] + b[n - 1 - k]).fold(f64::NEG_INFINITY, f64::max)
}

/// The two statistics for sample `i`. Stream `2i` drives `A, B` for the top
/// eigenvalue of the sum, stream `2i + 1` drives the corner copies.
fn paired_draw(a: &Spectrum, b: &Spectrum, seed: u64, i: u64) -> Result<(f64, f64)> {
    let mut r1 = rng_for(seed, 2 * i);
    let ma = sample_invariant_hermitian_with(a, &mut r1);
    let mb = sample_invariant_hermitian_with(b, &mut r1);
    let top = top_eigenvalue(&ma.matrix.add(&mb.matrix))?;
    let mut r2 = rng_for(seed, 2 * i + 1);
    let ca = corner_top_eigs(&sample_invariant_hermitian_with(a, &mut r2))?;
    let cb = corner_top_eigs(&sample_invariant_hermitian_with(b, &mut r2))?;
    Ok((quantize(top), quantize(max_corner_sum(&ca, &cb))))
}

/// Raw draws of both statistics, `(top eigenvalue of A + B, max corner sum)`,
/// rounded to [`RESOLUTION`].
pub fn corollary_samples(a: &Spectrum, b: &Spectrum, samples: usize, seed: u64) -> Result<(Vec<f64>, Vec<f64>)> {
    if a.n() != b.n() {
        return Err(Error::RankMismatch(a.n(), b.n()));
    }
    let pairs = (0..samples as u64)
        .into_par_iter()
        .map(|i| paired_draw(a, b, seed, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(pairs.into_iter().unzip())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RmtReport {
    pub n: usize,
    pub spectrum_a: Spectrum,
    pub spectrum_b: Spectrum,
    pub samples: usize,
    pub seed: u64,
    pub ks: KsTest,
    pub passed: bool,
}

pub fn corollary_experiment(
    a: &Spectrum,
    b: &Spectrum,
    samples: usize,
    seed: u64,
    significance: f64,
) -> Result<RmtReport> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!("need at least {MIN_SAMPLES} samples, got {samples}")));
    }
    let (top, corner) = corollary_samples(a, b, samples, seed)?;
    let ks = ks_two_sample(&top, &corner, significance);
    Ok(RmtReport {
        n: a.n(),
        spectrum_a: a.clone(),
        spectrum_b: b.clone(),
        samples,
        seed,
        passed: ks.passed,
        ks,
    })
}

/// Columns `index,top_eigenvalue_of_sum,max_corner_sum`.
pub fn write_samples_csv<W: Write>(top: &[f64], corner: &[f64], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["index", "top_eigenvalue_of_sum", "max_corner_sum"])?;
    for (i, (x, y)) in top.iter().zip(corner).enumerate() {
        wr.write_record([i.to_string(), format!("{x:.17e}"), format!("{y:.17e}")])?;
    }
    wr.flush()?;
    Ok(())
}

/// KS comparison of `A_11` against `<spec, |u|^2>` for an independent Haar
/// column `u`.
pub fn unitary_invariance_check(spec: &Spectrum, samples: usize, seed: u64, significance: f64) -> Result<KsTest> {
    let n = spec.n();
    let (diag, proj): (Vec<f64>, Vec<f64>) = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let m = sample_invariant_hermitian_with(spec, &mut rng_for(seed, 2 * i));
            let u = haar_unitary(n, &mut rng_for(seed, 2 * i + 1));
            let p: f64 = (0..n).map(|j| spec.values()[j] * u[(j, 0)].norm_sqr()).sum();
            (m.matrix()[(0, 0)].re, p)
        })
        .unzip();
    Ok(ks_two_sample(&diag, &proj, significance))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn spectrum_parsing() {
        assert_eq!("2,1,-1".parse::<Spectrum>().unwrap(), spec(&[2.0, 1.0, -1.0]));
        assert!("1,2".parse::<Spectrum>().is_err());
        assert!("".parse::<Spectrum>().is_err());
        assert_eq!(Spectrum::from_unsorted(vec![0.0, 2.0]).unwrap(), spec(&[2.0, 0.0]));
        let j = serde_json::to_string(&spec(&[1.0, 0.0])).unwrap();
        assert_eq!(j, "[1.0,0.0]");
        assert!(serde_json::from_str::<Spectrum>("[0.0,1.0]").is_err());
    }

    #[test]
    fn sample_examples() {
        let c = sample_invariant_hermitian(&spec(&[2.5, 2.5, 2.5]), 4);
        assert!(c.matrix().max_abs_diff(&CMatrix::from_real_diagonal(&[2.5; 3])) < 1e-12);
        let one = sample_invariant_hermitian(&spec(&[-3.0]), 4);
        assert!((one.matrix()[(0, 0)].re + 3.0).abs() < 1e-15);
        for seed in 0..10 {
            let m = sample_invariant_hermitian(&spec(&[1.0, 0.0, -1.0]), seed);
            assert!(m.matrix().hermiticity_residual() <= 1e-12);
            let e = hermitian_eigen(m.matrix()).unwrap().values;
            for (x, y) in e.iter().zip([1.0, 0.0, -1.0]) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn corner_examples() {
        let d = HermitianSample::new(CMatrix::from_real_diagonal(&[1.0, 3.0, 2.0])).unwrap();
        assert_eq!(corner_top_eigs(&d).unwrap(), vec![1.0, 3.0, 3.0]);
        let id = HermitianSample::new(CMatrix::from_real_diagonal(&[4.0; 3])).unwrap();
        assert_eq!(corner_top_eigs(&id).unwrap(), vec![4.0; 3]);
        let swap = HermitianSample::new(CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()).unwrap();
        let a = corner_top_eigs(&swap).unwrap();
        assert_eq!(a[0], 0.0);
        assert!((a[1] - 1.0).abs() < 1e-14);
        assert!(HermitianSample::new(CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap()).is_err());
    }

    #[test]
    fn corners_interlace() {
        for seed in 0..200 {
            let m = sample_invariant_hermitian(&spec(&[2.0, 1.0, 0.0, -1.0]), seed);
            let a = corner_top_eigs(&m).unwrap();
            assert!(a.windows(2).all(|w| w[0] <= w[1] + 1e-12), "{a:?}");
            assert!((a[3] - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn experiment_edge_cases() {
        let r = corollary_experiment(&spec(&[1.5]), &spec(&[-0.5]), 1000, 3, 0.001).unwrap();
        assert_eq!(r.ks.statistic, 0.0);
        assert!(r.passed);
        let scalar = corollary_experiment(&spec(&[2.0, 0.0, -1.0]), &spec(&[1.0; 3]), 5000, 8, 0.001).unwrap();
        assert!(scalar.passed, "{:?}", scalar.ks);
        assert!(corollary_experiment(&spec(&[1.0]), &spec(&[1.0, 0.0]), 1000, 0, 0.001).is_err());
        assert!(corollary_experiment(&spec(&[1.0]), &spec(&[1.0]), 10, 0, 0.001).is_err());
    }

    #[test]
    fn experiment_is_seeded() {
        let a = corollary_samples(&spec(&[1.0, 0.0]), &spec(&[1.0, 0.0]), 50, 17).unwrap();
        let b = corollary_samples(&spec(&[1.0, 0.0]), &spec(&[1.0, 0.0]), 80, 17).unwrap();
        assert_eq!(a.0[..], b.0[..50]);
        assert_eq!(a.1[..], b.1[..50]);
    }

    #[test]
    fn two_by_two_projections() {
        // top eigenvalue of P + Q for rank-one projections is 1 + |<u,v>|,
        // and |<u,v>|^2 is uniform; the corner side is 1 + max of two uniforms.
        let (top, corner) = corollary_samples(&spec(&[1.0, 0.0]), &spec(&[1.0, 0.0]), 20_000, 5).unwrap();
        let mean_top = top.iter().sum::<f64>() / top.len() as f64;
        let mean_corner = corner.iter().sum::<f64>() / corner.len() as f64;
        // E[1 + sqrt(U)] = 5/3
        assert!((mean_top - 5.0 / 3.0).abs() < 0.01, "{mean_top}");
        assert!((mean_corner - 5.0 / 3.0).abs() < 0.01, "{mean_corner}");
    }

    #[test]
    fn unitary_invariance_smoke() {
        let ks = unitary_invariance_check(&spec(&[2.0, 1.0, -1.0]), 20_000, 21, 0.001).unwrap();
        assert!(ks.passed, "{ks:?}");
    }
}
