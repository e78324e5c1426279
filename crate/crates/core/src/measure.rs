//! Uniform random patterns and the law of their first row.
//!
//! For weights `λ`, `μ` of the same rank, let `a = (a_1, ..., a_{n-1}, λ_1)`
//! and `b = (b_1, ..., b_{n-1}, μ_1)` be the first-row vectors of independent
//! uniform patterns of shapes `λ` and `μ`. Then `max_{k+l=n+1} a_k + b_l` has
//! the same law as `ν_1` under the Littlewood-Richardson measure `P_{λ,μ}`.
//! Both sides are computed here in exact arithmetic.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Caps, DEFAULT_CAP};
use crate::dims::count_normalized;
use crate::dist::ExactDist;
use crate::error::{Error, Result};
use crate::lr::lr_measure;
use crate::pattern::{for_each_interlacing, interlacing_row_count, GTPattern};
use crate::weight::Weight;

fn cap_check(row: &[u64], cap: u64, what: &'static str) -> Result<()> {
    let needed = interlacing_row_count(row);
    if needed > cap as u128 {
        return Err(Error::CapExceeded { what, needed: needed.to_string(), cap });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Sampling

/// Random stream for sample `index` under `seed`: ChaCha20 keyed by
/// `seed_from_u64(seed)` with stream number `index`. Each pattern consumes
/// its own stream, so draws do not depend on scheduling or on how many
/// other samples were requested.
pub fn rng_for(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Exact uniform sampler over the patterns of one shape.
///
/// Rows are drawn top-down. Given the current row `x`, the next row `y` is
/// chosen with probability `#patterns(y) / #patterns(x)`; the product over
/// levels telescopes to `1 / d_λ`. A uniform integer below `#patterns(x)` is
/// located by walking the interlacing rows in lexicographic order with their
/// completion counts, so the candidate set is never materialized.
#[derive(Clone, Debug)]
pub struct PatternSampler {
    top: Vec<u64>,
    offset: BigInt,
    cap: u64,
}

impl PatternSampler {
    pub fn new(lambda: &Weight, cap: u64) -> Result<Self> {
        Ok(PatternSampler {
            top: lambda.normalized_parts()?,
            offset: lambda.last().clone(),
            cap,
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<GTPattern> {
        let mut rows = vec![self.top.clone()];
        while rows.last().expect("non-empty").len() > 1 {
            let cur = rows.last().expect("non-empty");
            cap_check(cur, self.cap, "pattern sampler")?;
            let total = count_normalized(cur);
            let target = rng.gen_biguint_below(&total);
            let mut acc = BigUint::zero();
            let mut chosen: Option<Vec<u64>> = None;
            for_each_interlacing(cur, |y| {
                if chosen.is_some() {
                    return;
                }
                acc += count_normalized(y);
                if acc > target {
                    chosen = Some(y.to_vec());
                }
            });
            rows.push(chosen.ok_or_else(|| Error::Internal("sampler walked past the total".into()))?);
        }
        Ok(GTPattern::from_normalized(&rows, &self.offset))
    }

    /// `count` samples; sample `i` uses [`rng_for`]`(seed, i)`.
    pub fn sample_many(&self, count: usize, seed: u64) -> Result<Vec<GTPattern>> {
        (0..count as u64)
            .into_par_iter()
            .map(|i| self.sample(&mut rng_for(seed, i)))
            .collect()
    }
}

pub fn sample_uniform_pattern(lambda: &Weight, seed: u64) -> Result<GTPattern> {
    PatternSampler::new(lambda, DEFAULT_CAP)?.sample(&mut rng_for(seed, 0))
}

// ---------------------------------------------------------------------------
// First-row laws

type JointCounts = Rc<Vec<(Vec<u64>, BigUint)>>;

thread_local! {
    static JOINT: RefCell<HashMap<Vec<u64>, JointCounts>> = RefCell::new(HashMap::new());
}

/// Unnormalized joint law of `(a_1, ..., a_{m-1})` for patterns with top row
/// `row`, relative to `row`'s last part. With `y` the second row,
/// `a_{m-1} = y_1` and the remaining coordinates are the first-row vector of
/// the sub-pattern with top row `y`.
fn joint_counts(row: &[u64], cap: u64) -> Result<JointCounts> {
    let m = row.len();
    if m <= 1 {
        return Ok(Rc::new(vec![(Vec::new(), BigUint::from(1u32))]));
    }
    let last = row[m - 1];
    let key: Vec<u64> = row.iter().map(|x| x - last).collect();
    if let Some(hit) = JOINT.with(|j| j.borrow().get(&key).cloned()) {
        return Ok(hit);
    }
    cap_check(&key, cap, "first-row distribution")?;
    let mut nexts = Vec::new();
    for_each_interlacing(&key, |y| nexts.push(y.to_vec()));
    let mut acc: BTreeMap<Vec<u64>, BigUint> = BTreeMap::new();
    for y in &nexts {
        let y_last = *y.last().expect("m >= 2");
        let sub = joint_counts(y, cap)?;
        for (v, c) in sub.iter() {
            let mut outcome: Vec<u64> = v.iter().map(|x| x + y_last).collect();
            outcome.push(y[0]);
            *acc.entry(outcome).or_insert_with(BigUint::zero) += c;
        }
    }
    let result: JointCounts = Rc::new(acc.into_iter().collect());
    JOINT.with(|j| j.borrow_mut().insert(key, result.clone()));
    Ok(result)
}

/// Joint law of `(a_1, ..., a_{n-1})` under the uniform pattern of shape `λ`.
pub fn first_row_joint(lambda: &Weight) -> Result<ExactDist<Vec<BigInt>>> {
    first_row_joint_capped(lambda, Caps::default().support)
}

pub fn first_row_joint_capped(lambda: &Weight, cap: u64) -> Result<ExactDist<Vec<BigInt>>> {
    let top = lambda.normalized_parts()?;
    let offset = lambda.last();
    let counts = joint_counts(&top, cap)?;
    ExactDist::from_counts(
        counts
            .iter()
            .map(|(v, c)| (v.iter().map(|&x| BigInt::from(x) + offset).collect(), c.clone()))
            .collect(),
    )
}

/// Law of `a_k`, `1 <= k <= n`, where `a_n = λ_1`.
pub fn marginal_ak(lambda: &Weight, k: usize) -> Result<ExactDist<BigInt>> {
    marginal_ak_capped(lambda, k, Caps::default().support)
}

pub fn marginal_ak_capped(lambda: &Weight, k: usize, cap: u64) -> Result<ExactDist<BigInt>> {
    let n = lambda.rank();
    if k == 0 || k > n {
        return Err(Error::InvalidWeight(format!("k = {k} must lie in 1..={n}")));
    }
    if k == n {
        return Ok(ExactDist::point(lambda.first().clone()));
    }
    Ok(first_row_joint_capped(lambda, cap)?.map(|v| v[k - 1].clone()))
}

/// Exact law of `max_{k+l=n+1} a_k + b_l` for independent uniform patterns.
pub fn max_convolution(lambda: &Weight, mu: &Weight) -> Result<ExactDist<BigInt>> {
    max_convolution_capped(lambda, mu, Caps::default().support)
}

pub fn max_convolution_capped(lambda: &Weight, mu: &Weight, cap: u64) -> Result<ExactDist<BigInt>> {
    let n = lambda.rank();
    if mu.rank() != n {
        return Err(Error::RankMismatch(n, mu.rank()));
    }
    let la = lambda.normalized_parts()?;
    let mb = mu.normalized_parts()?;
    let with_top = |counts: &JointCounts, top: u64| -> Vec<(Vec<u64>, BigUint)> {
        counts
            .iter()
            .map(|(v, c)| {
                let mut full = v.clone();
                full.push(top);
                (full, c.clone())
            })
            .collect()
    };
    let a = with_top(&joint_counts(&la, cap)?, la[0]);
    let b = with_top(&joint_counts(&mb, cap)?, mb[0]);

    // statistic in normalized coordinates lies in 0..=la[0] + mb[0]
    let width = (la[0] + mb[0] + 1) as usize;
    let mut totals = vec![BigUint::zero(); width];
    let mut per_a = vec![BigUint::zero(); width];
    let mut touched = Vec::with_capacity(width);
    for (av, ac) in &a {
        touched.clear();
        for (bv, bc) in &b {
            let stat = (0..n).map(|k| av[k] + bv[n - 1 - k]).max().expect("n >= 1") as usize;
            if per_a[stat].is_zero() {
                touched.push(stat);
            }
            per_a[stat] += bc;
        }
        for &s in &touched {
            let partial = std::mem::take(&mut per_a[s]);
            totals[s] += partial * ac;
        }
    }
    let offset: BigInt = lambda.last() + mu.last();
    ExactDist::from_counts(
        totals
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| (BigInt::from(s) + &offset, c))
            .collect(),
    )
}

/// Law of `ν_1` under the Littlewood-Richardson measure.
pub fn nu1_from_lr(lambda: &Weight, mu: &Weight) -> Result<ExactDist<BigInt>> {
    let dec = lr_measure(lambda, mu)?;
    let mut masses: BTreeMap<BigInt, BigRational> = BTreeMap::new();
    for (nu, t) in &dec.terms {
        *masses.entry(nu.first().clone()).or_insert_with(BigRational::zero) += &t.atom;
    }
    ExactDist::new(masses)
}

/// Both sides of the first-row identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub lambda: Weight,
    pub mu: Weight,
    pub max_convolution: ExactDist<BigInt>,
    pub nu1_from_lr: ExactDist<BigInt>,
}

impl IdentityReport {
    pub fn equal(&self) -> bool {
        self.max_convolution == self.nu1_from_lr
    }
}

pub fn identity_report(lambda: &Weight, mu: &Weight) -> Result<IdentityReport> {
    identity_report_capped(lambda, mu, Caps::default().support)
}

pub fn identity_report_capped(lambda: &Weight, mu: &Weight, cap: u64) -> Result<IdentityReport> {
    Ok(IdentityReport {
        lambda: lambda.clone(),
        mu: mu.clone(),
        max_convolution: max_convolution_capped(lambda, mu, cap)?,
        nu1_from_lr: nu1_from_lr(lambda, mu)?,
    })
}

/// `true` iff the two exact laws of `ν_1` coincide.
pub fn check_identity(lambda: &Weight, mu: &Weight) -> Result<bool> {
    Ok(identity_report(lambda, mu)?.equal())
}

// ---------------------------------------------------------------------------
// Real patterns

/// A pattern with real entries below an integral top row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealGTPattern {
    rows: Vec<Vec<f64>>,
}

impl RealGTPattern {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.first().map(Vec::len).unwrap_or(0);
        if n == 0 || rows.len() != n || rows.iter().enumerate().any(|(j, r)| r.len() != n - j) {
            return Err(Error::InvalidPattern("rows must have lengths n, n-1, ..., 1".into()));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidPattern("entries must be finite".into()));
        }
        if rows[0].iter().any(|x| x.fract() != 0.0) {
            return Err(Error::InvalidPattern("the top row must be integral".into()));
        }
        if rows[0].windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPattern("the top row must be weakly decreasing".into()));
        }
        for j in 1..n {
            let (above, below) = (&rows[j - 1], &rows[j]);
            if below
                .iter()
                .enumerate()
                .any(|(i, &b)| !(above[i] >= b && b >= above[i + 1]))
            {
                return Err(Error::InvalidPattern(format!("row {j} does not interlace")));
            }
        }
        Ok(RealGTPattern { rows })
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

/// Uniform point of the polytope of real patterns with top row `λ`.
///
/// Each entry is proposed uniformly on its interlacing interval
/// `[y_{i+1}, y_i]` given the row above, which has density `∏ 1/len`; the
/// draw is accepted with probability `∏ len / bound`, where `bound` is the
/// widest that interval can be (`λ_i - λ_{i+j}` on row `j`). Forced
/// coordinates (zero-length intervals) stay fixed.
pub fn random_real_pattern<R: Rng + ?Sized>(
    lambda: &Weight,
    rng: &mut R,
    max_tries: u64,
) -> Result<RealGTPattern> {
    let top: Vec<f64> = lambda
        .to_i64s()
        .ok_or_else(|| Error::TooLarge(format!("{lambda} does not fit in i64")))?
        .into_iter()
        .map(|x| x as f64)
        .collect();
    let n = top.len();
    for _ in 0..max_tries {
        let mut rows = vec![top.clone()];
        let mut accept = 1.0;
        for j in 1..n {
            let above = rows.last().expect("non-empty");
            let row: Vec<f64> = (0..n - j)
                .map(|i| {
                    let (lo, hi) = (above[i + 1], above[i]);
                    let bound = top[i] - top[i + j];
                    if hi > lo {
                        accept *= (hi - lo) / bound;
                        rng.gen_range(lo..=hi)
                    } else {
                        lo
                    }
                })
                .collect();
            rows.push(row);
        }
        if rng.gen::<f64>() < accept {
            return RealGTPattern::new(rows);
        }
    }
    Err(Error::CapExceeded { what: "real pattern rejection sampler", needed: "more".into(), cap: max_tries })
}

/// Round half toward negative infinity: `x ↦ ⌈x - 1/2⌉`. The map is monotone
/// and fixes integers, so interlacing survives rounding.
pub fn round_half_down(x: f64) -> f64 {
    (x - 0.5).ceil()
}

pub fn round_real_pattern(x: &RealGTPattern) -> Result<GTPattern> {
    let rows = x
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| {
                    BigInt::from_f64(round_half_down(v))
                        .ok_or_else(|| Error::InvalidPattern(format!("{v} is not representable")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GTPattern::new(rows).map_err(|e| Error::Internal(format!("rounding broke interlacing: {e}")))
}
