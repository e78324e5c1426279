//! Littlewood-Richardson coefficients and the Littlewood-Richardson measure.
//!
//! Coefficients come from the classical rule: `c_{λ,μ}^ν` counts skew
//! semi-standard fillings of `ν/λ` with content `μ` whose reverse reading word
//! is a lattice word. The fillings are grown one letter at a time as
//! horizontal strips. [`plactic_product_histogram`] multiplies every pair of
//! tableaux instead and is kept as the brute-force check.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dims::dim_by_counting;
use crate::error::{Error, Result};
use crate::pattern::enumerate_normalized;
use crate::plactic::{RunScratch, RunTableau};
use crate::weight::{Weight, YoungDiagram};

/// Default limit on `d_λ · d_μ` for the brute-force histogram.
pub const DEFAULT_ORACLE_CAP: u64 = 1_000_000;

fn check_ranks(lambda: &Weight, mu: &Weight) -> Result<()> {
    if lambda.rank() != mu.rank() {
        return Err(Error::RankMismatch(lambda.rank(), mu.rank()));
    }
    Ok(())
}

/// LR coefficients of two Young diagrams given as row lengths (equal length `n`).
fn lr_diagrams(lambda: &[u64], mu: &[u64]) -> BTreeMap<Vec<u64>, u64> {
    let n = lambda.len();
    let mut out = BTreeMap::new();
    let letters: Vec<u64> = mu.iter().copied().take_while(|&m| m > 0).collect();
    let mut shape = lambda.to_vec();
    let prev = vec![0u64; n];
    grow(&letters, 0, &mut shape, &prev, &mut out);
    out
}

/// Places all copies of letter `k + 1` as a horizontal strip, subject to the
/// lattice condition `Σ_{s<=r} x_s <= Σ_{s<r} prev_s` (for letters after the
/// first), where `prev` holds the per-row counts of the previous letter.
fn grow(
    letters: &[u64],
    k: usize,
    shape: &mut Vec<u64>,
    prev: &[u64],
    out: &mut BTreeMap<Vec<u64>, u64>,
) {
    if k == letters.len() {
        *out.entry(shape.clone()).or_insert(0) += 1;
        return;
    }
    let n = shape.len();
    let old = shape.clone();
    let mut placed = vec![0u64; n];
    place_rows(letters, k, 0, letters[k], 0, 0, &old, shape, prev, &mut placed, out);
}

#[allow(clippy::too_many_arguments)]
fn place_rows(
    letters: &[u64],
    k: usize,
    r: usize,
    remaining: u64,
    placed_so_far: u64,
    prev_before: u64,
    old: &[u64],
    shape: &mut Vec<u64>,
    prev: &[u64],
    placed: &mut Vec<u64>,
    out: &mut BTreeMap<Vec<u64>, u64>,
) {
    let n = old.len();
    if remaining == 0 {
        grow(letters, k + 1, shape, placed, out);
        return;
    }
    if r == n {
        return;
    }
    // horizontal strip: new boxes of row r sit under old boxes of row r - 1
    let strip = if r == 0 { remaining } else { old[r - 1] - old[r] };
    let lattice = if k == 0 {
        remaining
    } else {
        prev_before.saturating_sub(placed_so_far)
    };
    let max_here = remaining.min(strip).min(lattice);
    for x in (0..=max_here).rev() {
        shape[r] = old[r] + x;
        placed[r] = x;
        place_rows(
            letters,
            k,
            r + 1,
            remaining - x,
            placed_so_far + x,
            prev_before + prev[r],
            old,
            shape,
            prev,
            placed,
            out,
        );
    }
    shape[r] = old[r];
    placed[r] = 0;
}

/// `ν ↦ c_{λ,μ}^ν` over all `ν` with a non-zero coefficient.
pub fn lr_coefficients(lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, BigUint>> {
    check_ranks(lambda, mu)?;
    let a = lambda.normalized_parts()?;
    let b = mu.normalized_parts()?;
    let offset: BigInt = lambda.last() + mu.last();
    Ok(lr_diagrams(&a, &b)
        .into_iter()
        .map(|(nu, c)| (Weight::from_normalized(&nu, &offset), BigUint::from(c)))
        .collect())
}

/// Shape tally of `S · T` over every pair of tableaux of shapes `(λ, μ)`.
/// By the plactic Littlewood-Richardson rule the tally of `ν` is
/// `c_{λ,μ}^ν · d_ν`.
pub fn plactic_product_histogram(
    lambda: &YoungDiagram,
    mu: &YoungDiagram,
    cap: u64,
) -> Result<BTreeMap<Weight, BigUint>> {
    check_ranks(lambda.weight(), mu.weight())?;
    let n = lambda.rank();
    let pairs = dim_by_counting(lambda.weight())? * dim_by_counting(mu.weight())?;
    if pairs > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what: "plactic product histogram",
            needed: pairs.to_string(),
            cap,
        });
    }
    let to_u64 = |d: &YoungDiagram| -> Result<Vec<u64>> {
        d.weight()
            .parts()
            .iter()
            .map(|p| p.to_u64().ok_or_else(|| Error::TooLarge(p.to_string())))
            .collect()
    };
    let left: Vec<RunTableau> = enumerate_normalized(&to_u64(lambda)?)
        .iter()
        .map(|rows| RunTableau::from_normalized_pattern(rows))
        .collect();
    let right: Vec<Vec<(u32, u64)>> = enumerate_normalized(&to_u64(mu)?)
        .iter()
        .map(|rows| RunTableau::from_normalized_pattern(rows).reading_runs())
        .collect();

    let tally = left
        .par_iter()
        .fold(BTreeMap::<Vec<u64>, u64>::new, |mut acc, s| {
            let mut work = RunTableau::empty(n);
            let mut scratch = RunScratch::default();
            let mut shape = Vec::with_capacity(n);
            for runs in &right {
                work.copy_from(s);
                work.multiply_by_runs(runs, &mut scratch);
                work.shape_into(&mut shape);
                match acc.get_mut(&shape) {
                    Some(c) => *c += 1,
                    None => {
                        acc.insert(shape.clone(), 1);
                    }
                }
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(tally
        .into_iter()
        .map(|(nu, c)| (Weight::from_normalized(&nu, &BigInt::zero()), BigUint::from(c)))
        .collect())
}

/// One isotypic component of `λ ⊗ μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrTerm {
    pub multiplicity: BigUint,
    pub dim: BigUint,
    pub atom: BigRational,
}

/// The decomposition of `λ ⊗ μ` with the exact LR measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LRDecomposition {
    pub lambda: Weight,
    pub mu: Weight,
    pub terms: BTreeMap<Weight, LrTerm>,
}

impl LRDecomposition {
    pub fn atom(&self, nu: &Weight) -> BigRational {
        self.terms
            .get(nu)
            .map(|t| t.atom.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_mass(&self) -> BigRational {
        self.terms.values().map(|t| &t.atom).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    /// Relabels `ν ↦ ν + s·1` (and shifts the inputs by `p`, `q` with `p + q = s`).
    pub fn shifted(&self, p: &BigInt, q: &BigInt) -> LRDecomposition {
        let s = p + q;
        LRDecomposition {
            lambda: self.lambda.shift(p),
            mu: self.mu.shift(q),
            terms: self
                .terms
                .iter()
                .map(|(nu, t)| (nu.shift(&s), t.clone()))
                .collect(),
        }
    }
}

/// `P_{λ,μ}(ν) = c_{λ,μ}^ν d_ν / (d_λ d_μ)`, exactly.
pub fn lr_measure(lambda: &Weight, mu: &Weight) -> Result<LRDecomposition> {
    let coeffs = lr_coefficients(lambda, mu)?;
    let d_lambda = dim_by_counting(lambda)?;
    let d_mu = dim_by_counting(mu)?;
    let denom = BigInt::from(&d_lambda * &d_mu);
    let mut terms = BTreeMap::new();
    let mut weighted = BigUint::zero();
    for (nu, c) in coeffs {
        let d_nu = dim_by_counting(&nu)?;
        weighted += &c * &d_nu;
        let atom = BigRational::new(BigInt::from(&c * &d_nu), denom.clone());
        terms.insert(nu, LrTerm { multiplicity: c, dim: d_nu, atom });
    }
    if weighted != &d_lambda * &d_mu {
        return Err(Error::Internal(format!(
            "Σ c·d_ν = {weighted} but d_λ·d_μ = {} for {lambda} ⊗ {mu}",
            &d_lambda * &d_mu
        )));
    }
    let dec = LRDecomposition { lambda: lambda.clone(), mu: mu.clone(), terms };
    if !dec.total_mass().is_one() {
        return Err(Error::Internal(format!("LR measure of {lambda} ⊗ {mu} is not normalized")));
    }
    Ok(dec)
}

/// Compares `P_{λ+p1, μ+q1}(ν + (p+q)1)` with `P_{λ,μ}(ν)` atom by atom.
pub fn verify_shift_invariance(lambda: &Weight, mu: &Weight, p: i64, q: i64) -> Result<bool> {
    let (p, q) = (BigInt::from(p), BigInt::from(q));
    let base = lr_measure(lambda, mu)?;
    let moved = lr_measure(&lambda.shift(&p), &mu.shift(&q))?;
    let relabeled = base.shifted(&p, &q);
    Ok(relabeled.terms.len() == moved.terms.len()
        && relabeled
            .terms
            .iter()
            .all(|(nu, t)| moved.terms.get(nu).is_some_and(|m| m.atom == t.atom)))
}

/// JSON form `{"lambda":[..],"mu":[..],"terms":[{"nu":[..],"c":"..","atom":"num/den"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrDecompositionJson {
    pub lambda: Weight,
    pub mu: Weight,
    pub terms: Vec<LrTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrTermJson {
    pub nu: Weight,
    pub c: String,
    pub atom: String,
}

impl From<&LRDecomposition> for LrDecompositionJson {
    fn from(d: &LRDecomposition) -> Self {
        LrDecompositionJson {
            lambda: d.lambda.clone(),
            mu: d.mu.clone(),
            terms: d
                .terms
                .iter()
                .map(|(nu, t)| LrTermJson {
                    nu: nu.clone(),
                    c: t.multiplicity.to_string(),
                    atom: crate::dist::format_rational(&t.atom),
                })
                .collect(),
        }
    }
}

impl LrDecompositionJson {
    /// Rebuilds the decomposition, recomputing dimensions and checking every
    /// atom against `c·d_ν/(d_λ d_μ)`.
    pub fn into_decomposition(self) -> Result<LRDecomposition> {
        check_ranks(&self.lambda, &self.mu)?;
        let denom = BigInt::from(dim_by_counting(&self.lambda)? * dim_by_counting(&self.mu)?);
        let mut terms = BTreeMap::new();
        for t in self.terms {
            let c: BigUint = t
                .c
                .parse()
                .map_err(|_| Error::Parse(format!("multiplicity `{}`", t.c)))?;
            let atom = crate::dist::parse_rational(&t.atom)?;
            let dim = dim_by_counting(&t.nu)?;
            let expected = BigRational::new(BigInt::from(&c * &dim), denom.clone());
            if atom != expected {
                return Err(Error::Parse(format!("atom of {} is inconsistent", t.nu)));
            }
            terms.insert(t.nu, LrTerm { multiplicity: c, dim, atom });
        }
        Ok(LRDecomposition { lambda: self.lambda, mu: self.mu, terms })
    }
}

impl Serialize for LRDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LrDecompositionJson::from(self).serialize(s)
    }
}
