//! Gelfand-Tsetlin patterns.
//!
//! Storage is row-major: `rows[0]` is the shape `λ` (length `n`), and
//! `rows[j]` has length `n - j`. Every row interlaces the row above it:
//! `above[i] >= below[i] >= above[i + 1]`.
//!
//! Index map: the entry `a_l(i)` (the number of letters `<= l` in row `i` of
//! the corresponding tableau) is entry `i` of the row of length `l`, i.e.
//! `rows[n - l][i - 1]` with 1-based `l` and `i`. Taking `l = n` returns
//! `λ_i`. This is the only place the translation is spelled out; everything
//! else goes through [`GTPattern::entry`].

use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GTPattern {
    rows: Vec<Vec<BigInt>>,
}

impl GTPattern {
    /// Validates row lengths `n, n-1, ..., 1` and interlacing.
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.first().map(Vec::len).unwrap_or(0);
        if n == 0 {
            return Err(Error::InvalidPattern("a pattern needs a non-empty top row".into()));
        }
        if rows.len() != n {
            return Err(Error::InvalidPattern(format!(
                "a pattern of rank {n} has {n} rows, got {}",
                rows.len()
            )));
        }
        for (j, row) in rows.iter().enumerate() {
            if row.len() != n - j {
                return Err(Error::InvalidPattern(format!(
                    "row {j} should have length {}, got {}",
                    n - j,
                    row.len()
                )));
            }
        }
        // the top row must itself be a weight
        Weight::new(rows[0].clone()).map_err(|e| Error::InvalidPattern(e.to_string()))?;
        for j in 1..n {
            if !interlaces(&rows[j - 1], &rows[j]) {
                return Err(Error::InvalidPattern(format!(
                    "row {j} does not interlace the row above it"
                )));
            }
        }
        Ok(GTPattern { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        GTPattern::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub(crate) fn from_normalized(rows: &[Vec<u64>], offset: &BigInt) -> GTPattern {
        GTPattern {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x) + offset).collect())
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn shape(&self) -> Weight {
        Weight::new(self.rows[0].clone()).expect("validated on construction")
    }

    /// `a_l(i)` for `1 <= i <= l <= n`; `l = n` yields `λ_i`.
    pub fn entry(&self, l: usize, i: usize) -> &BigInt {
        let n = self.rank();
        assert!(1 <= i && i <= l && l <= n, "a_{l}({i}) is not a pattern entry for n = {n}");
        &self.rows[n - l][i - 1]
    }

    /// `(a_1, ..., a_{n-1}, λ_1)` where `a_l = a_l(1)`. Weakly increasing.
    pub fn first_row_vector(&self) -> Vec<BigInt> {
        let n = self.rank();
        (1..=n).map(|l| self.entry(l, 1).clone()).collect()
    }

    /// Number of stored entries below the top row, `n(n-1)/2`.
    pub fn interior_len(&self) -> usize {
        self.rows[1..].iter().map(Vec::len).sum()
    }
}

pub fn first_row_vector(pattern: &GTPattern) -> Vec<BigInt> {
    pattern.first_row_vector()
}

fn interlaces<T: PartialOrd>(above: &[T], below: &[T]) -> bool {
    below.len() + 1 == above.len()
        && below
            .iter()
            .enumerate()
            .all(|(i, b)| above[i] >= *b && *b >= above[i + 1])
}

impl fmt::Display for GTPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, row) in self.rows.iter().enumerate() {
            if j > 0 {
                f.write_str(" / ")?;
            }
            for (i, x) in row.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

struct IntRow<'a>(&'a [BigInt]);

impl Serialize for IntRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::weight::serialize_ints(self.0, s)
    }
}

struct OwnedIntRow(Vec<BigInt>);

impl<'de> Deserialize<'de> for OwnedIntRow {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        crate::weight::deserialize_ints(d).map(OwnedIntRow)
    }
}

/// JSON form: array of rows of integers, top row first.
impl Serialize for GTPattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows.len()))?;
        for row in &self.rows {
            seq.serialize_element(&IntRow(row))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GTPattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<OwnedIntRow> = Vec::deserialize(d)?;
        GTPattern::new(rows.into_iter().map(|r| r.0).collect()).map_err(de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Enumeration kernels on shift-normalized rows (machine integers).

/// Number of rows of length `m - 1` interlacing `row`, `∏ (row[i] - row[i+1] + 1)`,
/// saturating at `u128::MAX`.
pub(crate) fn interlacing_row_count(row: &[u64]) -> u128 {
    row.windows(2)
        .map(|w| (w[0] - w[1]) as u128 + 1)
        .fold(1u128, |acc, g| acc.saturating_mul(g))
}

/// Calls `f` on every row interlacing `row`, in lexicographic order.
pub(crate) fn for_each_interlacing(row: &[u64], mut f: impl FnMut(&[u64])) {
    let m = row.len();
    if m <= 1 {
        f(&[]);
        return;
    }
    let lo: Vec<u64> = row[1..].to_vec();
    let hi: Vec<u64> = row[..m - 1].to_vec();
    let mut cur = lo.clone();
    loop {
        f(&cur);
        // odometer, last coordinate fastest
        let mut k = m - 1;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if cur[k] < hi[k] {
                cur[k] += 1;
                for j in k + 1..m - 1 {
                    cur[j] = lo[j];
                }
                break;
            }
        }
    }
}

/// Every pattern with top row `top` (normalized machine rows, top row first).
pub(crate) fn enumerate_normalized(top: &[u64]) -> Vec<Vec<Vec<u64>>> {
    fn rec(stack: &mut Vec<Vec<u64>>, out: &mut Vec<Vec<Vec<u64>>>) {
        let last = stack.last().expect("non-empty stack");
        if last.len() <= 1 {
            out.push(stack.clone());
            return;
        }
        let last = last.clone();
        for_each_interlacing(&last, |next| {
            stack.push(next.to_vec());
            rec(stack, out);
            stack.pop();
        });
    }
    let mut out = Vec::new();
    rec(&mut vec![top.to_vec()], &mut out);
    out
}

/// All patterns of shape `λ`, in lexicographic order of their rows.
/// Fails when the pattern count exceeds `cap`.
pub fn enumerate_patterns(lambda: &Weight, cap: u64) -> Result<Vec<GTPattern>> {
    let count = crate::dims::dim_by_counting(lambda)?;
    if count > num_bigint::BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what: "pattern enumeration",
            needed: count.to_string(),
            cap,
        });
    }
    let top = lambda.normalized_parts()?;
    let offset = lambda.last().clone();
    Ok(enumerate_normalized(&top)
        .iter()
        .map(|rows| GTPattern::from_normalized(rows, &offset))
        .collect())
}
