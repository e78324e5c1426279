//! Highest weights of irreducible `GL(n)` representations.
//!
//! A [`Weight`] is a weakly decreasing vector of integers of length `n >= 1`.
//! Parts are arbitrary-precision; algorithms that enumerate patterns work on
//! the shift-normalized form (last part subtracted), which is small whenever
//! enumeration is feasible at all.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    parts: Vec<BigInt>,
}

impl Weight {
    pub fn new(parts: Vec<BigInt>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidWeight("a weight needs at least one part".into()));
        }
        if let Some(i) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(format!(
                "parts must be weakly decreasing, but part {} = {} < part {} = {}",
                i + 1,
                parts[i],
                i + 2,
                parts[i + 1]
            )));
        }
        Ok(Weight { parts })
    }

    pub fn from_ints(parts: &[i64]) -> Result<Self> {
        Weight::new(parts.iter().map(|&p| BigInt::from(p)).collect())
    }

    /// The weight `(c, ..., c)` of rank `n`.
    pub fn constant(n: usize, c: impl Into<BigInt>) -> Result<Self> {
        Weight::new(vec![c.into(); n])
    }

    pub fn zero(n: usize) -> Result<Self> {
        Weight::constant(n, 0)
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[BigInt] {
        &self.parts
    }

    /// `λ_i` with 1-based `i`.
    pub fn part(&self, i: usize) -> &BigInt {
        &self.parts[i - 1]
    }

    pub fn first(&self) -> &BigInt {
        &self.parts[0]
    }

    pub fn last(&self) -> &BigInt {
        &self.parts[self.parts.len() - 1]
    }

    /// `λ_1 - λ_n`.
    pub fn spread(&self) -> BigInt {
        self.first() - self.last()
    }

    pub fn is_constant(&self) -> bool {
        self.first() == self.last()
    }

    pub fn is_young_diagram(&self) -> bool {
        self.last() >= &BigInt::zero()
    }

    /// `(λ_1 + p, ..., λ_n + p)`.
    pub fn shift(&self, p: &BigInt) -> Weight {
        Weight {
            parts: self.parts.iter().map(|x| x + p).collect(),
        }
    }

    /// The weight of the dual representation, `(-λ_n, ..., -λ_1)`.
    pub fn contragredient(&self) -> Weight {
        Weight {
            parts: self.parts.iter().rev().map(|x| -x).collect(),
        }
    }

    /// Subtracts the last part. Returns the normalized weight (a Young diagram
    /// with `λ_n = 0`) and the shift that was removed.
    pub fn normalize(&self) -> (YoungDiagram, BigInt) {
        let offset = self.last().clone();
        let shifted = self.shift(&-offset.clone());
        (YoungDiagram(shifted), offset)
    }

    /// Normalized parts as machine integers, for enumeration kernels.
    pub(crate) fn normalized_parts(&self) -> Result<Vec<u64>> {
        let last = self.last();
        self.parts
            .iter()
            .map(|p| {
                (p - last).to_u64().ok_or_else(|| {
                    Error::TooLarge(format!("weight {self} has a gap beyond 64 bits"))
                })
            })
            .collect()
    }

    /// Builds a weight from normalized machine parts plus an offset.
    pub(crate) fn from_normalized(parts: &[u64], offset: &BigInt) -> Weight {
        Weight {
            parts: parts.iter().map(|&p| BigInt::from(p) + offset).collect(),
        }
    }

    /// Parts as `i64`, when they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.parts.iter().map(|p| p.to_i64()).collect()
    }
}

/// `shift_weight(λ, p)`.
pub fn shift_weight(lambda: &Weight, p: impl Into<BigInt>) -> Weight {
    lambda.shift(&p.into())
}

pub fn contragredient(lambda: &Weight) -> Weight {
    lambda.contragredient()
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Parses the canonical text form `"9,7,3"`. Whitespace around parts and an
/// optional pair of enclosing parentheses are tolerated.
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(trimmed);
        if inner.trim().is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        let parts = inner
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("`{}` is not an integer", tok.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Weight::new(parts)
    }
}

/// Serializes as a JSON array of integers. Parts outside the `i64` range are
/// written as decimal strings.
pub(crate) fn serialize_ints<S: Serializer>(parts: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(parts.len()))?;
    for p in parts {
        match p.to_i64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&p.to_string())?,
        }
    }
    seq.end()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntOrString {
    Int(i64),
    Str(String),
}

impl IntOrString {
    fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntOrString::Int(v) => Ok(BigInt::from(v)),
            IntOrString::Str(s) => s
                .parse()
                .map_err(|_| E::custom(format!("`{s}` is not an integer"))),
        }
    }
}

pub(crate) fn deserialize_ints<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    struct IntsVisitor;

    impl<'de> Visitor<'de> for IntsVisitor {
        type Value = Vec<BigInt>;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("an array of integers")
        }

        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
            let mut out = Vec::new();
            while let Some(v) = seq.next_element::<IntOrString>()? {
                out.push(v.into_bigint()?);
            }
            Ok(out)
        }
    }

    d.deserialize_seq(IntsVisitor)
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_ints(&self.parts, s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = deserialize_ints(d)?;
        Weight::new(parts).map_err(de::Error::custom)
    }
}

/// A weight whose parts are all non-negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram(Weight);

impl YoungDiagram {
    pub fn new(weight: Weight) -> Result<Self> {
        if !weight.is_young_diagram() {
            return Err(Error::InvalidWeight(format!(
                "{weight} has a negative part and is not a Young diagram"
            )));
        }
        Ok(YoungDiagram(weight))
    }

    pub fn from_ints(parts: &[i64]) -> Result<Self> {
        YoungDiagram::new(Weight::from_ints(parts)?)
    }

    pub fn weight(&self) -> &Weight {
        &self.0
    }

    pub fn into_weight(self) -> Weight {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    /// Row lengths as machine integers.
    pub fn row_lengths(&self) -> Result<Vec<usize>> {
        self.0
            .parts()
            .iter()
            .map(|p| {
                p.to_usize()
                    .ok_or_else(|| Error::TooLarge(format!("row length {p} does not fit in memory")))
            })
            .collect()
    }

    /// Number of boxes.
    pub fn size(&self) -> BigInt {
        self.0.parts().iter().sum()
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<YoungDiagram> for Weight {
    fn from(d: YoungDiagram) -> Weight {
        d.0
    }
}

/// All weakly decreasing vectors of length `n` with last part 0 and first part
/// at most `max_spread`, in lexicographic order. These are the
/// shift-normalized representatives of weights with `λ_1 - λ_n <= max_spread`.
pub fn normalized_weights(n: usize, max_spread: u64) -> Vec<Weight> {
    fn rec(n: usize, cap: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if prefix.len() + 1 == n {
            let mut v = prefix.clone();
            v.push(0);
            out.push(v);
            return;
        }
        for p in 0..=cap {
            prefix.push(p);
            rec(n, p, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut raw = Vec::new();
    rec(n, max_spread, &mut Vec::new(), &mut raw);
    raw.sort();
    raw.iter()
        .map(|v| Weight::from_normalized(v, &BigInt::zero()))
        .collect()
}
