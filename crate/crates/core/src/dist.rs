//! Finite probability distributions with exact rational masses.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `"num/den"` in lowest terms; integers are written with denominator 1.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not a rational number"));
    match s.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().map_err(|_| bad())?;
            let den: BigInt = b.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Outcomes are integers or integer vectors.
pub trait Outcome: Ord + Clone + std::fmt::Debug {
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self>;
    fn to_text(&self) -> String;
}

fn int_to_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

fn int_from_json(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("{n} is not an integer"))),
        serde_json::Value::String(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("`{s}` is not an integer"))),
        other => Err(Error::Parse(format!("{other} is not an integer"))),
    }
}

impl Outcome for BigInt {
    fn to_json(&self) -> serde_json::Value {
        int_to_json(self)
    }

    fn from_json(v: &serde_json::Value) -> Result<Self> {
        int_from_json(v)
    }

    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl Outcome for Vec<BigInt> {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.iter().map(int_to_json).collect())
    }

    fn from_json(v: &serde_json::Value) -> Result<Self> {
        v.as_array()
            .ok_or_else(|| Error::Parse(format!("{v} is not an array")))?
            .iter()
            .map(int_from_json)
            .collect()
    }

    fn to_text(&self) -> String {
        self.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

/// Support map with strictly positive masses summing to exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactDist<K: Outcome> {
    masses: BTreeMap<K, BigRational>,
}

impl<K: Outcome> ExactDist<K> {
    pub fn new(masses: BTreeMap<K, BigRational>) -> Result<Self> {
        if let Some((k, m)) = masses.iter().find(|(_, m)| !m.is_positive()) {
            return Err(Error::Internal(format!("mass {m} at {k:?} is not positive")));
        }
        let total: BigRational = masses.values().sum();
        if !total.is_one() {
            return Err(Error::Internal(format!("masses sum to {total}, not 1")));
        }
        Ok(ExactDist { masses })
    }

    /// Normalizes non-negative counts; zero counts are dropped.
    pub fn from_counts(counts: BTreeMap<K, BigUint>) -> Result<Self> {
        let total: BigUint = counts.values().sum();
        if total.is_zero() {
            return Err(Error::Internal("distribution with zero total count".into()));
        }
        let total = BigInt::from(total);
        let masses = counts
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, BigRational::new(BigInt::from(c), total.clone())))
            .collect();
        ExactDist::new(masses)
    }

    pub fn point(k: K) -> Self {
        ExactDist { masses: [(k, BigRational::one())].into() }
    }

    pub fn masses(&self) -> &BTreeMap<K, BigRational> {
        &self.masses
    }

    pub fn mass(&self, k: &K) -> BigRational {
        self.masses.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support_len(&self) -> usize {
        self.masses.len()
    }

    pub fn min_outcome(&self) -> &K {
        self.masses.keys().next().expect("distributions are non-empty")
    }

    pub fn max_outcome(&self) -> &K {
        self.masses.keys().next_back().expect("distributions are non-empty")
    }

    /// Largest atom; ties go to the smallest outcome.
    pub fn max_atom(&self) -> (K, BigRational) {
        let mut best: Option<(&K, &BigRational)> = None;
        for (k, m) in &self.masses {
            if best.is_none_or(|(_, b)| m > b) {
                best = Some((k, m));
            }
        }
        let (k, m) = best.expect("distributions are non-empty");
        (k.clone(), m.clone())
    }

    pub fn map<L: Outcome>(&self, f: impl Fn(&K) -> L) -> ExactDist<L> {
        let mut out: BTreeMap<L, BigRational> = BTreeMap::new();
        for (k, m) in &self.masses {
            *out.entry(f(k)).or_insert_with(BigRational::zero) += m;
        }
        ExactDist { masses: out }
    }

    pub fn to_json(&self) -> DistJson {
        DistJson {
            support: self
                .masses
                .iter()
                .map(|(k, m)| AtomJson { outcome: k.to_json(), mass: format_rational(m) })
                .collect(),
        }
    }

    pub fn from_json(j: &DistJson) -> Result<Self> {
        let mut masses = BTreeMap::new();
        for a in &j.support {
            let k = K::from_json(&a.outcome)?;
            if masses.insert(k, parse_rational(&a.mass)?).is_some() {
                return Err(Error::Parse("duplicate outcome".into()));
            }
        }
        ExactDist::new(masses).map_err(|e| Error::Parse(e.to_string()))
    }

    /// CSV with columns `outcome,numerator,denominator,approx`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["outcome", "numerator", "denominator", "approx"])?;
        for (k, m) in &self.masses {
            wr.write_record([
                k.to_text(),
                m.numer().to_string(),
                m.denom().to_string(),
                format!("{:.12}", rational_to_f64(m)),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

/// `{"support":[{"outcome":..,"mass":"num/den"}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistJson {
    pub support: Vec<AtomJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomJson {
    pub outcome: serde_json::Value,
    pub mass: String,
}

impl<K: Outcome> Serialize for ExactDist<K> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn rational_text() {
        assert_eq!(format_rational(&q(6, 9)), "2/3");
        assert_eq!(format_rational(&q(1, 1)), "1/1");
        assert_eq!(parse_rational("2/3").unwrap(), q(2, 3));
        assert_eq!(parse_rational("4").unwrap(), q(4, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn construction_checks() {
        let ok: BTreeMap<BigInt, BigRational> = [(1.into(), q(1, 3)), (2.into(), q(2, 3))].into();
        assert!(ExactDist::new(ok).is_ok());
        let short: BTreeMap<BigInt, BigRational> = [(1.into(), q(1, 3))].into();
        assert!(ExactDist::new(short).is_err());
        let zero: BTreeMap<BigInt, BigRational> = [(1.into(), q(0, 1)), (2.into(), q(1, 1))].into();
        assert!(ExactDist::new(zero).is_err());
    }

    #[test]
    fn counts_map_and_argmax() {
        let d = ExactDist::from_counts(
            [(BigInt::from(0), BigUint::from(1u32)), (BigInt::from(1), BigUint::from(2u32))].into(),
        )
        .unwrap();
        assert_eq!(d.mass(&BigInt::from(1)), q(2, 3));
        assert_eq!(d.max_atom(), (BigInt::from(1), q(2, 3)));
        let collapsed = d.map(|_| BigInt::from(7));
        assert_eq!(collapsed, ExactDist::point(BigInt::from(7)));
        let tie = ExactDist::from_counts(
            [(BigInt::from(3), BigUint::from(1u32)), (BigInt::from(5), BigUint::from(1u32))].into(),
        )
        .unwrap();
        assert_eq!(tie.max_atom().0, BigInt::from(3));
    }

    #[test]
    fn json_and_csv() {
        let d: ExactDist<Vec<BigInt>> = ExactDist::from_counts(
            [
                (vec![BigInt::from(0), BigInt::from(1)], BigUint::from(1u32)),
                (vec![BigInt::from(1), BigInt::from(1)], BigUint::from(3u32)),
            ]
            .into(),
        )
        .unwrap();
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(
            text,
            r#"{"support":[{"outcome":[0,1],"mass":"1/4"},{"outcome":[1,1],"mass":"3/4"}]}"#
        );
        let j: DistJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ExactDist::<Vec<BigInt>>::from_json(&j).unwrap(), d);

        let mut buf = Vec::new();
        d.map(|v| v[0].clone()).write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(
            s,
            "outcome,numerator,denominator,approx\n0,1,4,0.250000000000\n1,3,4,0.750000000000\n"
        );
    }
}
