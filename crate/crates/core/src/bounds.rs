//! Exact atom bounds, their empirical constants, and the one-row family that
//! saturates them.
//!
//! Every ratio here is an exact rational. Grid suprema are reported together
//! with the cell that attains them; ties go to the first cell in grid order,
//! which is lexicographic in the inputs, so parallel and serial scans agree.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::Serializer;
use serde::Serialize;

use crate::dims::dim_by_counting;
use crate::dist::format_rational;
use crate::error::{Error, Result};
use crate::lr::lr_measure;
use crate::measure::marginal_ak;
use crate::weight::{normalized_weights, Weight};

/// What a report was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundInput {
    Pair { lambda: Weight, mu: Weight },
    Marginal { lambda: Weight, k: usize },
}

impl BoundInput {
    pub fn lambda(&self) -> &Weight {
        match self {
            BoundInput::Pair { lambda, .. } | BoundInput::Marginal { lambda, .. } => lambda,
        }
    }

    pub fn mu_or_k(&self) -> String {
        match self {
            BoundInput::Pair { mu, .. } => mu.to_string(),
            BoundInput::Marginal { k, .. } => k.to_string(),
        }
    }
}

/// The argmax: a highest weight `ν` or a first-row value `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Weight(Weight),
    Value(BigInt),
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Weight(w) => write!(f, "{w}"),
            Witness::Value(x) => write!(f, "{x}"),
        }
    }
}

/// `lhs` against the variable part `rhs_scale` of a bound. When the relevant
/// gap is zero the right-hand side is infinite, the report is `vacuous`, and
/// `rhs_scale` and `ratio` are absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub input: BoundInput,
    pub lhs: BigRational,
    pub rhs_scale: Option<BigRational>,
    pub ratio: Option<BigRational>,
    pub witness: Witness,
    pub vacuous: bool,
}

impl BoundReport {
    fn new(input: BoundInput, lhs: BigRational, rhs_scale: Option<BigRational>, witness: Witness) -> Self {
        let ratio = rhs_scale.as_ref().map(|s| &lhs / s);
        BoundReport { input, lhs, vacuous: rhs_scale.is_none(), rhs_scale, ratio, witness }
    }

    fn csv_record(&self) -> Vec<String> {
        let split = |q: &Option<BigRational>| match q {
            Some(q) => (q.numer().to_string(), q.denom().to_string()),
            None => (String::new(), String::new()),
        };
        let (scale_num, scale_den) = split(&self.rhs_scale);
        let (ratio_num, ratio_den) = split(&self.ratio);
        vec![
            self.input.lambda().to_string(),
            self.input.mu_or_k(),
            self.lhs.numer().to_string(),
            self.lhs.denom().to_string(),
            scale_num,
            scale_den,
            ratio_num,
            ratio_den,
            self.witness.to_string(),
            self.vacuous.to_string(),
        ]
    }
}

#[derive(Serialize)]
struct BoundReportJson {
    lambda: Weight,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<Weight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    lhs: String,
    rhs_scale: Option<String>,
    ratio: Option<String>,
    witness: String,
    vacuous: bool,
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (mu, k) = match &self.input {
            BoundInput::Pair { mu, .. } => (Some(mu.clone()), None),
            BoundInput::Marginal { k, .. } => (None, Some(*k)),
        };
        BoundReportJson {
            lambda: self.input.lambda().clone(),
            mu,
            k,
            lhs: format_rational(&self.lhs),
            rhs_scale: self.rhs_scale.as_ref().map(format_rational),
            ratio: self.ratio.as_ref().map(format_rational),
            witness: self.witness.to_string(),
            vacuous: self.vacuous,
        }
        .serialize(s)
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "lambda",
    "mu_or_k",
    "lhs_num",
    "lhs_den",
    "scale_num",
    "scale_den",
    "ratio_num",
    "ratio_den",
    "witness",
    "vacuous_flag",
];

pub fn write_reports_csv<W: Write>(reports: &[BoundReport], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(CSV_HEADER)?;
    for r in reports {
        wr.write_record(r.csv_record())?;
    }
    wr.flush()?;
    Ok(())
}

fn rat(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

fn gap(lambda: &Weight) -> BigInt {
    lambda.spread()
}

/// The largest atom of `P_{λ,μ}`; ties go to the lexicographically smallest `ν`.
pub fn max_atom(lambda: &Weight, mu: &Weight) -> Result<(Weight, BigRational)> {
    let dec = lr_measure(lambda, mu)?;
    let mut best: Option<(&Weight, &BigRational)> = None;
    for (nu, t) in &dec.terms {
        if best.is_none_or(|(_, b)| &t.atom > b) {
            best = Some((nu, &t.atom));
        }
    }
    let (nu, a) = best.ok_or_else(|| Error::Internal("empty decomposition".into()))?;
    Ok((nu.clone(), a.clone()))
}

/// `max_ν P_{λ,μ}(ν)` against `1/(λ_1 - λ_n) + 1/(μ_1 - μ_n)`.
pub fn theorem_ratio(lambda: &Weight, mu: &Weight) -> Result<BoundReport> {
    let (nu, atom) = max_atom(lambda, mu)?;
    let (gl, gm) = (gap(lambda), gap(mu));
    let scale = if gl.is_zero() || gm.is_zero() {
        None
    } else {
        Some(rat(gl).recip() + rat(gm).recip())
    };
    Ok(BoundReport::new(
        BoundInput::Pair { lambda: lambda.clone(), mu: mu.clone() },
        atom,
        scale,
        Witness::Weight(nu),
    ))
}

/// `max_x P(a_k = x)` against `1/(λ_1 - λ_{n+1-k})`, for `1 <= k <= n-1`.
pub fn firstrow_ratio(lambda: &Weight, k: usize) -> Result<BoundReport> {
    let n = lambda.rank();
    if k == 0 || k >= n {
        return Err(Error::InvalidWeight(format!("k = {k} must lie in 1..={}", n.saturating_sub(1))));
    }
    let (x, p) = marginal_ak(lambda, k)?.max_atom();
    let g = lambda.first() - lambda.part(n + 1 - k);
    let scale = (!g.is_zero()).then(|| rat(g).recip());
    Ok(BoundReport::new(
        BoundInput::Marginal { lambda: lambda.clone(), k },
        p,
        scale,
        Witness::Value(x),
    ))
}

/// Outcome of the `SL(n)` form of the bound for one pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlnCheck {
    pub holds: bool,
    /// The `ν` maximizing `d_ν / (d_λ d_μ)` (lexicographically smallest on ties).
    pub witness: Weight,
    #[serde(serialize_with = "ser_rational")]
    pub max_ratio: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub bound: BigRational,
}

fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

/// Checks `d_ν / (d_λ d_μ) <= C (1/λ_1 + 1/μ_1)` over the support of `λ ⊗ μ`.
/// Both weights must be normalized (`λ_n = μ_n = 0`) with positive first part.
pub fn sln_corollary_report(lambda: &Weight, mu: &Weight, c: &BigRational) -> Result<SlnCheck> {
    for w in [lambda, mu] {
        if !w.last().is_zero() || !w.first().is_positive() {
            return Err(Error::InvalidWeight(format!(
                "{w} must have last part 0 and positive first part"
            )));
        }
    }
    let dec = lr_measure(lambda, mu)?;
    let denom = BigInt::from(dim_by_counting(lambda)? * dim_by_counting(mu)?);
    let mut best: Option<(&Weight, BigRational)> = None;
    for (nu, t) in &dec.terms {
        let r = BigRational::new(BigInt::from(t.dim.clone()), denom.clone());
        if best.as_ref().is_none_or(|(_, b)| &r > b) {
            best = Some((nu, r));
        }
    }
    let (nu, max_ratio) = best.ok_or_else(|| Error::Internal("empty decomposition".into()))?;
    let bound = c * (rat(lambda.first().clone()).recip() + rat(mu.first().clone()).recip());
    Ok(SlnCheck { holds: max_ratio <= bound, witness: nu.clone(), max_ratio, bound })
}

pub fn sln_corollary_check(lambda: &Weight, mu: &Weight, c: &BigRational) -> Result<bool> {
    Ok(sln_corollary_report(lambda, mu, c)?.holds)
}

/// One cell of the one-row family `λ = (N, 0, ..., 0)`, `μ = (M, 0, ..., 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationRow {
    pub n: usize,
    pub big_n: u64,
    pub big_m: u64,
    /// Support equals `{(A, B, 0, ...) : A + B = N + M, A >= max(N, M)}` (for
    /// `n = 2` the shape `(A, B)` itself).
    pub support_ok: bool,
    pub multiplicities_one: bool,
    pub support_size: usize,
    /// The count as stated in the literature, `min(N, M)`; the actual count
    /// is `min(N, M) + 1`, and `count_matches_literature` records which holds.
    pub literature_count: u64,
    pub count_matches_literature: bool,
    pub lower_bound_ok: bool,
    pub report: BoundReport,
}

fn one_row(n: usize, len: u64) -> Result<Weight> {
    let mut parts = vec![BigInt::zero(); n];
    parts[0] = BigInt::from(len);
    Weight::new(parts)
}

pub fn saturation_check(n: usize, big_n: u64, big_m: u64) -> Result<SaturationRow> {
    if n < 2 {
        return Err(Error::InvalidWeight("the one-row family needs n >= 2".into()));
    }
    let lambda = one_row(n, big_n)?;
    let mu = one_row(n, big_m)?;
    let dec = lr_measure(&lambda, &mu)?;
    let expected: Vec<Weight> = (big_n.max(big_m)..=big_n + big_m)
        .rev()
        .map(|a| {
            let mut parts = vec![BigInt::zero(); n];
            parts[0] = BigInt::from(a);
            parts[1] = BigInt::from(big_n + big_m - a);
            Weight::new(parts)
        })
        .collect::<Result<_>>()?;
    let mut actual: Vec<Weight> = dec.terms.keys().cloned().collect();
    let mut expected_sorted = expected.clone();
    actual.sort();
    expected_sorted.sort();
    let support_size = actual.len();
    let multiplicities_one = dec.terms.values().all(|t| t.multiplicity.is_one());
    let report = theorem_ratio(&lambda, &mu)?;
    let lower_bound_ok = report.lhs >= BigRational::new(BigInt::one(), BigInt::from(support_size));
    let literature_count = big_n.min(big_m);
    Ok(SaturationRow {
        n,
        big_n,
        big_m,
        support_ok: actual == expected_sorted,
        multiplicities_one,
        support_size,
        literature_count,
        count_matches_literature: support_size as u64 == literature_count,
        lower_bound_ok,
        report,
    })
}

/// `N, M` in `1..=max_len`, row-major in `N`.
pub fn saturation_scan(n: usize, max_len: u64) -> Result<Vec<SaturationRow>> {
    let cells: Vec<(u64, u64)> =
        (1..=max_len).flat_map(|a| (1..=max_len).map(move |b| (a, b))).collect();
    cells.into_par_iter().map(|(a, b)| saturation_check(n, a, b)).collect()
}

pub fn write_saturation_csv<W: Write>(rows: &[SaturationRow], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    let mut header: Vec<&str> = CSV_HEADER.to_vec();
    header.extend([
        "support_size",
        "literature_count",
        "count_matches_literature",
        "support_ok",
        "multiplicities_one",
        "lower_bound_ok",
    ]);
    wr.write_record(&header)?;
    for r in rows {
        let mut rec = r.report.csv_record();
        rec.extend([
            r.support_size.to_string(),
            r.literature_count.to_string(),
            r.count_matches_literature.to_string(),
            r.support_ok.to_string(),
            r.multiplicities_one.to_string(),
            r.lower_bound_ok.to_string(),
        ]);
        wr.write_record(&rec)?;
    }
    wr.flush()?;
    Ok(())
}

/// Smallest `i` with `λ_i - λ_{i+1} >= (λ_1 - λ_n)/(n - 1)`, and that gap.
pub fn pigeonhole_witness(lambda: &Weight) -> Result<(usize, BigInt)> {
    let n = lambda.rank();
    let spread = lambda.spread();
    if n < 2 || spread.is_zero() {
        return Err(Error::Degenerate(format!("{lambda} has no positive gap")));
    }
    let p = lambda.parts();
    (0..n - 1)
        .map(|i| (i + 1, &p[i] - &p[i + 1]))
        .find(|(_, g)| g * BigInt::from(n - 1) >= spread)
        .ok_or_else(|| Error::Internal(format!("no pigeonhole gap in {lambda}")))
}

/// All reports of a grid scan and the exact supremum of the finite ratios.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanSummary {
    pub reports: Vec<BoundReport>,
    /// Index into `reports` of the first cell attaining the supremum.
    pub argsup: Option<usize>,
}

impl ScanSummary {
    pub fn from_reports(reports: Vec<BoundReport>) -> Self {
        let mut argsup: Option<usize> = None;
        for (i, r) in reports.iter().enumerate() {
            if let Some(q) = &r.ratio {
                if argsup.is_none_or(|j| q > reports[j].ratio.as_ref().expect("finite")) {
                    argsup = Some(i);
                }
            }
        }
        ScanSummary { reports, argsup }
    }

    pub fn supremum(&self) -> Option<&BigRational> {
        self.argsup.and_then(|i| self.reports[i].ratio.as_ref())
    }

    pub fn witness(&self) -> Option<&BoundReport> {
        self.argsup.map(|i| &self.reports[i])
    }

    pub fn vacuous_count(&self) -> usize {
        self.reports.iter().filter(|r| r.vacuous).count()
    }
}

/// Normalized weights of rank `n` with spread in `1..=max_gap`.
fn gapped_weights(n: usize, max_gap: u64) -> Vec<Weight> {
    normalized_weights(n, max_gap).into_iter().filter(|w| !w.spread().is_zero()).collect()
}

/// `theorem_ratio` over all normalized pairs with gaps in `1..=max_gap`.
pub fn theorem_scan(n: usize, max_gap: u64) -> Result<ScanSummary> {
    let ws = gapped_weights(n, max_gap);
    let cells: Vec<(&Weight, &Weight)> =
        ws.iter().flat_map(|l| ws.iter().map(move |m| (l, m))).collect();
    let reports = cells
        .into_par_iter()
        .map(|(l, m)| theorem_ratio(l, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanSummary::from_reports(reports))
}

/// `firstrow_ratio` over normalized `λ` with gap in `1..=max_gap` and all `k`.
/// Cells with `λ_1 = λ_{n+1-k}` are kept and flagged vacuous.
pub fn firstrow_scan(n: usize, max_gap: u64) -> Result<ScanSummary> {
    let ws = gapped_weights(n, max_gap);
    let cells: Vec<(&Weight, usize)> =
        ws.iter().flat_map(|l| (1..n).map(move |k| (l, k))).collect();
    let reports = cells
        .into_par_iter()
        .map(|(l, k)| firstrow_ratio(l, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanSummary::from_reports(reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &[i64]) -> Weight {
        Weight::from_ints(p).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn max_atom_examples() {
        assert_eq!(max_atom(&w(&[1, 0, 0]), &w(&[1, 0, 0])).unwrap(), (w(&[2, 0, 0]), q(2, 3)));
        for big_n in 0..=4 {
            for big_m in 0..=4 {
                let (nu, a) = max_atom(&w(&[big_n, 0]), &w(&[big_m, 0])).unwrap();
                assert_eq!(nu, w(&[big_n + big_m, 0]));
                assert_eq!(a, q(big_n + big_m + 1, (big_n + 1) * (big_m + 1)));
            }
        }
        assert_eq!(max_atom(&w(&[4, 2, 1]), &w(&[0, 0, 0])).unwrap(), (w(&[4, 2, 1]), q(1, 1)));
    }

    #[test]
    fn theorem_ratio_examples() {
        let r = theorem_ratio(&w(&[1, 0]), &w(&[1, 0])).unwrap();
        assert_eq!(r.lhs, q(3, 4));
        assert_eq!(r.rhs_scale, Some(q(2, 1)));
        assert_eq!(r.ratio, Some(q(3, 8)));
        assert!(!r.vacuous);
        let v = theorem_ratio(&w(&[2, 2, 2]), &w(&[1, 0, 0])).unwrap();
        assert!(v.vacuous);
        assert_eq!(v.ratio, None);
    }

    #[test]
    fn theorem_ratio_is_contragredient_invariant() {
        for l in gapped_weights(3, 3) {
            for m in gapped_weights(3, 2) {
                let a = theorem_ratio(&l, &m).unwrap();
                let b = theorem_ratio(&l.contragredient(), &m.contragredient()).unwrap();
                assert_eq!(a.ratio, b.ratio);
                assert_eq!(a.lhs, b.lhs);
            }
        }
    }

    #[test]
    fn firstrow_examples() {
        for big_n in 1..=8 {
            let r = firstrow_ratio(&w(&[big_n, 0]), 1).unwrap();
            assert_eq!(r.ratio, Some(q(big_n, big_n + 1)));
        }
        let r = firstrow_ratio(&w(&[1, 0, 0]), 2).unwrap();
        assert_eq!((r.lhs.clone(), r.ratio.clone()), (q(2, 3), Some(q(2, 3))));
        assert_eq!(r.witness, Witness::Value(BigInt::from(1)));
        // a_1 for (1,1,0): gap λ_1 - λ_3 = 1
        let r = firstrow_ratio(&w(&[1, 1, 0]), 1).unwrap();
        assert_eq!(r.lhs, q(2, 3));
        assert!(firstrow_ratio(&w(&[1, 0]), 2).is_err());
        assert!(firstrow_ratio(&w(&[2, 2, 0]), 2).unwrap().vacuous);
        assert!(!firstrow_ratio(&w(&[2, 2, 0]), 1).unwrap().vacuous);
    }

    #[test]
    fn sln_examples() {
        let r = sln_corollary_report(&w(&[1, 0, 0]), &w(&[1, 0, 0]), &q(1, 1)).unwrap();
        assert!(r.holds);
        assert_eq!(r.max_ratio, q(2, 3));
        assert_eq!(r.witness, w(&[2, 0, 0]));
        for a in 1..=10 {
            for b in 1..=10 {
                assert!(sln_corollary_check(&w(&[a, 0]), &w(&[b, 0]), &q(2, 1)).unwrap());
            }
        }
        // threshold for (1,0,0) ⊗ (1,0,0) is (2/3)/2
        assert!(sln_corollary_check(&w(&[1, 0, 0]), &w(&[1, 0, 0]), &q(1, 3)).unwrap());
        let fail = sln_corollary_report(&w(&[1, 0, 0]), &w(&[1, 0, 0]), &q(1, 4)).unwrap();
        assert!(!fail.holds);
        assert_eq!(fail.witness, w(&[2, 0, 0]));
        assert!(sln_corollary_check(&w(&[2, 1]), &w(&[1, 0]), &q(1, 1)).is_err());
        assert!(sln_corollary_check(&w(&[0, 0]), &w(&[1, 0]), &q(1, 1)).is_err());
    }

    #[test]
    fn saturation_examples() {
        let r = saturation_check(3, 2, 2).unwrap();
        assert!(r.support_ok && r.multiplicities_one && r.lower_bound_ok);
        assert_eq!(r.support_size, 3);
        assert!(!r.count_matches_literature);
        let r = saturation_check(3, 2, 0).unwrap();
        assert_eq!(r.support_size, 1);
        assert_eq!(r.report.lhs, q(1, 1));
        let r = saturation_check(2, 3, 3).unwrap();
        assert_eq!(r.report.lhs, q(7, 16));
        assert!(r.lower_bound_ok);
        let scan = saturation_scan(2, 4).unwrap();
        assert_eq!(scan.len(), 16);
        assert!(scan.iter().all(|r| r.multiplicities_one && r.support_ok));
    }

    #[test]
    fn saturation_ratio_window() {
        for n in [2, 3] {
            for big_n in 1..=12 {
                let r = saturation_check(n, big_n, big_n).unwrap();
                let ratio = r.report.ratio.unwrap();
                assert!(ratio >= q(1, 8) && ratio <= q(1, 1), "n={n} N={big_n}: {ratio}");
            }
        }
    }

    #[test]
    fn pigeonhole_examples() {
        assert_eq!(pigeonhole_witness(&w(&[9, 7, 3])).unwrap(), (2, BigInt::from(4)));
        assert_eq!(pigeonhole_witness(&w(&[5, 0])).unwrap(), (1, BigInt::from(5)));
        assert_eq!(pigeonhole_witness(&w(&[3, 3, 0])).unwrap(), (2, BigInt::from(3)));
        assert!(pigeonhole_witness(&w(&[2, 2])).is_err());
        assert!(pigeonhole_witness(&w(&[2])).is_err());
    }

    #[test]
    fn scans_and_csv() {
        let s = firstrow_scan(2, 6).unwrap();
        assert_eq!(s.supremum(), Some(&q(6, 7)));
        assert_eq!(s.witness().unwrap().input.lambda(), &w(&[6, 0]));
        let t = theorem_scan(2, 3).unwrap();
        assert_eq!(t.reports.len(), 9);
        let small = theorem_scan(2, 2).unwrap();
        assert!(small.supremum().unwrap() <= t.supremum().unwrap());

        let mut buf = Vec::new();
        write_reports_csv(&[theorem_ratio(&w(&[1, 0]), &w(&[1, 0])).unwrap()], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "lambda,mu_or_k,lhs_num,lhs_den,scale_num,scale_den,ratio_num,ratio_den,witness,vacuous_flag\n\
             \"1,0\",\"1,0\",3,4,2,1,3,8,\"2,0\",false\n"
        );
        let json = serde_json::to_string(&firstrow_ratio(&w(&[2, 0]), 1).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"lambda":[2,0],"k":1,"lhs":"1/3","rhs_scale":"1/2","ratio":"2/3","witness":"0","vacuous":false}"#
        );
    }
}
