//! Semi-standard tableaux, words, and the tableau/pattern bijection.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pattern::GTPattern;
use crate::weight::{Weight, YoungDiagram};

pub type Letter = u32;

/// A semi-standard tableau over the alphabet `{1, ..., n}`.
///
/// Rows are stored top to bottom without trailing empty rows; the shape is
/// padded with zeros to rank `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    n: usize,
    rows: Vec<Vec<Letter>>,
}

impl Tableau {
    pub fn new(n: usize, mut rows: Vec<Vec<Letter>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTableau("alphabet size must be at least 1".into()));
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        if rows.len() > n {
            return Err(Error::InvalidTableau(format!(
                "{} rows do not fit a rank-{n} shape",
                rows.len()
            )));
        }
        for (r, row) in rows.iter().enumerate() {
            if r > 0 && row.len() > rows[r - 1].len() {
                return Err(Error::InvalidTableau(format!(
                    "row {} is longer than the row above it",
                    r + 1
                )));
            }
            for (c, &x) in row.iter().enumerate() {
                if x == 0 || x as usize > n {
                    return Err(Error::LetterOutOfRange { letter: x, n });
                }
                if c > 0 && row[c - 1] > x {
                    return Err(Error::InvalidTableau(format!(
                        "row {} decreases at column {}",
                        r + 1,
                        c + 1
                    )));
                }
                if r > 0 && rows[r - 1][c] >= x {
                    return Err(Error::InvalidTableau(format!(
                        "column {} is not strictly increasing at row {}",
                        c + 1,
                        r + 1
                    )));
                }
            }
        }
        Ok(Tableau { n, rows })
    }

    /// The tableau with no boxes.
    pub fn empty(n: usize) -> Self {
        Tableau { n: n.max(1), rows: Vec::new() }
    }

    /// Row `i` filled entirely with the letter `i`.
    pub fn highest_weight(shape: &YoungDiagram) -> Result<Self> {
        let lengths = shape.row_lengths()?;
        let rows = lengths
            .iter()
            .enumerate()
            .map(|(i, &len)| vec![(i + 1) as Letter; len])
            .collect();
        Tableau::new(shape.rank(), rows)
    }

    pub(crate) fn from_rows_unchecked(n: usize, mut rows: Vec<Vec<Letter>>) -> Self {
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        Tableau { n, rows }
    }

    pub fn alphabet(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row lengths padded with zeros to length `n`.
    pub fn shape_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.rows.iter().map(Vec::len).collect();
        v.resize(self.n, 0);
        v
    }

    pub fn shape(&self) -> YoungDiagram {
        let parts = self
            .shape_lengths()
            .into_iter()
            .map(BigInt::from)
            .collect();
        YoungDiagram::new(Weight::new(parts).expect("rows weakly shrink"))
            .expect("row lengths are non-negative")
    }

    /// Keeps only boxes with entries `<= k`.
    pub fn restrict_to(&self, k: Letter) -> Tableau {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().copied().filter(|&x| x <= k).collect())
            .collect();
        Tableau::from_rows_unchecked(self.n, rows)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// JSON form: array of rows of letters. The alphabet size is not part of the
/// array form; deserialization takes it as the largest letter (at least the
/// number of rows), so prefer [`Tableau::new`] when `n` matters.
impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<Letter>> = Vec::deserialize(d)?;
        let max_letter = rows.iter().flatten().copied().max().unwrap_or(1) as usize;
        let n = max_letter.max(rows.len()).max(1);
        Tableau::new(n, rows).map_err(de::Error::custom)
    }
}

/// A finite word over `{1, ..., n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    n: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTableau("alphabet size must be at least 1".into()));
        }
        if let Some(&x) = letters.iter().find(|&&x| x == 0 || x as usize > n) {
            return Err(Error::LetterOutOfRange { letter: x, n });
        }
        Ok(Word { n, letters })
    }

    pub fn empty(n: usize) -> Self {
        Word { n: n.max(1), letters: Vec::new() }
    }

    pub(crate) fn from_letters_unchecked(n: usize, letters: Vec<Letter>) -> Self {
        Word { n, letters }
    }

    pub fn alphabet(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.n != other.n {
            return Err(Error::AlphabetMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { n: self.n, letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// `a_l(i)` = number of entries `<= l` in row `i` of `T`.
pub fn pattern_from_tableau(t: &Tableau) -> GTPattern {
    let n = t.alphabet();
    let shape = t.shape_lengths();
    let mut rows: Vec<Vec<BigInt>> = vec![shape.iter().map(|&x| BigInt::from(x)).collect()];
    for l in (1..n).rev() {
        let row = (1..=l)
            .map(|i| {
                let count = t
                    .rows()
                    .get(i - 1)
                    .map(|r| r.iter().filter(|&&x| x as usize <= l).count())
                    .unwrap_or(0);
                BigInt::from(count)
            })
            .collect();
        rows.push(row);
    }
    GTPattern::new(rows).expect("a valid tableau yields a valid pattern")
}

/// Inverse of [`pattern_from_tableau`]; row `i` holds `a_l(i) - a_{l-1}(i)`
/// copies of the letter `l`.
pub fn tableau_from_pattern(a: &GTPattern) -> Result<Tableau> {
    let n = a.rank();
    let shape = a.shape();
    if !shape.is_young_diagram() {
        return Err(Error::InvalidPattern(format!(
            "shape {shape} has a negative part, no tableau exists"
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::new();
        let mut prev = BigInt::zero();
        for l in i..=n {
            let cur = a.entry(l, i);
            let count = (cur - &prev)
                .to_usize()
                .ok_or_else(|| Error::TooLarge(format!("row {i} of shape {shape}")))?;
            row.extend(std::iter::repeat(l as Letter).take(count));
            prev = cur.clone();
        }
        rows.push(row);
    }
    Tableau::new(n, rows)
}

/// All tableaux of a shape, via pattern enumeration.
pub fn enumerate_tableaux(shape: &YoungDiagram, cap: u64) -> Result<Vec<Tableau>> {
    crate::pattern::enumerate_patterns(shape.weight(), cap)?
        .iter()
        .map(tableau_from_pattern)
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The tableau of shape (9,7,3) used as the running example.
    pub(crate) fn figure_tableau() -> Tableau {
        Tableau::new(
            3,
            vec![
                vec![1, 1, 1, 1, 1, 2, 2, 2, 3],
                vec![2, 2, 2, 2, 3, 3, 3],
                vec![3, 3, 3],
            ],
        )
        .unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn validation() {
        assert!(Tableau::new(2, vec![vec![1, 2], vec![2]]).is_ok());
        assert!(Tableau::new(2, vec![vec![2, 1]]).is_err());
        assert!(Tableau::new(2, vec![vec![1, 2], vec![1]]).is_err());
        assert!(Tableau::new(2, vec![vec![1], vec![2, 2]]).is_err());
        assert!(matches!(
            Tableau::new(2, vec![vec![3]]),
            Err(Error::LetterOutOfRange { letter: 3, n: 2 })
        ));
        assert!(Tableau::new(2, vec![vec![1], vec![2], vec![3]]).is_err());
        assert_eq!(Tableau::new(3, vec![vec![1], vec![]]).unwrap().rows().len(), 1);
        assert!(matches!(Word::new(2, vec![1, 3]), Err(Error::LetterOutOfRange { .. })));
    }

    #[test]
    fn single_box_patterns() {
        let t = Tableau::new(3, vec![vec![2]]).unwrap();
        let p = pattern_from_tableau(&t);
        assert_eq!(p.entry(1, 1), &BigInt::from(0));
        assert_eq!(p.entry(2, 1), &BigInt::from(1));
        assert_eq!(p.entry(2, 2), &BigInt::from(0));

        let t3 = Tableau::new(3, vec![vec![3]]).unwrap();
        assert_eq!(pattern_from_tableau(&t3).first_row_vector(), big(&[0, 0, 1]));
    }

    #[test]
    fn figure_tableau_pattern() {
        let p = pattern_from_tableau(&figure_tableau());
        assert_eq!(p.entry(1, 1), &BigInt::from(5));
        assert_eq!(p.entry(2, 1), &BigInt::from(8));
        assert_eq!(p.entry(2, 2), &BigInt::from(4));
        assert_eq!(p.first_row_vector(), big(&[5, 8, 9]));
        assert_eq!(tableau_from_pattern(&p).unwrap(), figure_tableau());
    }

    #[test]
    fn highest_weight_tableau_is_maximal() {
        let shape = YoungDiagram::from_ints(&[4, 2, 1]).unwrap();
        let t = Tableau::highest_weight(&shape).unwrap();
        let p = pattern_from_tableau(&t);
        for l in 1..=3 {
            for i in 1..=l {
                assert_eq!(p.entry(l, i), shape.weight().part(i));
            }
        }
    }

    #[test]
    fn inverse_direction_examples() {
        let p0 = GTPattern::from_ints(&[&[1, 0], &[0]]).unwrap();
        assert_eq!(tableau_from_pattern(&p0).unwrap().rows(), &[vec![2]]);
        let p1 = GTPattern::from_ints(&[&[1, 0], &[1]]).unwrap();
        assert_eq!(tableau_from_pattern(&p1).unwrap().rows(), &[vec![1]]);
        let neg = GTPattern::from_ints(&[&[1, -1], &[0]]).unwrap();
        assert!(matches!(tableau_from_pattern(&neg), Err(Error::InvalidPattern(_))));
    }

    #[test]
    fn round_trip_all_eight_of_shape_210() {
        let shape = YoungDiagram::from_ints(&[2, 1, 0]).unwrap();
        let pats = crate::pattern::enumerate_patterns(shape.weight(), 100).unwrap();
        assert_eq!(pats.len(), 8);
        for p in &pats {
            let t = tableau_from_pattern(p).unwrap();
            assert_eq!(&pattern_from_tableau(&t), p);
        }
    }

    /// Independent brute-force tableau generator: every row-weak,
    /// column-strict filling of the shape.
    pub(crate) fn brute_tableaux(n: usize, shape: &[usize]) -> Vec<Tableau> {
        let cells: Vec<(usize, usize)> = shape
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect();
        let mut out = Vec::new();
        let mut fill: Vec<Vec<Letter>> = shape.iter().map(|&l| vec![0; l]).collect();
        fn rec(
            idx: usize,
            cells: &[(usize, usize)],
            n: usize,
            fill: &mut Vec<Vec<Letter>>,
            out: &mut Vec<Tableau>,
        ) {
            if idx == cells.len() {
                out.push(Tableau::new(n, fill.clone()).unwrap());
                return;
            }
            let (r, c) = cells[idx];
            let lo = if c > 0 { fill[r][c - 1] } else { 1 };
            let lo = if r > 0 { lo.max(fill[r - 1][c] + 1) } else { lo };
            for x in lo..=n as Letter {
                fill[r][c] = x;
                rec(idx + 1, cells, n, fill, out);
            }
            fill[r][c] = 0;
        }
        rec(0, &cells, n, &mut fill, &mut out);
        out
    }

    #[test]
    fn bijection_exhaustive_small() {
        // every tableau with n <= 4 and λ_1 <= 4 maps to a valid pattern and back
        for n in 1..=4usize {
            for lam in crate::weight::normalized_weights(n, 4) {
                let shape: Vec<usize> = lam.parts().iter().map(|p| p.to_usize().unwrap()).collect();
                let brute = brute_tableaux(n, &shape);
                let diagram = YoungDiagram::new(lam.clone()).unwrap();
                let via_patterns = enumerate_tableaux(&diagram, 1_000_000).unwrap();
                let mut a = brute.clone();
                let mut b = via_patterns.clone();
                a.sort();
                b.sort();
                assert_eq!(a, b, "shape {lam}");
                for t in &brute {
                    let p = pattern_from_tableau(t);
                    assert_eq!(p.shape(), lam);
                    assert_eq!(&tableau_from_pattern(&p).unwrap(), t);
                    let v = p.first_row_vector();
                    assert!(v.windows(2).all(|w| w[0] <= w[1]));
                    assert!(v.iter().all(|x| x <= lam.first()));
                }
            }
        }
    }

    #[test]
    fn json_form() {
        let t = Tableau::new(3, vec![vec![1, 2], vec![3]]).unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), "[[1,2],[3]]");
        let back: Tableau = serde_json::from_str("[[1,2],[3]]").unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<Tableau>("[[2,1]]").is_err());
    }
}
