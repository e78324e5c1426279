//! Schensted row insertion and the plactic monoid.
//!
//! Tableaux multiply by inserting reading words: `S · T = P(w(S) w(T))`.
//! [`RunTableau`] is a run-length form of the same algorithm used by the
//! brute-force Littlewood-Richardson oracle, where millions of products are
//! formed.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::tableau::{Letter, Tableau, Word};

/// Inserts `x` into `t` by row bumping.
pub fn row_insert(t: &Tableau, x: Letter) -> Result<Tableau> {
    let n = t.alphabet();
    if x == 0 || x as usize > n {
        return Err(Error::LetterOutOfRange { letter: x, n });
    }
    let mut rows = t.rows().to_vec();
    insert_into_rows(&mut rows, x);
    Ok(Tableau::from_rows_unchecked(n, rows))
}

fn insert_into_rows(rows: &mut Vec<Vec<Letter>>, mut x: Letter) {
    for row in rows.iter_mut() {
        let pos = row.partition_point(|&e| e <= x);
        if pos == row.len() {
            row.push(x);
            return;
        }
        std::mem::swap(&mut row[pos], &mut x);
    }
    rows.push(vec![x]);
}

/// `P(w)`: insert the letters of `w` left to right into the empty tableau.
pub fn insertion_tableau(w: &Word) -> Tableau {
    let mut rows = Vec::new();
    for &x in w.letters() {
        insert_into_rows(&mut rows, x);
    }
    Tableau::from_rows_unchecked(w.alphabet(), rows)
}

/// `w(T)`: rows from bottom to top, each read left to right.
pub fn reading_word(t: &Tableau) -> Word {
    let letters = t.rows().iter().rev().flatten().copied().collect();
    Word::from_letters_unchecked(t.alphabet(), letters)
}

/// `S · T = P(w(S) · w(T))`.
pub fn plactic_product(s: &Tableau, t: &Tableau) -> Result<Tableau> {
    if s.alphabet() != t.alphabet() {
        return Err(Error::AlphabetMismatch(s.alphabet(), t.alphabet()));
    }
    let mut rows = s.rows().to_vec();
    for &x in reading_word(t).letters() {
        insert_into_rows(&mut rows, x);
    }
    Ok(Tableau::from_rows_unchecked(s.alphabet(), rows))
}

/// Length of the longest weakly increasing subsequence.
pub fn lis(w: &Word) -> usize {
    let mut tails: Vec<Letter> = Vec::new();
    for &x in w.letters() {
        let pos = tails.partition_point(|&t| t <= x);
        if pos == tails.len() {
            tails.push(x);
        } else {
            tails[pos] = x;
        }
    }
    tails.len()
}

/// The subsequence of letters belonging to `letters`.
pub fn restrict_word(w: &Word, letters: &BTreeSet<Letter>) -> Word {
    Word::from_letters_unchecked(
        w.alphabet(),
        w.letters()
            .iter()
            .copied()
            .filter(|x| letters.contains(x))
            .collect(),
    )
}

/// Reverses the word and maps each letter `i` to `n + 1 - i`.
pub fn alpha_word(w: &Word) -> Word {
    let n = w.alphabet() as Letter;
    Word::from_letters_unchecked(
        w.alphabet(),
        w.letters().iter().rev().map(|&x| n + 1 - x).collect(),
    )
}

/// `α(T) = P(α(w(T)))`; a shape-preserving involution.
pub fn alpha_tableau(t: &Tableau) -> Tableau {
    insertion_tableau(&alpha_word(&reading_word(t)))
}

/// Two words are plactically equivalent iff their insertion tableaux agree.
pub fn knuth_equivalent(w: &Word, v: &Word) -> bool {
    insertion_tableau(w).rows() == insertion_tableau(v).rows()
}

/// An element of the plactic monoid, represented by its insertion tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlacticClass {
    representative: Tableau,
}

impl PlacticClass {
    pub fn of_word(w: &Word) -> Self {
        PlacticClass { representative: insertion_tableau(w) }
    }

    pub fn of_tableau(t: Tableau) -> Self {
        PlacticClass { representative: t }
    }

    pub fn identity(n: usize) -> Self {
        PlacticClass { representative: Tableau::empty(n) }
    }

    pub fn representative(&self) -> &Tableau {
        &self.representative
    }

    pub fn mul(&self, other: &PlacticClass) -> Result<PlacticClass> {
        plactic_product(&self.representative, &other.representative)
            .map(|t| PlacticClass { representative: t })
    }
}

/// Tableau stored as letter multiplicities: `count(r, x)` is the number of
/// `x`s in row `r` (0-based row, 1-based letter). Rows of a semi-standard
/// tableau are determined by these counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RunTableau {
    n: usize,
    counts: Vec<u64>,
}

impl RunTableau {
    pub fn empty(n: usize) -> Self {
        RunTableau { n, counts: vec![0; n * n] }
    }

    pub fn from_tableau(t: &Tableau) -> Self {
        let n = t.alphabet();
        let mut rt = RunTableau::empty(n);
        for (r, row) in t.rows().iter().enumerate() {
            for &x in row {
                rt.counts[r * n + (x as usize - 1)] += 1;
            }
        }
        rt
    }

    /// Builds from a shift-normalized pattern (rows top first), using
    /// `count(i, l) = a_l(i) - a_{l-1}(i)`.
    pub(crate) fn from_normalized_pattern(rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        let mut rt = RunTableau::empty(n);
        for i in 0..n {
            let mut prev = 0u64;
            for l in i + 1..=n {
                let cur = rows[n - l][i];
                rt.counts[i * n + (l - 1)] = cur - prev;
                prev = cur;
            }
        }
        rt
    }

    pub fn alphabet(&self) -> usize {
        self.n
    }

    pub fn count(&self, row: usize, letter: Letter) -> u64 {
        self.counts[row * self.n + (letter as usize - 1)]
    }

    pub fn to_tableau(&self) -> Tableau {
        let n = self.n;
        let rows = (0..n)
            .map(|r| {
                (1..=n as Letter)
                    .flat_map(|x| std::iter::repeat(x).take(self.count(r, x) as usize))
                    .collect()
            })
            .collect();
        Tableau::from_rows_unchecked(n, rows)
    }

    /// Row lengths, length `n`.
    pub fn shape_into(&self, out: &mut Vec<u64>) {
        out.clear();
        out.extend(self.counts.chunks(self.n).map(|row| row.iter().sum::<u64>()));
    }

    /// Reading word as runs `(letter, multiplicity)`, bottom row first.
    pub fn reading_runs(&self) -> Vec<(Letter, u64)> {
        let n = self.n;
        let mut runs = Vec::new();
        for r in (0..n).rev() {
            for x in 1..=n as Letter {
                let c = self.count(r, x);
                if c > 0 {
                    runs.push((x, c));
                }
            }
        }
        runs
    }

    /// Overwrites `self` with the contents of `other` without reallocating.
    pub fn copy_from(&mut self, other: &RunTableau) {
        self.n = other.n;
        self.counts.clear();
        self.counts.extend_from_slice(&other.counts);
    }

    /// Inserts `m` copies of `x`. Inserting equal letters one after another
    /// bumps the leftmost entries greater than `x` in order, so a whole run is
    /// processed per row; `scratch` holds the bumped runs between rows.
    pub fn insert_run(&mut self, x: Letter, m: u64, scratch: &mut RunScratch) {
        let n = self.n;
        scratch.pending.clear();
        scratch.pending.push((x, m));
        for r in 0..n {
            scratch.bumped.clear();
            let row = &mut self.counts[r * n..(r + 1) * n];
            for &(y, k) in &scratch.pending {
                let mut rem = k;
                let mut z = y as usize; // 0-based index of letter y + 1
                while rem > 0 && z < n {
                    let take = rem.min(row[z]);
                    if take > 0 {
                        row[z] -= take;
                        scratch.bumped.push((z as Letter + 1, take));
                        rem -= take;
                    }
                    z += 1;
                }
                row[y as usize - 1] += k;
            }
            if scratch.bumped.is_empty() {
                return;
            }
            std::mem::swap(&mut scratch.pending, &mut scratch.bumped);
        }
        debug_assert!(scratch.pending.is_empty(), "column-strictness bounds the height by n");
    }

    /// `self ← self · t`, feeding the reading runs of `t`.
    pub fn multiply_by_runs(&mut self, runs: &[(Letter, u64)], scratch: &mut RunScratch) {
        for &(x, m) in runs {
            self.insert_run(x, m, scratch);
        }
    }
}

#[derive(Default, Debug)]
pub struct RunScratch {
    pending: Vec<(Letter, u64)>,
    bumped: Vec<(Letter, u64)>,
}
