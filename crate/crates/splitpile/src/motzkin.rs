//! Motzkin words over `{U, D, H}` and standard Young tableaux of shape
//! `(m, m, 1, ..., 1)`.
//!
//! A word is Motzkin when reading left to right the count of `U` never drops
//! below the count of `D`, and both counts are equal at the end (`H` is
//! neutral).  Writing `m` for the number of `U`s and `n` for the number of
//! `H`s, there are `C(2m,m)/(m+1) * C(2m+n,n)` such words.
//!
//! The words in which no `H` appears before the first `D` (here: *DH words*)
//! are the ones relevant to sandpiles with an independent sink.  DH words
//! with `m` `U`s and `h` `H`s are in bijection with standard Young tableaux
//! of shape `(m, m, 1^h)`: the first row records the positions of the `U`s,
//! the second row the positions of the `D`s, and the leg below the second
//! row the positions of the `H`s.  Counting those tableaux by hook lengths
//! gives an independent route to the same number.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{binomial, exact_div, factorial};
use crate::error::Error;

/// One letter of the three-letter alphabet.  The declaration order gives
/// `D < H < U`, which fixes the lexicographic conventions used for word
/// generation and necklace canonicalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    D,
    H,
    U,
}

impl Letter {
    pub fn from_char(c: char) -> Result<Letter, Error> {
        match c {
            'D' => Ok(Letter::D),
            'H' => Ok(Letter::H),
            'U' => Ok(Letter::U),
            other => Err(Error::InvalidLetter { letter: other }),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::D => 'D',
            Letter::H => 'H',
            Letter::U => 'U',
        }
    }
}

/// Render a letter slice as a plain string, e.g. `"HUHHUDHUDD"`.
pub fn letters_to_string(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.to_char()).collect()
}

/// Parse a string of `U`/`D`/`H` characters (no validation beyond the
/// alphabet).
pub fn letters_from_str(s: &str) -> Result<Vec<Letter>, Error> {
    s.chars().map(Letter::from_char).collect()
}

/// Check the Motzkin conditions on a raw letter sequence: every prefix has
/// at least as many `U`s as `D`s, and the full word has equally many.
pub fn is_motzkin(letters: &[Letter]) -> bool {
    let mut open: i64 = 0;
    for &l in letters {
        match l {
            Letter::U => open += 1,
            Letter::D => {
                open -= 1;
                if open < 0 {
                    return false;
                }
            }
            Letter::H => {}
        }
    }
    open == 0
}

/// A validated Motzkin word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MotzkinWord {
    letters: Vec<Letter>,
}

impl MotzkinWord {
    /// Validate and wrap a letter sequence.
    pub fn new(letters: Vec<Letter>) -> Result<MotzkinWord, Error> {
        if !is_motzkin(&letters) {
            return Err(Error::NotMotzkin {
                reason: format!(
                    "{:?} violates the prefix or balance condition",
                    letters_to_string(&letters)
                ),
            });
        }
        Ok(MotzkinWord { letters })
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

    fn count(&self, which: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == which).count()
    }

    pub fn u_count(&self) -> usize {
        self.count(Letter::U)
    }

    pub fn d_count(&self) -> usize {
        self.count(Letter::D)
    }

    pub fn h_count(&self) -> usize {
        self.count(Letter::H)
    }

    /// No `H` before the first `D`.  Words without any `H` qualify.
    pub fn is_dh(&self) -> bool {
        for &l in &self.letters {
            match l {
                Letter::D => return true, // first D came before any H
                Letter::H => return false,
                Letter::U => {}
            }
        }
        true // no H at all (and no D)
    }
}

impl FromStr for MotzkinWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<MotzkinWord, Error> {
        MotzkinWord::new(letters_from_str(s)?)
    }
}

impl fmt::Display for MotzkinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&letters_to_string(&self.letters))
    }
}

impl Serialize for MotzkinWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MotzkinWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<MotzkinWord, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All Motzkin words with exactly `u_count` `U`s and `h_count` `H`s, in
/// lexicographic order under `D < H < U`.
///
/// Fails with [`Error::BudgetExceeded`] when the closed-form count exceeds
/// `budget`.
pub fn generate_all(u_count: usize, h_count: usize, budget: u64) -> Result<Vec<MotzkinWord>, Error> {
    let total = count_motzkin(u_count, h_count);
    if total > BigUint::from(budget) {
        let needed = u128::try_from(&total).unwrap_or(u128::MAX);
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(2 * u_count + h_count);
    gen_rec(u_count, u_count, h_count, 0, &mut prefix, &mut out);
    Ok(out)
}

fn gen_rec(
    u_left: usize,
    d_left: usize,
    h_left: usize,
    open: usize,
    prefix: &mut Vec<Letter>,
    out: &mut Vec<MotzkinWord>,
) {
    if u_left == 0 && d_left == 0 && h_left == 0 {
        out.push(MotzkinWord { letters: prefix.clone() });
        return;
    }
    // Try letters in D < H < U order so the output is lexicographic.
    if d_left > 0 && open > 0 {
        prefix.push(Letter::D);
        gen_rec(u_left, d_left - 1, h_left, open - 1, prefix, out);
        prefix.pop();
    }
    if h_left > 0 {
        prefix.push(Letter::H);
        gen_rec(u_left, d_left, h_left - 1, open, prefix, out);
        prefix.pop();
    }
    if u_left > 0 {
        prefix.push(Letter::U);
        gen_rec(u_left - 1, d_left, h_left, open + 1, prefix, out);
        prefix.pop();
    }
}

/// Number of Motzkin words with `m` `U`s and `n` `H`s:
/// `C(2m,m)/(m+1) * C(2m+n,n)`.
pub fn count_motzkin(m: usize, n: usize) -> BigUint {
    let catalan = exact_div(binomial(2 * m, m), &BigUint::from(m + 1));
    catalan * binomial(2 * m + n, n)
}

/// Number of DH words with `m` `U`s (`m >= 1`) and `h` `H`s:
/// `C(2m+h,m-1) * C(m+h-1,m-1) / m`.
pub fn count_dh(m: usize, h: usize) -> BigUint {
    assert!(m >= 1, "DH words need at least one U");
    exact_div(binomial(2 * m + h, m - 1) * binomial(m + h - 1, m - 1), &BigUint::from(m))
}

/// Number of standard Young tableaux of shape `(m, m, 1^h)`, via the hook
/// length formula evaluated cell by cell.  Equals [`count_dh`]`(m, h)` by
/// the position bijection, but computed along an entirely different route.
pub fn count_syt_hook(m: usize, h: usize) -> BigUint {
    assert!(m >= 1, "the shape needs a non-empty first row");
    let mut shape = vec![m, m];
    shape.extend(std::iter::repeat_n(1, h));
    let cells: usize = shape.iter().sum();

    let mut hooks = BigUint::one();
    for (row, &len) in shape.iter().enumerate() {
        for col in 0..len {
            let arm = len - 1 - col;
            let leg = shape[row + 1..].iter().filter(|&&l| l > col).count();
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    exact_div(factorial(cells), &hooks)
}

/// A standard Young tableau of shape `(m, m, 1^h)`: two equal rows and a
/// single-cell leg.  Entries are `1..=2m+h`, strictly increasing along rows
/// and down columns.
///
/// Serializes as `{"shape": [4,4,1,1,1], "rows": [[1,2,5,8], [3,6,9,10],
/// [4], [7], [11]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardYoungTableau {
    shape: Vec<usize>,
    rows: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct TableauRepr {
    shape: Vec<usize>,
    rows: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for StandardYoungTableau {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<StandardYoungTableau, D::Error> {
        let repr = TableauRepr::deserialize(deserializer)?;
        let t = StandardYoungTableau::new(repr.rows).map_err(serde::de::Error::custom)?;
        if t.shape != repr.shape {
            return Err(serde::de::Error::custom("shape field does not match row lengths"));
        }
        Ok(t)
    }
}

impl StandardYoungTableau {
    /// Validate rows as a standard Young tableau of shape `(m, m, 1^h)`.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<StandardYoungTableau, Error> {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        // Shape check: exactly two rows of equal positive length, then
        // single-cell rows.
        let ok_shape = shape.len() >= 2
            && shape[0] >= 1
            && shape[0] == shape[1]
            && shape[2..].iter().all(|&l| l == 1);
        if !ok_shape {
            return Err(Error::InvalidTableau(format!(
                "shape {shape:?} is not of the form (m, m, 1, ..., 1)"
            )));
        }

        let cells: usize = shape.iter().sum();
        let mut seen = vec![false; cells + 1];
        for row in &rows {
            for &e in row {
                if e == 0 || e > cells || seen[e] {
                    return Err(Error::InvalidTableau(format!(
                        "entries must be a permutation of 1..={cells}"
                    )));
                }
                seen[e] = true;
            }
        }
        for row in &rows {
            if !row.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::InvalidTableau("rows must increase left to right".into()));
            }
        }
        for r in 1..rows.len() {
            // The row above is at least as wide, so zip stops at this row.
            if rows[r - 1].iter().zip(&rows[r]).any(|(above, below)| above >= below) {
                return Err(Error::InvalidTableau("columns must increase downward".into()));
            }
        }
        Ok(StandardYoungTableau { shape, rows })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }
}

/// Tableau of a DH word: `U` positions in the top row, `D` positions in the
/// second row, `H` positions in the leg (all 1-based).
pub fn syt_from_dh(w: &MotzkinWord) -> Result<StandardYoungTableau, Error> {
    if !w.is_dh() {
        return Err(Error::NotDhMotzkin);
    }
    if w.u_count() == 0 {
        return Err(Error::InvalidTableau(
            "a word without U has no (m, m, 1^h) tableau".into(),
        ));
    }
    let mut rows = vec![Vec::new(), Vec::new()];
    for (pos, &l) in w.letters().iter().enumerate() {
        match l {
            Letter::U => rows[0].push(pos + 1),
            Letter::D => rows[1].push(pos + 1),
            Letter::H => rows.push(vec![pos + 1]),
        }
    }
    StandardYoungTableau::new(rows)
}

/// Inverse of [`syt_from_dh`]: place letters back at their recorded
/// positions.
pub fn dh_from_syt(t: &StandardYoungTableau) -> Result<MotzkinWord, Error> {
    let cells: usize = t.shape.iter().sum();
    let mut letters = vec![Letter::H; cells];
    for &p in &t.rows[0] {
        letters[p - 1] = Letter::U;
    }
    for &p in &t.rows[1] {
        letters[p - 1] = Letter::D;
    }
    let w = MotzkinWord::new(letters)?;
    if !w.is_dh() {
        return Err(Error::NotDhMotzkin);
    }
    Ok(w)
}
