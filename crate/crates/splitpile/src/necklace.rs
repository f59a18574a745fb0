//! Necklaces over `{U, D, H}` — words up to cyclic rotation — and the cut
//! lemma tying them to Motzkin words.
//!
//! A necklace is stored in canonical form: the lexicographically least
//! rotation under `D < H < U`, found with Booth's least-rotation algorithm.
//!
//! When the bead counts satisfy `#U = #D + 1`, exactly one rotation has the
//! form `U . w` with `w` a Motzkin word (walk the necklace with `U` counting
//! +1, `D` counting -1, `H` neutral: the total is +1, so exactly one
//! starting point keeps every partial sum positive).  Prepending `U` to a
//! Motzkin word and forgetting the starting point is therefore a bijection
//! from Motzkin words with `m-1` `U`s and `n` `H`s onto necklaces with bead
//! counts `(m, m-1, n)`; [`motzkin_from_necklace`] inverts it by locating
//! the unique cut.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::motzkin::{self, Letter, MotzkinWord};

/// A cyclic word in canonical (least-rotation) form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Necklace {
    beads: Vec<Letter>,
}

impl Necklace {
    /// Canonicalize a non-empty bead sequence; any rotation of the same
    /// cyclic word produces the same necklace.
    pub fn new(beads: Vec<Letter>) -> Result<Necklace, Error> {
        if beads.is_empty() {
            return Err(Error::InvalidNecklace("a necklace needs at least one bead".into()));
        }
        let k = least_rotation_index(&beads);
        let mut canonical = Vec::with_capacity(beads.len());
        canonical.extend_from_slice(&beads[k..]);
        canonical.extend_from_slice(&beads[..k]);
        Ok(Necklace { beads: canonical })
    }

    /// The canonical bead sequence.
    pub fn beads(&self) -> &[Letter] {
        &self.beads
    }

    pub fn len(&self) -> usize {
        self.beads.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one bead
    }

    /// Bead counts as `(u, d, h)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut u = 0;
        let mut d = 0;
        let mut h = 0;
        for &b in &self.beads {
            match b {
                Letter::U => u += 1,
                Letter::D => d += 1,
                Letter::H => h += 1,
            }
        }
        (u, d, h)
    }

    /// All rotations of the canonical form, starting with the canonical one.
    pub fn rotations(&self) -> impl Iterator<Item = Vec<Letter>> + '_ {
        (0..self.beads.len()).map(move |k| {
            let mut r = Vec::with_capacity(self.beads.len());
            r.extend_from_slice(&self.beads[k..]);
            r.extend_from_slice(&self.beads[..k]);
            r
        })
    }
}

#[derive(Serialize, Deserialize)]
struct NecklaceRepr {
    beads: String,
    cyclic: bool,
}

impl Serialize for Necklace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        NecklaceRepr { beads: motzkin::letters_to_string(&self.beads), cyclic: true }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Necklace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Necklace, D::Error> {
        let repr = NecklaceRepr::deserialize(deserializer)?;
        if !repr.cyclic {
            return Err(serde::de::Error::custom("necklace payloads must set \"cyclic\": true"));
        }
        let beads = motzkin::letters_from_str(&repr.beads).map_err(serde::de::Error::custom)?;
        Necklace::new(beads).map_err(serde::de::Error::custom)
    }
}

/// Booth's algorithm: index of the lexicographically least rotation.
/// Runs in linear time; when several rotations tie (periodic words), any of
/// them yields the same canonical form.
pub fn least_rotation_index(s: &[Letter]) -> usize {
    let n = s.len();
    assert!(n > 0, "empty sequence has no rotations");
    let at = |i: usize| s[i % n];
    let mut fail: Vec<isize> = vec![-1; 2 * n];
    let mut k: usize = 0;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = fail[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k
}

/// Close a Motzkin word into a necklace by prepending one extra `U`.
/// Injective: the cut lemma recovers the word.
pub fn necklace_from_motzkin(w: &MotzkinWord) -> Necklace {
    let mut beads = Vec::with_capacity(w.len() + 1);
    beads.push(Letter::U);
    beads.extend_from_slice(w.letters());
    Necklace::new(beads).expect("non-empty by construction")
}

/// Recover the Motzkin word from a necklace with `#U = #D + 1`: cut at the
/// unique position where a `U` is followed by a Motzkin word.
pub fn motzkin_from_necklace(x: &Necklace) -> Result<MotzkinWord, Error> {
    let (u, d, _) = x.counts();
    if u != d + 1 {
        return Err(Error::InvalidNecklace(format!(
            "cut requires one more U than D, got {u} U and {d} D"
        )));
    }
    for rot in x.rotations() {
        if rot[0] == Letter::U && motzkin::is_motzkin(&rot[1..]) {
            return Ok(MotzkinWord::new(rot[1..].to_vec()).expect("checked"));
        }
    }
    unreachable!("a cyclic word with #U = #D + 1 always has a cut point");
}

/// All necklaces with bead counts `(m, m-1, n)` — the closures of the
/// Motzkin words with `m-1` `U`s and `n` `H`s — sorted by canonical form.
pub fn enumerate_necklaces(m: usize, n: usize, budget: u64) -> Result<Vec<Necklace>, Error> {
    assert!(m >= 1, "need at least one U bead");
    let words = motzkin::generate_all(m - 1, n, budget)?;
    let mut out: Vec<Necklace> = words.iter().map(necklace_from_motzkin).collect();
    out.sort();
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]), "closure map is injective");
    Ok(out)
}
