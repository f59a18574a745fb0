//! The correspondence between Motzkin words and weakly decreasing recurrent
//! sandpile configurations on `S(m,n)`.
//!
//! Recurrence only depends on the multiset of heights within each part, so
//! it suffices to describe the weakly decreasing representatives.  Those are
//! images of Motzkin words under two position-counting maps, one per sink
//! side:
//!
//! * **Clique sink `v_m`** ([`f_map`]): a word with `m-1` `U`s and `n` `H`s
//!   yields clique heights `a_i = #(D or H after the i-th U) - 1` and
//!   independent heights `b_j = #(D after the j-th H)`.
//! * **Independent sink `w_n`** ([`g_map`]): the same counting rules applied
//!   to a DH word (no `H` before the first `D`) with `m` `U`s and `n-1`
//!   `H`s.
//!
//! The inverses ([`f_inverse`], [`g_inverse`]) rebuild the word by
//! insertion: lay out the `H`s, weave the `D`s so that exactly `b_j` of
//! them follow the `j`-th `H`, then drop each `U` in front of the
//! `(a_i+1)`-th remaining letter from the right.  The heights pin every
//! letter position, so the construction either reproduces a Motzkin word —
//! proving the configuration recurrent and exhibiting its word — or fails
//! the prefix condition, proving it non-recurrent.  [`classify`] packages
//! the verdict.

use serde::{Deserialize, Serialize};

use num_bigint::BigUint;

use crate::arith::factorial;
use crate::error::Error;
use crate::motzkin::{self, Letter, MotzkinWord};
use crate::sandpile::Configuration;
use crate::split_graph::{Side, SplitGraph};

/// A configuration whose parts are weakly decreasing — the canonical
/// representative of its symmetry class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Configuration", into = "Configuration")]
pub struct DecreasingConfiguration {
    inner: Configuration,
}

impl DecreasingConfiguration {
    /// Wrap a configuration that is already weakly decreasing in each part.
    pub fn new(c: Configuration) -> Result<DecreasingConfiguration, Error> {
        let ok = is_sorted_desc(&c.clique) && is_sorted_desc(&c.independent);
        if !ok {
            return Err(Error::InvalidInput(format!(
                "parts must be weakly decreasing, got {:?}/{:?}",
                c.clique, c.independent
            )));
        }
        Ok(DecreasingConfiguration { inner: c })
    }

    /// Sort an arbitrary configuration into its canonical representative.
    pub fn from_any(c: &Configuration) -> DecreasingConfiguration {
        DecreasingConfiguration { inner: c.sorted_desc() }
    }

    pub fn as_configuration(&self) -> &Configuration {
        &self.inner
    }

    pub fn into_configuration(self) -> Configuration {
        self.inner
    }

    /// Number of distinct configurations obtained by permuting heights
    /// within each part: the product over both parts of
    /// `len! / prod(multiplicity!)`.
    pub fn orbit_size(&self) -> BigUint {
        part_orbit(&self.inner.clique) * part_orbit(&self.inner.independent)
    }
}

impl TryFrom<Configuration> for DecreasingConfiguration {
    type Error = Error;

    fn try_from(c: Configuration) -> Result<DecreasingConfiguration, Error> {
        DecreasingConfiguration::new(c)
    }
}

impl From<DecreasingConfiguration> for Configuration {
    fn from(d: DecreasingConfiguration) -> Configuration {
        d.inner
    }
}

fn part_orbit(part: &[u64]) -> BigUint {
    let mut perms = factorial(part.len());
    let mut run = 1usize;
    for i in 1..=part.len() {
        if i < part.len() && part[i] == part[i - 1] {
            run += 1;
        } else {
            perms = crate::arith::exact_div(perms, &factorial(run));
            run = 1;
        }
    }
    perms
}

fn is_sorted_desc(xs: &[u64]) -> bool {
    xs.windows(2).all(|w| w[0] >= w[1])
}

/// Why the word construction rejected a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotRecurrentReason {
    /// A height exceeds what any word of the right letter counts could
    /// produce.  Stable configurations never trip this.
    ThresholdViolation,
    /// Heights handed to the raw construction were not weakly decreasing.
    /// The public entry points sort first, so they never trip this.
    MonotonicityViolation,
    /// The rebuilt word puts some `D` before its matching `U` — the
    /// configuration is not recurrent.  This is the verdict that actually
    /// occurs for stable input.
    PrefixViolation,
    /// The rebuilt word has an `H` before the first `D`, which the
    /// independent-sink correspondence excludes.  Subsumed by stability
    /// (it requires some `b_j >= m`), hence never reported for stable input.
    DhViolation,
}

/// Outcome of testing a configuration against the word construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// Recurrent; the word that maps to the sorted configuration is the
    /// witness.
    Recurrent(MotzkinWord),
    /// Not recurrent, with the first reason the construction hit.
    NotRecurrent(NotRecurrentReason),
}

impl Classification {
    pub fn is_recurrent(&self) -> bool {
        matches!(self, Classification::Recurrent(_))
    }
}

/// Clique-sink map: word with `m-1` `U`s and `n` `H`s to a weakly
/// decreasing configuration on `S(m,n)` with sink `v_m`.
pub fn f_map(w: &MotzkinWord) -> DecreasingConfiguration {
    let (a, b) = count_positions(w);
    DecreasingConfiguration { inner: Configuration::new(a, b) }
}

/// Graph dimensions `(m, n)` that [`f_map`] targets for this word.
pub fn f_target(w: &MotzkinWord) -> (usize, usize) {
    (w.u_count() + 1, w.h_count())
}

/// Independent-sink map: DH word with `m` `U`s and `n-1` `H`s to a weakly
/// decreasing configuration on `S(m,n)` with sink `w_n`.  Rejects words
/// with an `H` before the first `D` (their `b_1` would be unstable).
pub fn g_map(w: &MotzkinWord) -> Result<DecreasingConfiguration, Error> {
    if !w.is_dh() {
        return Err(Error::NotDhMotzkin);
    }
    let (a, b) = count_positions(w);
    Ok(DecreasingConfiguration { inner: Configuration::new(a, b) })
}

/// Graph dimensions `(m, n)` that [`g_map`] targets for this word.
pub fn g_target(w: &MotzkinWord) -> (usize, usize) {
    (w.u_count(), w.h_count() + 1)
}

/// Shared counting rule: `a_i + 1 = #(D or H strictly after the i-th U)`,
/// `b_j = #(D strictly after the j-th H)`.  Scans right to left.
fn count_positions(w: &MotzkinWord) -> (Vec<u64>, Vec<u64>) {
    let mut a = Vec::with_capacity(w.u_count());
    let mut b = Vec::with_capacity(w.h_count());
    let mut dh_after = 0u64;
    let mut d_after = 0u64;
    for &l in w.letters().iter().rev() {
        match l {
            Letter::U => a.push(dh_after - 1),
            Letter::H => {
                b.push(d_after);
                dh_after += 1;
            }
            Letter::D => {
                d_after += 1;
                dh_after += 1;
            }
        }
    }
    a.reverse();
    b.reverse();
    (a, b)
}

/// Rebuild the word with `d_count` `D`s from sorted heights `a` (one per
/// `U`) and `b` (one per `H`).  Returns the letter sequence or the reason no
/// word exists.
fn build_word(d_count: usize, a: &[u64], b: &[u64]) -> Result<Vec<Letter>, NotRecurrentReason> {
    if !is_sorted_desc(a) || !is_sorted_desc(b) {
        return Err(NotRecurrentReason::MonotonicityViolation);
    }
    if b.first().is_some_and(|&b0| b0 as usize > d_count) {
        return Err(NotRecurrentReason::ThresholdViolation);
    }

    // Skeleton of D's and H's: exactly b[j] D's after the j-th H.
    let t = d_count + b.len();
    let mut skeleton = Vec::with_capacity(t);
    let first = b.first().copied().unwrap_or(0) as usize;
    skeleton.extend(std::iter::repeat_n(Letter::D, d_count - first));
    for (j, &bj) in b.iter().enumerate() {
        skeleton.push(Letter::H);
        let next = b.get(j + 1).copied().unwrap_or(0);
        skeleton.extend(std::iter::repeat_n(Letter::D, (bj - next) as usize));
    }
    debug_assert_eq!(skeleton.len(), t);

    // Each U goes right before the (a_i + 1)-th skeleton letter from the
    // right; equal heights pile up in the same slot.
    let mut u_before = vec![0usize; t];
    for &ai in a {
        let follow = ai as usize + 1;
        if follow > t {
            return Err(NotRecurrentReason::ThresholdViolation);
        }
        u_before[t - follow] += 1;
    }

    let mut letters = Vec::with_capacity(a.len() + t);
    for (slot, &l) in skeleton.iter().enumerate() {
        letters.extend(std::iter::repeat_n(Letter::U, u_before[slot]));
        letters.push(l);
    }

    if !motzkin::is_motzkin(&letters) {
        return Err(NotRecurrentReason::PrefixViolation);
    }
    Ok(letters)
}

/// Inverse of [`f_map`] on `S(m,n)` with a clique sink: sorts the parts,
/// rebuilds the word, and reports either the word (recurrent) or the reason
/// there is none.
///
/// The configuration must have `m-1` clique and `n` independent heights and
/// be stable; violations are errors, not verdicts.
pub fn f_inverse(m: usize, n: usize, c: &Configuration) -> Result<Classification, Error> {
    let g = SplitGraph::clique_sink(m, n)?;
    ensure_stable(&g, c)?;
    let sorted = c.sorted_desc();
    match build_word(m - 1, &sorted.clique, &sorted.independent) {
        Ok(letters) => {
            let w = MotzkinWord::new(letters).expect("construction output is Motzkin-checked");
            debug_assert_eq!(f_map(&w).as_configuration(), &sorted);
            Ok(Classification::Recurrent(w))
        }
        Err(reason) => Ok(Classification::NotRecurrent(reason)),
    }
}

/// Inverse of [`g_map`] on `S(m,n)` with an independent sink.  Same
/// contract as [`f_inverse`] with the part shapes `(m, n-1)`.
pub fn g_inverse(m: usize, n: usize, c: &Configuration) -> Result<Classification, Error> {
    let g = SplitGraph::independent_sink(m, n)?;
    ensure_stable(&g, c)?;
    let sorted = c.sorted_desc();
    match build_word(m, &sorted.clique, &sorted.independent) {
        Ok(letters) => {
            let w = MotzkinWord::new(letters).expect("construction output is Motzkin-checked");
            if !w.is_dh() {
                return Ok(Classification::NotRecurrent(NotRecurrentReason::DhViolation));
            }
            debug_assert_eq!(g_map(&w).expect("DH-checked").as_configuration(), &sorted);
            Ok(Classification::Recurrent(w))
        }
        Err(reason) => Ok(Classification::NotRecurrent(reason)),
    }
}

fn ensure_stable(g: &SplitGraph, c: &Configuration) -> Result<(), Error> {
    c.check_shape(g)?;
    if !c.is_stable(g)? {
        // Find the offending vertex for the error message.
        for (v, h) in c.slots(g) {
            let deg = g.degree(v)? as u64;
            if h >= deg {
                return Err(Error::NotStable { vertex: v.to_string(), height: h, degree: deg });
            }
        }
    }
    Ok(())
}

/// Decide recurrence of a stable configuration on `g` through the word
/// construction, using the map that matches the sink side.  Only the side
/// of the sink matters: heights within a part are exchangeable, so every
/// clique sink behaves like `v_m` and every independent sink like `w_n`.
pub fn classify(g: &SplitGraph, c: &Configuration) -> Result<Classification, Error> {
    match g.sink().side {
        Side::Clique => f_inverse(g.m(), g.n(), c),
        Side::Independent => g_inverse(g.m(), g.n(), c),
    }
}

/// All weakly decreasing recurrent configurations of `g`, enumerated
/// through the word maps (not by brute force), sorted ascending.
pub fn decreasing_recurrent(
    g: &SplitGraph,
    budget: u64,
) -> Result<Vec<DecreasingConfiguration>, Error> {
    let words = match g.sink().side {
        Side::Clique => motzkin::generate_all(g.m() - 1, g.n(), budget)?,
        Side::Independent => motzkin::generate_all(g.m(), g.n() - 1, budget)?,
    };
    let mut out: Vec<DecreasingConfiguration> = match g.sink().side {
        Side::Clique => words.iter().map(f_map).collect(),
        Side::Independent => words
            .iter()
            .filter(|w| w.is_dh())
            .map(|w| g_map(w).expect("filtered to DH words"))
            .collect(),
    };
    out.sort();
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]), "word maps are injective");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sandpile;

    fn word(s: &str) -> MotzkinWord {
        s.parse().unwrap()
    }

    fn cfg(clique: &[u64], independent: &[u64]) -> Configuration {
        Configuration::new(clique.to_vec(), independent.to_vec())
    }

    #[test]
    fn clique_sink_worked_example() {
        let c = f_map(&word("HUHHUDHUDD"));
        assert_eq!(c.as_configuration(), &cfg(&[5, 3, 1], &[3, 3, 3, 2]));
        assert_eq!(f_target(&word("HUHHUDHUDD")), (4, 4));
        match f_inverse(4, 4, c.as_configuration()).unwrap() {
            Classification::Recurrent(w) => assert_eq!(w, word("HUHHUDHUDD")),
            other => panic!("expected recurrent, got {other:?}"),
        }
    }

    #[test]
    fn independent_sink_worked_example() {
        let c = g_map(&word("UUDHUDHUDDH")).unwrap();
        assert_eq!(c.as_configuration(), &cfg(&[6, 6, 4, 2], &[3, 2, 0]));
        assert_eq!(g_target(&word("UUDHUDHUDDH")), (4, 4));
        match g_inverse(4, 4, c.as_configuration()).unwrap() {
            Classification::Recurrent(w) => assert_eq!(w, word("UUDHUDHUDDH")),
            other => panic!("expected recurrent, got {other:?}"),
        }
    }

    #[test]
    fn smallest_independent_sink_example() {
        // "UUDD" targets S(2,1): both clique vertices see two following
        // D/H letters, so both heights are 1.
        let c = g_map(&word("UUDD")).unwrap();
        assert_eq!(c.as_configuration(), &cfg(&[1, 1], &[]));
    }

    #[test]
    fn g_map_rejects_words_with_early_h() {
        assert_eq!(g_map(&word("UHD")).unwrap_err(), Error::NotDhMotzkin);
        assert_eq!(g_map(&word("HUD")).unwrap_err(), Error::NotDhMotzkin);
    }

    #[test]
    fn f_inverse_flags_non_recurrent_configurations() {
        // On S(2,1) with sink v2 the only stable non-recurrent
        // configuration is (0;0); its construction gives "DUH".
        match f_inverse(2, 1, &cfg(&[0], &[0])).unwrap() {
            Classification::NotRecurrent(reason) => {
                assert_eq!(reason, NotRecurrentReason::PrefixViolation)
            }
            other => panic!("expected non-recurrent, got {other:?}"),
        }
        for (a, b) in [(1, 0), (1, 1), (0, 1)] {
            assert!(f_inverse(2, 1, &cfg(&[a], &[b])).unwrap().is_recurrent());
        }
    }

    #[test]
    fn inverse_rejects_bad_shapes_and_unstable_input() {
        assert!(matches!(
            f_inverse(3, 2, &cfg(&[0, 0, 0], &[0, 0])),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            f_inverse(3, 2, &cfg(&[4, 0], &[0, 0])),
            Err(Error::NotStable { .. })
        ));
        assert!(matches!(
            g_inverse(3, 2, &cfg(&[0, 0, 0], &[3])),
            Err(Error::NotStable { .. })
        ));
        assert!(matches!(f_inverse(0, 2, &cfg(&[], &[0, 0])), Err(Error::InvalidGraph { .. })));
    }

    #[test]
    fn inverse_sorts_before_constructing() {
        let unsorted = cfg(&[1, 3, 5], &[3, 2, 3, 3]);
        match f_inverse(4, 4, &unsorted).unwrap() {
            Classification::Recurrent(w) => assert_eq!(w, word("HUHHUDHUDD")),
            other => panic!("expected recurrent, got {other:?}"),
        }
    }

    #[test]
    fn word_roundtrip_on_all_small_words() {
        for m in 1..5usize {
            for n in 1..5usize {
                for w in motzkin::generate_all(m - 1, n, 100_000).unwrap() {
                    match f_inverse(m, n, f_map(&w).as_configuration()).unwrap() {
                        Classification::Recurrent(back) => assert_eq!(back, w),
                        other => panic!("f lost {w}: {other:?}"),
                    }
                }
                for w in motzkin::generate_all(m, n - 1, 100_000).unwrap() {
                    if !w.is_dh() {
                        continue;
                    }
                    let c = g_map(&w).unwrap();
                    match g_inverse(m, n, c.as_configuration()).unwrap() {
                        Classification::Recurrent(back) => assert_eq!(back, w),
                        other => panic!("g lost {w}: {other:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn images_equal_brute_force_decreasing_recurrent_sets() {
        for (m, n) in [(1usize, 1usize), (2, 1), (1, 3), (2, 2), (3, 2), (2, 3)] {
            for g in
                [SplitGraph::clique_sink(m, n).unwrap(), SplitGraph::independent_sink(m, n).unwrap()]
            {
                let mut brute: Vec<Configuration> = sandpile::all_recurrent_brute(&g, 1_000_000)
                    .unwrap()
                    .iter()
                    .map(Configuration::sorted_desc)
                    .collect();
                brute.sort();
                brute.dedup();
                let image: Vec<Configuration> = decreasing_recurrent(&g, 1_000_000)
                    .unwrap()
                    .into_iter()
                    .map(DecreasingConfiguration::into_configuration)
                    .collect();
                assert_eq!(image, brute, "S({m},{n}) sink {}", g.sink());
            }
        }
    }

    #[test]
    fn classify_agrees_with_burning_everywhere() {
        // Every stable configuration, both sinks, m+n <= 5.
        for m in 1..=4usize {
            for n in 1..=4usize {
                if m + n > 5 {
                    continue;
                }
                for g in [
                    SplitGraph::clique_sink(m, n).unwrap(),
                    SplitGraph::independent_sink(m, n).unwrap(),
                ] {
                    let (cl, ind) = g.part_sizes();
                    let clique_max = (m + n - 1) as u64;
                    let ind_max = m as u64;
                    let total = clique_max.pow(cl as u32) * ind_max.pow(ind as u32);
                    for code in 0..total {
                        let mut rest = code;
                        let mut heights = Vec::with_capacity(cl + ind);
                        for slot in 0..cl + ind {
                            let base = if slot < cl { clique_max } else { ind_max };
                            heights.push(rest % base);
                            rest /= base;
                        }
                        let c = Configuration::new(
                            heights[..cl].to_vec(),
                            heights[cl..].to_vec(),
                        );
                        let via_words = classify(&g, &c).unwrap().is_recurrent();
                        let via_burning = sandpile::is_recurrent(&g, &c).unwrap();
                        assert_eq!(
                            via_words,
                            via_burning,
                            "S({m},{n}) sink {} config {c:?}",
                            g.sink()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_sizes_and_the_expansion_identity() {
        let d = DecreasingConfiguration::new(cfg(&[5, 3, 1], &[3, 3, 3, 2])).unwrap();
        assert_eq!(d.orbit_size(), BigUint::from(24u32)); // 3! * 4!/3!
        // Summing orbit sizes over the decreasing recurrent configurations
        // recovers the full recurrent count (m+n)^(m-1) * m^(n-1).
        for (m, n) in [(2usize, 2usize), (3, 2), (2, 3), (4, 2)] {
            for g in
                [SplitGraph::clique_sink(m, n).unwrap(), SplitGraph::independent_sink(m, n).unwrap()]
            {
                let total: BigUint = decreasing_recurrent(&g, 1_000_000)
                    .unwrap()
                    .iter()
                    .map(DecreasingConfiguration::orbit_size)
                    .sum();
                let expected =
                    BigUint::from(m + n).pow(m as u32 - 1) * BigUint::from(m).pow(n as u32 - 1);
                assert_eq!(total, expected, "S({m},{n}) sink {}", g.sink());
            }
        }
    }

    #[test]
    fn decreasing_type_validates_and_sorts() {
        assert!(DecreasingConfiguration::new(cfg(&[1, 2], &[0])).is_err());
        let d = DecreasingConfiguration::from_any(&cfg(&[1, 2], &[0]));
        assert_eq!(d.as_configuration(), &cfg(&[2, 1], &[0]));
        // Serde validates too.
        let ok: DecreasingConfiguration =
            serde_json::from_str(r#"{"clique":[2,1],"independent":[0]}"#).unwrap();
        assert_eq!(ok.as_configuration(), &cfg(&[2, 1], &[0]));
        assert!(
            serde_json::from_str::<DecreasingConfiguration>(r#"{"clique":[1,2],"independent":[0]}"#)
                .is_err()
        );
    }

    #[test]
    fn raw_construction_reports_threshold_and_order_violations() {
        // b_1 larger than the number of D's available.
        assert_eq!(
            build_word(2, &[0], &[3]).unwrap_err(),
            NotRecurrentReason::ThresholdViolation
        );
        // a_1 + 1 larger than the skeleton.
        assert_eq!(
            build_word(1, &[5], &[1]).unwrap_err(),
            NotRecurrentReason::ThresholdViolation
        );
        // Unsorted heights.
        assert_eq!(
            build_word(2, &[0, 1], &[0]).unwrap_err(),
            NotRecurrentReason::MonotonicityViolation
        );
    }
}
