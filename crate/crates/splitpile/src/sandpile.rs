//! Sandpile dynamics on a split graph: configurations, toppling,
//! stabilization, and the burning test for recurrence.
//!
//! A configuration assigns a grain count to every non-sink vertex.  A vertex
//! with at least as many grains as its degree is unstable and may topple,
//! sending one grain along each incident edge.  Repeated toppling always
//! terminates (the sink swallows grains), and the final configuration and
//! per-vertex toppling counts do not depend on the order in which unstable
//! vertices are chosen — that is the abelian property, and the tests here
//! exercise it directly.
//!
//! A stable configuration is *recurrent* when it can be reached over and
//! over in the long-run dynamics.  The burning test decides this without
//! simulating: topple the sink once, then keep toppling vertices that become
//! unstable.  The configuration is recurrent exactly when every vertex ends
//! up toppling (once each).  [`burning_certificate`] returns the toppling
//! order as a checkable witness.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::split_graph::{Side, SplitGraph, VertexId};

/// Grain counts for the non-sink vertices, split by part.  The sink has no
/// entry: with a clique sink, `clique` has `m-1` entries (for `v_1` up to
/// `v_{m-1}` when the sink is `v_m`); with an independent sink,
/// `independent` has `n-1` entries.
///
/// Serializes as `{"clique": [5,3,1], "independent": [3,3,3,2]}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Configuration {
    pub clique: Vec<u64>,
    pub independent: Vec<u64>,
}

impl Configuration {
    pub fn new(clique: Vec<u64>, independent: Vec<u64>) -> Configuration {
        Configuration { clique, independent }
    }

    /// Verify that the entry counts match the non-sink part sizes of `g`.
    pub fn check_shape(&self, g: &SplitGraph) -> Result<(), Error> {
        let (cl, ind) = g.part_sizes();
        if self.clique.len() != cl || self.independent.len() != ind {
            return Err(Error::ShapeMismatch {
                expected_clique: cl,
                expected_independent: ind,
                got_clique: self.clique.len(),
                got_independent: self.independent.len(),
            });
        }
        Ok(())
    }

    /// Every non-sink vertex holds fewer grains than its degree.
    pub fn is_stable(&self, g: &SplitGraph) -> Result<bool, Error> {
        self.check_shape(g)?;
        let clique_deg = (g.m() - 1 + g.n()) as u64;
        let independent_deg = g.m() as u64;
        Ok(self.clique.iter().all(|&h| h < clique_deg)
            && self.independent.iter().all(|&h| h < independent_deg))
    }

    fn check_stable(&self, g: &SplitGraph) -> Result<(), Error> {
        self.check_shape(g)?;
        for (v, h) in self.slots(g) {
            let deg = g.degree(v)? as u64;
            if h >= deg {
                return Err(Error::NotStable { vertex: v.to_string(), height: h, degree: deg });
            }
        }
        Ok(())
    }

    /// Pair each height with its vertex, in increasing vertex order.
    pub fn slots<'a>(&'a self, g: &SplitGraph) -> impl Iterator<Item = (VertexId, u64)> + 'a {
        let sink = g.sink();
        let clique_ids = (0..g.m()).filter(move |&i| sink != VertexId::clique(i));
        let indep_ids = (0..g.n()).filter(move |&j| sink != VertexId::independent(j));
        clique_ids
            .map(VertexId::clique)
            .zip(self.clique.iter().copied())
            .chain(indep_ids.map(VertexId::independent).zip(self.independent.iter().copied()))
    }

    /// Copy with each part sorted weakly decreasing.  Recurrence only
    /// depends on the multiset of heights in each part, so this is the
    /// canonical representative of a configuration's symmetry class.
    pub fn sorted_desc(&self) -> Configuration {
        let mut c = self.clone();
        c.clique.sort_unstable_by(|a, b| b.cmp(a));
        c.independent.sort_unstable_by(|a, b| b.cmp(a));
        c
    }

    /// Render in the conventional `(a_1,...,a_{m-1},-;b_1,...,b_n)` style,
    /// with `-` marking the sink slot.
    pub fn display_with(&self, g: &SplitGraph) -> String {
        let mut clique: Vec<String> = self.clique.iter().map(u64::to_string).collect();
        let mut independent: Vec<String> = self.independent.iter().map(u64::to_string).collect();
        match g.sink().side {
            Side::Clique => clique.insert(g.sink().index, "-".into()),
            Side::Independent => independent.insert(g.sink().index, "-".into()),
        }
        format!("({};{})", clique.join(","), independent.join(","))
    }
}

/// How many times each non-sink vertex toppled during a stabilization.
/// Parts are indexed exactly like [`Configuration`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Odometer {
    pub clique: Vec<u64>,
    pub independent: Vec<u64>,
}

/// The toppling order found by the burning test, starting with the sink.
/// Each listed non-sink vertex was unstable at the moment it toppled, and
/// every vertex of the graph appears exactly once; [`BurningCertificate::verify`]
/// re-checks both claims by replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurningCertificate {
    pub order: Vec<VertexId>,
}

impl BurningCertificate {
    /// Replay the recorded order against `c` and confirm it is a valid
    /// burning run that covers the whole graph.
    pub fn verify(&self, g: &SplitGraph, c: &Configuration) -> Result<bool, Error> {
        c.check_shape(g)?;
        if self.order.len() != g.vertex_count() || self.order.first() != Some(&g.sink()) {
            return Ok(false);
        }
        let mut h = to_full(g, c);
        let mut seen = vec![false; g.vertex_count()];
        for (pos, &v) in self.order.iter().enumerate() {
            if !g.contains(v) {
                return Ok(false);
            }
            let idx = g.global_index(v)?;
            if seen[idx] {
                return Ok(false);
            }
            seen[idx] = true;
            let deg = g.degree(v)? as u64;
            // The sink opens the run unconditionally; everyone else must be
            // unstable when their turn comes.
            if pos > 0 && h[idx] < deg {
                return Ok(false);
            }
            if pos > 0 {
                h[idx] -= deg;
            }
            for nb in neighbor_indices(g, idx) {
                h[nb] += 1;
            }
        }
        Ok(true)
    }
}

/// Iterate the global indices of the neighbors of the vertex at `idx`.
fn neighbor_indices(g: &SplitGraph, idx: usize) -> impl Iterator<Item = usize> {
    let (m, n) = (g.m(), g.n());
    let (clique_range, indep_range) = if idx < m {
        // Clique vertex: all other clique vertices plus the whole
        // independent part.
        (0..m, m..m + n)
    } else {
        // Independent vertex: just the clique.
        (0..m, 0..0)
    };
    clique_range.filter(move |&i| i != idx).chain(indep_range)
}

/// Expand a configuration to one height per vertex in global order, with a
/// zero placeholder in the sink slot.
fn to_full(g: &SplitGraph, c: &Configuration) -> Vec<u64> {
    let mut full = vec![0u64; g.vertex_count()];
    for (v, h) in c.slots(g) {
        full[g.global_index(v).expect("slot vertex is in the graph")] = h;
    }
    full
}

fn from_full(g: &SplitGraph, full: &[u64]) -> Configuration {
    let sink = g.sink();
    let clique = (0..g.m())
        .filter(|&i| sink != VertexId::clique(i))
        .map(|i| full[i])
        .collect();
    let independent = (0..g.n())
        .filter(|&j| sink != VertexId::independent(j))
        .map(|j| full[g.m() + j])
        .collect();
    Configuration { clique, independent }
}

/// Topple until stable.  Returns the stable configuration together with the
/// odometer (how many times each vertex toppled).  By the abelian property
/// the result is independent of the processing order; this implementation
/// works through a queue and topples each unstable vertex as many times as
/// its current height allows in one step.
pub fn stabilize(g: &SplitGraph, c: &Configuration) -> Result<(Configuration, Odometer), Error> {
    c.check_shape(g)?;
    let count = g.vertex_count();
    let sink_idx = g.global_index(g.sink())?;
    let mut h = to_full(g, c);
    let mut topples = vec![0u64; count];
    let degree_of = |idx: usize| -> u64 {
        if idx < g.m() { (g.m() - 1 + g.n()) as u64 } else { g.m() as u64 }
    };

    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut queued = vec![false; count];
    for idx in 0..count {
        if idx != sink_idx && h[idx] >= degree_of(idx) {
            queue.push_back(idx);
            queued[idx] = true;
        }
    }

    while let Some(idx) = queue.pop_front() {
        queued[idx] = false;
        let deg = degree_of(idx);
        if h[idx] < deg {
            continue;
        }
        let k = h[idx] / deg; // batch all currently possible topplings
        topples[idx] = topples[idx].checked_add(k).ok_or(Error::HeightOverflow)?;
        h[idx] -= k * deg;
        for nb in neighbor_indices(g, idx) {
            h[nb] = h[nb].checked_add(k).ok_or(Error::HeightOverflow)?;
            if nb != sink_idx && !queued[nb] && h[nb] >= degree_of(nb) {
                queue.push_back(nb);
                queued[nb] = true;
            }
        }
    }

    let odometer = {
        let counts = from_full(g, &topples);
        Odometer { clique: counts.clique, independent: counts.independent }
    };
    Ok((from_full(g, &h), odometer))
}

/// The burning test.  For a stable configuration, topple the sink once and
/// then every vertex that becomes unstable; `c` is recurrent exactly when
/// the fire reaches everyone.  Returns the toppling order as a certificate,
/// or `None` if some vertex never burns (not recurrent).
///
/// Unstable input is a caller error ([`Error::NotStable`]): recurrence is
/// only defined for stable configurations.
pub fn burning_certificate(
    g: &SplitGraph,
    c: &Configuration,
) -> Result<Option<BurningCertificate>, Error> {
    c.check_stable(g)?;
    let count = g.vertex_count();
    let sink_idx = g.global_index(g.sink())?;
    let mut h = to_full(g, c);
    let mut burned = vec![false; count];
    let mut order = Vec::with_capacity(count);

    burned[sink_idx] = true;
    order.push(g.sink());
    for nb in neighbor_indices(g, sink_idx) {
        h[nb] += 1;
    }

    // Each vertex can burn at most once (its height after burning is at most
    // the number of still-unburned neighbors, which is below its degree), so
    // a simple scan-until-fixpoint terminates after <= |V|. rounds.
    loop {
        let mut progressed = false;
        for idx in 0..count {
            if burned[idx] {
                continue;
            }
            let deg = if idx < g.m() { (g.m() - 1 + g.n()) as u64 } else { g.m() as u64 };
            if h[idx] >= deg {
                burned[idx] = true;
                order.push(g.vertex_at(idx)?);
                h[idx] -= deg;
                for nb in neighbor_indices(g, idx) {
                    h[nb] += 1;
                }
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }

    if order.len() == count {
        Ok(Some(BurningCertificate { order }))
    } else {
        Ok(None)
    }
}

/// Whether a stable configuration is recurrent, per the burning test.
pub fn is_recurrent(g: &SplitGraph, c: &Configuration) -> Result<bool, Error> {
    Ok(burning_certificate(g, c)?.is_some())
}

/// All recurrent configurations of `g`, found by running the burning test
/// on every stable configuration.  Exponential in the graph size — this is
/// the ground-truth oracle the bijections are checked against, not a way to
/// count recurrent states (use the closed-form counts for that).
///
/// Fails with [`Error::BudgetExceeded`] when the number of stable
/// configurations to scan exceeds `budget`.
pub fn all_recurrent_brute(g: &SplitGraph, budget: u64) -> Result<Vec<Configuration>, Error> {
    let (cl, ind) = g.part_sizes();
    let clique_base = (g.m() + g.n() - 1) as u128; // heights 0..=deg-1
    let independent_base = g.m() as u128;
    let total = clique_base
        .checked_pow(cl as u32)
        .and_then(|a| independent_base.checked_pow(ind as u32).and_then(|b| a.checked_mul(b)))
        .unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }

    let mut digits = vec![0u64; cl + ind];
    let mut out = Vec::new();
    loop {
        let c = Configuration {
            clique: digits[..cl].to_vec(),
            independent: digits[cl..].to_vec(),
        };
        if is_recurrent(g, &c)? {
            out.push(c);
        }
        // Next configuration in lexicographic order (last slot varies
        // fastest).
        let mut pos = cl + ind;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            let base = if pos < cl { clique_base as u64 } else { independent_base as u64 };
            if digits[pos] + 1 < base {
                digits[pos] += 1;
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(clique: &[u64], independent: &[u64]) -> Configuration {
        Configuration::new(clique.to_vec(), independent.to_vec())
    }

    #[test]
    fn shape_is_checked() {
        let g = SplitGraph::clique_sink(3, 2).unwrap();
        assert!(cfg(&[0, 0], &[0, 0]).check_shape(&g).is_ok());
        let err = cfg(&[0, 0, 0], &[0, 0]).check_shape(&g).unwrap_err();
        assert_eq!(
            err,
            Error::ShapeMismatch {
                expected_clique: 2,
                expected_independent: 2,
                got_clique: 3,
                got_independent: 2,
            }
        );
        assert!(stabilize(&g, &cfg(&[0], &[0])).is_err());
    }

    #[test]
    fn stability_thresholds_are_the_degrees() {
        let g = SplitGraph::clique_sink(3, 2).unwrap();
        // Clique degree 4, independent degree 3.
        assert!(cfg(&[3, 3], &[2, 2]).is_stable(&g).unwrap());
        assert!(!cfg(&[4, 0], &[0, 0]).is_stable(&g).unwrap());
        assert!(!cfg(&[0, 0], &[0, 3]).is_stable(&g).unwrap());
    }

    #[test]
    fn stabilize_is_identity_on_stable_input() {
        let g = SplitGraph::independent_sink(3, 3).unwrap();
        let c = cfg(&[4, 2, 0], &[2, 1]);
        let (stable, odo) = stabilize(&g, &c).unwrap();
        assert_eq!(stable, c);
        assert_eq!(odo.clique, vec![0, 0, 0]);
        assert_eq!(odo.independent, vec![0, 0]);
    }

    #[test]
    fn stabilize_hand_traced_cascade() {
        // S(2,1), sink v2.  Start at (3;1): v1 topples once -> (1;2),
        // w1 topples once -> (2;0), v1 topples once more -> (0;1).
        let g = SplitGraph::clique_sink(2, 1).unwrap();
        let (stable, odo) = stabilize(&g, &cfg(&[3], &[1])).unwrap();
        assert_eq!(stable, cfg(&[0], &[1]));
        assert_eq!(odo.clique, vec![2]);
        assert_eq!(odo.independent, vec![1]);
    }

    #[test]
    fn stabilize_matches_one_topple_at_a_time() {
        // The abelian property, exercised exhaustively on a small graph:
        // batched queue order vs. always toppling the smallest unstable
        // vertex one step at a time.
        let g = SplitGraph::clique_sink(2, 2).unwrap();
        let single_step = |c: &Configuration| {
            let mut h = to_full(&g, c);
            let mut odo = vec![0u64; 4];
            loop {
                let mut fired = false;
                for idx in 0..4 {
                    if idx == 1 {
                        continue; // sink v2
                    }
                    let deg = if idx < 2 { 3 } else { 2 };
                    if h[idx] >= deg {
                        h[idx] -= deg;
                        odo[idx] += 1;
                        for nb in neighbor_indices(&g, idx) {
                            h[nb] += 1;
                        }
                        fired = true;
                        break;
                    }
                }
                if !fired {
                    return (from_full(&g, &h), from_full(&g, &odo));
                }
            }
        };
        for a in 0..=6u64 {
            for b1 in 0..=4u64 {
                for b2 in 0..=4u64 {
                    let c = cfg(&[a], &[b1, b2]);
                    let (fast, odo) = stabilize(&g, &c).unwrap();
                    let (slow, slow_odo) = single_step(&c);
                    assert_eq!(fast, slow, "config {c:?}");
                    assert_eq!(odo.clique, slow_odo.clique);
                    assert_eq!(odo.independent, slow_odo.independent);
                    assert!(fast.is_stable(&g).unwrap());
                }
            }
        }
    }

    #[test]
    fn overflow_is_an_error_not_a_panic() {
        let g = SplitGraph::clique_sink(2, 1).unwrap();
        let c = cfg(&[u64::MAX], &[u64::MAX]);
        assert_eq!(stabilize(&g, &c).unwrap_err(), Error::HeightOverflow);
    }

    #[test]
    fn burning_requires_stable_input() {
        let g = SplitGraph::clique_sink(2, 1).unwrap();
        let err = is_recurrent(&g, &cfg(&[5], &[0])).unwrap_err();
        assert_eq!(err, Error::NotStable { vertex: "v1".into(), height: 5, degree: 2 });
    }

    #[test]
    fn burning_on_s21_matches_known_recurrent_set() {
        // S(2,1), sink v2: stable configurations have a_1 <= 1, b_1 <= 1.
        // Burning leaves exactly (0;0) out.
        let g = SplitGraph::clique_sink(2, 1).unwrap();
        let expect = |a: u64, b: u64| (a, b) != (0, 0);
        for a in 0..=1 {
            for b in 0..=1 {
                assert_eq!(
                    is_recurrent(&g, &cfg(&[a], &[b])).unwrap(),
                    expect(a, b),
                    "({a};{b})"
                );
            }
        }
    }

    #[test]
    fn certificates_start_at_the_sink_and_replay_cleanly() {
        let g = SplitGraph::independent_sink(3, 2).unwrap();
        for c in all_recurrent_brute(&g, 10_000).unwrap() {
            let cert = burning_certificate(&g, &c).unwrap().expect("recurrent");
            assert_eq!(cert.order[0], g.sink());
            assert_eq!(cert.order.len(), g.vertex_count());
            assert!(cert.verify(&g, &c).unwrap());
        }
        // A wrong certificate is rejected.
        let c = cfg(&[2, 2, 2], &[2]);
        if let Some(mut cert) = burning_certificate(&g, &c).unwrap() {
            cert.order.swap(0, 1);
            assert!(!cert.verify(&g, &c).unwrap());
        }
    }

    #[test]
    fn recurrent_counts_match_the_spanning_tree_formula() {
        // |recurrent| = (m+n)^(m-1) * m^(n-1) regardless of sink.
        for (m, n) in [(1usize, 1usize), (2, 1), (1, 3), (2, 2), (3, 2), (2, 3), (4, 1)] {
            let expected = (m + n).pow(m as u32 - 1) * m.pow(n as u32 - 1);
            for g in [SplitGraph::clique_sink(m, n).unwrap(), SplitGraph::independent_sink(m, n).unwrap()] {
                let found = all_recurrent_brute(&g, 1_000_000).unwrap();
                assert_eq!(found.len(), expected, "S({m},{n}) sink {}", g.sink());
                // Output is sorted and duplicate-free.
                let mut sorted = found.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(found, sorted);
            }
        }
    }

    #[test]
    fn brute_enumeration_respects_budget() {
        let g = SplitGraph::clique_sink(3, 3).unwrap();
        // 5^2 * 3^3 = 675 stable configurations.
        assert_eq!(
            all_recurrent_brute(&g, 100).unwrap_err(),
            Error::BudgetExceeded { needed: 675, budget: 100 }
        );
        assert!(all_recurrent_brute(&g, 675).is_ok());
    }

    #[test]
    fn recurrence_only_depends_on_part_multisets() {
        // Permuting heights within a part never changes the verdict.
        let g = SplitGraph::clique_sink(3, 2).unwrap();
        for a1 in 0..4u64 {
            for a2 in 0..4u64 {
                for b1 in 0..3u64 {
                    for b2 in 0..3u64 {
                        let r1 = is_recurrent(&g, &cfg(&[a1, a2], &[b1, b2])).unwrap();
                        let r2 = is_recurrent(&g, &cfg(&[a2, a1], &[b1, b2])).unwrap();
                        let r3 = is_recurrent(&g, &cfg(&[a1, a2], &[b2, b1])).unwrap();
                        assert_eq!(r1, r2);
                        assert_eq!(r1, r3);
                    }
                }
            }
        }
    }

    #[test]
    fn display_marks_the_sink_slot() {
        let g = SplitGraph::clique_sink(4, 4).unwrap();
        let c = cfg(&[5, 3, 1], &[3, 3, 3, 2]);
        assert_eq!(c.display_with(&g), "(5,3,1,-;3,3,3,2)");
        let g = SplitGraph::independent_sink(4, 4).unwrap();
        let c = cfg(&[6, 6, 4, 2], &[3, 2, 0]);
        assert_eq!(c.display_with(&g), "(6,6,4,2;3,2,0,-)");
    }

    #[test]
    fn configuration_json_roundtrip() {
        let c = cfg(&[5, 3, 1], &[3, 3, 3, 2]);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"clique":[5,3,1],"independent":[3,3,3,2]}"#);
        assert_eq!(serde_json::from_str::<Configuration>(&json).unwrap(), c);
    }

    #[test]
    fn sorted_desc_sorts_each_part_independently() {
        let c = cfg(&[1, 5, 3], &[0, 2]);
        assert_eq!(c.sorted_desc(), cfg(&[5, 3, 1], &[2, 0]));
    }
}
