//! A Prufer-style code for spanning trees of `S(m,n)`.
//!
//! Vertices carry global labels `1..=m+n`: clique vertices are `1..=m` and
//! independent vertices `m+1..=m+n` (so `w_j` is written `v_{m+j}`).
//! Repeatedly delete the smallest-label leaf until one edge remains,
//! recording the leaf's neighbor in the word `f` when the leaf is a clique
//! vertex and in `g` when it is independent.  This produces
//!
//! * `f`: `m-1` letters over all of `1..=m+n`, and
//! * `g`: `n-1` letters over `1..=m` (independent leaves only border the
//!   clique),
//!
//! and every such pair arises from exactly one spanning tree — giving the
//! count `(m+n)^(m-1) * m^(n-1)`.  [`decode`] rebuilds the tree by
//! attaching, at each step, the smallest label that no longer occurs in the
//! unread remainder of either word.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::split_graph::SplitGraph;

/// A spanning tree of `S(m,n)` over global labels, with a canonical edge
/// list (each edge smaller endpoint first, edges sorted).
///
/// Serializes as `{"m": 5, "n": 4, "edges": [["v1","v5"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpanningTree {
    m: usize,
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SpanningTree {
    /// Validate an edge list as a spanning tree of `S(m,n)`: right vertex
    /// count, every edge an actual edge of the graph, connected, acyclic.
    pub fn new(m: usize, n: usize, edges: Vec<(usize, usize)>) -> Result<SpanningTree, Error> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidGraph { m, n });
        }
        let total = m + n;
        if edges.len() != total - 1 {
            return Err(Error::InvalidTree(format!(
                "a spanning tree of S({m},{n}) has {} edges, got {}",
                total - 1,
                edges.len()
            )));
        }
        let mut canonical: Vec<(usize, usize)> =
            edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        canonical.sort_unstable();
        for &(a, b) in &canonical {
            if a == 0 || b > total {
                return Err(Error::InvalidTree(format!(
                    "edge ({a},{b}) uses labels outside 1..={total}"
                )));
            }
            if a == b {
                return Err(Error::InvalidTree(format!("self-loop at {a}")));
            }
            if a > m {
                return Err(Error::InvalidTree(format!(
                    "edge ({a},{b}) joins two independent vertices"
                )));
            }
        }
        if canonical.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTree("duplicate edge".into()));
        }
        // Connected with |V| - 1 edges means tree.
        let mut adjacency = vec![Vec::new(); total + 1];
        for &(a, b) in &canonical {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut seen = vec![false; total + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &nb in &adjacency[v] {
                if !seen[nb] {
                    seen[nb] = true;
                    reached += 1;
                    stack.push(nb);
                }
            }
        }
        if reached != total {
            return Err(Error::InvalidTree("edge set is not connected".into()));
        }
        Ok(SpanningTree { m, n, edges: canonical })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

fn label_name(label: usize) -> String {
    format!("v{label}")
}

fn label_parse(s: &str) -> Result<usize, Error> {
    let err = || Error::InvalidInput(format!("cannot parse tree label {s:?}"));
    let digits = s.strip_prefix('v').ok_or_else(err)?;
    let label: usize = digits.parse().map_err(|_| err())?;
    if label == 0 {
        return Err(err());
    }
    Ok(label)
}

#[derive(Serialize, Deserialize)]
struct TreeRepr {
    m: usize,
    n: usize,
    edges: Vec<(String, String)>,
}

impl Serialize for SpanningTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TreeRepr {
            m: self.m,
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| (label_name(a), label_name(b)))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpanningTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<SpanningTree, D::Error> {
        let repr = TreeRepr::deserialize(deserializer)?;
        let mut edges = Vec::with_capacity(repr.edges.len());
        for (a, b) in &repr.edges {
            let a = label_parse(a).map_err(serde::de::Error::custom)?;
            let b = label_parse(b).map_err(serde::de::Error::custom)?;
            edges.push((a, b));
        }
        SpanningTree::new(repr.m, repr.n, edges).map_err(serde::de::Error::custom)
    }
}

/// The two code words of a spanning tree.
///
/// Serializes as `{"f": ["v5","v7","v3","v7"], "g": ["v3","v5","v4"]}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PruferPair {
    pub f_word: Vec<usize>,
    pub g_word: Vec<usize>,
}

impl PruferPair {
    pub fn new(f_word: Vec<usize>, g_word: Vec<usize>) -> PruferPair {
        PruferPair { f_word, g_word }
    }

    /// Check lengths and alphabets against `S(m,n)`: `f` has `m-1` letters
    /// in `1..=m+n`, `g` has `n-1` letters in `1..=m`.
    pub fn validate(&self, m: usize, n: usize) -> Result<(), Error> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidGraph { m, n });
        }
        if self.f_word.len() != m - 1 || self.g_word.len() != n - 1 {
            return Err(Error::InvalidPruferPair(format!(
                "expected word lengths ({},{}), got ({},{})",
                m - 1,
                n - 1,
                self.f_word.len(),
                self.g_word.len()
            )));
        }
        if let Some(&x) = self.f_word.iter().find(|&&x| x == 0 || x > m + n) {
            return Err(Error::InvalidPruferPair(format!(
                "f letter {x} outside 1..={}",
                m + n
            )));
        }
        if let Some(&x) = self.g_word.iter().find(|&&x| x == 0 || x > m) {
            return Err(Error::InvalidPruferPair(format!("g letter {x} outside 1..={m}")));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    f: Vec<String>,
    g: Vec<String>,
}

impl Serialize for PruferPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PairRepr {
            f: self.f_word.iter().map(|&x| label_name(x)).collect(),
            g: self.g_word.iter().map(|&x| label_name(x)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PruferPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<PruferPair, D::Error> {
        let repr = PairRepr::deserialize(deserializer)?;
        let parse = |v: &[String]| -> Result<Vec<usize>, D::Error> {
            v.iter().map(|s| label_parse(s).map_err(serde::de::Error::custom)).collect()
        };
        Ok(PruferPair { f_word: parse(&repr.f)?, g_word: parse(&repr.g)? })
    }
}

/// Encode a spanning tree: delete the smallest-label leaf until one edge
/// remains, recording each deleted leaf's neighbor in `f` (clique leaf) or
/// `g` (independent leaf).
pub fn encode(t: &SpanningTree) -> PruferPair {
    let total = t.m + t.n;
    let mut adjacency: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); total + 1];
    for &(a, b) in &t.edges {
        adjacency[a].insert(b);
        adjacency[b].insert(a);
    }
    let mut leaves: BTreeSet<usize> =
        (1..=total).filter(|&v| adjacency[v].len() == 1).collect();
    let mut f_word = Vec::with_capacity(t.m - 1);
    let mut g_word = Vec::with_capacity(t.n - 1);
    let mut edges_left = total - 1;

    while edges_left > 1 {
        let leaf = *leaves.iter().next().expect("a tree with >= 2 edges has >= 2 leaves");
        leaves.remove(&leaf);
        let neighbor = *adjacency[leaf].iter().next().expect("leaf has one neighbor");
        if leaf <= t.m {
            f_word.push(neighbor);
        } else {
            g_word.push(neighbor);
        }
        adjacency[leaf].clear();
        adjacency[neighbor].remove(&leaf);
        edges_left -= 1;
        if adjacency[neighbor].len() == 1 {
            leaves.insert(neighbor);
        }
    }
    PruferPair { f_word, g_word }
}

/// Decode a word pair back into the spanning tree that encodes to it.
///
/// A label is ready to attach when it no longer occurs in the unread
/// remainder of either word; the smallest ready label is attached to the
/// next letter of `f` (labels `<= m`) or `g` (labels `> m`).  The final
/// edge joins the two labels left over.
pub fn decode(m: usize, n: usize, pair: &PruferPair) -> Result<SpanningTree, Error> {
    pair.validate(m, n)?;
    let total = m + n;
    let mut pending = vec![0usize; total + 1];
    for &x in pair.f_word.iter().chain(pair.g_word.iter()) {
        pending[x] += 1;
    }
    let mut attached = vec![false; total + 1];
    let mut ready: BTreeSet<usize> = (1..=total).filter(|&v| pending[v] == 0).collect();
    let mut fi = 0;
    let mut gi = 0;
    let mut edges = Vec::with_capacity(total - 1);

    while fi < pair.f_word.len() || gi < pair.g_word.len() {
        let leaf = *ready
            .iter()
            .next()
            .expect("some label is always absent from the unread remainder");
        ready.remove(&leaf);
        attached[leaf] = true;
        let head = if leaf <= m {
            let h = pair.f_word[fi];
            fi += 1;
            h
        } else {
            let h = pair.g_word[gi];
            gi += 1;
            h
        };
        debug_assert!(!attached[head], "letters only name unattached labels");
        edges.push((leaf, head));
        pending[head] -= 1;
        if pending[head] == 0 {
            ready.insert(head);
        }
    }

    let leftover: Vec<usize> = (1..=total).filter(|&v| !attached[v]).collect();
    debug_assert_eq!(leftover.len(), 2);
    edges.push((leftover[0], leftover[1]));
    SpanningTree::new(m, n, edges)
}

/// `(m+n)^(m-1) * m^(n-1)`, the number of spanning trees of `S(m,n)` — one
/// per word pair.
pub fn count_spanning_trees(m: usize, n: usize) -> BigUint {
    assert!(m >= 1 && n >= 1, "both parts must be non-empty");
    BigUint::from(m + n).pow(m as u32 - 1) * BigUint::from(m).pow(n as u32 - 1)
}

/// Every valid word pair for `S(m,n)`, in lexicographic order (`f` varies
/// slowest).  Budget-guarded by the closed-form count.
pub fn all_prufer_pairs(m: usize, n: usize, budget: u64) -> Result<Vec<PruferPair>, Error> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidGraph { m, n });
    }
    let total = count_spanning_trees(m, n);
    if total > BigUint::from(budget) {
        let needed = u128::try_from(&total).unwrap_or(u128::MAX);
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let f_len = m - 1;
    let g_len = n - 1;
    let mut digits = vec![0usize; f_len + g_len];
    let mut out = Vec::new();
    loop {
        out.push(PruferPair {
            f_word: digits[..f_len].iter().map(|&d| d + 1).collect(),
            g_word: digits[f_len..].iter().map(|&d| d + 1).collect(),
        });
        let mut pos = f_len + g_len;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            let base = if pos < f_len { m + n } else { m };
            if digits[pos] + 1 < base {
                digits[pos] += 1;
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Ground-truth tree enumeration: try every `(m+n-1)`-subset of the edge
/// set of `S(m,n)` and keep the ones that form spanning trees.  The budget
/// bounds the number of subsets visited.
pub fn brute_spanning_trees(m: usize, n: usize, budget: u64) -> Result<Vec<SpanningTree>, Error> {
    let g = SplitGraph::clique_sink(m, n)?; // sink choice is irrelevant here
    let all_edges = g.as_generic_graph();
    let total = m + n;
    let subsets = crate::arith::binomial(all_edges.len(), total - 1);
    if subsets > BigUint::from(budget) {
        let needed = u128::try_from(&subsets).unwrap_or(u128::MAX);
        return Err(Error::BudgetExceeded { needed, budget });
    }

    let mut out = Vec::new();
    let k = total - 1;
    let mut choice: Vec<usize> = (0..k).collect();
    loop {
        let edges: Vec<(usize, usize)> = choice.iter().map(|&i| all_edges[i]).collect();
        if let Ok(tree) = SpanningTree::new(m, n, edges) {
            out.push(tree);
        }
        // Next k-combination of edge indices in lexicographic order.
        let mut pos = k;
        loop {
            if pos == 0 {
                out.sort();
                return Ok(out);
            }
            pos -= 1;
            if choice[pos] < all_edges.len() - (k - pos) {
                choice[pos] += 1;
                for later in pos + 1..k {
                    choice[later] = choice[later - 1] + 1;
                }
                break;
            }
        }
    }
}
