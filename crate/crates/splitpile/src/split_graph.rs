//! The complete split graph `S(m,n)` and its sink bookkeeping.
//!
//! `S(m,n)` has clique vertices `v_1 < ... < v_m` (pairwise adjacent) and
//! independent vertices `w_1 < ... < w_n` (pairwise non-adjacent, each
//! adjacent to every clique vertex).  All orderings in this crate use the
//! total order `v_1 < ... < v_m < w_1 < ... < w_n`.
//!
//! Every sandpile computation needs a distinguished sink vertex.  The sink is
//! stored on the graph itself, so a [`SplitGraph`] value pins down both the
//! topology and the roles of its vertices.  Heights of both parts are
//! exchangeable (any clique vertex looks like any other, likewise for the
//! independent part), so the two canonical choices `v_m` and `w_n` cover all
//! sinks up to automorphism; arbitrary sink indices are still accepted.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Which part of the split graph a vertex belongs to.
///
/// The derived order makes every clique vertex smaller than every
/// independent vertex, matching `v_1 < ... < v_m < w_1 < ... < w_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Clique,
    Independent,
}

impl Side {
    /// The other part.
    pub fn opposite(self) -> Side {
        match self {
            Side::Clique => Side::Independent,
            Side::Independent => Side::Clique,
        }
    }
}

/// A vertex of some `S(m,n)`, identified by part and position within the
/// part.  `index` is 0-based in code; the display form (`v3`, `w2`) and the
/// JSON form (`{"side":"clique","index":3}`) are 1-based to match the
/// conventional vertex names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub side: Side,
    pub index: usize,
}

impl VertexId {
    /// Clique vertex `v_{index+1}` (0-based index).
    pub fn clique(index: usize) -> VertexId {
        VertexId { side: Side::Clique, index }
    }

    /// Independent vertex `w_{index+1}` (0-based index).
    pub fn independent(index: usize) -> VertexId {
        VertexId { side: Side::Independent, index }
    }

    /// Parse the display form: `v3` is the third clique vertex, `w2` the
    /// second independent vertex.
    pub fn parse(s: &str) -> Result<VertexId, Error> {
        let err = || Error::InvalidInput(format!("cannot parse vertex name {s:?}")) ;
        let (side, digits) = match s.chars().next() {
            Some('v') => (Side::Clique, &s[1..]),
            Some('w') => (Side::Independent, &s[1..]),
            _ => return Err(err()),
        };
        let one_based: usize = digits.parse().map_err(|_| err())?;
        if one_based == 0 {
            return Err(err());
        }
        Ok(VertexId { side, index: one_based - 1 })
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.side {
            Side::Clique => 'v',
            Side::Independent => 'w',
        };
        write!(f, "{}{}", tag, self.index + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct VertexIdRepr {
    side: Side,
    index: usize, // 1-based on the wire
}

impl Serialize for VertexId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        VertexIdRepr { side: self.side, index: self.index + 1 }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<VertexId, D::Error> {
        let repr = VertexIdRepr::deserialize(deserializer)?;
        if repr.index == 0 {
            return Err(serde::de::Error::custom("vertex index is 1-based and must be positive"));
        }
        Ok(VertexId { side: repr.side, index: repr.index - 1 })
    }
}

/// The complete split graph `S(m,n)` with a chosen sink vertex.
///
/// Serializes as `{"m": 5, "n": 4, "sink": {"side": "clique", "index": 5}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SplitGraph {
    m: usize,
    n: usize,
    sink: VertexId,
}

#[derive(Deserialize)]
struct SplitGraphRepr {
    m: usize,
    n: usize,
    sink: VertexId,
}

impl<'de> Deserialize<'de> for SplitGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<SplitGraph, D::Error> {
        let repr = SplitGraphRepr::deserialize(deserializer)?;
        SplitGraph::new(repr.m, repr.n, repr.sink).map_err(serde::de::Error::custom)
    }
}

impl SplitGraph {
    /// Build `S(m,n)` with an explicit sink.  Both parts must be non-empty
    /// (with `m = 0` or `n = 0` the family degenerates to an independent set
    /// or a plain clique and none of the structure here applies), and the
    /// sink must exist.
    pub fn new(m: usize, n: usize, sink: VertexId) -> Result<SplitGraph, Error> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidGraph { m, n });
        }
        let g = SplitGraph { m, n, sink };
        if !g.contains(sink) {
            return Err(Error::InvalidVertex { vertex: sink.to_string(), m, n });
        }
        Ok(g)
    }

    /// `S(m,n)` with the canonical clique sink `v_m`.
    pub fn clique_sink(m: usize, n: usize) -> Result<SplitGraph, Error> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidGraph { m, n });
        }
        SplitGraph::new(m, n, VertexId::clique(m - 1))
    }

    /// `S(m,n)` with the canonical independent sink `w_n`.
    pub fn independent_sink(m: usize, n: usize) -> Result<SplitGraph, Error> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidGraph { m, n });
        }
        SplitGraph::new(m, n, VertexId::independent(n - 1))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    pub fn vertex_count(&self) -> usize {
        self.m + self.n
    }

    /// `m(m-1)/2` clique edges plus `mn` cross edges.
    pub fn edge_count(&self) -> usize {
        self.m * (self.m - 1) / 2 + self.m * self.n
    }

    pub fn contains(&self, v: VertexId) -> bool {
        match v.side {
            Side::Clique => v.index < self.m,
            Side::Independent => v.index < self.n,
        }
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), Error> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v.to_string(), m: self.m, n: self.n })
        }
    }

    /// Degree: `m - 1 + n` for clique vertices, `m` for independent ones.
    pub fn degree(&self, v: VertexId) -> Result<usize, Error> {
        self.check_vertex(v)?;
        Ok(match v.side {
            Side::Clique => self.m - 1 + self.n,
            Side::Independent => self.m,
        })
    }

    /// Two distinct vertices are adjacent unless both are independent.
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.contains(u)
            && self.contains(v)
            && u != v
            && !(u.side == Side::Independent && v.side == Side::Independent)
    }

    /// Neighbors of `v` in increasing vertex order.
    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>, Error> {
        self.check_vertex(v)?;
        let mut out = Vec::new();
        match v.side {
            Side::Clique => {
                out.extend((0..self.m).filter(|&i| i != v.index).map(VertexId::clique));
                out.extend((0..self.n).map(VertexId::independent));
            }
            Side::Independent => {
                out.extend((0..self.m).map(VertexId::clique));
            }
        }
        Ok(out)
    }

    /// All vertices in the order `v_1, ..., v_m, w_1, ..., w_n`.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        let (m, n) = (self.m, self.n);
        (0..m).map(VertexId::clique).chain((0..n).map(VertexId::independent))
    }

    /// All vertices except the sink, in increasing order.
    pub fn non_sink_vertices(&self) -> impl Iterator<Item = VertexId> {
        let sink = self.sink;
        self.vertices().filter(move |&v| v != sink)
    }

    /// Position of `v` in the global order, 0-based: clique vertices come
    /// first, so `w_j` sits at `m + j`.
    pub fn global_index(&self, v: VertexId) -> Result<usize, Error> {
        self.check_vertex(v)?;
        Ok(match v.side {
            Side::Clique => v.index,
            Side::Independent => self.m + v.index,
        })
    }

    /// Inverse of [`SplitGraph::global_index`].
    pub fn vertex_at(&self, global: usize) -> Result<VertexId, Error> {
        if global < self.m {
            Ok(VertexId::clique(global))
        } else if global < self.m + self.n {
            Ok(VertexId::independent(global - self.m))
        } else {
            Err(Error::InvalidVertex {
                vertex: format!("#{global}"),
                m: self.m,
                n: self.n,
            })
        }
    }

    /// The edge list over 1-based global labels `1..=m+n`, each edge with
    /// its smaller endpoint first, sorted.  This is the representation a
    /// generic graph library (or a matrix-tree computation) wants.
    pub fn as_generic_graph(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.edge_count());
        for i in 1..=self.m {
            for j in (i + 1)..=self.m {
                edges.push((i, j));
            }
            for j in 1..=self.n {
                edges.push((i, self.m + j));
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Number of height slots per part once the sink is excluded.
    pub fn part_sizes(&self) -> (usize, usize) {
        match self.sink.side {
            Side::Clique => (self.m - 1, self.n),
            Side::Independent => (self.m, self.n - 1),
        }
    }
}

impl fmt::Display for SplitGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{}) with sink {}", self.m, self.n, self.sink)
    }
}
