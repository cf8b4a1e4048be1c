//! The matching relationship as a bipartite graph with three O(1) oracles:
//! edge membership, degree, and k-th neighbor.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

use super::ranges::IntervalRelation;

/// Which side of the bipartite matching graph a character lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Text,
    Pattern,
}

/// Bipartite matching relationship between a text alphabet `[0, Σ_T)` and a
/// pattern alphabet `[0, Σ_P)`.
///
/// Edge queries go through a hash set of packed pairs; degrees and
/// neighbors through per-character adjacency lists. Neighbor order is the
/// order of first appearance in the input edge list and is fixed for the
/// lifetime of the relation. Adjacency is keyed by character, so sparse
/// use of a large alphabet costs memory proportional to the edges only.
#[derive(Clone, Debug)]
pub struct MatchRelation {
    sigma_t: u64,
    sigma_p: u64,
    edges: HashSet<u64>,
    text_adj: HashMap<u32, Vec<u32>>,
    pat_adj: HashMap<u32, Vec<u32>>,
    max_degree: usize,
    edge_count: usize,
}

fn pack(a: u32, b: u32) -> u64 {
    (u64::from(a) << 32) | u64::from(b)
}

impl MatchRelation {
    /// Builds a relation from an edge list of `(text char, pattern char)`
    /// pairs. Duplicate edges are ignored; the first appearance fixes the
    /// neighbor order.
    pub fn from_edges(
        sigma_t: u64,
        sigma_p: u64,
        pairs: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        if sigma_t == 0 || sigma_p == 0 {
            return Err(Error::input("alphabet sizes must be positive"));
        }
        if sigma_t > 1 << 32 || sigma_p > 1 << 32 {
            return Err(Error::input("alphabet sizes are limited to 2^32"));
        }
        let mut rel = MatchRelation {
            sigma_t,
            sigma_p,
            edges: HashSet::new(),
            text_adj: HashMap::new(),
            pat_adj: HashMap::new(),
            max_degree: 0,
            edge_count: 0,
        };
        for (a, b) in pairs {
            if u64::from(a) >= sigma_t {
                return Err(Error::CharOutOfRange {
                    code: u64::from(a),
                    alphabet: sigma_t,
                });
            }
            if u64::from(b) >= sigma_p {
                return Err(Error::CharOutOfRange {
                    code: u64::from(b),
                    alphabet: sigma_p,
                });
            }
            if rel.edges.insert(pack(a, b)) {
                rel.text_adj.entry(a).or_default().push(b);
                rel.pat_adj.entry(b).or_default().push(a);
            }
        }
        rel.edge_count = rel.edges.len();
        rel.max_degree = rel
            .text_adj
            .values()
            .chain(rel.pat_adj.values())
            .map(Vec::len)
            .max()
            .unwrap_or(0);
        Ok(rel)
    }

    /// The identity relation over a shared alphabet of size `sigma`.
    pub fn identity(sigma: u64) -> Result<Self> {
        Self::from_edges(sigma, sigma, (0..sigma as u32).map(|c| (c, c)))
    }

    /// The complete bipartite relation.
    pub fn complete(sigma_t: u64, sigma_p: u64) -> Result<Self> {
        Self::from_edges(
            sigma_t,
            sigma_p,
            (0..sigma_t as u32).flat_map(|a| (0..sigma_p as u32).map(move |b| (a, b))),
        )
    }

    /// The relation with no edges.
    pub fn empty(sigma_t: u64, sigma_p: u64) -> Result<Self> {
        Self::from_edges(sigma_t, sigma_p, std::iter::empty())
    }

    /// Materializes a relation from a predicate. Enumerates the full
    /// alphabet product, so only suitable for small alphabets.
    pub fn from_predicate(
        sigma_t: u64,
        sigma_p: u64,
        mut matches: impl FnMut(u32, u32) -> bool,
    ) -> Result<Self> {
        Self::from_edges(
            sigma_t,
            sigma_p,
            (0..sigma_t as u32)
                .flat_map(|a| (0..sigma_p as u32).map(move |b| (a, b)))
                .filter(|&(a, b)| matches(a, b))
                .collect::<Vec<_>>(),
        )
    }

    pub fn sigma_text(&self) -> u64 {
        self.sigma_t
    }

    pub fn sigma_pattern(&self) -> u64 {
        self.sigma_p
    }

    fn check_char(&self, v: u32, side: Side) -> Result<()> {
        let alphabet = match side {
            Side::Text => self.sigma_t,
            Side::Pattern => self.sigma_p,
        };
        if u64::from(v) >= alphabet {
            return Err(Error::CharOutOfRange {
                code: u64::from(v),
                alphabet,
            });
        }
        Ok(())
    }

    /// Is there an edge between text character `a` and pattern character
    /// `b`?
    pub fn edge(&self, a: u32, b: u32) -> Result<bool> {
        self.check_char(a, Side::Text)?;
        self.check_char(b, Side::Pattern)?;
        Ok(self.edge_unchecked(a, b))
    }

    /// Edge test without alphabet validation; used on hot paths after the
    /// inputs were checked once.
    pub fn edge_unchecked(&self, a: u32, b: u32) -> bool {
        self.edges.contains(&pack(a, b))
    }

    /// Number of matching partners of `v` on the given side.
    pub fn degree(&self, v: u32, side: Side) -> Result<usize> {
        self.check_char(v, side)?;
        Ok(self.neighbors_unchecked(v, side).len())
    }

    /// The `k`-th neighbor (1-based) of `v` in the fixed order.
    pub fn kth_neighbor(&self, v: u32, k: usize, side: Side) -> Result<u32> {
        self.check_char(v, side)?;
        let adj = self.neighbors_unchecked(v, side);
        if k == 0 || k > adj.len() {
            return Err(Error::NeighborIndex {
                k,
                degree: adj.len(),
            });
        }
        Ok(adj[k - 1])
    }

    /// All neighbors of `v` in fixed order (empty slice for isolated
    /// characters).
    pub fn neighbors(&self, v: u32, side: Side) -> Result<&[u32]> {
        self.check_char(v, side)?;
        Ok(self.neighbors_unchecked(v, side))
    }

    pub(crate) fn neighbors_unchecked(&self, v: u32, side: Side) -> &[u32] {
        let adj = match side {
            Side::Text => &self.text_adj,
            Side::Pattern => &self.pat_adj,
        };
        adj.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `(D, S)`: the maximum degree over all vertices and the total number
    /// of edges.
    pub fn params(&self) -> (usize, usize) {
        (self.max_degree, self.edge_count)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// All edges, in an unspecified order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().map(|&p| ((p >> 32) as u32, p as u32))
    }

    /// Converts to the interval representation: for each pattern character
    /// the minimal sorted list of disjoint, non-adjacent intervals covering
    /// its neighbors. Characters without edges get an empty list.
    pub fn to_interval_relation(&self) -> IntervalRelation {
        let mut lists: Vec<(u32, Vec<(u32, u32)>)> = Vec::new();
        for b in 0..self.sigma_p as u32 {
            let mut ns: Vec<u32> = self.neighbors_unchecked(b, Side::Pattern).to_vec();
            ns.sort_unstable();
            let mut intervals: Vec<(u32, u32)> = Vec::new();
            for a in ns {
                match intervals.last_mut() {
                    Some(last) if u64::from(a) <= u64::from(last.1) + 1 => last.1 = a,
                    _ => intervals.push((a, a)),
                }
            }
            lists.push((b, intervals));
        }
        IntervalRelation::new(self.sigma_t, self.sigma_p, lists)
            .expect("intervals derived from a valid relation")
    }
}
