//! Loop-free multigraphs on dense vertex indices.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("edge ({0}, {0}) is a loop")]
    LoopEdge(usize),
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(usize),
    #[error("edge ({u}, {v}) removed {requested} times but has multiplicity {present}")]
    EdgeNotPresent {
        u: usize,
        v: usize,
        requested: u32,
        present: u32,
    },
    #[error("vertex set is over {found} vertices but the graph has {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(&'static str),
}

/// Loop-free undirected multigraph on vertices `0..n`.
///
/// Multiplicities are stored in a dense symmetric `n × n` table, so the type
/// is meant for desk-scale graphs (up to a few hundred vertices). It is
/// immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    mult: Vec<u32>,
    degree: Vec<u64>,
    edges: u64,
}

impl Multigraph {
    /// Builds a multigraph from a list of vertex pairs; a pair listed `t`
    /// times becomes an edge of multiplicity `t`.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::from_multiplicities(n, edges.iter().map(|&(u, v)| (u, v, 1)))
    }

    /// Builds a multigraph from `(u, v, count)` triples. Counts of repeated
    /// pairs accumulate; zero counts are ignored.
    pub fn from_multiplicities<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut mult = vec![0u32; n * n];
        for (u, v, count) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            mult[u * n + v] += count;
            mult[v * n + u] += count;
        }
        let degree: Vec<u64> = (0..n)
            .map(|v| mult[v * n..(v + 1) * n].iter().map(|&c| u64::from(c)).sum())
            .collect();
        let edges = degree.iter().sum::<u64>() / 2;
        Ok(Self {
            n,
            mult,
            degree,
            edges,
        })
    }

    /// Simple graph whose edges are the pairs `(u, v)` with `adjacent(u, v)`
    /// for `u < v`.
    pub fn from_adjacency_fn(
        n: usize,
        mut adjacent: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self, GraphError> {
        let mut pairs = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if adjacent(u, v) {
                    pairs.push((u, v, 1));
                }
            }
        }
        Self::from_multiplicities(n, pairs)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edges counted with multiplicity.
    #[inline]
    pub fn edge_count(&self) -> u64 {
        self.edges
    }

    #[inline]
    pub fn mult(&self, u: usize, v: usize) -> u32 {
        self.mult[u * self.n + v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> u64 {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degree
    }

    /// Row `v` of the multiplicity table.
    #[inline]
    pub fn row(&self, v: usize) -> &[u32] {
        &self.mult[v * self.n..(v + 1) * self.n]
    }

    /// Neighbours of `v` with the multiplicity of the joining edge.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(u, &c)| (u, c))
    }

    /// Distinct vertex pairs `(u, v, mult)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| {
                let c = self.mult(u, v);
                (c > 0).then_some((u, v, c))
            })
        })
    }

    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|&c| c <= 1)
    }

    /// Largest number of parallel edges between two vertices; 1 for an
    /// edgeless graph.
    pub fn multiplicity(&self) -> u32 {
        self.mult.iter().copied().max().unwrap_or(0).max(1)
    }

    pub fn is_regular(&self) -> bool {
        self.degree.windows(2).all(|w| w[0] == w[1])
    }

    pub fn min_degree(&self) -> u64 {
        self.degree.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u64 {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    pub fn degree_stats(&self) -> DegreeStats {
        DegreeStats {
            min: self.min_degree(),
            max: self.max_degree(),
            average: Rational::new(2 * self.edges as i64, self.n as i64),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components().count == 1
    }

    pub fn components(&self) -> Components {
        self.components_with(|u, v| self.mult(u, v))
    }

    /// Connected components of `G − X`.
    pub fn components_after_deletion(&self, removed: &EdgeMultiset) -> Result<Components, GraphError> {
        let n = self.n;
        let mut remaining = self.mult.clone();
        for (&(u, v), &count) in removed.iter() {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            let present = remaining[u * n + v];
            if count > present {
                return Err(GraphError::EdgeNotPresent {
                    u,
                    v,
                    requested: count,
                    present: self.mult(u, v),
                });
            }
            remaining[u * n + v] -= count;
            remaining[v * n + u] -= count;
        }
        Ok(self.components_with(|u, v| remaining[u * n + v]))
    }

    fn components_with(&self, weight: impl Fn(usize, usize) -> u32) -> Components {
        let n = self.n;
        let mut labels = vec![usize::MAX; n];
        let mut stack = Vec::new();
        let mut count = 0;
        for root in 0..n {
            if labels[root] != usize::MAX {
                continue;
            }
            labels[root] = count;
            stack.push(root);
            while let Some(v) = stack.pop() {
                for u in 0..n {
                    if labels[u] == usize::MAX && weight(v, u) > 0 {
                        labels[u] = count;
                        stack.push(u);
                    }
                }
            }
            count += 1;
        }
        Components { count, labels }
    }

    /// `e(S, T)`: number of edges (with multiplicity) between disjoint sets.
    pub fn edge_boundary(&self, s: &VertexSubset, t: &VertexSubset) -> Result<u64, GraphError> {
        self.check_universe(s)?;
        self.check_universe(t)?;
        if let Some(v) = s.iter().find(|&v| t.contains(v)) {
            return Err(GraphError::OverlappingSets(v));
        }
        Ok(s.iter()
            .map(|u| t.iter().map(|v| u64::from(self.mult(u, v))).sum::<u64>())
            .sum())
    }

    /// `e(S, V \ S)`.
    pub fn cut_weight(&self, s: &VertexSubset) -> Result<u64, GraphError> {
        self.check_universe(s)?;
        let inside = s.indicator();
        Ok(s.iter()
            .map(|u| {
                self.row(u)
                    .iter()
                    .zip(&inside)
                    .filter(|(_, &inn)| !inn)
                    .map(|(&c, _)| u64::from(c))
                    .sum::<u64>()
            })
            .sum())
    }

    /// Average whole-graph degree of each block of `partition`.
    pub fn induced_average_degrees(&self, partition: &VertexPartition) -> Result<Vec<Rational>, GraphError> {
        self.check_partition(partition)?;
        Ok(partition
            .blocks()
            .iter()
            .map(|b| {
                let total: u64 = b.iter().map(|v| self.degree(v)).sum();
                Rational::new(total as i64, b.len() as i64)
            })
            .collect())
    }

    pub(crate) fn check_universe(&self, s: &VertexSubset) -> Result<(), GraphError> {
        if s.universe() != self.n {
            return Err(GraphError::UniverseMismatch {
                expected: self.n,
                found: s.universe(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_partition(&self, p: &VertexPartition) -> Result<(), GraphError> {
        if p.universe() != self.n {
            return Err(GraphError::UniverseMismatch {
                expected: self.n,
                found: p.universe(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub min: u64,
    pub max: u64,
    /// `2m / n`, exact.
    pub average: Rational,
}

impl DegreeStats {
    pub fn average_f64(&self) -> f64 {
        crate::ratio_to_f64(&self.average)
    }
}

/// Component count and a component label per vertex. Labels are assigned in
/// order of each component's lowest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    pub labels: Vec<usize>,
}

impl Components {
    /// The components as a vertex partition.
    pub fn to_partition(&self) -> VertexPartition {
        VertexPartition::from_labels(&self.labels).expect("component labels cover every vertex")
    }
}

/// A set of vertices of a graph on `universe` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset {
    universe: usize,
    members: Vec<usize>,
}

impl VertexSubset {
    pub fn new(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Self, GraphError> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&vertex) = members.iter().find(|&&v| v >= universe) {
            return Err(GraphError::VertexOutOfRange { vertex, n: universe });
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self { universe, members })
    }

    /// Subset whose members are the set bits of `mask`; bits at or above
    /// `universe` are ignored.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        let members = (0..universe.min(64)).filter(|&v| mask >> v & 1 == 1).collect();
        Self { universe, members }
    }

    pub fn full(universe: usize) -> Self {
        Self {
            universe,
            members: (0..universe).collect(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Non-empty and not the whole vertex set.
    pub fn is_proper(&self) -> bool {
        !self.members.is_empty() && self.members.len() < self.universe
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn complement(&self) -> Self {
        let inside = self.indicator();
        Self {
            universe: self.universe,
            members: (0..self.universe).filter(|&v| !inside[v]).collect(),
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    /// Bitmask of the members, when the universe fits in 64 bits.
    pub fn to_mask(&self) -> Option<u64> {
        (self.universe <= 64).then(|| self.iter().fold(0u64, |m, v| m | 1 << v))
    }

    fn indicator(&self) -> Vec<bool> {
        let mut inside = vec![false; self.universe];
        for v in self.iter() {
            inside[v] = true;
        }
        inside
    }
}

/// An ordered partition of the vertex set into non-empty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<VertexSubset>,
    block_of: Vec<usize>,
}

impl VertexPartition {
    pub fn new(universe: usize, blocks: Vec<VertexSubset>) -> Result<Self, GraphError> {
        let mut block_of = vec![usize::MAX; universe];
        for (i, b) in blocks.iter().enumerate() {
            if b.universe() != universe {
                return Err(GraphError::UniverseMismatch {
                    expected: universe,
                    found: b.universe(),
                });
            }
            if b.is_empty() {
                return Err(GraphError::InvalidPartition("empty block"));
            }
            for v in b.iter() {
                if block_of[v] != usize::MAX {
                    return Err(GraphError::OverlappingSets(v));
                }
                block_of[v] = i;
            }
        }
        if block_of.iter().any(|&b| b == usize::MAX) {
            return Err(GraphError::InvalidPartition("blocks do not cover every vertex"));
        }
        Ok(Self { blocks, block_of })
    }

    /// Groups vertices by label. Blocks are ordered by first appearance.
    pub fn from_labels(labels: &[usize]) -> Result<Self, GraphError> {
        let universe = labels.len();
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (v, &label) in labels.iter().enumerate() {
            let next = members.len();
            let i = *index.entry(label).or_insert(next);
            if i == members.len() {
                members.push(Vec::new());
            }
            members[i].push(v);
        }
        let blocks = members
            .into_iter()
            .map(|m| VertexSubset { universe, members: m })
            .collect();
        Self::new(universe, blocks)
    }

    pub fn universe(&self) -> usize {
        self.block_of.len()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[VertexSubset] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }
}

/// A multiset of edges, keyed by normalized pair `(min, max)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeMultiset {
    counts: BTreeMap<(usize, usize), u32>,
}

impl EdgeMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut set = Self::new();
        for (u, v) in pairs {
            set.insert(u, v, 1);
        }
        set
    }

    pub fn insert(&mut self, u: usize, v: usize, count: u32) {
        if count > 0 {
            *self.counts.entry((u.min(v), u.max(v))).or_insert(0) += count;
        }
    }

    /// `|X|`, counting multiplicity.
    pub fn total(&self) -> u64 {
        self.counts.values().map(|&c| u64::from(c)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &u32)> {
        self.counts.iter()
    }

    /// Every edge of `g` whose endpoints lie in different blocks.
    pub fn crossing(g: &Multigraph, partition: &VertexPartition) -> Self {
        let mut set = Self::new();
        for (u, v, c) in g.edges() {
            if partition.block_of(u) != partition.block_of(v) {
                set.insert(u, v, c);
            }
        }
        set
    }
}
