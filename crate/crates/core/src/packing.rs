//! Spanning-tree packing number.
//!
//! [`tau`] grows a family of edge-disjoint forests one forest at a time and
//! saturates it with the matroid-union augmenting-path search: an unused
//! edge enters a forest directly if it closes no cycle there, or displaces an
//! edge on the cycle it closes, which must then find room elsewhere. Paths
//! are found breadth-first, which keeps every forest acyclic after the
//! exchange. Parallel edges are distinct ground-set elements.
//!
//! When the search for `τ + 1` trees stalls, the edges reachable from the
//! unused ones split `V` into parts whose crossing count proves the upper
//! bound, so every answer comes with both a primal and a dual certificate.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{EdgeMultiset, GraphError, Multigraph, VertexPartition};

/// Largest vertex count accepted by [`tau_partition_oracle`].
pub const MAX_ORACLE_VERTICES: usize = 10;

/// `τ` reported for the one-vertex graph, which packs any number of empty trees.
pub const UNBOUNDED_PACKING: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("partition enumeration is limited to {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("forest {forest} uses slot ({u}, {v}, {copy}) that is not in the graph")]
    UnknownSlot { forest: usize, u: usize, v: usize, copy: u32 },
    #[error("slot ({u}, {v}, {copy}) is used twice")]
    SharedSlot { u: usize, v: usize, copy: u32 },
    #[error("forest {forest} has {edges} edges, a spanning tree needs {needed}")]
    NotSpanning { forest: usize, edges: usize, needed: usize },
    #[error("forest {forest} contains a cycle")]
    Cycle { forest: usize },
    #[error("expected {expected} forests, found {found}")]
    WrongCount { expected: u64, found: usize },
    #[error("dual partition does not certify the packing number")]
    BadDual,
}

/// One copy of a possibly parallel edge `(u, v)`, `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSlot {
    pub u: usize,
    pub v: usize,
    pub copy: u32,
}

/// A partition `P` with `⌊crossing / (|P| − 1)⌋ = bound`. By Nash-Williams and
/// Tutte no graph packs more than `bound` spanning trees when such a `P`
/// exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionWitness {
    pub parts: VertexPartition,
    pub crossing: u64,
    pub bound: u64,
}

impl PartitionWitness {
    fn new(g: &Multigraph, parts: VertexPartition) -> Self {
        let crossing = EdgeMultiset::crossing(g, &parts).total();
        let bound = crossing / (parts.len() as u64 - 1);
        Self { parts, crossing, bound }
    }

    /// The crossing edges as an edge multiset (`X` with `G − X` split along the parts).
    pub fn crossing_edges(&self, g: &Multigraph) -> EdgeMultiset {
        EdgeMultiset::crossing(g, &self.parts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingCertificate {
    pub tau: u64,
    pub forests: Vec<Vec<EdgeSlot>>,
    pub dual: Option<PartitionWitness>,
}

impl PackingCertificate {
    /// Checks the forests (slot-disjoint spanning trees of `g`) and, when
    /// present, that the dual partition bounds `τ` from above.
    pub fn verify(&self, g: &Multigraph) -> Result<(), CertificateError> {
        let n = g.vertex_count();
        if self.tau == UNBOUNDED_PACKING {
            return if n == 1 { Ok(()) } else { Err(CertificateError::BadDual) };
        }
        if self.forests.len() as u64 != self.tau {
            return Err(CertificateError::WrongCount {
                expected: self.tau,
                found: self.forests.len(),
            });
        }
        let mut seen = alloc::collections::BTreeSet::new();
        for (fi, forest) in self.forests.iter().enumerate() {
            if forest.len() != n - 1 {
                return Err(CertificateError::NotSpanning {
                    forest: fi,
                    edges: forest.len(),
                    needed: n - 1,
                });
            }
            let mut dsu = Dsu::new(n);
            for s in forest {
                if s.u >= n || s.v >= n || s.copy >= g.mult(s.u, s.v) {
                    return Err(CertificateError::UnknownSlot {
                        forest: fi,
                        u: s.u,
                        v: s.v,
                        copy: s.copy,
                    });
                }
                if !seen.insert((s.u.min(s.v), s.u.max(s.v), s.copy)) {
                    return Err(CertificateError::SharedSlot {
                        u: s.u,
                        v: s.v,
                        copy: s.copy,
                    });
                }
                if !dsu.union(s.u, s.v) {
                    return Err(CertificateError::Cycle { forest: fi });
                }
            }
        }
        if let Some(dual) = &self.dual {
            let recount = PartitionWitness::new(g, dual.parts.clone());
            if dual.parts.len() < 2 || recount != *dual || dual.bound != self.tau {
                return Err(CertificateError::BadDual);
            }
        }
        Ok(())
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

const UNUSED: usize = usize::MAX;

/// Edge-disjoint forests over the slot ground set.
#[derive(Clone)]
struct ForestFamily {
    n: usize,
    slots: Vec<EdgeSlot>,
    /// Forest index holding each slot, or `UNUSED`.
    owner: Vec<usize>,
    /// `adjacency[f][v]` lists the slots of forest `f` incident to `v`.
    adjacency: Vec<Vec<Vec<usize>>>,
    sizes: Vec<usize>,
}

impl ForestFamily {
    fn new(n: usize, slots: Vec<EdgeSlot>) -> Self {
        let owner = vec![UNUSED; slots.len()];
        Self {
            n,
            slots,
            owner,
            adjacency: Vec::new(),
            sizes: Vec::new(),
        }
    }

    fn forest_count(&self) -> usize {
        self.sizes.len()
    }

    fn push_empty_forest(&mut self) {
        self.adjacency.push(vec![Vec::new(); self.n]);
        self.sizes.push(0);
    }

    fn all_spanning(&self) -> bool {
        self.sizes.iter().all(|&s| s + 1 == self.n)
    }

    fn attach(&mut self, slot: usize, forest: usize) {
        let EdgeSlot { u, v, .. } = self.slots[slot];
        self.adjacency[forest][u].push(slot);
        self.adjacency[forest][v].push(slot);
        self.owner[slot] = forest;
        self.sizes[forest] += 1;
    }

    fn detach(&mut self, slot: usize) {
        let forest = self.owner[slot];
        let EdgeSlot { u, v, .. } = self.slots[slot];
        for end in [u, v] {
            let list = &mut self.adjacency[forest][end];
            let pos = list.iter().position(|&s| s == slot).expect("slot is attached");
            list.swap_remove(pos);
        }
        self.owner[slot] = UNUSED;
        self.sizes[forest] -= 1;
    }

    /// Slots on the path from `a` to `b` in `forest`, or `None` if they lie in
    /// different trees.
    fn tree_path(&self, forest: usize, a: usize, b: usize, via: &mut [usize], queue: &mut VecDeque<usize>) -> Option<Vec<usize>> {
        via.fill(UNUSED);
        queue.clear();
        via[a] = usize::MAX - 1;
        queue.push_back(a);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for &s in &self.adjacency[forest][x] {
                let EdgeSlot { u, v, .. } = self.slots[s];
                let y = if u == x { v } else { u };
                if via[y] == UNUSED {
                    via[y] = s;
                    queue.push_back(y);
                }
            }
        }
        if via[b] == UNUSED {
            return None;
        }
        let mut path = Vec::new();
        let mut x = b;
        while x != a {
            let s = via[x];
            path.push(s);
            let EdgeSlot { u, v, .. } = self.slots[s];
            x = if u == x { v } else { u };
        }
        Some(path)
    }

    /// Breadth-first exchange search from `roots`. Returns the slot that can
    /// be attached directly and the forest it fits, plus the labels needed to
    /// unwind the path; the visited set is left in `visited`.
    fn search(
        &self,
        roots: &[usize],
        visited: &mut [bool],
        label: &mut [(usize, usize)],
    ) -> Option<(usize, usize)> {
        let mut via = vec![UNUSED; self.n];
        let mut scratch = VecDeque::new();
        let mut queue: VecDeque<usize> = VecDeque::new();
        visited.fill(false);
        for &r in roots {
            visited[r] = true;
            label[r] = (UNUSED, UNUSED);
            queue.push_back(r);
        }
        while let Some(x) = queue.pop_front() {
            let EdgeSlot { u, v, .. } = self.slots[x];
            for f in 0..self.forest_count() {
                if self.owner[x] == f {
                    continue;
                }
                match self.tree_path(f, u, v, &mut via, &mut scratch) {
                    None => return Some((x, f)),
                    Some(path) => {
                        for y in path {
                            if !visited[y] {
                                visited[y] = true;
                                label[y] = (x, f);
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Tries to add the unused `slot` to the union of forests.
    fn augment(&mut self, slot: usize, visited: &mut [bool], label: &mut [(usize, usize)]) -> bool {
        let Some((mut cur, mut target)) = self.search(&[slot], visited, label) else {
            return false;
        };
        loop {
            let previous = self.owner[cur];
            if previous != UNUSED {
                self.detach(cur);
            }
            self.attach(cur, target);
            let (parent, forest) = label[cur];
            if parent == UNUSED {
                break;
            }
            debug_assert_eq!(forest, previous);
            cur = parent;
            target = forest;
        }
        true
    }
}

fn edge_slots(g: &Multigraph) -> Vec<EdgeSlot> {
    g.edges()
        .flat_map(|(u, v, c)| (0..c).map(move |copy| EdgeSlot { u, v, copy }))
        .collect()
}

/// Spanning-tree packing number with `τ` edge-disjoint spanning trees and a
/// partition proving that `τ + 1` do not exist.
pub fn tau(g: &Multigraph) -> Result<PackingCertificate, PackingError> {
    let n = g.vertex_count();
    if n == 1 {
        return Ok(PackingCertificate {
            tau: UNBOUNDED_PACKING,
            forests: Vec::new(),
            dual: None,
        });
    }
    if !g.is_connected() {
        return Err(PackingError::Disconnected);
    }
    let m = g.edge_count();
    let slots = edge_slots(g);
    let mut visited = vec![false; slots.len()];
    let mut label = vec![(UNUSED, UNUSED); slots.len()];

    let mut family = ForestFamily::new(n, slots);
    loop {
        let next = family.forest_count() as u64 + 1;
        if next * (n as u64 - 1) > m {
            // Counting alone rules out another tree: singletons are the dual.
            let singletons = VertexPartition::from_labels(&(0..n).collect::<Vec<_>>())?;
            return Ok(finish(g, &family, PartitionWitness::new(g, singletons)));
        }
        let snapshot = family.clone();
        family.push_empty_forest();
        for slot in 0..family.slots.len() {
            if family.owner[slot] == UNUSED {
                family.augment(slot, &mut visited, &mut label);
            }
        }
        if !family.all_spanning() {
            let dual = stalled_partition(g, &family, &mut visited, &mut label)?;
            return Ok(finish(g, &snapshot, dual));
        }
    }
}

fn finish(g: &Multigraph, family: &ForestFamily, dual: PartitionWitness) -> PackingCertificate {
    let mut forests = vec![Vec::new(); family.forest_count()];
    for (slot, &owner) in family.owner.iter().enumerate() {
        if owner != UNUSED {
            forests[owner].push(family.slots[slot]);
        }
    }
    let cert = PackingCertificate {
        tau: forests.len() as u64,
        forests,
        dual: Some(dual),
    };
    debug_assert_eq!(cert.verify(g), Ok(()));
    cert
}

/// Partition read off a saturated but non-spanning forest family: the
/// components of the edges reachable from the unused ones.
fn stalled_partition(
    g: &Multigraph,
    family: &ForestFamily,
    visited: &mut [bool],
    label: &mut [(usize, usize)],
) -> Result<PartitionWitness, PackingError> {
    let unused: Vec<usize> = (0..family.slots.len()).filter(|&s| family.owner[s] == UNUSED).collect();
    let found = family.search(&unused, visited, label);
    debug_assert!(found.is_none(), "family was not saturated");
    let mut dsu = Dsu::new(g.vertex_count());
    for (slot, _) in visited.iter().enumerate().filter(|(_, &r)| r) {
        let EdgeSlot { u, v, .. } = family.slots[slot];
        dsu.union(u, v);
    }
    let labels: Vec<usize> = (0..g.vertex_count()).map(|v| dsu.find(v)).collect();
    Ok(PartitionWitness::new(g, VertexPartition::from_labels(&labels)?))
}

/// `τ` as the minimum of `⌊crossing(P) / (|P| − 1)⌋` over every vertex
/// partition with at least two parts, by exhaustive enumeration.
pub fn tau_partition_oracle(g: &Multigraph) -> Result<(u64, PartitionWitness), PackingError> {
    let n = g.vertex_count();
    if n > MAX_ORACLE_VERTICES {
        return Err(PackingError::TooLarge {
            n,
            limit: MAX_ORACLE_VERTICES,
        });
    }
    if n < 2 || !g.is_connected() {
        return Err(PackingError::Disconnected);
    }
    let mut best = (u64::MAX, Vec::new());
    let mut labels = vec![0usize; n];
    enumerate_partitions(g, 1, 1, 0, &mut labels, &mut best);
    let parts = VertexPartition::from_labels(&best.1)?;
    Ok((best.0, PartitionWitness::new(g, parts)))
}

/// Restricted-growth enumeration: vertex `i` joins an existing block or opens
/// block `blocks`, accumulating edges to earlier vertices in other blocks.
fn enumerate_partitions(
    g: &Multigraph,
    i: usize,
    blocks: usize,
    crossing: u64,
    labels: &mut [usize],
    best: &mut (u64, Vec<usize>),
) {
    let n = labels.len();
    if i == n {
        if blocks >= 2 {
            let bound = crossing / (blocks as u64 - 1);
            if bound < best.0 {
                *best = (bound, labels.to_vec());
            }
        }
        return;
    }
    let row = g.row(i);
    for b in 0..=blocks {
        labels[i] = b;
        let added: u64 = (0..i)
            .filter(|&j| labels[j] != b)
            .map(|j| u64::from(row[j]))
            .sum();
        enumerate_partitions(g, i + 1, blocks.max(b + 1), crossing + added, labels, best);
    }
}

/// Nash-Williams–Tutte condition for one edge set: `|X| ≥ k (c(G − X) − 1)`.
pub fn check_nash_williams(g: &Multigraph, k: u64, removed: &EdgeMultiset) -> Result<bool, GraphError> {
    let c = g.components_after_deletion(removed)?.count as u64;
    Ok(removed.total() >= k * (c - 1))
}

/// Components of `G − X` and their boundaries in `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutProfile {
    pub components: VertexPartition,
    /// `r_i = e(V_i, V \ V_i)`, sorted ascending.
    pub r: Vec<u64>,
    /// `Σ_{i<j} e(V_i, V_j)`; equals `Σ r_i / 2`.
    pub crossing: u64,
}

pub fn component_cut_profile(g: &Multigraph, removed: &EdgeMultiset) -> Result<CutProfile, GraphError> {
    let components = g.components_after_deletion(removed)?.to_partition();
    let mut r = vec![0u64; components.len()];
    let mut crossing = 0;
    for (u, v, c) in g.edges() {
        let (bu, bv) = (components.block_of(u), components.block_of(v));
        if bu != bv {
            r[bu] += u64::from(c);
            r[bv] += u64::from(c);
            crossing += u64::from(c);
        }
    }
    r.sort_unstable();
    Ok(CutProfile { components, r, crossing })
}
