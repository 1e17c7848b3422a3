//! Edge connectivity, minimum-cut enumeration, and membership in the class of
//! graphs with two disjoint minimum-cut sides.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{Multigraph, VertexSubset};

/// Largest vertex count handled by bitmask cut enumeration.
pub const MAX_ENUMERATION_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("edge connectivity needs at least two vertices")]
    SingleVertex,
    #[error("class membership needs at least three vertices, got {n}")]
    TooSmall { n: usize },
    #[error("cut enumeration is limited to {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
}

/// A minimum edge cut: `e(side, V \ side) = value = κ'(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCertificate {
    pub value: u64,
    pub side: VertexSubset,
}

/// Two disjoint proper vertex sets whose union misses at least one vertex,
/// each bounded by a minimum edge cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GClassWitness {
    pub v1: VertexSubset,
    pub v2: VertexSubset,
    pub kappa: u64,
}

impl GClassWitness {
    /// Recounts every defining property against `g`.
    pub fn is_valid_for(&self, g: &Multigraph) -> bool {
        let n = g.vertex_count();
        self.v1.universe() == n
            && self.v2.universe() == n
            && self.v1.is_proper()
            && self.v2.is_proper()
            && self.v1.is_disjoint(&self.v2)
            && self.v1.len() + self.v2.len() < n
            && g.cut_weight(&self.v1) == Ok(self.kappa)
            && g.cut_weight(&self.v2) == Ok(self.kappa)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    InClass(GClassWitness),
    NotInClass,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::InClass(_))
    }
}

/// Global minimum cut by Stoer–Wagner with multiplicities as weights.
///
/// Maximum-adjacency orderings start from the lowest active vertex and break
/// ties towards the lowest index, so the returned side is deterministic. A
/// disconnected graph yields value 0 with the component of vertex 0.
pub fn edge_connectivity(g: &Multigraph) -> Result<CutCertificate, ConnectivityError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(ConnectivityError::SingleVertex);
    }
    let comps = g.components();
    if comps.count > 1 {
        let side = VertexSubset::new(n, (0..n).filter(|&v| comps.labels[v] == 0))
            .expect("component vertices are in range");
        return Ok(CutCertificate { value: 0, side });
    }

    let mut w: Vec<u64> = (0..n * n).map(|i| u64::from(g.mult(i / n, i % n))).collect();
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best_value = u64::MAX;
    let mut best_side = Vec::new();

    let mut key = vec![0u64; n];
    let mut added = vec![false; n];
    while active.len() > 1 {
        for &v in &active {
            key[v] = 0;
            added[v] = false;
        }
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let mut pick = usize::MAX;
            for &v in &active {
                if !added[v] && (pick == usize::MAX || key[v] > key[pick]) {
                    pick = v;
                }
            }
            added[pick] = true;
            if step + 1 == active.len() {
                last = pick;
            } else {
                prev = pick;
                for &u in &active {
                    if !added[u] {
                        key[u] += w[pick * n + u];
                    }
                }
            }
        }
        if key[last] < best_value {
            best_value = key[last];
            best_side = groups[last].clone();
        }
        // Merge `last` into `prev`.
        let moved = core::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        for &u in &active {
            if u != prev && u != last {
                w[prev * n + u] += w[last * n + u];
                w[u * n + prev] = w[prev * n + u];
            }
        }
        active.retain(|&v| v != last);
    }

    let side = VertexSubset::new(n, best_side).expect("merged groups hold valid vertices");
    Ok(CutCertificate {
        value: best_value,
        side,
    })
}

/// Visits every bipartition `{S, V \ S}` once, as the side `S` that excludes
/// vertex `n − 1`, together with `e(S, V \ S)`. Uses a Gray-code walk so each
/// step costs `O(n)`.
pub fn for_each_cut(g: &Multigraph, mut visit: impl FnMut(u32, u64)) -> Result<(), ConnectivityError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(ConnectivityError::SingleVertex);
    }
    if n > MAX_ENUMERATION_VERTICES {
        return Err(ConnectivityError::TooLarge {
            n,
            limit: MAX_ENUMERATION_VERTICES,
        });
    }
    let free = n - 1;
    // into_side[u] = Σ_{s ∈ S} mult(u, s)
    let mut into_side = vec![0i64; n];
    let mut cut: i64 = 0;
    let mut mask: u32 = 0;
    for step in 1u32..(1u32 << free) {
        let v = step.trailing_zeros() as usize;
        let bit = 1u32 << v;
        let degree = g.degree(v) as i64;
        if mask & bit == 0 {
            cut += degree - 2 * into_side[v];
            for (u, &c) in g.row(v).iter().enumerate() {
                into_side[u] += i64::from(c);
            }
        } else {
            for (u, &c) in g.row(v).iter().enumerate() {
                into_side[u] -= i64::from(c);
            }
            cut -= degree - 2 * into_side[v];
        }
        mask ^= bit;
        visit(mask, cut as u64);
    }
    Ok(())
}

/// Minimum cut by exhaustive enumeration of all `2^(n−1) − 1` bipartitions.
/// Independent of [`edge_connectivity`]; intended as a test oracle.
pub fn min_cut_oracle(g: &Multigraph) -> Result<u64, ConnectivityError> {
    let mut best = u64::MAX;
    for_each_cut(g, |_, w| best = best.min(w))?;
    Ok(best)
}

/// Every side (both sides of every cut) whose boundary equals the minimum,
/// as bitmasks sorted ascending.
pub fn min_cut_sides(g: &Multigraph) -> Result<Vec<u32>, ConnectivityError> {
    let n = g.vertex_count();
    let full = full_mask(n);
    let mut best = u64::MAX;
    let mut sides = Vec::new();
    for_each_cut(g, |mask, w| {
        if w < best {
            best = w;
            sides.clear();
        }
        if w == best {
            sides.push(mask);
            sides.push(full & !mask);
        }
    })?;
    sides.sort_unstable();
    Ok(sides)
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Decides whether `g` has two disjoint proper vertex sets `V₁, V₂`, with
/// `V \ (V₁ ∪ V₂)` non-empty, each bounded by a minimum edge cut.
///
/// Two vertices of degree `κ'` answer immediately. Otherwise every minimum
/// cut side is enumerated (up to [`MAX_ENUMERATION_VERTICES`] vertices) and
/// searched for a qualifying pair; larger graphs report `TooLarge`.
pub fn g_class_membership(g: &Multigraph) -> Result<Membership, ConnectivityError> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(ConnectivityError::TooSmall { n });
    }

    let comps = g.components();
    if comps.count > 1 {
        // κ' = 0 and the zero cuts are unions of components. Two components
        // can only split V one way; a third leaves room.
        if comps.count == 2 {
            return Ok(Membership::NotInClass);
        }
        let block = |label: usize| {
            VertexSubset::new(n, (0..n).filter(|&v| comps.labels[v] == label)).expect("in range")
        };
        return Ok(Membership::InClass(GClassWitness {
            v1: block(0),
            v2: block(1),
            kappa: 0,
        }));
    }

    let kappa = edge_connectivity(g)?.value;
    let mut at_kappa = (0..n).filter(|&v| g.degree(v) == kappa);
    if let (Some(u), Some(v)) = (at_kappa.next(), at_kappa.next()) {
        return Ok(Membership::InClass(GClassWitness {
            v1: VertexSubset::new(n, [u]).expect("in range"),
            v2: VertexSubset::new(n, [v]).expect("in range"),
            kappa,
        }));
    }

    let sides = min_cut_sides(g)?;
    let full = full_mask(n);
    for (i, &s) in sides.iter().enumerate() {
        for &t in &sides[i + 1..] {
            if s & t == 0 && (s | t) != full {
                return Ok(Membership::InClass(GClassWitness {
                    v1: VertexSubset::from_mask(n, u64::from(s)),
                    v2: VertexSubset::from_mask(n, u64::from(t)),
                    kappa,
                }));
            }
        }
    }
    Ok(Membership::NotInClass)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Multigraph {
        Multigraph::from_adjacency_fn(n, |_, _| true).unwrap()
    }

    fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edge_list(n, &edges).unwrap()
    }

    fn path(n: usize) -> Multigraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Multigraph::from_edge_list(n, &edges).unwrap()
    }

    fn petersen() -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Multigraph::from_edge_list(10, &edges).unwrap()
    }

    fn bridged_cliques(k: usize) -> Multigraph {
        Multigraph::from_adjacency_fn(2 * k, |u, v| (u < k) == (v < k) || (u == k - 1 && v == k)).unwrap()
    }

    fn triangles_with_bridge() -> Multigraph {
        Multigraph::from_edge_list(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap()
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(edge_connectivity(&complete(4)).unwrap().value, 3);
        assert_eq!(edge_connectivity(&cycle(6)).unwrap().value, 2);
        let g = triangles_with_bridge();
        let cut = edge_connectivity(&g).unwrap();
        assert_eq!(cut.value, 1);
        let side = cut.side.as_slice();
        assert!(side == [0, 1, 2] || side == [3, 4, 5], "{side:?}");
        assert_eq!(g.cut_weight(&cut.side), Ok(1));
        assert_eq!(
            edge_connectivity(&Multigraph::from_edge_list(1, &[]).unwrap()),
            Err(ConnectivityError::SingleVertex)
        );
    }

    #[test]
    fn disconnected_input_reports_component() {
        let g = Multigraph::from_edge_list(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let cut = edge_connectivity(&g).unwrap();
        assert_eq!(cut.value, 0);
        assert_eq!(cut.side.as_slice(), &[0, 1]);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(min_cut_oracle(&petersen()), Ok(3));
        let triple = Multigraph::from_edge_list(2, &[(0, 1); 3]).unwrap();
        assert_eq!(min_cut_oracle(&triple), Ok(3));
        assert_eq!(min_cut_oracle(&path(4)), Ok(1));
        let big = Multigraph::from_edge_list(25, &[]).unwrap();
        assert_eq!(min_cut_oracle(&big), Err(ConnectivityError::TooLarge { n: 25, limit: 24 }));
    }

    #[test]
    fn stoer_wagner_on_weighted_multigraph() {
        let g = Multigraph::from_multiplicities(4, [(0, 1, 3), (1, 2, 1), (2, 3, 3), (3, 0, 1), (0, 2, 1)]).unwrap();
        let cut = edge_connectivity(&g).unwrap();
        assert_eq!(cut.value, min_cut_oracle(&g).unwrap());
        assert_eq!(g.cut_weight(&cut.side), Ok(cut.value));
    }

    #[test]
    fn membership_fast_path() {
        match g_class_membership(&cycle(4)).unwrap() {
            Membership::InClass(w) => {
                assert_eq!(w.kappa, 2);
                assert_eq!((w.v1.as_slice(), w.v2.as_slice()), (&[0][..], &[1][..]));
                assert!(w.is_valid_for(&cycle(4)));
            }
            Membership::NotInClass => panic!("C4 is in the class"),
        }
        assert!(g_class_membership(&path(3)).unwrap().is_member());
    }

    #[test]
    fn bridged_cliques_are_outside_the_class() {
        let g = bridged_cliques(4);
        assert_eq!(edge_connectivity(&g).unwrap().value, 1);
        let sides = min_cut_sides(&g).unwrap();
        assert_eq!(sides, vec![0x0f, 0xf0]);
        assert_eq!(g_class_membership(&g), Ok(Membership::NotInClass));
    }

    #[test]
    fn exhaustive_stage_finds_nested_cuts() {
        // A path of three K4's: both bridges are min cuts, the outer cliques
        // are disjoint sides and the middle clique is left over.
        let g = Multigraph::from_adjacency_fn(12, |u, v| u / 4 == v / 4 || (u, v) == (3, 4) || (u, v) == (7, 8)).unwrap();
        match g_class_membership(&g).unwrap() {
            Membership::InClass(w) => {
                assert_eq!(w.kappa, 1);
                assert!(w.is_valid_for(&g));
            }
            Membership::NotInClass => panic!("expected a witness"),
        }
    }

    #[test]
    fn membership_of_disconnected_graphs() {
        let two = Multigraph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g_class_membership(&two), Ok(Membership::NotInClass));
        let three = Multigraph::from_edge_list(5, &[(0, 1), (2, 3)]).unwrap();
        match g_class_membership(&three).unwrap() {
            Membership::InClass(w) => assert!(w.is_valid_for(&three)),
            Membership::NotInClass => panic!("three components leave room"),
        }
    }

    #[test]
    fn membership_errors() {
        assert_eq!(g_class_membership(&complete(2)), Err(ConnectivityError::TooSmall { n: 2 }));
        // Two K13's joined by two disjoint edges: κ' = 2 is below every
        // degree, so only enumeration could decide, and n = 26 is too large.
        let g = Multigraph::from_adjacency_fn(26, |u, v| {
            (u < 13) == (v < 13) || (u, v) == (0, 13) || (u, v) == (1, 14)
        })
        .unwrap();
        assert_eq!(edge_connectivity(&g).unwrap().value, 2);
        assert_eq!(
            g_class_membership(&g),
            Err(ConnectivityError::TooLarge { n: 26, limit: 24 })
        );
    }
}
