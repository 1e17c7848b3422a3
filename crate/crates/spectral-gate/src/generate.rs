//! Named graph families, seeded random models and exhaustive enumeration.
//!
//! Every random generator draws from [`Rng`], a ChaCha8 stream keyed by a
//! 64-bit seed, so a `(generator, parameters, seed)` triple always produces
//! the same graph.

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral_gate_core::graph::GraphError;
use spectral_gate_core::Multigraph;
use thiserror::Error;

/// The generator behind every random source.
pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Restart budget for the random regular generator.
pub const MAX_RESTARTS: usize = 10_000;
/// Largest order accepted by [`enumerate_connected`].
pub const MAX_ENUMERATION_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("no simple {d}-regular graph on {n} vertices: {reason}")]
    Infeasible { n: usize, d: usize, reason: &'static str },
    #[error("enumeration is limited to n <= {limit}, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    Parameter(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn complete(n: usize) -> Result<Multigraph, GenerateError> {
    Ok(Multigraph::from_adjacency_fn(n, |u, v| u != v)?)
}

pub fn cycle(n: usize) -> Result<Multigraph, GenerateError> {
    if n < 3 {
        return Err(GenerateError::Parameter("a cycle needs at least 3 vertices"));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Multigraph::from_edge_list(n, &edges)?)
}

pub fn path(n: usize) -> Result<Multigraph, GenerateError> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(Multigraph::from_edge_list(n, &edges)?)
}

/// `K_{1,n−1}` centred on vertex 0.
pub fn star(n: usize) -> Result<Multigraph, GenerateError> {
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Ok(Multigraph::from_edge_list(n, &edges)?)
}

/// Outer 5-cycle `0..5`, spokes `i – i+5`, inner pentagram.
pub fn petersen() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Multigraph::from_edge_list(10, &edges).expect("valid")
}

/// Hamiltonian cycle plus chords from an LCF word repeated `repeats` times.
pub fn lcf(shifts: &[i64], repeats: usize) -> Result<Multigraph, GenerateError> {
    let n = shifts.len() * repeats;
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for i in 0..n {
        let j = (i as i64 + shifts[i % shifts.len()]).rem_euclid(n as i64) as usize;
        if i < j {
            edges.push((i, j));
        }
    }
    let g = Multigraph::from_edge_list(n, &edges)?;
    if !g.is_simple() {
        return Err(GenerateError::Parameter("LCF word produces parallel edges"));
    }
    Ok(g)
}

/// The Pappus graph: 18 vertices, cubic, LCF `[5, 7, −7, 7, −7, −5]³`.
pub fn pappus() -> Multigraph {
    lcf(&[5, 7, -7, 7, -7, -5], 3).expect("valid")
}

/// Two copies of `K_a` joined by a single edge between vertex `a − 1` and `a`.
pub fn bridged_cliques(a: usize) -> Result<Multigraph, GenerateError> {
    if a < 2 {
        return Err(GenerateError::Parameter("cliques need at least 2 vertices"));
    }
    Ok(Multigraph::from_adjacency_fn(2 * a, |u, v| {
        (u < a) == (v < a) || (u.min(v) == a - 1 && u.max(v) == a)
    })?)
}

/// A uniformly shuffled simple `d`-regular graph from the pairing model.
///
/// Points are paired one at a time, each pair drawn uniformly among the
/// remaining points that would not create a loop or a parallel edge; when no
/// such pair is left the attempt restarts. After [`MAX_RESTARTS`] restarts the
/// parameters are reported as infeasible.
pub fn random_regular(n: usize, d: usize, rng: &mut Rng) -> Result<Multigraph, GenerateError> {
    let infeasible = |reason| GenerateError::Infeasible { n, d, reason };
    if n == 0 {
        return Err(infeasible("no vertices"));
    }
    if d >= n && !(n == 1 && d == 0) {
        return Err(infeasible("degree must be below n"));
    }
    if (n * d) % 2 == 1 {
        return Err(infeasible("n * d is odd"));
    }
    'restart: for _ in 0..MAX_RESTARTS {
        let mut points: Vec<usize> = (0..n * d).map(|p| p / d.max(1)).collect();
        let mut adjacent = vec![false; n * n];
        let mut edges = Vec::with_capacity(n * d / 2);
        while !points.is_empty() {
            let len = points.len();
            let ok = |a: usize, b: usize| a != b && !adjacent[a * n + b];
            let mut chosen = None;
            for _ in 0..32 {
                let (i, j) = (rng.gen_range(0..len), rng.gen_range(0..len));
                if i != j && ok(points[i], points[j]) {
                    chosen = Some((i, j));
                    break;
                }
            }
            let (i, j) = match chosen {
                Some(c) => c,
                None => {
                    let valid: Vec<(usize, usize)> = (0..len)
                        .flat_map(|i| (i + 1..len).map(move |j| (i, j)))
                        .filter(|&(i, j)| ok(points[i], points[j]))
                        .collect();
                    match valid.as_slice() {
                        [] => continue 'restart,
                        v => v[rng.gen_range(0..v.len())],
                    }
                }
            };
            let (a, b) = (points[i], points[j]);
            adjacent[a * n + b] = true;
            adjacent[b * n + a] = true;
            edges.push((a, b));
            let (hi, lo) = (i.max(j), i.min(j));
            points.swap_remove(hi);
            points.swap_remove(lo);
        }
        return Ok(Multigraph::from_edge_list(n, &edges)?);
    }
    Err(infeasible("restart budget exhausted"))
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, rng: &mut Rng) -> Result<Multigraph, GenerateError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenerateError::Parameter("p must lie in [0, 1]"));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Multigraph::from_edge_list(n, &edges)?)
}

/// Connected multigraph: a random recursive spanning tree on a shuffled
/// vertex order plus `round(edge_factor · n)` extra random pairs, each edge
/// (tree or extra) drawn with multiplicity uniform in `1..=max_mult`. A pair
/// drawn twice keeps the larger multiplicity.
pub fn random_multigraph(n: usize, max_mult: u32, edge_factor: f64, rng: &mut Rng) -> Result<Multigraph, GenerateError> {
    if max_mult == 0 {
        return Err(GenerateError::Parameter("max_mult must be at least 1"));
    }
    if !(edge_factor >= 0.0 && edge_factor.is_finite()) {
        return Err(GenerateError::Parameter("edge_factor must be finite and non-negative"));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut mult = std::collections::BTreeMap::new();
    let mut add = |u: usize, v: usize, c: u32| {
        let e = mult.entry((u.min(v), u.max(v))).or_insert(0);
        *e = c.max(*e);
    };
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        add(order[i], parent, rng.gen_range(1..=max_mult));
    }
    if n >= 2 {
        let extra = (edge_factor * n as f64).round() as usize;
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let v = (u + rng.gen_range(1..n)) % n;
            add(u, v, rng.gen_range(1..=max_mult));
        }
    }
    let edges = mult.into_iter().map(|((u, v), c)| (u, v, c));
    Ok(Multigraph::from_multiplicities(n, edges)?)
}

/// Number of vertex pairs of an `n`-vertex simple graph.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Labeled simple graph whose edge set is the bitmask `mask` over pairs in
/// column order (`(0,1), (0,2), (1,2), (0,3), …`), as in graph6.
pub fn graph_from_mask(n: usize, mask: u64) -> Multigraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Multigraph::from_edge_list(n, &edges).expect("valid")
}

/// Connectivity of the mask graph by bit-parallel search.
pub fn mask_is_connected(n: usize, mask: u64) -> bool {
    let mut adj = [0u16; MAX_ENUMERATION_ORDER];
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    let full: u16 = ((1u32 << n) - 1) as u16;
    let (mut seen, mut frontier) = (1u16, 1u16);
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == full
}

/// Every connected labeled simple graph on `n` vertices (no isomorphism
/// reduction), in increasing edge-mask order.
pub fn enumerate_connected(n: usize) -> Result<impl Iterator<Item = Multigraph>, GenerateError> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(GenerateError::TooLarge {
            n,
            limit: MAX_ENUMERATION_ORDER,
        });
    }
    if n < 2 {
        return Err(GenerateError::Parameter("enumeration needs n >= 2"));
    }
    Ok((0..1u64 << pair_count(n))
        .filter(move |&m| mask_is_connected(n, m))
        .map(move |m| graph_from_mask(n, m)))
}
