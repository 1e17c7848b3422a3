//! Graph matrices, their spectra, and quotient matrices of vertex partitions.

use alloc::vec::Vec;

use thiserror::Error;

use crate::eigen::{symmetric_eigenvalues, DenseSymmetricMatrix, EigenError};
use crate::graph::{GraphError, Multigraph, VertexPartition};
use crate::{ratio_to_f64, Rational};

/// Absolute tolerance for inequalities between computed eigenvalues.
pub const SPECTRAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("inner sequence has length {inner} but outer has only {outer}")]
    LengthMismatch { outer: usize, inner: usize },
    #[error("index ({i}, {j}) out of range for order {order}")]
    IndexOutOfRange { i: usize, j: usize, order: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
    SignlessLaplacian,
    Degree,
}

/// `A`, `L = D − A`, `Q = D + A` or `D` of `g`.
pub fn build_matrix(g: &Multigraph, kind: MatrixKind) -> DenseSymmetricMatrix {
    DenseSymmetricMatrix::from_fn(g.vertex_count(), |i, j| {
        if i == j {
            match kind {
                MatrixKind::Adjacency => 0.0,
                _ => g.degree(i) as f64,
            }
        } else {
            let a = f64::from(g.mult(i, j));
            match kind {
                MatrixKind::Adjacency | MatrixKind::SignlessLaplacian => a,
                MatrixKind::Laplacian => -a,
                MatrixKind::Degree => 0.0,
            }
        }
    })
}

/// Sorted spectra of `A`, `L` and `Q` together with the degree extremes.
///
/// Indexing helpers are 1-based to match the usual `λ₁ ≥ λ₂ ≥ …` naming.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSummary {
    pub n: usize,
    pub m: u64,
    pub min_degree: u64,
    pub max_degree: u64,
    pub adjacency: Vec<f64>,
    pub laplacian: Vec<f64>,
    pub signless: Vec<f64>,
}

impl SpectralSummary {
    pub fn of(g: &Multigraph) -> Result<Self, SpectraError> {
        Ok(Self {
            n: g.vertex_count(),
            m: g.edge_count(),
            min_degree: g.min_degree(),
            max_degree: g.max_degree(),
            adjacency: symmetric_eigenvalues(&build_matrix(g, MatrixKind::Adjacency))?,
            laplacian: symmetric_eigenvalues(&build_matrix(g, MatrixKind::Laplacian))?,
            signless: symmetric_eigenvalues(&build_matrix(g, MatrixKind::SignlessLaplacian))?,
        })
    }

    /// `λ_i`, the i-th largest adjacency eigenvalue.
    pub fn lambda(&self, i: usize) -> Option<f64> {
        nth(&self.adjacency, i)
    }

    /// `μ_i`, the i-th largest Laplacian eigenvalue.
    pub fn mu(&self, i: usize) -> Option<f64> {
        nth(&self.laplacian, i)
    }

    /// `q_i`, the i-th largest signless Laplacian eigenvalue.
    pub fn q(&self, i: usize) -> Option<f64> {
        nth(&self.signless, i)
    }

    /// `μ_{n−2}`, the third smallest Laplacian eigenvalue.
    pub fn mu_n_minus_2(&self) -> Option<f64> {
        self.n.checked_sub(2).and_then(|i| self.mu(i))
    }

    /// `μ_{n−1}`, the algebraic connectivity.
    pub fn mu_n_minus_1(&self) -> Option<f64> {
        self.n.checked_sub(1).and_then(|i| self.mu(i))
    }
}

fn nth(values: &[f64], i: usize) -> Option<f64> {
    i.checked_sub(1).and_then(|i| values.get(i).copied())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientKind {
    Adjacency,
    SignlessLaplacian,
}

/// Quotient of `A` or `Q` with respect to a vertex partition: entry `(i, j)`
/// is the average row sum of block `(i, j)`.
///
/// Entries are kept as exact rationals. Off-diagonal entries are
/// `e(V_i, V_j) / |V_i|`; the diagonal is `d̄_i` (adjacency) or `2 d̄_i`
/// (signless) minus the off-diagonal row sum.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMatrix {
    kind: QuotientKind,
    block_sizes: Vec<usize>,
    /// `e(V_i, V_j)` for `i ≠ j`; the diagonal holds the summed degree of block `i`.
    counts: Vec<u64>,
    entries: Vec<Rational>,
}

impl QuotientMatrix {
    pub fn new(g: &Multigraph, partition: &VertexPartition, kind: QuotientKind) -> Result<Self, SpectraError> {
        if partition.universe() != g.vertex_count() {
            return Err(GraphError::UniverseMismatch {
                expected: g.vertex_count(),
                found: partition.universe(),
            }
            .into());
        }
        let t = partition.len();
        let mut counts = alloc::vec![0u64; t * t];
        for (u, v, c) in g.edges() {
            let (bu, bv) = (partition.block_of(u), partition.block_of(v));
            if bu != bv {
                counts[bu * t + bv] += u64::from(c);
                counts[bv * t + bu] += u64::from(c);
            }
        }
        for v in 0..g.vertex_count() {
            let b = partition.block_of(v);
            counts[b * t + b] += g.degree(v);
        }
        let block_sizes: Vec<usize> = partition.blocks().iter().map(|b| b.len()).collect();

        let mut entries = alloc::vec![Rational::from_integer(0); t * t];
        for i in 0..t {
            let size = block_sizes[i] as i64;
            let mut leaving = 0u64;
            for j in 0..t {
                if i != j {
                    leaving += counts[i * t + j];
                    entries[i * t + j] = Rational::new(counts[i * t + j] as i64, size);
                }
            }
            let degree_sum = counts[i * t + i] as i64;
            let diag_numer = match kind {
                QuotientKind::Adjacency => degree_sum - leaving as i64,
                QuotientKind::SignlessLaplacian => 2 * degree_sum - leaving as i64,
            };
            entries[i * t + i] = Rational::new(diag_numer, size);
        }
        Ok(Self {
            kind,
            block_sizes,
            counts,
            entries,
        })
    }

    pub fn kind(&self) -> QuotientKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn exact_entry(&self, i: usize, j: usize) -> Rational {
        self.entries[i * self.order() + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        ratio_to_f64(&self.exact_entry(i, j))
    }

    /// `e(V_i, V_j)` for `i ≠ j`.
    pub fn crossing_count(&self, i: usize, j: usize) -> u64 {
        debug_assert_ne!(i, j);
        self.counts[i * self.order() + j]
    }

    pub fn trace(&self) -> Rational {
        (0..self.order()).map(|i| self.exact_entry(i, i)).sum()
    }

    pub fn row_sum(&self, i: usize) -> Rational {
        (0..self.order()).map(|j| self.exact_entry(i, j)).sum()
    }

    /// `S M S⁻¹` with `S = diag(√|V_i|)`. Off-diagonal entries become
    /// `e(V_i, V_j) / √(|V_i||V_j|)`, computed from the shared integer count so
    /// the result is exactly symmetric.
    pub fn symmetrized(&self) -> DenseSymmetricMatrix {
        DenseSymmetricMatrix::from_fn(self.order(), |i, j| {
            if i == j {
                self.entry(i, i)
            } else {
                let sizes = (self.block_sizes[i] * self.block_sizes[j]) as f64;
                self.crossing_count(i, j) as f64 / libm::sqrt(sizes)
            }
        })
    }

    /// Real eigenvalues, sorted non-increasing.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, SpectraError> {
        Ok(symmetric_eigenvalues(&self.symmetrized())?)
    }
}

/// Outcome of an interlacing check. Violation indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interlacing {
    Holds,
    Violated { index: usize },
}

impl Interlacing {
    pub fn holds(self) -> bool {
        self == Interlacing::Holds
    }
}

/// Checks `θ_i + tol ≥ η_i ≥ θ_{n−t+i} − tol` for `i = 1..t`, both sequences
/// sorted non-increasing.
pub fn check_interlacing(outer: &[f64], inner: &[f64], tol: f64) -> Result<Interlacing, SpectraError> {
    let (n, t) = (outer.len(), inner.len());
    if t > n {
        return Err(SpectraError::LengthMismatch { outer: n, inner: t });
    }
    for (i, &eta) in inner.iter().enumerate() {
        if outer[i] + tol < eta || eta < outer[n - t + i] - tol {
            return Ok(Interlacing::Violated { index: i + 1 });
        }
    }
    Ok(Interlacing::Holds)
}

/// Weyl's inequalities for `B + C`, indices 1-based:
///
/// * `λ_i(B) + λ_j(C) ≤ λ_{i+j−n}(B+C)` when `i + j ≥ n + 1`;
/// * `λ_i(B) + λ_j(C) ≥ λ_{i+j−1}(B+C)` when `i + j ≤ n + 1`.
///
/// Every applicable inequality is checked at [`SPECTRAL_TOL`].
pub fn weyl_check(
    b: &DenseSymmetricMatrix,
    c: &DenseSymmetricMatrix,
    i: usize,
    j: usize,
) -> Result<bool, SpectraError> {
    let n = b.order();
    if c.order() != n {
        return Err(EigenError::OrderMismatch {
            left: n,
            right: c.order(),
        }
        .into());
    }
    if i == 0 || j == 0 || i > n || j > n {
        return Err(SpectraError::IndexOutOfRange { i, j, order: n });
    }
    let sum = b.add(c)?;
    let (eb, ec, es) = (
        symmetric_eigenvalues(b)?,
        symmetric_eigenvalues(c)?,
        symmetric_eigenvalues(&sum)?,
    );
    let lhs = eb[i - 1] + ec[j - 1];
    let mut ok = true;
    if i + j > n {
        ok &= lhs <= es[i + j - n - 1] + SPECTRAL_TOL;
    }
    if i + j <= n + 1 {
        ok &= lhs + SPECTRAL_TOL >= es[i + j - 2];
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSubset;
    use alloc::vec;

    fn complete(n: usize) -> Multigraph {
        Multigraph::from_adjacency_fn(n, |_, _| true).unwrap()
    }

    fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edge_list(n, &edges).unwrap()
    }

    fn partition(n: usize, blocks: &[&[usize]]) -> VertexPartition {
        VertexPartition::new(
            n,
            blocks
                .iter()
                .map(|b| VertexSubset::new(n, b.iter().copied()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn matrices_of_k2() {
        let k2 = complete(2);
        assert_eq!(build_matrix(&k2, MatrixKind::Adjacency).entries(), &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(
            build_matrix(&k2, MatrixKind::SignlessLaplacian).entries(),
            &[1.0, 1.0, 1.0, 1.0]
        );
        assert_eq!(build_matrix(&k2, MatrixKind::Laplacian).entries(), &[1.0, -1.0, -1.0, 1.0]);
        let double = Multigraph::from_edge_list(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(build_matrix(&double, MatrixKind::Adjacency).entries(), &[0.0, 2.0, 2.0, 0.0]);
        assert_eq!(build_matrix(&double, MatrixKind::Degree).entries(), &[2.0, 0.0, 0.0, 2.0]);
    }

    #[test]
    fn summary_of_k4_and_k1() {
        let s = SpectralSummary::of(&complete(4)).unwrap();
        assert!(close(&s.adjacency, &[3.0, -1.0, -1.0, -1.0], 1e-12));
        assert!(close(&s.laplacian, &[4.0, 4.0, 4.0, 0.0], 1e-12));
        assert!(close(&s.signless, &[6.0, 2.0, 2.0, 2.0], 1e-12));
        assert_eq!(s.lambda(0), None);
        assert_eq!(s.mu_n_minus_2(), Some(s.laplacian[1]));

        let k1 = SpectralSummary::of(&Multigraph::from_edge_list(1, &[]).unwrap()).unwrap();
        assert_eq!((k1.adjacency.clone(), k1.laplacian.clone(), k1.signless.clone()), (vec![0.0], vec![0.0], vec![0.0]));
        assert_eq!(k1.mu_n_minus_2(), None);
    }

    #[test]
    fn c6_signless_spectrum() {
        let s = SpectralSummary::of(&cycle(6)).unwrap();
        assert!(close(&s.signless, &[4.0, 3.0, 3.0, 1.0, 1.0, 0.0], 1e-10));
    }

    #[test]
    fn single_block_quotient_of_regular_graph() {
        let p = partition(6, &[&[0, 1, 2, 3, 4, 5]]);
        let a = QuotientMatrix::new(&cycle(6), &p, QuotientKind::Adjacency).unwrap();
        assert_eq!(a.exact_entry(0, 0), Rational::from_integer(2));
        assert_eq!(a.eigenvalues().unwrap(), vec![2.0]);
        let q = QuotientMatrix::new(&cycle(6), &p, QuotientKind::SignlessLaplacian).unwrap();
        assert_eq!(q.exact_entry(0, 0), Rational::from_integer(4));
    }

    #[test]
    fn k4_star_partition_quotient() {
        let p = partition(4, &[&[0], &[1, 2, 3]]);
        let a = QuotientMatrix::new(&complete(4), &p, QuotientKind::Adjacency).unwrap();
        let want = [0, 3, 1, 2].map(Rational::from_integer);
        for (idx, w) in want.iter().enumerate() {
            assert_eq!(a.exact_entry(idx / 2, idx % 2), *w);
        }
        assert_eq!(a.row_sum(0), Rational::from_integer(3));
        assert_eq!(a.row_sum(1), Rational::from_integer(3));
        assert!(close(&a.eigenvalues().unwrap(), &[3.0, -1.0], 1e-12));
    }

    #[test]
    fn c6_bipartition_quotient() {
        let p = partition(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let a = QuotientMatrix::new(&cycle(6), &p, QuotientKind::Adjacency).unwrap();
        assert_eq!(a.exact_entry(0, 0), Rational::new(4, 3));
        assert_eq!(a.exact_entry(0, 1), Rational::new(2, 3));
        assert_eq!(a.exact_entry(1, 0), Rational::new(2, 3));
        assert_eq!(a.exact_entry(1, 1), Rational::new(4, 3));
        assert!(close(&a.eigenvalues().unwrap(), &[2.0, 2.0 / 3.0], 1e-12));
        assert_eq!(a.trace(), Rational::new(8, 3));
    }

    #[test]
    fn signless_quotient_rows() {
        let star = Multigraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let p = partition(4, &[&[0], &[1, 2, 3]]);
        let q = QuotientMatrix::new(&star, &p, QuotientKind::SignlessLaplacian).unwrap();
        // Row i sums to 2·d̄_i.
        assert_eq!(q.row_sum(0), Rational::from_integer(6));
        assert_eq!(q.row_sum(1), Rational::from_integer(2));
        assert_eq!(q.exact_entry(0, 1), Rational::from_integer(3));
        assert_eq!(q.exact_entry(1, 0), Rational::from_integer(1));
    }

    #[test]
    fn interlacing_examples() {
        let outer = [3.0, -1.0, -1.0, -1.0];
        assert_eq!(check_interlacing(&outer, &[3.0, -1.0], 1e-8), Ok(Interlacing::Holds));
        assert_eq!(
            check_interlacing(&[3.0, 1.0, 0.0], &[5.0], 1.0),
            Ok(Interlacing::Violated { index: 1 })
        );
        assert_eq!(check_interlacing(&outer, &outer, 0.0), Ok(Interlacing::Holds));
        assert_eq!(
            check_interlacing(&[1.0], &[1.0, 0.0], 0.0),
            Err(SpectraError::LengthMismatch { outer: 1, inner: 2 })
        );
    }

    #[test]
    fn weyl_examples() {
        let z = DenseSymmetricMatrix::zeros(3);
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(weyl_check(&z, &z, i, j), Ok(true));
            }
        }
        let g = complete(4);
        let l = build_matrix(&g, MatrixKind::Laplacian);
        let a = build_matrix(&g, MatrixKind::Adjacency);
        // μ₂ + λ₃ = 4 − 1 ≤ Δ = 3, with equality.
        assert_eq!(weyl_check(&l, &a, 2, 3), Ok(true));
        let d = build_matrix(&g, MatrixKind::Degree);
        assert_eq!(weyl_check(&d, &a, 4, 3), Ok(true));
        assert!(matches!(weyl_check(&d, &z, 1, 1), Err(SpectraError::Eigen(EigenError::OrderMismatch { .. }))));
        assert!(matches!(weyl_check(&d, &a, 0, 1), Err(SpectraError::IndexOutOfRange { .. })));
    }

    #[test]
    fn weyl_lower_bound_uses_i_plus_j_minus_one() {
        // λ₁(B) + λ₂(C) = 1. Against λ₂(B+C) = 0 the bound holds; against
        // λ₁(B+C) = 2 it would not.
        let b = DenseSymmetricMatrix::diagonal(&[1.0, 0.0]);
        assert_eq!(weyl_check(&b, &b, 1, 2), Ok(true));
    }
}
