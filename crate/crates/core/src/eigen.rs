//! Dense real-symmetric matrices and a cyclic Jacobi eigenvalue solver.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// Sweep cap for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 60;
/// Convergence when `off(M) < OFF_DIAGONAL_TOL * (1 + ‖M‖_F)`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EigenError {
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("expected {expected} entries, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("matrix orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
}

/// A real symmetric matrix stored densely in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymmetricMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl DenseSymmetricMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![0.0; order * order],
        }
    }

    /// Evaluates `f` on the upper triangle and mirrors it, so the result is
    /// exactly symmetric.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            for j in i..order {
                let x = f(i, j);
                m.entries[i * order + j] = x;
                m.entries[j * order + i] = x;
            }
        }
        m
    }

    /// Row-major entries; rejects anything that is not exactly symmetric.
    pub fn from_row_major(order: usize, entries: Vec<f64>) -> Result<Self, EigenError> {
        if entries.len() != order * order {
            return Err(EigenError::WrongLength {
                expected: order * order,
                found: entries.len(),
            });
        }
        for i in 0..order {
            for j in i + 1..order {
                if entries[i * order + j] != entries[j * order + i] {
                    return Err(EigenError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { order, entries })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, &x) in values.iter().enumerate() {
            m.entries[i * n + i] = x;
        }
        m
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn add(&self, other: &Self) -> Result<Self, EigenError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, EigenError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self {
            order: self.order,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    /// `P M Pᵀ` for the permutation sending index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[perm[i] * n + perm[j]] = self.get(i, j);
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|x| x * x).sum())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self, EigenError> {
        if self.order != other.order {
            return Err(EigenError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(Self {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Eigenvalues sorted non-increasing.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, EigenError> {
        symmetric_eigenvalues(self)
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    libm::sqrt(s)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// non-increasing.
///
/// Each sweep visits every pair `p < q` in row order and annihilates
/// `a[p][q]` with a plane rotation (Rutishauser's stable update). Iteration
/// stops once the off-diagonal Frobenius norm drops below
/// `1e-12 · (1 + ‖M‖_F)`.
pub fn symmetric_eigenvalues(m: &DenseSymmetricMatrix) -> Result<Vec<f64>, EigenError> {
    let n = m.order;
    let mut a = m.entries.clone();
    let threshold = OFF_DIAGONAL_TOL * (1.0 + m.frobenius_norm());

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off < threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(EigenError::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + libm::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
            }
        }
    }

    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "got {got:?}, want {want:?}");
        }
    }

    fn complete(n: usize) -> DenseSymmetricMatrix {
        DenseSymmetricMatrix::from_fn(n, |i, j| if i == j { 0.0 } else { 1.0 })
    }

    #[test]
    fn complete_graph_spectrum() {
        assert_close(
            &symmetric_eigenvalues(&complete(4)).unwrap(),
            &[3.0, -1.0, -1.0, -1.0],
            1e-12,
        );
    }

    #[test]
    fn five_cycle_spectrum() {
        let c5 = DenseSymmetricMatrix::from_fn(5, |i, j| {
            let d = (j + 5 - i) % 5;
            if d == 1 || d == 4 {
                1.0
            } else {
                0.0
            }
        });
        let mut want: Vec<f64> = (0..5).map(|k| 2.0 * libm::cos(2.0 * PI * k as f64 / 5.0)).collect();
        want.sort_by(|x, y| y.total_cmp(x));
        let got = symmetric_eigenvalues(&c5).unwrap();
        assert_close(&got, &want, 1e-12);
        assert!((got[1] - 0.6180339887).abs() < 1e-9);
    }

    #[test]
    fn diagonal_and_empty() {
        let d = DenseSymmetricMatrix::diagonal(&[1.0, 3.0, -2.0]);
        assert_eq!(symmetric_eigenvalues(&d).unwrap(), vec![3.0, 1.0, -2.0]);
        assert!(symmetric_eigenvalues(&DenseSymmetricMatrix::zeros(0))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn rejects_asymmetric_input() {
        assert_eq!(
            DenseSymmetricMatrix::from_row_major(2, vec![0.0, 1.0, 2.0, 0.0]),
            Err(EigenError::NotSymmetric { row: 0, col: 1 })
        );
        assert!(matches!(
            DenseSymmetricMatrix::from_row_major(2, vec![0.0; 3]),
            Err(EigenError::WrongLength { .. })
        ));
    }

    #[test]
    fn order_mismatch() {
        assert!(matches!(
            complete(3).add(&complete(4)),
            Err(EigenError::OrderMismatch { left: 3, right: 4 })
        ));
    }
}
