//! Combinatorial Laplacian and exact spanning-tree counts (Matrix-Tree theorem).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Square matrix of arbitrary-precision integers, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntegerMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidGraph("matrix rows must be square".into()));
        }
        Ok(IntegerMatrix {
            dim,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        self.entries
            .chunks(self.dim.max(1))
            .take(self.dim)
            .map(|row| row.iter().sum())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Matrix with row and column `k` removed.
    pub fn minor(&self, k: usize) -> IntegerMatrix {
        let dim = self.dim - 1;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in (0..self.dim).filter(|&i| i != k) {
            for j in (0..self.dim).filter(|&j| j != k) {
                entries.push(self.get(i, j).clone());
            }
        }
        IntegerMatrix { dim, entries }
    }

    /// Exact determinant by Bareiss fraction-free elimination. Every
    /// division is exact, so intermediate values stay integral.
    pub fn determinant(&self) -> BigInt {
        let n = self.dim;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                let lead = a[i * n + k].clone();
                for j in k + 1..n {
                    let v = (&pivot * &a[i * n + j] - &lead * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = pivot;
        }
        sign * &a[n * n - 1]
    }
}

/// Degree on the diagonal, -1 for each adjacent pair, 0 elsewhere.
pub fn laplacian(g: &SimpleGraph) -> IntegerMatrix {
    let n = g.n_vertices();
    let mut m = IntegerMatrix::zeros(n);
    let mut degree = vec![0i64; n];
    for (u, v) in g.edges() {
        m.set(u, v, BigInt::from(-1));
        m.set(v, u, BigInt::from(-1));
        degree[u] += 1;
        degree[v] += 1;
    }
    for (i, d) in degree.into_iter().enumerate() {
        m.set(i, i, BigInt::from(d));
    }
    m
}

/// Determinant of the Laplacian with row and column `v` deleted.
///
/// A disconnected graph yields 0, which is its number of spanning trees.
pub fn laplacian_minor_det(g: &SimpleGraph, v: usize) -> Result<BigInt> {
    if v >= g.n_vertices() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n_vertices: g.n_vertices(),
        });
    }
    Ok(laplacian(g).minor(v).determinant())
}

/// Number of spanning trees. Returns 0 for a disconnected graph and 1 for
/// the single vertex; the graph with no vertices has no spanning tree.
pub fn spanning_tree_count(g: &SimpleGraph) -> BigInt {
    if g.n_vertices() == 0 {
        return BigInt::zero();
    }
    if !g.is_connected() {
        return BigInt::zero();
    }
    laplacian(g).minor(0).determinant()
}

/// `ln` of `(1/n) (2m/(n-1))^(n-1)`, the spanning-tree bound from the
/// average degree. Tight exactly for complete graphs.
pub fn ln_degree_tree_bound(n_vertices: usize, n_edges: usize) -> f64 {
    let n = n_vertices as f64;
    if n_vertices < 2 {
        return 0.0;
    }
    -n.ln() + (n - 1.0) * (2.0 * n_edges as f64 / (n - 1.0)).ln()
}
