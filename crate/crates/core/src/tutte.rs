//! Tutte polynomial by deletion-contraction with a memo table.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Edge, MultiGraph};

pub const DEFAULT_EDGE_LIMIT: usize = 18;

/// Integer polynomial in `x` and `y`, keyed by exponent pair. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    coefficients: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, BigInt::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, BigInt::one())
    }

    pub fn monomial(i: u32, j: u32, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coefficients.entry((i, j)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coefficients.remove(&(i, j));
        }
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigInt {
        self.coefficients.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.coefficients.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        BivariatePolynomial {
            coefficients: self
                .coefficients
                .iter()
                .map(|(&(i, j), c)| ((i + a, j + b), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.coefficients {
            out.add_term(i, j, c.clone());
        }
        out
    }

    /// Exact evaluation at integer `(x, y)`.
    pub fn eval(&self, x: i64, y: i64) -> BigInt {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        self.coefficients
            .iter()
            .map(|(&(i, j), c)| {
                c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize)
            })
            .sum()
    }
}

impl fmt::Display for BivariatePolynomial {
    /// Terms in descending `(x, y)` exponent order, e.g. `x^2+x+y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.coefficients.iter().rev().enumerate() {
            let mut factors = Vec::new();
            match i {
                0 => {}
                1 => factors.push("x".to_string()),
                _ => factors.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("y".to_string()),
                _ => factors.push(format!("y^{j}")),
            }
            let negative = c < &BigInt::zero();
            let mag = if negative { -c } else { c.clone() };
            if negative {
                write!(f, "-")?;
            } else if n > 0 {
                write!(f, "+")?;
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Tutte polynomial of a connected multigraph.
///
/// Fails with [`Error::EdgeLimitExceeded`] when the graph has more than
/// `edge_limit` edges, since the recursion is exponential in the edge count.
pub fn tutte(g: &MultiGraph, edge_limit: usize) -> Result<BivariatePolynomial> {
    if g.n_edges() > edge_limit {
        return Err(Error::EdgeLimitExceeded {
            edges: g.n_edges(),
            limit: edge_limit,
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut memo = HashMap::new();
    Ok(recurse(g, &mut memo))
}

pub fn tutte_eval(p: &BivariatePolynomial, x: i64, y: i64) -> BigInt {
    p.eval(x, y)
}

type MemoKey = (usize, Vec<Edge>);

fn memo_key(g: &MultiGraph) -> MemoKey {
    let mut edges = g.edges().to_vec();
    edges.sort_unstable();
    (g.n_vertices(), edges)
}

fn recurse(
    g: &MultiGraph,
    memo: &mut HashMap<MemoKey, BivariatePolynomial>,
) -> BivariatePolynomial {
    if g.n_edges() == 0 {
        return BivariatePolynomial::one();
    }
    let key = memo_key(g);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }

    let result = if let Some(idx) = g.edges().iter().position(|&(u, v)| u == v) {
        recurse(&g.delete(idx), memo).shift(0, 1)
    } else if g.is_bridge(0) {
        recurse(&g.contract(0), memo).shift(1, 0)
    } else {
        let deleted = recurse(&g.delete(0), memo);
        let contracted = recurse(&g.contract(0), memo);
        deleted.add(&contracted)
    };

    memo.insert(key, result.clone());
    result
}
