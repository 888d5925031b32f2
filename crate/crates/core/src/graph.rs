//! Simple and multi-graphs on vertices `0..n`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Undirected edge stored with `u < v`.
pub type Edge = (usize, usize);

pub(crate) fn normalize(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Undirected simple graph: no loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n_vertices: usize,
    edges: BTreeSet<Edge>,
}

impl SimpleGraph {
    pub fn empty(n_vertices: usize) -> Self {
        SimpleGraph {
            n_vertices,
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph, rejecting loops, repeated pairs and out-of-range endpoints.
    pub fn new(n_vertices: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut g = SimpleGraph::empty(n_vertices);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
        }
        for w in [u, v] {
            if w >= self.n_vertices {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n_vertices: self.n_vertices,
                });
            }
        }
        if !self.edges.insert(normalize(u, v)) {
            return Err(Error::InvalidGraph(format!("parallel edge {{{u}, {v}}}")));
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&normalize(u, v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// The empty graph and the single vertex count as connected.
    pub fn is_connected(&self) -> bool {
        if self.n_vertices <= 1 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n_vertices];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n_vertices
    }

    /// Parses the `n m` / `u v` edge-list text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
        let head = parse_usizes(ln, header)?;
        let [n, m] = head[..] else {
            return Err(Error::parse(ln, "header must be `n m`"));
        };
        let mut g = SimpleGraph::empty(n);
        for _ in 0..m {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(ln, format!("expected {m} edge lines")))?;
            let pair = parse_usizes(ln, line)?;
            let [u, v] = pair[..] else {
                return Err(Error::parse(ln, "edge line must be `u v`"));
            };
            g.add_edge(u, v)
                .map_err(|e| Error::parse(ln, e.to_string()))?;
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing content after edge list"));
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n_vertices, self.edges.len());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

pub(crate) fn parse_usizes(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| {
                Error::parse(
                    line_no,
                    format!("expected a non-negative integer, got `{tok}`"),
                )
            })
        })
        .collect()
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Result<SimpleGraph> {
    if n == 0 {
        return Err(Error::InvalidGraph("complete graph needs n >= 1".into()));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    SimpleGraph::new(n, edges)
}

pub fn cycle_graph(n: usize) -> Result<SimpleGraph> {
    if n < 3 {
        return Err(Error::InvalidGraph("cycle needs n >= 3".into()));
    }
    SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path_graph(n: usize) -> Result<SimpleGraph> {
    SimpleGraph::new(n, (1..n).map(|i| (i - 1, i)))
}

/// Multigraph with loops; only used inside the Tutte recursion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    n_vertices: usize,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn new(n_vertices: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let edges: Vec<Edge> = edges.into_iter().map(|(u, v)| normalize(u, v)).collect();
        if let Some(&(_, v)) = edges.iter().find(|&&(_, v)| v >= n_vertices) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n_vertices,
            });
        }
        Ok(MultiGraph { n_vertices, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_connected(&self) -> bool {
        if self.n_vertices <= 1 {
            return true;
        }
        let mut dsu = Dsu::new(self.n_vertices);
        let mut comps = self.n_vertices;
        for &(u, v) in &self.edges {
            if dsu.union(u, v) {
                comps -= 1;
            }
        }
        comps == 1
    }

    /// Removes edge `idx`.
    pub fn delete(&self, idx: usize) -> MultiGraph {
        let mut edges = self.edges.clone();
        edges.swap_remove(idx);
        MultiGraph {
            n_vertices: self.n_vertices,
            edges,
        }
    }

    /// Identifies the endpoints of edge `idx` and drops that edge. The
    /// higher endpoint is merged into the lower one and the last vertex takes
    /// its label, so vertices stay `0..n-1`.
    pub fn contract(&self, idx: usize) -> MultiGraph {
        let (keep, gone) = self.edges[idx];
        debug_assert!(keep < gone);
        let last = self.n_vertices - 1;
        let relabel = |w: usize| {
            let w = if w == gone { keep } else { w };
            if w == last {
                gone
            } else {
                w
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, &(a, b))| normalize(relabel(a), relabel(b)))
            .collect();
        MultiGraph {
            n_vertices: self.n_vertices - 1,
            edges,
        }
    }

    /// True when removing edge `idx` increases the number of components.
    pub fn is_bridge(&self, idx: usize) -> bool {
        let (u, v) = self.edges[idx];
        if u == v {
            return false;
        }
        let mut dsu = Dsu::new(self.n_vertices);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i != idx {
                dsu.union(a, b);
            }
        }
        dsu.find(u) != dsu.find(v)
    }
}

impl From<&SimpleGraph> for MultiGraph {
    fn from(g: &SimpleGraph) -> Self {
        MultiGraph {
            n_vertices: g.n_vertices,
            edges: g.edges().collect(),
        }
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
