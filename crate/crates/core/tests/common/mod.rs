//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the enumerator, the canonical coder or the determinant code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

pub type Triangle = [usize; 3];

fn sorted(mut t: Triangle) -> Triangle {
    t.sort_unstable();
    t
}

/// Spanning trees counted over all (n-1)-edge subsets.
pub fn brute_force_tree_count(n: usize, edges: &[(usize, usize)]) -> u64 {
    if n == 0 {
        return 0;
    }
    if n == 1 {
        return 1;
    }
    let m = edges.len();
    let k = n - 1;
    if m < k {
        return 0;
    }
    let mut count = 0;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        let mut acyclic = true;
        for &i in &idx {
            let (a, b) = edges[i];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                acyclic = false;
                break;
            }
            parent[ra] = rb;
        }
        if acyclic {
            count += 1;
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if idx[i] != i + m - k {
                break;
            }
            if i == 0 && idx[0] == m - k {
                return count;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Simplicial surface given by its triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceComplex {
    pub n: usize,
    pub faces: BTreeSet<Triangle>,
}

impl FaceComplex {
    pub fn new(n: usize, faces: impl IntoIterator<Item = Triangle>) -> Self {
        FaceComplex {
            n,
            faces: faces.into_iter().map(sorted).collect(),
        }
    }

    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        let mut e = BTreeSet::new();
        for f in &self.faces {
            e.insert((f[0], f[1]));
            e.insert((f[0], f[2]));
            e.insert((f[1], f[2]));
        }
        e
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for (a, b) in self.edges() {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for (a, b) in self.edges() {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    /// Isomorphic as simplicial complexes: some vertex bijection maps the
    /// triangle set onto the other's. Backtracks over bijections that
    /// respect degrees and adjacency.
    pub fn isomorphic(&self, other: &FaceComplex) -> bool {
        if self.n != other.n || self.faces.len() != other.faces.len() {
            return false;
        }
        let (da, db) = (self.degrees(), other.degrees());
        let (mut sa, mut sb) = (da.clone(), db.clone());
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
        let (aa, ab) = (self.adjacency(), other.adjacency());
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.search(other, &da, &db, &aa, &ab, 0, &mut map, &mut used)
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        other: &FaceComplex,
        da: &[usize],
        db: &[usize],
        aa: &[Vec<bool>],
        ab: &[Vec<bool>],
        v: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if v == self.n {
            return self.faces.iter().all(|f| {
                other
                    .faces
                    .contains(&sorted([map[f[0]], map[f[1]], map[f[2]]]))
            });
        }
        for w in 0..self.n {
            if used[w] || da[v] != db[w] || (0..v).any(|u| aa[u][v] != ab[map[u]][w]) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if self.search(other, da, db, aa, ab, v + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }

    /// Diagonal flips that keep the graph simple.
    pub fn flips(&self) -> Vec<FaceComplex> {
        let edges = self.edges();
        let mut out = Vec::new();
        for &(a, b) in &edges {
            let apexes: Vec<usize> = self
                .faces
                .iter()
                .filter(|f| f.contains(&a) && f.contains(&b))
                .map(|f| f.iter().copied().find(|&x| x != a && x != b).unwrap())
                .collect();
            let [c, d] = apexes[..] else { continue };
            if edges.contains(&(c.min(d), c.max(d))) {
                continue;
            }
            let mut faces = self.faces.clone();
            faces.remove(&sorted([a, b, c]));
            faces.remove(&sorted([a, b, d]));
            faces.insert(sorted([a, c, d]));
            faces.insert(sorted([b, c, d]));
            out.push(FaceComplex { n: self.n, faces });
        }
        out
    }

    /// Adds a vertex inside the first face.
    pub fn stacked(&self) -> FaceComplex {
        let f = *self.faces.iter().next().unwrap();
        let v = self.n;
        let mut faces = self.faces.clone();
        faces.remove(&f);
        faces.insert(sorted([f[0], f[1], v]));
        faces.insert(sorted([f[1], f[2], v]));
        faces.insert(sorted([f[0], f[2], v]));
        FaceComplex { n: v + 1, faces }
    }
}

pub fn tetrahedron() -> FaceComplex {
    FaceComplex::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
}

/// Isomorphism classes of sphere triangulations on `n` vertices, generated
/// as the flip-graph component of a stacked triangulation. The flip graph
/// of `n`-vertex sphere triangulations is connected, so this reaches every
/// class without any vertex splitting.
pub fn sphere_classes_by_flips(n: usize) -> Vec<FaceComplex> {
    assert!(n >= 4);
    classes_by_flips(tetrahedron(), n)
}

/// Flip-closure classes with `n` vertices, starting from `start` stacked up
/// to size. Complete on surfaces whose flip graphs are connected, which
/// includes the sphere, projective plane and torus.
pub fn classes_by_flips(mut start: FaceComplex, n: usize) -> Vec<FaceComplex> {
    while start.n < n {
        start = start.stacked();
    }
    let mut classes = vec![start.clone()];
    let mut frontier = vec![start];
    while let Some(t) = frontier.pop() {
        for f in t.flips() {
            if !classes.iter().any(|c| c.isomorphic(&f)) {
                classes.push(f.clone());
                frontier.push(f);
            }
        }
    }
    classes
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn seven_vertex_torus() -> FaceComplex {
    FaceComplex::new(
        7,
        (0..7).flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]]),
    )
}

/// The 6-vertex projective plane, half of the icosahedron.
pub fn six_vertex_projective_plane() -> FaceComplex {
    FaceComplex::new(
        6,
        [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [1, 3, 4],
            [2, 4, 5],
            [1, 3, 5],
        ],
    )
}

/// Whether some set of vertex switches clears all negative signs; tries all
/// `2^V` subsets.
pub fn switchable_to_positive(
    n: usize,
    negative: &HashSet<(usize, usize)>,
    edges: &[(usize, usize)],
) -> bool {
    (0u64..1 << n).any(|mask| {
        edges.iter().all(|&(u, v)| {
            let s = if negative.contains(&(u.min(v), u.max(v))) {
                -1
            } else {
                1
            };
            let su = if mask >> u & 1 == 1 { -1 } else { 1 };
            let sv = if mask >> v & 1 == 1 { -1 } else { 1 };
            s * su * sv == 1
        })
    })
}

/// All labelled simple graphs on `n` vertices with at most `max_edges` edges.
pub fn labelled_graphs(n: usize, max_edges: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .filter(|mask| mask.count_ones() as usize <= max_edges)
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect()
}

#[test]
fn oracle_self_checks() {
    // C3 has 3 spanning trees, K4 has 16
    assert_eq!(brute_force_tree_count(3, &[(0, 1), (1, 2), (0, 2)]), 3);
    let k4: Vec<_> = (0..4)
        .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
        .collect();
    assert_eq!(brute_force_tree_count(4, &k4), 16);
    assert_eq!(brute_force_tree_count(1, &[]), 1);
    assert_eq!(sphere_classes_by_flips(6).len(), 2);
    // every edge of a closed surface lies on exactly two triangles
    for c in [seven_vertex_torus(), six_vertex_projective_plane()] {
        for (a, b) in c.edges() {
            assert_eq!(
                c.faces
                    .iter()
                    .filter(|f| f.contains(&a) && f.contains(&b))
                    .count(),
                2
            );
        }
        assert_eq!(c.edges().len(), c.n * (c.n - 1) / 2);
    }
}
