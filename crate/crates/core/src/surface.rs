//! Graphs cellularly embedded in closed surfaces, encoded as signed rotation
//! systems.
//!
//! Each vertex carries a cyclic order of its neighbours and each edge a sign.
//! A negative edge reverses the local orientation when a face walk crosses
//! it, which is what lets the same encoding describe non-orientable
//! surfaces. Faces are recovered by tracing: leaving `v` towards `w` with
//! orientation `e`, the walk multiplies `e` by the edge sign and continues
//! from `w` to the successor (`e = +1`) or predecessor (`e = -1`) of `v` in
//! the rotation at `w`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{normalize, Edge, SimpleGraph};

/// A traced face as its cyclic vertex sequence.
pub type Face = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EmbeddedTriangulation {
    rotation: Vec<Vec<usize>>,
    /// Edges with sign -1; every other edge is +1.
    negative: BTreeSet<Edge>,
}

/// Closed surface, identified by orientability and Euler characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceSpec {
    pub orientable: bool,
    /// Handle count when orientable, crosscap count otherwise.
    pub genus: u32,
    pub euler_characteristic: i64,
}

impl SurfaceSpec {
    pub const SPHERE: SurfaceSpec = SurfaceSpec {
        orientable: true,
        genus: 0,
        euler_characteristic: 2,
    };
    pub const TORUS: SurfaceSpec = SurfaceSpec {
        orientable: true,
        genus: 1,
        euler_characteristic: 0,
    };
    pub const PROJECTIVE_PLANE: SurfaceSpec = SurfaceSpec {
        orientable: false,
        genus: 1,
        euler_characteristic: 1,
    };

    pub fn orientable(genus: u32) -> Self {
        SurfaceSpec {
            orientable: true,
            genus,
            euler_characteristic: 2 - 2 * genus as i64,
        }
    }

    /// Non-orientable surface with `crosscaps >= 1` crosscaps.
    pub fn non_orientable(crosscaps: u32) -> Result<Self> {
        if crosscaps == 0 {
            return Err(Error::InvalidTriangulation(
                "a non-orientable surface has at least one crosscap".into(),
            ));
        }
        Ok(SurfaceSpec {
            orientable: false,
            genus: crosscaps,
            euler_characteristic: 2 - crosscaps as i64,
        })
    }

    pub fn from_euler(orientable: bool, euler_characteristic: i64) -> Result<Self> {
        let spec = if orientable {
            if euler_characteristic > 2 || euler_characteristic % 2 != 0 {
                return Err(Error::InvalidTriangulation(format!(
                    "no orientable closed surface has Euler characteristic {euler_characteristic}"
                )));
            }
            SurfaceSpec::orientable(((2 - euler_characteristic) / 2) as u32)
        } else {
            if euler_characteristic > 1 {
                return Err(Error::InvalidTriangulation(format!(
                    "no non-orientable closed surface has Euler characteristic {euler_characteristic}"
                )));
            }
            SurfaceSpec::non_orientable((2 - euler_characteristic) as u32)?
        };
        Ok(spec)
    }

    pub fn is_consistent(&self) -> bool {
        if self.orientable {
            self.euler_characteristic == 2 - 2 * self.genus as i64
        } else {
            self.genus >= 1 && self.euler_characteristic == 2 - self.genus as i64
        }
    }

    /// Short name used by the CLI and the catalog header.
    pub fn name(&self) -> String {
        match (self.orientable, self.genus) {
            (true, 0) => "sphere".into(),
            (true, 1) => "torus".into(),
            (false, 1) => "projective-plane".into(),
            (true, g) => format!("orientable-{g}"),
            (false, g) => format!("nonorientable-{g}"),
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "sphere" => Some(SurfaceSpec::SPHERE),
            "torus" => Some(SurfaceSpec::TORUS),
            "projective-plane" | "projective_plane" | "rp2" => Some(SurfaceSpec::PROJECTIVE_PLANE),
            _ => {
                if let Some(g) = name.strip_prefix("orientable-") {
                    g.parse().ok().map(SurfaceSpec::orientable)
                } else if let Some(g) = name.strip_prefix("nonorientable-") {
                    g.parse()
                        .ok()
                        .and_then(|g| SurfaceSpec::non_orientable(g).ok())
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (chi = {})", self.name(), self.euler_characteristic)
    }
}

/// Named validation rules.
pub mod rule {
    pub const EMPTY: &str = "empty";
    pub const LOOP: &str = "loop";
    pub const PARALLEL_EDGE: &str = "parallel-edge";
    pub const VERTEX_RANGE: &str = "vertex-out-of-range";
    pub const ROTATION_MISMATCH: &str = "rotation-mismatch";
    pub const SIGN_ON_NON_EDGE: &str = "sign-on-non-edge";
    pub const DISCONNECTED: &str = "disconnected";
    pub const FACE_NOT_TRIANGLE: &str = "face-not-triangle";
    pub const EDGE_SIDES: &str = "edge-side-count";
    pub const FACE_ADJACENCY: &str = "face-adjacency";
    pub const FACE_COUNT: &str = "face-count";
    pub const SURFACE_MISMATCH: &str = "surface-mismatch";
    pub const NOT_IRREDUCIBLE: &str = "seed-not-irreducible";
    pub const DUPLICATE_SEED: &str = "duplicate-seed";
    pub const SEED_COUNT: &str = "seed-count";
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Violation {
    pub rule: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, rule: &str, detail: impl Into<String>) {
        self.violations.push(Violation {
            rule: rule.to_string(),
            detail: detail.into(),
        });
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: ValidationReport) {
        for v in other.violations {
            self.violations.push(Violation {
                rule: v.rule,
                detail: format!("{prefix}: {}", v.detail),
            });
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid() {
            return writeln!(f, "valid");
        }
        writeln!(f, "invalid ({} violations)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  [{}] {}", v.rule, v.detail)?;
        }
        Ok(())
    }
}

impl EmbeddedTriangulation {
    /// Wraps a rotation system without checking it; see
    /// [`validate_triangulation`] and [`EmbeddedTriangulation::check_structure`].
    pub fn new(rotation: Vec<Vec<usize>>, negative_edges: impl IntoIterator<Item = Edge>) -> Self {
        EmbeddedTriangulation {
            rotation,
            negative: negative_edges
                .into_iter()
                .map(|(u, v)| normalize(u, v))
                .collect(),
        }
    }

    /// All-positive signs: an orientable embedding.
    pub fn orientable(rotation: Vec<Vec<usize>>) -> Self {
        Self::new(rotation, [])
    }

    /// Builds the signed rotation system of a triangulated closed surface
    /// from its list of triangles. The link of every vertex must be a
    /// single cycle.
    pub fn from_faces(n_vertices: usize, faces: &[[usize; 3]]) -> Result<Self> {
        let mut link: Vec<HashMap<usize, Vec<usize>>> = vec![HashMap::new(); n_vertices];
        for f in faces {
            if f.iter().any(|&v| v >= n_vertices) {
                return Err(Error::InvalidTriangulation(format!(
                    "face {f:?} has a vertex out of range"
                )));
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(Error::InvalidTriangulation(format!(
                    "face {f:?} repeats a vertex"
                )));
            }
            for k in 0..3 {
                let (v, a, b) = (f[k], f[(k + 1) % 3], f[(k + 2) % 3]);
                link[v].entry(a).or_default().push(b);
                link[v].entry(b).or_default().push(a);
            }
        }

        let mut rotation = Vec::with_capacity(n_vertices);
        for (v, l) in link.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::InvalidTriangulation(format!(
                    "vertex {v} is in no face"
                )));
            }
            if let Some((a, _)) = l.iter().find(|(_, adj)| adj.len() != 2 || adj[0] == adj[1]) {
                return Err(Error::InvalidTriangulation(format!(
                    "link of vertex {v} is not a cycle at neighbour {a}"
                )));
            }
            let start = *l.keys().min().unwrap();
            let mut cycle = vec![start];
            let (mut prev, mut cur) = (start, l[&start][0].min(l[&start][1]));
            while cur != start {
                cycle.push(cur);
                let adj = &l[&cur];
                let next = if adj[0] == prev { adj[1] } else { adj[0] };
                prev = cur;
                cur = next;
                if cycle.len() > l.len() {
                    break;
                }
            }
            if cycle.len() != l.len() {
                return Err(Error::InvalidTriangulation(format!(
                    "link of vertex {v} splits into several cycles"
                )));
            }
            rotation.push(cycle);
        }

        // Edge {v, w} with apexes a, b: if a precedes w at v, the local
        // orientations at v and w agree exactly when v precedes a at w.
        let mut negative = BTreeSet::new();
        for v in 0..n_vertices {
            let rv = &rotation[v];
            for (i, &w) in rv.iter().enumerate() {
                if w < v {
                    continue;
                }
                let a = rv[(i + rv.len() - 1) % rv.len()];
                let rw = &rotation[w];
                let j = rw.iter().position(|&x| x == v).ok_or_else(|| {
                    Error::InvalidTriangulation(format!("edge {{{v}, {w}}} is not symmetric"))
                })?;
                if rw[(j + 1) % rw.len()] != a {
                    negative.insert((v, w));
                }
            }
        }
        Ok(EmbeddedTriangulation { rotation, negative })
    }

    pub fn n_vertices(&self) -> usize {
        self.rotation.len()
    }

    /// Half the total rotation length; exact once the structure is valid.
    pub fn n_edges(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn rotation_at(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn sign(&self, u: usize, v: usize) -> i8 {
        if self.negative.contains(&normalize(u, v)) {
            -1
        } else {
            1
        }
    }

    pub fn negative_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.negative.iter().copied()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = self
            .rotation
            .iter()
            .enumerate()
            .flat_map(|(v, r)| r.iter().filter(move |&&w| v < w).map(move |&w| (v, w)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.rotation.len() && self.rotation[u].contains(&v)
    }

    pub fn graph(&self) -> Result<SimpleGraph> {
        self.check_structure()?;
        SimpleGraph::new(self.n_vertices(), self.edges())
    }

    /// Checks that the rotation lists exactly the neighbours of each vertex,
    /// once each, and that signs sit on edges.
    pub fn check_structure(&self) -> Result<()> {
        let report = self.structure_report();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::Structure(format!("[{}] {}", v.rule, v.detail))),
        }
    }

    fn structure_report(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.rotation.len();
        if n == 0 {
            report.push(rule::EMPTY, "triangulation has no vertices");
            return report;
        }
        for (v, r) in self.rotation.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &w in r {
                if w >= n {
                    report.push(
                        rule::VERTEX_RANGE,
                        format!("rotation at {v} names vertex {w}"),
                    );
                } else if w == v {
                    report.push(rule::LOOP, format!("rotation at {v} contains {v} itself"));
                } else if !seen.insert(w) {
                    report.push(
                        rule::PARALLEL_EDGE,
                        format!("rotation at {v} lists {w} twice"),
                    );
                } else if !self.rotation[w].contains(&v) {
                    report.push(
                        rule::ROTATION_MISMATCH,
                        format!("{w} appears at {v} but {v} is missing from the rotation at {w}"),
                    );
                }
            }
        }
        for &(u, v) in &self.negative {
            if !self.has_edge(u, v) {
                report.push(
                    rule::SIGN_ON_NON_EDGE,
                    format!("sign given for non-edge {{{u}, {v}}}"),
                );
            }
        }
        report
    }

    fn position(&self, at: usize, of: usize) -> usize {
        self.rotation[at]
            .iter()
            .position(|&x| x == of)
            .expect("structure checked")
    }

    /// Reverses every rotation; the mirror image of the embedding.
    pub fn mirrored(&self) -> Self {
        EmbeddedTriangulation {
            rotation: self
                .rotation
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect(),
            negative: self.negative.clone(),
        }
    }

    /// Local orientation switch at `v`: reverse its rotation and negate the
    /// signs of its edges. The embedding is unchanged.
    pub fn switched_at(&self, v: usize) -> Self {
        let mut out = self.clone();
        out.rotation[v].reverse();
        for &w in &self.rotation[v] {
            let e = normalize(v, w);
            if !out.negative.remove(&e) {
                out.negative.insert(e);
            }
        }
        out
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let n = self.rotation.len();
        let mut rotation = vec![Vec::new(); n];
        for (v, r) in self.rotation.iter().enumerate() {
            rotation[perm[v]] = r.iter().map(|&w| perm[w]).collect();
        }
        EmbeddedTriangulation {
            rotation,
            negative: self
                .negative
                .iter()
                .map(|&(u, v)| normalize(perm[u], perm[v]))
                .collect(),
        }
    }

    /// Rotates the rotation list at `v` to start at offset `k`.
    pub fn with_rotation_origin(&self, v: usize, k: usize) -> Self {
        let mut out = self.clone();
        let len = out.rotation[v].len();
        if len > 0 {
            out.rotation[v].rotate_left(k % len);
        }
        out
    }
}

/// Traces all faces of the signed rotation system.
///
/// Every (dart, orientation) state lies on exactly one orbit, and orbits come
/// in mirror pairs; one orbit of each pair is reported.
pub fn face_trace(t: &EmbeddedTriangulation) -> Result<Vec<Face>> {
    t.check_structure()?;
    let n = t.n_vertices();
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + t.degree(v);
    }
    let state_id = |v: usize, i: usize, e: i8| 2 * (offset[v] + i) + usize::from(e < 0);
    let mut visited = vec![false; 2 * offset[n]];
    let mut faces = Vec::new();

    for v0 in 0..n {
        for i0 in 0..t.degree(v0) {
            for e0 in [1i8, -1] {
                if visited[state_id(v0, i0, e0)] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut v, mut i, mut e) = (v0, i0, e0);
                loop {
                    visited[state_id(v, i, e)] = true;
                    let d = t.degree(v);
                    let back = if e > 0 { (i + d - 1) % d } else { (i + 1) % d };
                    visited[state_id(v, back, -e)] = true;
                    face.push(v);

                    let w = t.rotation[v][i];
                    let e2 = e * t.sign(v, w);
                    let j = t.position(w, v);
                    let dw = t.degree(w);
                    let i2 = if e2 > 0 {
                        (j + 1) % dw
                    } else {
                        (j + dw - 1) % dw
                    };
                    (v, i, e) = (w, i2, e2);
                    if (v, i, e) == (v0, i0, e0) {
                        break;
                    }
                }
                faces.push(face);
            }
        }
    }
    Ok(faces)
}

/// Face as a sorted vertex tuple, for set comparisons.
pub fn face_key(face: &[usize]) -> Vec<usize> {
    let mut k = face.to_vec();
    k.sort_unstable();
    k
}

/// `V - E + F` from the traced faces.
pub fn euler_characteristic(t: &EmbeddedTriangulation) -> Result<i64> {
    let faces = face_trace(t)?;
    Ok(t.n_vertices() as i64 - t.n_edges() as i64 + faces.len() as i64)
}

/// True iff some choice of local orientation switches makes every edge
/// positive. Propagates orientations along a BFS tree and then checks the
/// remaining edges.
pub fn orientability(t: &EmbeddedTriangulation) -> bool {
    let n = t.n_vertices();
    let mut orient = vec![0i8; n];
    for root in 0..n {
        if orient[root] != 0 {
            continue;
        }
        orient[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in t.rotation_at(v) {
                if w >= n {
                    continue;
                }
                let want = orient[v] * t.sign(v, w);
                if orient[w] == 0 {
                    orient[w] = want;
                    queue.push_back(w);
                } else if orient[w] != want {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks every condition for a non-degenerate triangulation of a closed
/// surface and reports each failure.
pub fn validate_triangulation(t: &EmbeddedTriangulation) -> ValidationReport {
    let mut report = t.structure_report();
    if !report.valid() {
        return report;
    }
    let graph = SimpleGraph::new(t.n_vertices(), t.edges()).expect("structure checked");
    if !graph.is_connected() {
        report.push(rule::DISCONNECTED, "underlying graph is disconnected");
    }

    let faces = face_trace(t).expect("structure checked");
    let mut side_count: BTreeMap<Edge, usize> = t.edges().into_iter().map(|e| (e, 0)).collect();
    for (idx, f) in faces.iter().enumerate() {
        let distinct: BTreeSet<_> = f.iter().collect();
        if f.len() != 3 || distinct.len() != 3 {
            report.push(rule::FACE_NOT_TRIANGLE, format!("face {idx} is {f:?}"));
        }
        for k in 0..f.len() {
            *side_count
                .entry(normalize(f[k], f[(k + 1) % f.len()]))
                .or_default() += 1;
        }
    }
    for (&(u, v), &c) in &side_count {
        if c != 2 {
            report.push(
                rule::EDGE_SIDES,
                format!("edge {{{u}, {v}}} borders {c} face sides"),
            );
        }
    }

    let mut by_vertices: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (idx, f) in faces.iter().enumerate() {
        if f.len() != 3 {
            continue;
        }
        if let Some(prev) = by_vertices.insert(face_key(f), idx) {
            report.push(
                rule::FACE_ADJACENCY,
                format!("faces {prev} and {idx} share more than one edge ({f:?})"),
            );
        }
    }

    if 3 * faces.len() != 2 * t.n_edges() {
        report.push(
            rule::FACE_COUNT,
            format!("3F = {} but 2E = {}", 3 * faces.len(), 2 * t.n_edges()),
        );
    }
    report
}

/// Surface carried by a valid triangulation.
pub fn surface_of(t: &EmbeddedTriangulation) -> Result<SurfaceSpec> {
    let report = validate_triangulation(t);
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidTriangulation(format!(
            "[{}] {}",
            v.rule, v.detail
        )));
    }
    let chi = euler_characteristic(t)?;
    SurfaceSpec::from_euler(orientability(t), chi)
}

/// Reference triangulations used as seeds and in tests.
pub mod standard {
    use super::EmbeddedTriangulation;

    /// Tetrahedron: `K4` on the sphere.
    pub fn k4_sphere() -> EmbeddedTriangulation {
        EmbeddedTriangulation::from_faces(4, &[[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])
            .expect("tetrahedron")
    }

    /// Triangular bipyramid: equator 0-1-2, poles 3 and 4.
    pub fn bipyramid() -> EmbeddedTriangulation {
        EmbeddedTriangulation::from_faces(
            5,
            &[
                [3, 0, 1],
                [3, 1, 2],
                [3, 2, 0],
                [4, 1, 0],
                [4, 2, 1],
                [4, 0, 2],
            ],
        )
        .expect("bipyramid")
    }

    /// Octahedron: the 6-vertex sphere triangulation with all degrees 4.
    pub fn octahedron() -> EmbeddedTriangulation {
        let (n, s) = (4, 5);
        EmbeddedTriangulation::from_faces(
            6,
            &[
                [n, 0, 1],
                [n, 1, 2],
                [n, 2, 3],
                [n, 3, 0],
                [s, 1, 0],
                [s, 2, 1],
                [s, 3, 2],
                [s, 0, 3],
            ],
        )
        .expect("octahedron")
    }

    /// `K6` on the projective plane (hemi-icosahedron): vertex 0 at the
    /// centre of the pentagon 1..5, the rest closed up by the antipodal map.
    pub fn k6_projective_plane() -> EmbeddedTriangulation {
        EmbeddedTriangulation::from_faces(
            6,
            &[
                [0, 1, 2],
                [0, 2, 3],
                [0, 3, 4],
                [0, 4, 5],
                [0, 5, 1],
                [1, 2, 4],
                [2, 3, 5],
                [3, 4, 1],
                [4, 5, 2],
                [5, 1, 3],
            ],
        )
        .expect("hemi-icosahedron")
    }

    /// `K7` on the torus: rotation at `i` is `i+1, i+3, i+2, i+6, i+4, i+5`
    /// mod 7.
    pub fn k7_torus() -> EmbeddedTriangulation {
        let rotation = (0..7)
            .map(|i| [1, 3, 2, 6, 4, 5].iter().map(|d| (i + d) % 7).collect())
            .collect();
        EmbeddedTriangulation::orientable(rotation)
    }
}

impl fmt::Display for EmbeddedTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            crate::format::write_embedding(self, orientability(self))
        )
    }
}
