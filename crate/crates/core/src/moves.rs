//! Edge contraction and vertex splitting.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{normalize, Edge};
use crate::surface::{face_trace, validate_triangulation, EmbeddedTriangulation};

/// Splits `vertex` at two corners of its rotation. The neighbours from
/// `corner_a` round to `corner_b` (inclusive, in rotation order) move to the
/// new vertex, the rest stay; the two corner neighbours end up adjacent to
/// both and become the apexes of the two new triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitDescriptor {
    pub vertex: usize,
    pub corner_a: usize,
    pub corner_b: usize,
}

impl SplitDescriptor {
    /// The edge created by the split; the new vertex always takes the next
    /// free label.
    pub fn new_edge(&self, t: &EmbeddedTriangulation) -> Edge {
        (self.vertex, t.n_vertices())
    }
}

fn triangles(t: &EmbeddedTriangulation) -> Result<Vec<[usize; 3]>> {
    let report = validate_triangulation(t);
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidTriangulation(format!(
            "[{}] {}",
            v.rule, v.detail
        )));
    }
    Ok(face_trace(t)?
        .into_iter()
        .map(|f| [f[0], f[1], f[2]])
        .collect())
}

fn common_neighbours(t: &EmbeddedTriangulation, u: usize, v: usize) -> usize {
    let nu: BTreeSet<usize> = t.rotation_at(u).iter().copied().collect();
    t.rotation_at(v).iter().filter(|w| nu.contains(w)).count()
}

/// Whether contracting `{u, v}` leaves a non-degenerate triangulation of the
/// same surface: the endpoints share exactly the two apex neighbours (link
/// condition) and the result keeps at least four vertices.
pub fn is_contractible(t: &EmbeddedTriangulation, (u, v): Edge) -> Result<bool> {
    contract_obstruction(t, (u, v)).map(|o| o.is_none())
}

fn contract_obstruction(t: &EmbeddedTriangulation, (u, v): Edge) -> Result<Option<String>> {
    if u == v || !t.has_edge(u, v) {
        return Err(Error::UnknownEdge(u, v));
    }
    let common = common_neighbours(t, u, v);
    if common != 2 {
        return Ok(Some(format!(
            "link condition: endpoints {u} and {v} have {common} common neighbours, need exactly 2"
        )));
    }
    if t.n_vertices() <= 4 {
        return Ok(Some(format!(
            "minimum size: contracting would leave {} vertices",
            t.n_vertices() - 1
        )));
    }
    Ok(None)
}

/// Contracts `{u, v}` into the smaller label. The highest label moves into
/// the freed slot so vertices stay `0..V-1`.
pub fn contract_edge(t: &EmbeddedTriangulation, (u, v): Edge) -> Result<EmbeddedTriangulation> {
    if let Some(reason) = contract_obstruction(t, (u, v))? {
        return Err(Error::NotContractible(reason));
    }
    let (keep, gone) = normalize(u, v);
    let last = t.n_vertices() - 1;
    let relabel = |x: usize| {
        let x = if x == gone { keep } else { x };
        if x == last {
            gone
        } else {
            x
        }
    };
    let faces: Vec<[usize; 3]> = triangles(t)?
        .into_iter()
        .filter(|f| !(f.contains(&keep) && f.contains(&gone)))
        .map(|f| f.map(relabel))
        .collect();
    let out = EmbeddedTriangulation::from_faces(last, &faces)?;
    debug_assert!(validate_triangulation(&out).valid());
    Ok(out)
}

/// Applies a split; the new vertex is labelled `V`.
pub fn apply_split(t: &EmbeddedTriangulation, d: SplitDescriptor) -> Result<EmbeddedTriangulation> {
    let n = t.n_vertices();
    if d.vertex >= n {
        return Err(Error::InvalidSplit(format!(
            "vertex {} out of range",
            d.vertex
        )));
    }
    let rot = t.rotation_at(d.vertex);
    let deg = rot.len();
    if d.corner_a >= deg || d.corner_b >= deg {
        return Err(Error::InvalidSplit(format!(
            "corners ({}, {}) out of range for degree {deg}",
            d.corner_a, d.corner_b
        )));
    }
    if d.corner_a == d.corner_b {
        return Err(Error::InvalidSplit("corners must differ".into()));
    }

    let v = d.vertex;
    let w = n;
    let slot: HashMap<Edge, usize> = (0..deg)
        .map(|k| (normalize(rot[k], rot[(k + 1) % deg]), k))
        .collect();
    let moves_to_w =
        |k: usize| (k + deg - d.corner_a) % deg < (d.corner_b + deg - d.corner_a) % deg;

    let mut faces = Vec::with_capacity(2 * n + 2);
    for f in triangles(t)? {
        let Some(p) = f.iter().position(|&x| x == v) else {
            faces.push(f);
            continue;
        };
        let (x, y) = (f[(p + 1) % 3], f[(p + 2) % 3]);
        let k = *slot.get(&normalize(x, y)).ok_or_else(|| {
            Error::InvalidTriangulation(format!("face {f:?} does not match the rotation at {v}"))
        })?;
        if moves_to_w(k) {
            faces.push([w, x, y]);
        } else {
            faces.push(f);
        }
    }
    faces.push([v, w, rot[d.corner_a]]);
    faces.push([v, w, rot[d.corner_b]]);

    let out = EmbeddedTriangulation::from_faces(n + 1, &faces)
        .map_err(|e| Error::InvalidSplit(e.to_string()))?;
    let report = validate_triangulation(&out);
    if let Some(viol) = report.violations.first() {
        return Err(Error::InvalidSplit(format!(
            "[{}] {}",
            viol.rule, viol.detail
        )));
    }
    Ok(out)
}

/// All splits of `v` that give a valid triangulation, one per unordered
/// corner pair.
pub fn enumerate_splits(t: &EmbeddedTriangulation, v: usize) -> Vec<SplitDescriptor> {
    split_results(t, v).into_iter().map(|(d, _)| d).collect()
}

/// Like [`enumerate_splits`], keeping the split triangulations.
pub fn split_results(
    t: &EmbeddedTriangulation,
    v: usize,
) -> Vec<(SplitDescriptor, EmbeddedTriangulation)> {
    if v >= t.n_vertices() {
        return Vec::new();
    }
    let deg = t.degree(v);
    (0..deg)
        .flat_map(|a| (a + 1..deg).map(move |b| (a, b)))
        .filter_map(|(corner_a, corner_b)| {
            let d = SplitDescriptor {
                vertex: v,
                corner_a,
                corner_b,
            };
            apply_split(t, d).ok().map(|s| (d, s))
        })
        .collect()
}

/// No edge can be contracted.
pub fn is_irreducible(t: &EmbeddedTriangulation) -> bool {
    t.edges()
        .into_iter()
        .all(|e| matches!(is_contractible(t, e), Ok(false)))
}
