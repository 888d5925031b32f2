//! Canonical codes for signed rotation systems.
//!
//! A code is produced by a breadth-first relabelling that starts from a
//! rooted dart and a traversal orientation. At each vertex the neighbours
//! are listed from the dart it was reached by, in the direction given by the
//! vertex's local orientation; the orientation of a newly reached vertex is
//! fixed by the sign of the edge it was reached through, so signs on tree
//! edges are normalised away and the remaining relative signs are
//! independent of local switches. The minimum over all roots and both
//! orientations is a complete invariant of embedding isomorphism, mirror
//! images included.

use std::fmt;

use crate::error::{Error, Result};
use crate::surface::{validate_triangulation, EmbeddedTriangulation};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u32>);

impl CanonicalCode {
    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn n_vertices(&self) -> usize {
        self.0.first().copied().unwrap_or(0) as usize
    }

    /// Big-endian bytes of the symbol sequence.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|s| s.to_be_bytes()).collect()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.to_bytes() {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

const UNSEEN: usize = usize::MAX;

struct Traversal {
    code: Vec<u32>,
    order: Vec<usize>,
    label: Vec<usize>,
    orient: Vec<i8>,
    start: Vec<usize>,
}

/// Runs the traversal from `(root, rotation index, orientation)`. With
/// `bound` set, gives up as soon as the code is known to exceed it.
fn traverse(
    t: &EmbeddedTriangulation,
    root: usize,
    first: usize,
    orientation: i8,
    bound: Option<&[u32]>,
) -> Option<Traversal> {
    let n = t.n_vertices();
    let mut tr = Traversal {
        code: Vec::with_capacity(1 + n + 4 * t.n_edges()),
        order: Vec::with_capacity(n),
        label: vec![UNSEEN; n],
        orient: vec![0; n],
        start: vec![0; n],
    };
    let mut less = false;
    let mut emit = |code: &mut Vec<u32>, sym: u32| -> bool {
        if !less {
            if let Some(b) = bound {
                let k = code.len();
                match sym.cmp(&b[k]) {
                    std::cmp::Ordering::Less => less = true,
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        code.push(sym);
        true
    };

    if !emit(&mut tr.code, n as u32) {
        return None;
    }
    tr.label[root] = 0;
    tr.orient[root] = orientation;
    tr.start[root] = first;
    tr.order.push(root);

    let mut head = 0;
    while head < tr.order.len() {
        let v = tr.order[head];
        head += 1;
        let rot = t.rotation_at(v);
        let d = rot.len();
        if !emit(&mut tr.code, d as u32) {
            return None;
        }
        for step in 0..d {
            let idx = if tr.orient[v] > 0 {
                (tr.start[v] + step) % d
            } else {
                (tr.start[v] + d - step) % d
            };
            let w = rot[idx];
            let edge_sign = t.sign(v, w);
            if tr.label[w] == UNSEEN {
                tr.label[w] = tr.order.len();
                tr.orient[w] = tr.orient[v] * edge_sign;
                tr.start[w] = t.rotation_at(w).iter().position(|&x| x == v).unwrap_or(0);
                tr.order.push(w);
            }
            let relative = tr.orient[v] * edge_sign * tr.orient[w];
            let sym = 2 * tr.label[w] as u32 + u32::from(relative < 0);
            if !emit(&mut tr.code, sym) {
                return None;
            }
        }
    }
    Some(tr)
}

fn minimal_traversal(t: &EmbeddedTriangulation) -> Result<Traversal> {
    let report = validate_triangulation(t);
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidTriangulation(format!(
            "[{}] {}",
            v.rule, v.detail
        )));
    }
    // the root's degree is the second symbol, so only minimum-degree roots compete
    let min_deg = (0..t.n_vertices()).map(|v| t.degree(v)).min().unwrap_or(0);
    let mut best: Option<Traversal> = None;
    for root in (0..t.n_vertices()).filter(|&v| t.degree(v) == min_deg) {
        for first in 0..t.degree(root) {
            for orientation in [1i8, -1] {
                let bound = best.as_ref().map(|b| b.code.as_slice());
                if let Some(tr) = traverse(t, root, first, orientation, bound) {
                    if best.as_ref().is_none_or(|b| tr.code < b.code) {
                        best = Some(tr);
                    }
                }
            }
        }
    }
    best.ok_or_else(|| Error::InvalidTriangulation("empty triangulation".into()))
}

/// Embedding-isomorphism invariant; equal codes iff isomorphic.
pub fn canonical_code(t: &EmbeddedTriangulation) -> Result<CanonicalCode> {
    Ok(CanonicalCode(minimal_traversal(t)?.code))
}

/// Canonical code together with the canonically relabelled, sign-normalised
/// triangulation. Isomorphic inputs give identical representatives.
pub fn canonical_form(t: &EmbeddedTriangulation) -> Result<(CanonicalCode, EmbeddedTriangulation)> {
    let tr = minimal_traversal(t)?;
    let n = t.n_vertices();
    let mut rotation = vec![Vec::new(); n];
    let mut negative = Vec::new();
    for &v in &tr.order {
        let rot = t.rotation_at(v);
        let d = rot.len();
        let lv = tr.label[v];
        for step in 0..d {
            let idx = if tr.orient[v] > 0 {
                (tr.start[v] + step) % d
            } else {
                (tr.start[v] + d - step) % d
            };
            let w = rot[idx];
            rotation[lv].push(tr.label[w]);
            if tr.orient[v] * t.sign(v, w) * tr.orient[w] < 0 && lv < tr.label[w] {
                negative.push((lv, tr.label[w]));
            }
        }
    }
    Ok((
        CanonicalCode(tr.code),
        EmbeddedTriangulation::new(rotation, negative),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::standard::*;
    use crate::surface::{face_key, face_trace};

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn k4_code_is_relabelling_invariant() {
        let k4 = k4_sphere();
        let code = canonical_code(&k4).unwrap();
        let perms = permutations(4);
        assert_eq!(perms.len(), 24);
        for p in perms {
            assert_eq!(canonical_code(&k4.relabeled(&p)).unwrap(), code);
        }
    }

    #[test]
    fn distinct_sizes_give_distinct_codes() {
        assert_ne!(
            canonical_code(&k4_sphere()).unwrap(),
            canonical_code(&bipyramid()).unwrap()
        );
    }

    #[test]
    fn invariant_under_mirror_and_local_switches() {
        for t in [k4_sphere(), k6_projective_plane(), k7_torus(), octahedron()] {
            let code = canonical_code(&t).unwrap();
            assert_eq!(canonical_code(&t.mirrored()).unwrap(), code);
            for v in 0..t.n_vertices() {
                assert_eq!(canonical_code(&t.switched_at(v)).unwrap(), code);
                assert_eq!(canonical_code(&t.with_rotation_origin(v, 2)).unwrap(), code);
            }
        }
    }

    #[test]
    fn canonical_form_is_the_same_embedding() {
        for t in [k6_projective_plane(), k7_torus(), octahedron()] {
            let (code, rep) = canonical_form(&t).unwrap();
            assert_eq!(canonical_code(&rep).unwrap(), code);
            let (_, rep2) =
                canonical_form(&t.relabeled(&(0..t.n_vertices()).rev().collect::<Vec<_>>()))
                    .unwrap();
            assert_eq!(rep, rep2);
            let mut a: Vec<_> = face_trace(&rep)
                .unwrap()
                .iter()
                .map(|f| face_key(f))
                .collect();
            let mut b: Vec<_> = face_trace(&rep2)
                .unwrap()
                .iter()
                .map(|f| face_key(f))
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn invalid_input_is_rejected() {
        let t = EmbeddedTriangulation::orientable(vec![vec![1, 2], vec![2, 0], vec![0, 1]]);
        assert!(canonical_code(&t).is_err());
    }
}
