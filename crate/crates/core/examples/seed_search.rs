//! Finds irreducible triangulations of a surface by closing each level of an
//! enumeration under diagonal flips, then prints them as a catalog.
//!
//! ```text
//! cargo run --release --example seed_search -- torus 10 > torus.cat
//! ```

use std::collections::{BTreeMap, BTreeSet};

use tristring::format::write_catalog;
use tristring::surface::face_key;
use tristring::{
    builtin_catalog, canonical_form, enumerate_up_to, face_trace, is_irreducible, CanonicalCode,
    EmbeddedTriangulation, Seed, SeedCatalog, SurfaceSpec,
};

fn flips(t: &EmbeddedTriangulation) -> Vec<EmbeddedTriangulation> {
    let faces: BTreeSet<[usize; 3]> = face_trace(t)
        .expect("valid triangulation")
        .iter()
        .map(|f| {
            let k = face_key(f);
            [k[0], k[1], k[2]]
        })
        .collect();
    let mut out = Vec::new();
    for (a, b) in t.edges() {
        let apexes: Vec<usize> = faces
            .iter()
            .filter(|f| f.contains(&a) && f.contains(&b))
            .map(|f| *f.iter().find(|&&x| x != a && x != b).unwrap())
            .collect();
        let [c, d] = apexes[..] else { continue };
        if t.has_edge(c, d) {
            continue;
        }
        let mut next = faces.clone();
        let sorted = |mut f: [usize; 3]| {
            f.sort_unstable();
            f
        };
        next.remove(&sorted([a, b, c]));
        next.remove(&sorted([a, b, d]));
        next.insert(sorted([a, c, d]));
        next.insert(sorted([b, c, d]));
        let list: Vec<_> = next.into_iter().collect();
        if let Ok(u) = EmbeddedTriangulation::from_faces(t.n_vertices(), &list) {
            out.push(u);
        }
    }
    out
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let surface = args
        .get(1)
        .and_then(|s| SurfaceSpec::from_name(s))
        .expect("usage: seed_search <surface> <max_vertices>");
    let max: usize = args
        .get(2)
        .and_then(|s| s.parse().ok())
        .expect("max_vertices");

    let known = enumerate_up_to(&builtin_catalog(surface), max).expect("enumeration");
    let mut seeds = Vec::new();
    for &n in known.classes.keys() {
        let mut classes: BTreeMap<CanonicalCode, EmbeddedTriangulation> = known.classes[&n].clone();
        let mut frontier: Vec<EmbeddedTriangulation> = classes.values().cloned().collect();
        while let Some(t) = frontier.pop() {
            for u in flips(&t) {
                let (code, rep) = canonical_form(&u).expect("canonical form");
                if let std::collections::btree_map::Entry::Vacant(slot) = classes.entry(code) {
                    slot.insert(rep.clone());
                    frontier.push(rep);
                }
            }
        }
        let irreducible: Vec<_> = classes
            .values()
            .filter(|t| is_irreducible(t))
            .cloned()
            .collect();
        eprintln!(
            "{n} vertices: {} classes, {} irreducible",
            classes.len(),
            irreducible.len()
        );
        seeds.extend(irreducible);
    }

    let catalog = SeedCatalog::new(
        surface,
        seeds
            .into_iter()
            .map(|t| {
                let label = format!("{} vertices, found by flip closure", t.n_vertices());
                Seed::new(t, label)
            })
            .collect(),
    );
    print!("{}", write_catalog(&catalog));
}
