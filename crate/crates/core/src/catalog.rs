//! Seed catalogs of irreducible triangulations.

use std::collections::BTreeMap;

use crate::canonical::canonical_code;
use crate::format::parse_catalog;
use crate::moves::is_irreducible;
use crate::surface::{
    orientability, rule, standard, surface_of, validate_triangulation, EmbeddedTriangulation,
    SurfaceSpec, ValidationReport,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    pub triangulation: EmbeddedTriangulation,
    pub provenance: String,
    pub declared_orientable: bool,
    pub declared_edges: usize,
}

impl Seed {
    pub fn new(triangulation: EmbeddedTriangulation, provenance: impl Into<String>) -> Self {
        Seed {
            declared_orientable: orientability(&triangulation),
            declared_edges: triangulation.n_edges(),
            triangulation,
            provenance: provenance.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedCatalog {
    pub surface: SurfaceSpec,
    pub seeds: Vec<Seed>,
}

impl SeedCatalog {
    pub fn new(surface: SurfaceSpec, seeds: Vec<Seed>) -> Self {
        SeedCatalog { surface, seeds }
    }

    pub fn max_seed_size(&self) -> usize {
        self.seeds
            .iter()
            .map(|s| s.triangulation.n_vertices())
            .max()
            .unwrap_or(0)
    }

    pub fn min_seed_size(&self) -> usize {
        self.seeds
            .iter()
            .map(|s| s.triangulation.n_vertices())
            .min()
            .unwrap_or(0)
    }

    /// Keeps only the seeds with at most `max_vertices` vertices.
    pub fn restricted_to(&self, max_vertices: usize) -> SeedCatalog {
        SeedCatalog {
            surface: self.surface,
            seeds: self
                .seeds
                .iter()
                .filter(|s| s.triangulation.n_vertices() <= max_vertices)
                .cloned()
                .collect(),
        }
    }
}

/// Number of irreducible triangulations known for the surface, where the
/// catalog can be checked for completeness.
pub fn known_irreducible_count(surface: SurfaceSpec) -> Option<usize> {
    match surface {
        SurfaceSpec::SPHERE => Some(1),
        SurfaceSpec::PROJECTIVE_PLANE => Some(2),
        SurfaceSpec::TORUS => Some(21),
        _ => None,
    }
}

/// Complete seed catalogs for the sphere, the projective plane and the
/// torus, shipped as data. Other surfaces get an empty catalog.
pub fn builtin_catalog(surface: SurfaceSpec) -> SeedCatalog {
    let text = match surface {
        SurfaceSpec::SPHERE => include_str!("../data/sphere.cat"),
        SurfaceSpec::PROJECTIVE_PLANE => include_str!("../data/projective_plane.cat"),
        SurfaceSpec::TORUS => include_str!("../data/torus.cat"),
        _ => return SeedCatalog::new(surface, Vec::new()),
    };
    parse_catalog(text).expect("bundled catalog parses")
}

/// Only the complete-graph seed of each surface: K4, K6 or K7.
pub fn minimal_catalog(surface: SurfaceSpec) -> SeedCatalog {
    let seeds = match surface {
        SurfaceSpec::SPHERE => vec![Seed::new(
            standard::k4_sphere(),
            "K4, boundary of the tetrahedron",
        )],
        SurfaceSpec::PROJECTIVE_PLANE => vec![Seed::new(
            standard::k6_projective_plane(),
            "K6, hemi-icosahedron",
        )],
        SurfaceSpec::TORUS => vec![Seed::new(
            standard::k7_torus(),
            "K7, the seven-vertex torus",
        )],
        _ => Vec::new(),
    };
    SeedCatalog { surface, seeds }
}

/// Every seed validates, lies on the declared surface, is irreducible, and
/// no two seeds are isomorphic.
pub fn verify_catalog(catalog: &SeedCatalog) -> ValidationReport {
    let mut report = ValidationReport::default();
    if !catalog.surface.is_consistent() {
        report.push(
            rule::SURFACE_MISMATCH,
            format!("inconsistent surface {:?}", catalog.surface),
        );
    }
    if catalog.seeds.is_empty() {
        report.push(rule::SEED_COUNT, "catalog has no seeds");
    }
    let mut codes = BTreeMap::new();
    for (i, seed) in catalog.seeds.iter().enumerate() {
        let t = &seed.triangulation;
        let label = format!("seed {i} ({})", seed.provenance);
        let own = validate_triangulation(t);
        if !own.valid() {
            report.extend_prefixed(&label, own);
            continue;
        }
        if seed.declared_edges != t.n_edges() {
            report.push(
                rule::ROTATION_MISMATCH,
                format!(
                    "{label}: declares {} edges, has {}",
                    seed.declared_edges,
                    t.n_edges()
                ),
            );
        }
        match surface_of(t) {
            Ok(s) if s == catalog.surface => {}
            Ok(s) => report.push(
                rule::SURFACE_MISMATCH,
                format!("{label}: lies on {s}, catalog is {}", catalog.surface),
            ),
            Err(e) => report.push(rule::SURFACE_MISMATCH, format!("{label}: {e}")),
        }
        if seed.declared_orientable != orientability(t) {
            report.push(
                rule::SURFACE_MISMATCH,
                format!(
                    "{label}: orientable flag {} contradicts its signs",
                    seed.declared_orientable
                ),
            );
        }
        if !is_irreducible(t) {
            report.push(
                rule::NOT_IRREDUCIBLE,
                format!("{label}: has a contractible edge"),
            );
        }
        if let Ok(code) = canonical_code(t) {
            if let Some(j) = codes.insert(code, i) {
                report.push(
                    rule::DUPLICATE_SEED,
                    format!("{label}: isomorphic to seed {j}"),
                );
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalogs_verify() {
        for s in [
            SurfaceSpec::SPHERE,
            SurfaceSpec::TORUS,
            SurfaceSpec::PROJECTIVE_PLANE,
        ] {
            let cat = builtin_catalog(s);
            let report = verify_catalog(&cat);
            assert!(report.valid(), "{}: {report}", s.name());
        }
    }

    #[test]
    fn builtin_catalogs_are_complete() {
        for s in [
            SurfaceSpec::SPHERE,
            SurfaceSpec::TORUS,
            SurfaceSpec::PROJECTIVE_PLANE,
        ] {
            assert_eq!(
                Some(builtin_catalog(s).seeds.len()),
                known_irreducible_count(s)
            );
            assert_eq!(minimal_catalog(s).seeds.len(), 1);
            assert!(verify_catalog(&minimal_catalog(s)).valid());
        }
    }

    #[test]
    fn reducible_seed_is_rejected() {
        let mut cat = builtin_catalog(SurfaceSpec::SPHERE);
        cat.seeds
            .push(Seed::new(standard::bipyramid(), "bipyramid"));
        let report = verify_catalog(&cat);
        assert!(report.has_rule(rule::NOT_IRREDUCIBLE), "{report}");
    }

    #[test]
    fn wrong_surface_and_duplicates_are_rejected() {
        let mut cat = builtin_catalog(SurfaceSpec::TORUS);
        cat.seeds
            .push(Seed::new(standard::k4_sphere(), "tetrahedron"));
        cat.seeds.push(Seed::new(
            standard::k7_torus().relabeled(&[6, 5, 4, 3, 2, 1, 0]),
            "again",
        ));
        let report = verify_catalog(&cat);
        assert!(report.has_rule(rule::SURFACE_MISMATCH));
        assert!(report.has_rule(rule::DUPLICATE_SEED));
    }

    #[test]
    fn empty_catalog_is_invalid() {
        let cat = SeedCatalog::new(SurfaceSpec::SPHERE, vec![]);
        assert!(verify_catalog(&cat).has_rule(rule::SEED_COUNT));
    }
}
