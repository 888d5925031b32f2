//! Level-by-level generation of all non-isomorphic triangulations reachable
//! from a seed catalog by vertex splitting.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::canonical::{canonical_code, canonical_form, CanonicalCode};
use crate::catalog::{verify_catalog, SeedCatalog};
use crate::error::{Error, Result};
use crate::laplacian::spanning_tree_count;
use crate::moves::{contract_edge, is_contractible, split_results};
use crate::surface::{EmbeddedTriangulation, SurfaceSpec};

#[derive(Debug, Clone, Default)]
pub struct EnumerateOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

/// Canonical representatives per vertex count, keyed by code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub surface: SurfaceSpec,
    pub max_vertices: usize,
    pub classes: BTreeMap<usize, BTreeMap<CanonicalCode, EmbeddedTriangulation>>,
    /// Codes of the catalog seeds.
    pub seeds: Vec<CanonicalCode>,
}

impl EnumerationResult {
    /// `C(T_n)` for every level that was generated (including empty ones).
    pub fn counts(&self) -> BTreeMap<usize, usize> {
        self.classes.iter().map(|(&n, c)| (n, c.len())).collect()
    }

    pub fn level(&self, n: usize) -> impl Iterator<Item = &EmbeddedTriangulation> {
        self.classes.get(&n).into_iter().flat_map(|c| c.values())
    }

    pub fn all(&self) -> impl Iterator<Item = &EmbeddedTriangulation> {
        self.classes.values().flat_map(|c| c.values())
    }
}

pub fn enumerate_up_to(catalog: &SeedCatalog, max_vertices: usize) -> Result<EnumerationResult> {
    enumerate_with(catalog, max_vertices, &EnumerateOptions::default())
}

/// Breadth-first closure of the seeds under vertex splitting, deduplicated by
/// canonical code. Seeds larger than `max_vertices` are skipped; a budget
/// below every seed is an error.
pub fn enumerate_with(
    catalog: &SeedCatalog,
    max_vertices: usize,
    options: &EnumerateOptions,
) -> Result<EnumerationResult> {
    let report = verify_catalog(catalog);
    if !report.valid() {
        return Err(Error::Catalog(report.to_string().trim_end().to_string()));
    }
    let min_seed = catalog.min_seed_size();
    if max_vertices < min_seed {
        return Err(Error::BelowSeedSize {
            max_vertices,
            seed_size: min_seed,
        });
    }

    let run = || enumerate_levels(catalog, max_vertices);
    match options.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn enumerate_levels(catalog: &SeedCatalog, max_vertices: usize) -> Result<EnumerationResult> {
    let mut seeds_by_size: BTreeMap<usize, Vec<&EmbeddedTriangulation>> = BTreeMap::new();
    for s in &catalog.seeds {
        seeds_by_size
            .entry(s.triangulation.n_vertices())
            .or_default()
            .push(&s.triangulation);
    }
    let mut seed_codes = Vec::new();
    let mut classes: BTreeMap<usize, BTreeMap<CanonicalCode, EmbeddedTriangulation>> =
        BTreeMap::new();
    let mut previous: BTreeMap<CanonicalCode, EmbeddedTriangulation> = BTreeMap::new();

    for n in catalog.min_seed_size()..=max_vertices {
        let parents: Vec<&EmbeddedTriangulation> = previous.values().collect();
        let mut candidates: Vec<(CanonicalCode, EmbeddedTriangulation)> = parents
            .par_iter()
            .flat_map_iter(|&t| (0..t.n_vertices()).flat_map(move |v| split_results(t, v)))
            .map(|(_, child)| canonical_form(&child))
            .collect::<Result<_>>()?;
        for &seed in seeds_by_size.get(&n).into_iter().flatten() {
            let (code, rep) = canonical_form(seed)?;
            seed_codes.push(code.clone());
            candidates.push((code, rep));
        }

        // representatives are canonical, so keeping either duplicate is the same
        let level: BTreeMap<CanonicalCode, EmbeddedTriangulation> =
            candidates.into_iter().collect();
        classes.insert(n, level.clone());
        previous = level;
    }

    Ok(EnumerationResult {
        surface: catalog.surface,
        max_vertices,
        classes,
        seeds: seed_codes,
    })
}

/// Classes that are neither seeds nor contract onto a class one level
/// down. Empty for a correct enumeration.
pub fn unreachable_classes(result: &EnumerationResult) -> Vec<CanonicalCode> {
    let mut missing = Vec::new();
    for (&n, level) in &result.classes {
        let below = result.classes.get(&(n - 1));
        for (code, t) in level {
            if result.seeds.contains(code) {
                continue;
            }
            let reached = t.edges().into_iter().any(|e| {
                matches!(is_contractible(t, e), Ok(true))
                    && contract_edge(t, e)
                        .ok()
                        .and_then(|c| canonical_code(&c).ok())
                        .is_some_and(|c| below.is_some_and(|b| b.contains_key(&c)))
            });
            if !reached {
                missing.push(code.clone());
            }
        }
    }
    missing
}

/// Class counts after merging classes whose underlying graphs are
/// isomorphic. On the sphere these equal the embedding counts.
pub fn graph_isomorphism_counts(result: &EnumerationResult) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for (&n, level) in &result.classes {
        let mut reps: Vec<GraphInvariant> = Vec::new();
        for t in level.values() {
            let inv = GraphInvariant::new(t);
            if !reps.iter().any(|r| r.isomorphic(&inv)) {
                reps.push(inv);
            }
        }
        out.insert(n, reps.len());
    }
    out
}

struct GraphInvariant {
    adj: Vec<Vec<bool>>,
    degrees: Vec<usize>,
    sorted_degrees: Vec<usize>,
    kappa: num_bigint::BigInt,
}

impl GraphInvariant {
    fn new(t: &EmbeddedTriangulation) -> Self {
        let n = t.n_vertices();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in t.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        let degrees: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
        let mut sorted_degrees = degrees.clone();
        sorted_degrees.sort_unstable();
        let kappa = t
            .graph()
            .map(|g| spanning_tree_count(&g))
            .unwrap_or_default();
        GraphInvariant {
            adj,
            degrees,
            sorted_degrees,
            kappa,
        }
    }

    fn isomorphic(&self, other: &GraphInvariant) -> bool {
        if self.sorted_degrees != other.sorted_degrees || self.kappa != other.kappa {
            return false;
        }
        let n = self.adj.len();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(other, 0, &mut map, &mut used)
    }

    fn extend(
        &self,
        other: &GraphInvariant,
        v: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = self.adj.len();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || self.degrees[v] != other.degrees[w] {
                continue;
            }
            if (0..v).any(|u| self.adj[u][v] != other.adj[map[u]][w]) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if self.extend(other, v + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
}
