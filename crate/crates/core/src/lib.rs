//! Triangulations of closed surfaces and the discrete bosonic-string
//! partition function.
//!
//! The crate enumerates non-isomorphic triangulations of a surface by vertex
//! splitting from irreducible seeds, counts spanning trees exactly, computes
//! Tutte polynomials of small graphs, and evaluates the partition-function
//! series built from those counts.

pub mod canonical;
pub mod catalog;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod graph;
pub mod laplacian;
pub mod moves;
pub mod output;
pub mod partition;
pub mod surface;
pub mod tutte;

pub use canonical::{canonical_code, canonical_form, CanonicalCode};
pub use catalog::{builtin_catalog, minimal_catalog, verify_catalog, Seed, SeedCatalog};
pub use enumerate::{enumerate_up_to, enumerate_with, EnumerateOptions, EnumerationResult};
pub use error::{Error, Result};
pub use graph::{complete_graph, MultiGraph, SimpleGraph};
pub use laplacian::{
    laplacian, laplacian_minor_det, ln_degree_tree_bound, spanning_tree_count, IntegerMatrix,
};
pub use moves::{
    apply_split, contract_edge, enumerate_splits, is_contractible, is_irreducible, SplitDescriptor,
};
pub use partition::{
    general_surface_sum, kappa_upper_bound, mu_critical, partial_comparison, sphere_lower_bound,
    term_for_triangulation, truncated_sum, tutte_asymptotic_count, PartitionResult,
    PartitionTermRecord, SeriesConfig, SeriesMode, Truncation, TutteConstant,
};
pub use surface::{
    euler_characteristic, face_trace, orientability, surface_of, validate_triangulation,
    EmbeddedTriangulation, SurfaceSpec, ValidationReport,
};
pub use tutte::{tutte, tutte_eval, BivariatePolynomial};
