use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;
use tristring::graph::MultiGraph;
use tristring::partition::{ln_bigint, log_term};
use tristring::surface::face_key;
use tristring::tutte::DEFAULT_EDGE_LIMIT;
use tristring::{
    apply_split, builtin_catalog, canonical_code, complete_graph, contract_edge, enumerate_splits,
    enumerate_up_to, euler_characteristic, face_trace, general_surface_sum, kappa_upper_bound,
    laplacian_minor_det, orientability, spanning_tree_count, sphere_lower_bound, tutte,
    EmbeddedTriangulation, SeriesConfig, SeriesMode, SimpleGraph, SurfaceSpec, Truncation,
};

fn pool() -> &'static Vec<EmbeddedTriangulation> {
    static POOL: OnceLock<Vec<EmbeddedTriangulation>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::new();
        for (spec, max) in [
            (SurfaceSpec::SPHERE, 8),
            (SurfaceSpec::PROJECTIVE_PLANE, 8),
            (SurfaceSpec::TORUS, 8),
        ] {
            out.extend(
                enumerate_up_to(&builtin_catalog(spec), max)
                    .unwrap()
                    .all()
                    .cloned(),
            );
        }
        out
    })
}

fn faces(t: &EmbeddedTriangulation) -> BTreeSet<Vec<usize>> {
    face_trace(t).unwrap().iter().map(|f| face_key(f)).collect()
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            Just(n),
            proptest::collection::vec(any::<bool>(), pairs),
            proptest::collection::vec(0..n, n),
        )
            .prop_map(|(n, mask, parents)| {
                let mut g = SimpleGraph::empty(n);
                // spanning path through a random tree keeps it connected
                for (v, &p) in parents.iter().enumerate().skip(1) {
                    g.add_edge(p % v, v).unwrap();
                }
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if mask[i] && !g.has_edge(u, v) {
                            g.add_edge(u, v).unwrap();
                        }
                        i += 1;
                    }
                }
                g
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minor_is_independent_of_deleted_vertex(g in connected_graph(10)) {
        let first = laplacian_minor_det(&g, 0).unwrap();
        for v in 1..g.n_vertices() {
            prop_assert_eq!(&laplacian_minor_det(&g, v).unwrap(), &first);
        }
    }

    #[test]
    fn tutte_evaluates_to_tree_count(g in connected_graph(6)) {
        prop_assume!(g.n_edges() <= 12);
        let p = tutte(&MultiGraph::from(&g), DEFAULT_EDGE_LIMIT).unwrap();
        prop_assert_eq!(p.eval(1, 1), spanning_tree_count(&g));
    }

    #[test]
    fn code_is_invariant_under_relabelling_and_gauge(
        idx in any::<prop::sample::Index>(),
        seed in any::<u64>(),
    ) {
        let t = idx.get(pool());
        let n = t.n_vertices();
        let mut state = seed;
        let mut next = || { state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (state >> 33) as usize };
        let mut perm: Vec<usize> = (0..n).collect();
        for j in (1..n).rev() {
            perm.swap(j, next() % (j + 1));
        }
        let mut u = t.relabeled(&perm);
        for v in 0..n {
            u = u.with_rotation_origin(v, next());
            if next() % 2 == 0 {
                u = u.switched_at(v);
            }
        }
        if next() % 2 == 0 {
            u = u.mirrored();
        }
        prop_assert_eq!(canonical_code(&u).unwrap(), canonical_code(t).unwrap());
        prop_assert_eq!(euler_characteristic(&u).unwrap(), euler_characteristic(t).unwrap());
        prop_assert_eq!(orientability(&u), orientability(t));
    }

    #[test]
    fn faces_do_not_depend_on_rotation_origin(idx in any::<prop::sample::Index>(), k in 0usize..16) {
        let t = idx.get(pool());
        let mut u = t.clone();
        for v in 0..t.n_vertices() {
            u = u.with_rotation_origin(v, k + v);
        }
        prop_assert_eq!(faces(&u), faces(t));
    }

    #[test]
    fn split_then_contract_round_trips(idx in any::<prop::sample::Index>(), pick in any::<prop::sample::Index>()) {
        let t = idx.get(pool());
        let splits: Vec<_> = (0..t.n_vertices()).flat_map(|v| enumerate_splits(t, v)).collect();
        prop_assume!(!splits.is_empty());
        let d = *pick.get(&splits);
        let child = apply_split(t, d).unwrap();
        prop_assert_eq!(child.n_vertices(), t.n_vertices() + 1);
        prop_assert_eq!(euler_characteristic(&child).unwrap(), euler_characteristic(t).unwrap());
        prop_assert_eq!(orientability(&child), orientability(t));
        let back = contract_edge(&child, d.new_edge(t)).unwrap();
        prop_assert_eq!(canonical_code(&back).unwrap(), canonical_code(t).unwrap());
    }

    #[test]
    fn log_and_linear_terms_agree(mu in 0.0f64..4.0, d in 1u32..4, n in 4usize..40, kappa in 1u64..1_000_000) {
        let k = n - 2;
        let lt = log_term(mu, d, 2 * k, n, ln_bigint(&BigInt::from(kappa)));
        prop_assume!(lt.abs() < 690.0);
        let direct = (-mu * (2 * k) as f64).exp()
            * ((2.0 * std::f64::consts::PI).powi(n as i32 - 1) / kappa as f64).powf(f64::from(d) / 2.0);
        prop_assert!(((lt.exp() - direct) / direct).abs() < 1e-10);
    }

    #[test]
    fn lower_bound_is_monotone_in_k_max(mu in 1.0f64..4.0, d in 1u32..3, k in 2usize..60) {
        let at = |k| {
            let cfg = SeriesConfig::new(mu, d, Truncation::KMax(k), SeriesMode::LowerBoundSphere);
            sphere_lower_bound(&cfg).unwrap().value
        };
        prop_assert!(at(k + 1) >= at(k));
    }
}

#[test]
fn cayley_formula() {
    for n in 2..=8u32 {
        let g = complete_graph(n as usize).unwrap();
        assert_eq!(spanning_tree_count(&g), BigInt::from(n).pow(n - 2));
    }
}

#[test]
fn terms_stay_below_unit_tree_count_bound() {
    let cfg = SeriesConfig::new(0.5, 2, Truncation::KMax(6), SeriesMode::ExactEnumerated);
    for spec in [
        SurfaceSpec::SPHERE,
        SurfaceSpec::TORUS,
        SurfaceSpec::PROJECTIVE_PLANE,
    ] {
        let r = general_surface_sum(spec, &builtin_catalog(spec), &cfg).unwrap();
        for t in &r.terms {
            let tree_free = log_term(0.0, cfg.dimension, 0, t.n_vertices, 0.0);
            let class_ln = match t.class_count {
                tristring::partition::ClassCount::Exact(c) => (c as f64).ln(),
                tristring::partition::ClassCount::Asymptotic(x) => x.ln(),
            };
            assert!(t.log_term - class_ln < tree_free);
        }
    }
}

#[test]
fn bounded_terms_dominate_exact_terms_on_sphere() {
    let cfg = SeriesConfig::new(2.0, 1, Truncation::KMax(6), SeriesMode::ExactEnumerated);
    let r = general_surface_sum(
        SurfaceSpec::SPHERE,
        &builtin_catalog(SurfaceSpec::SPHERE),
        &cfg,
    )
    .unwrap();
    assert!(!r.terms.is_empty());
    for t in &r.terms {
        let tristring::partition::KappaValue::Exact(kappa) = &t.kappa else {
            unreachable!()
        };
        let exact = log_term(
            cfg.mu,
            cfg.dimension,
            2 * t.k,
            t.n_vertices,
            ln_bigint(kappa),
        );
        let bounded = log_term(
            cfg.mu,
            cfg.dimension,
            2 * t.k,
            t.n_vertices,
            kappa_upper_bound(t.n_vertices).ln(),
        );
        assert!(bounded >= exact - 1e-12, "k={} kappa={kappa}", t.k);
    }
}
