mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use becurv::curvature::{check_cd, graph_curvature, local_forms, vertex_curvature, Dimension};
use becurv::generators::{hypercube, random_connected};
use becurv::operators::{apply_laplacian, gamma, gamma2_def, gamma2_local, gradient_norm_sq, laplacian_at, sym_laplacian_matrix};
use becurv::spectra::{harmonic_eigenpairs, DEFAULT_EIGEN_TOL};
use becurv::verify::{
    eigenvalue_bound, harnack_gradient_constant, harnack_pointwise_constant, DiameterBound,
};
use becurv::Graph;

fn graph_from_seed(seed: u64, n: usize, p: f64) -> Graph {
    random_connected(n, p, (0.5, 2.0), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (any::<u64>(), 3usize..=9, 0.0f64..0.7).prop_map(|(seed, n, p)| graph_from_seed(seed, n, p))
}

/// A graph together with two functions on it and a vertex.
fn instance() -> impl Strategy<Value = (Graph, Vec<f64>, Vec<f64>, usize)> {
    graph_strategy().prop_flat_map(|g| {
        let n = g.n();
        (
            Just(g),
            prop::collection::vec(-2.0f64..2.0, n),
            prop::collection::vec(-2.0f64..2.0, n),
            0..n,
        )
    })
}

fn dimension() -> impl Strategy<Value = Dimension> {
    prop_oneof![
        Just(Dimension::Infinite),
        (1.05f64..50.0).prop_map(|m| Dimension::finite(m).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma2_routes_agree((g, f, _, x) in instance()) {
        let a = gamma2_def(&g, &f, x);
        let b = gamma2_local(&g, &f, x);
        prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()), "{a} vs {b}");
    }

    #[test]
    fn gamma_is_symmetric_and_bilinear((g, f, h, x) in instance(), a in -3.0f64..3.0) {
        prop_assert!((gamma(&g, &f, &h, x) - gamma(&g, &h, &f, x)).abs() <= 1e-12);
        let af_h: Vec<f64> = f.iter().zip(&h).map(|(u, v)| a * u + v).collect();
        let lhs = gamma(&g, &af_h, &f, x);
        let rhs = a * gamma(&g, &f, &f, x) + gamma(&g, &h, &f, x);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
        prop_assert!((gradient_norm_sq(&g, &f, x) - 2.0 * gamma(&g, &f, &f, x)).abs() <= 1e-12);
    }

    #[test]
    fn operators_ignore_constant_shift((g, f, _, x) in instance(), c in -5.0f64..5.0) {
        let shifted: Vec<f64> = f.iter().map(|v| v + c).collect();
        prop_assert!((laplacian_at(&g, &f, x) - laplacian_at(&g, &shifted, x)).abs() <= 1e-12);
        prop_assert!((gamma2_local(&g, &f, x) - gamma2_local(&g, &shifted, x)).abs() <= 1e-9);
    }

    #[test]
    fn laplacian_matches_symmetric_form((g, f, _, _) in instance()) {
        // Δf = −D^{-1/2} 𝓛 D^{1/2} f
        let d = g.degrees();
        let half: Vec<f64> = f.iter().zip(d).map(|(v, d)| v * d.sqrt()).collect();
        let lf = sym_laplacian_matrix(&g).mul_vec(&half);
        for (x, lap) in apply_laplacian(&g, &f).into_iter().enumerate() {
            prop_assert!((lap + lf[x] / d[x].sqrt()).abs() <= 1e-12);
        }
    }

    #[test]
    fn local_forms_match_operators((g, f, _, x) in instance(), m in dimension()) {
        let forms = local_forms(&g, x, m);
        let coords: Vec<f64> = forms.s1.iter().chain(&forms.s2).map(|&v| f[v]).collect();
        let lifted = forms.to_function(g.n(), &coords);
        let lap = laplacian_at(&g, &lifted, x);
        let want_q = gamma2_local(&g, &lifted, x) - m.reciprocal() * lap * lap;
        let got_q = forms.q.quadratic_form(&coords);
        prop_assert!((want_q - got_q).abs() <= 1e-10 * (1.0 + want_q.abs()));
        let got_g: f64 = forms.g1.iter().zip(&coords).map(|(w, c)| w * c * c).sum();
        prop_assert!((gamma(&g, &lifted, &lifted, x) - got_g).abs() <= 1e-12);
    }

    #[test]
    fn reduced_form_minimizes_outer_sphere((g, f, _, x) in instance()) {
        // minimizing the s2 coordinates of q never goes below the Schur complement
        let forms = local_forms(&g, x, Dimension::Infinite);
        let k = forms.s1.len();
        let coords: Vec<f64> = forms.s1.iter().chain(&forms.s2).map(|&v| f[v]).collect();
        let reduced = forms.reduced().quadratic_form(&coords[..k]);
        prop_assert!(forms.q.quadratic_form(&coords) >= reduced - 1e-10);
    }

    #[test]
    fn curvature_and_spectrum_are_scale_invariant(g in graph_strategy(), c in 0.1f64..10.0) {
        let h = g.scaled(c).unwrap();
        for m in [Dimension::finite(2.0).unwrap(), Dimension::Infinite] {
            let a = graph_curvature(&g, m).unwrap().per_vertex;
            let b = graph_curvature(&h, m).unwrap().per_vertex;
            for (u, v) in a.iter().zip(&b) {
                prop_assert!((u - v).abs() <= 1e-9);
            }
        }
        let a = harmonic_eigenpairs(&g, DEFAULT_EIGEN_TOL).unwrap().eigenvalues();
        let b = harmonic_eigenpairs(&h, DEFAULT_EIGEN_TOL).unwrap().eigenvalues();
        for (u, v) in a.iter().zip(&b) {
            prop_assert!((u - v).abs() <= 1e-10);
        }
    }

    #[test]
    fn curvature_is_monotone_in_dimension(g in graph_strategy(), x in 0usize..3, m1 in 1.05f64..20.0, dm in 0.0f64..20.0) {
        let lo = vertex_curvature(&g, x, Dimension::finite(m1).unwrap()).unwrap();
        let hi = vertex_curvature(&g, x, Dimension::finite(m1 + dm).unwrap()).unwrap();
        let inf = vertex_curvature(&g, x, Dimension::Infinite).unwrap();
        prop_assert!(lo <= hi + 1e-10 && hi <= inf + 1e-10);
    }

    #[test]
    fn computed_curvature_is_maximal(g in graph_strategy(), m in dimension()) {
        let k = graph_curvature(&g, m).unwrap().kappa;
        prop_assert!(check_cd(&g, m, k, 1e-10).unwrap().holds);
        prop_assert!(!check_cd(&g, m, k + 1e-3, 1e-10).unwrap().holds);
    }

    #[test]
    fn graph_curvature_is_vertex_minimum(g in graph_strategy()) {
        let r = graph_curvature(&g, Dimension::Infinite).unwrap();
        for (x, &k) in r.per_vertex.iter().enumerate() {
            prop_assert_eq!(k, vertex_curvature(&g, x, Dimension::Infinite).unwrap());
            prop_assert!(r.kappa <= k);
            if x < r.argmin {
                prop_assert!(k > r.kappa);
            }
        }
        prop_assert_eq!(r.per_vertex[r.argmin], r.kappa);
    }

    #[test]
    fn edge_list_round_trip(g in graph_strategy()) {
        let back = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn distances_satisfy_triangle_inequality(g in graph_strategy()) {
        let all: Vec<Vec<usize>> = (0..g.n()).map(|s| g.bfs_distances(s)).collect();
        for a in 0..g.n() {
            for b in 0..g.n() {
                prop_assert_eq!(all[a][b], all[b][a]);
                for c in 0..g.n() {
                    prop_assert!(all[a][c] <= all[a][b] + all[b][c]);
                }
            }
        }
        let stats = g.diameter();
        let (u, v) = stats.endpoints;
        prop_assert_eq!(all[u][v], stats.diameter);
        prop_assert_eq!(all.iter().flatten().max().copied(), Some(stats.diameter));
    }

    #[test]
    fn diameter_bound_variants_relate(d in 1.0f64..20.0, diameter in 1usize..10, kappa in -1.0f64..2.0, m in dimension()) {
        let derived = |k| eigenvalue_bound(d, diameter, m, k, DiameterBound::Derived).unwrap();
        let halved = eigenvalue_bound(d, diameter, m, kappa, DiameterBound::Halved).unwrap();
        prop_assert!((halved - derived(2.0 * kappa) / 2.0).abs() <= 1e-12 * (1.0 + halved.abs()));
        let flat = eigenvalue_bound(d, diameter, Dimension::Infinite, 0.0, DiameterBound::RicciFlat).unwrap();
        let derived_flat = eigenvalue_bound(d, diameter, Dimension::Infinite, 0.0, DiameterBound::Derived).unwrap();
        prop_assert!((derived_flat - 2.0 * flat).abs() <= 1e-15);
    }

    #[test]
    fn harnack_constants_agree_at_optimal_alpha(lambda in 0.05f64..2.0, kappa in -1.0f64..2.0, m in dimension()) {
        let alpha = 4.0 - 2.0 * kappa / lambda;
        let pointwise = harnack_pointwise_constant(lambda, m, kappa, alpha).unwrap();
        let gradient = harnack_gradient_constant(lambda, m, kappa);
        prop_assert!((pointwise - gradient).abs() <= 1e-9 * (1.0 + gradient.abs()));
    }

    #[test]
    fn gradient_constant_decreases_in_kappa(lambda in 0.05f64..2.0, k1 in -1.0f64..2.0, dk in 0.0f64..2.0, m in dimension()) {
        prop_assert!(harnack_gradient_constant(lambda, m, k1 + dk) <= harnack_gradient_constant(lambda, m, k1));
    }
}

#[test]
fn hypercubes_are_nonnegatively_curved() {
    for k in 1..=5 {
        let kappa = graph_curvature(&hypercube(k).unwrap(), Dimension::Infinite).unwrap().kappa;
        assert!(kappa >= -1e-9, "Q_{k}: {kappa}");
    }
}

#[test]
fn corpus_has_expected_shape() {
    let corpus = common::corpus();
    assert_eq!(corpus.len(), 7 + 10 + 4 + 2 + 6 + 20);
    for g in &corpus {
        assert!(g.graph.n() <= 16, "{}", g.name);
        assert!(g.graph.edges().iter().all(|e| (0.5..=2.0).contains(&e.2)));
    }
}
