use std::f64::consts::TAU;

use curvebench_core::bezier::{bunny, ellipse, random_closed_curve};
use curvebench_core::graphs::{delaunay_graph, emst, gabriel, rng, sphere_of_influence};
use curvebench_core::metrics::{evaluate, exact_match, hausdorff};
use curvebench_core::perturb::{add_outliers, lfs_noise, uniform_noise};
use curvebench_core::reconstruction::eps_to_rho;
use curvebench_core::sampling::{sample_closed_curve, SamplingSpec};
use curvebench_core::{delaunay, AlgorithmId, GroundTruth, Point2, PointSet};
use proptest::prelude::*;

#[test]
fn sampled_curves_are_reconstructed_within_their_bands() {
    for seed in 0..8 {
        let spec = random_closed_curve(seed, 10).unwrap();
        for (alg, eps) in [
            (AlgorithmId::Crust, 0.2),
            (AlgorithmId::NnCrust, 0.3),
            (AlgorithmId::HnnCrust, 0.45),
        ] {
            let s = sample_closed_curve(&spec, &SamplingSpec::new(eps, 128).unwrap()).unwrap();
            let c = alg.run(&s.points).unwrap();
            assert!(
                exact_match(&c, &s.ground_truth).unwrap(),
                "{alg} seed {seed}"
            );
            let m = evaluate(&c, Some(&s.ground_truth), 0.0);
            assert_eq!(m.hausdorff, Some(0.0));
            assert!(m.manifold && m.open_endpoint_count == 0);
        }
    }
}

#[test]
fn named_shapes_reconstruct() {
    for spec in [bunny(), ellipse(2.0, 1.0)] {
        let s = sample_closed_curve(&spec, &SamplingSpec::new(0.25, 128).unwrap()).unwrap();
        let c = AlgorithmId::NnCrust.run(&s.points).unwrap();
        assert!(exact_match(&c, &s.ground_truth).unwrap());
    }
}

#[test]
fn small_lfs_noise_keeps_reconstruction_close() {
    let spec = random_closed_curve(3, 10).unwrap();
    let s = sample_closed_curve(&spec, &SamplingSpec::new(0.2, 128).unwrap()).unwrap();
    let noisy = lfs_noise(&s.points, &s.normals, &s.lfs, 0.05, 1).unwrap();
    let c = AlgorithmId::HnnCrust.run(&noisy).unwrap();
    let m = evaluate(&c, Some(&s.ground_truth), 0.0);
    let max_lfs = s.lfs.iter().copied().fold(0.0, f64::max);
    assert!(m.hausdorff.unwrap() <= 0.05 * max_lfs * (1.0 + 1e-9));
    assert!(m.rms.unwrap() <= m.hausdorff.unwrap());
}

#[test]
fn outliers_break_exactness_but_not_the_pipeline() {
    let spec = random_closed_curve(4, 10).unwrap();
    let s = sample_closed_curve(&spec, &SamplingSpec::new(0.3, 128).unwrap()).unwrap();
    let dirty = add_outliers(&s.points, 10.0, 2).unwrap();
    for alg in [
        AlgorithmId::Crust,
        AlgorithmId::NnCrust,
        AlgorithmId::HnnCrust,
        AlgorithmId::EmstCurve,
    ] {
        let c = alg.run(&dirty).unwrap();
        let m = evaluate(&c, Some(&s.ground_truth), 0.0);
        assert_eq!(m.exact, Some(false));
        assert!(m.hausdorff.is_some());
    }
}

#[test]
fn uniform_noise_distance_is_bounded_by_displacement() {
    let spec = random_closed_curve(5, 10).unwrap();
    let s = sample_closed_curve(&spec, &SamplingSpec::new(0.3, 128).unwrap()).unwrap();
    let truth = s.ground_truth.to_curve();
    let diag = s.points.bbox().unwrap().diagonal();
    for delta in [0.0, 0.002, 0.02] {
        let noisy = uniform_noise(&s.points, delta, 8).unwrap();
        let moved = s
            .ground_truth
            .with_vertices(noisy.points().to_vec())
            .unwrap()
            .to_curve();
        let h = hausdorff(&moved, &truth, None).unwrap();
        assert!(h <= delta * diag * (1.0 + 1e-9), "{h}");
        assert_eq!(h == 0.0, delta == 0.0);
    }
}

#[test]
fn eps_to_rho_is_increasing_and_rejects_out_of_range() {
    let rhos: Vec<f64> = [0.05, 0.1, 0.2, 0.3, 0.9]
        .iter()
        .map(|&e| eps_to_rho(e).unwrap())
        .collect();
    assert!(rhos.windows(2).all(|w| w[0] < w[1]));
    assert!((eps_to_rho(0.5).unwrap() - 1.0).abs() < 1e-15);
    assert!(eps_to_rho(0.0).is_err() && eps_to_rho(1.0).is_err());
}

fn ring(n: usize, wobble: f64) -> Vec<Point2> {
    (0..n)
        .map(|k| {
            let t = TAU * k as f64 / n as f64;
            let r = 1.0 + wobble * (5.0 * t).sin();
            Point2::new(r * t.cos(), r * t.sin())
        })
        .collect()
}

#[test]
fn ground_truth_text_survives_reconstruction_round_trip() {
    let pts = ring(40, 0.1);
    let gt = GroundTruth::ordered(pts.clone(), true).unwrap();
    let parsed = GroundTruth::parse_text(&gt.to_text()).unwrap();
    assert_eq!(parsed, gt);
    let c = AlgorithmId::NnCrust
        .run(&PointSet::new(pts).unwrap())
        .unwrap();
    assert!(exact_match(&c, &parsed).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn proximity_graphs_nest(seed in any::<u64>(), n in 3usize..80) {
        use rand::{Rng, SeedableRng};
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<Point2> = (0..n).map(|_| Point2::new(r.random(), r.random())).collect();
        let ps = PointSet::new(pts).unwrap();
        prop_assume!(!curvebench_core::geometry::all_collinear(ps.points()));
        let dt = delaunay_graph(&delaunay(&ps).unwrap());
        let gg = gabriel(&ps).unwrap();
        let rn = rng(&ps).unwrap();
        let mst = emst(&ps).unwrap();
        prop_assert!(mst.is_subgraph_of(&rn));
        prop_assert!(rn.is_subgraph_of(&gg));
        prop_assert!(gg.is_subgraph_of(&dt));
        let soi = sphere_of_influence(&ps).unwrap();
        for (i, p) in ps.points().iter().enumerate() {
            let nearest = (0..n)
                .filter(|&j| j != i)
                .min_by(|&a, &b| p.distance(ps.points()[a]).total_cmp(&p.distance(ps.points()[b])))
                .unwrap();
            prop_assert!(soi.contains((i, nearest)));
        }
    }
}
